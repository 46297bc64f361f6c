#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace reidkit {

enum class Metric { euclidean, cosine };

Metric metric_from_name(const std::string& name);
std::string metric_name(Metric m);

enum class TripletMining { batch_hard, all_pairs };

struct LossConfig {
  double epsilon = 0.1;   // label smoothing constant
  double margin = 0.3;    // triplet margin
  double beta = 0.0005;   // center loss weight
  int num_classes = 0;
  Metric triplet_metric = Metric::euclidean;
  TripletMining mining = TripletMining::batch_hard;
  double center_lr = 0.5;

  void validate() const;
};

// Smoothed target distribution: q_y = 1 - (N-1)/N * eps, q_other = eps/N.
Eigen::VectorXd smooth_labels(int y, int num_classes, double epsilon);

// Mean cross entropy between softmax(logits) and the smoothed targets.
// If grad is non-null it receives d(loss)/d(logits).
double id_loss(const Eigen::MatrixXd& logits, const std::vector<int>& labels, double epsilon,
               Eigen::MatrixXd* grad = nullptr);

// All-pairs distance matrix; diagonal zero, symmetric.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& features, Metric metric);

// Rectangular distance matrix between two row sets.
Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Metric metric);

struct TripletResult {
  double loss = 0.0;
  double active_fraction = 0.0;  // share of anchors with a nonzero hinge
};

// Hinge on hardest-positive minus hardest-negative Euclidean distance,
// averaged over anchors that have at least one positive. With all_pairs
// mining the hinge is averaged over every (anchor, positive, negative)
// triple instead.
TripletResult triplet_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                           double margin, Eigen::MatrixXd* grad = nullptr,
                           TripletMining mining = TripletMining::batch_hard);

// One learned center per training class, row-indexed by class.
struct ClassCenters {
  Eigen::MatrixXd centers;  // num_classes x feature_dim

  static ClassCenters init(int num_classes, int feature_dim, std::uint64_t seed);
};

// 0.5 * sum_j ||f_j - c_{y_j}||^2, summed over the batch.
double center_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                   const ClassCenters& centers, Eigen::MatrixXd* grad = nullptr);

// Moves every center seen in the batch toward the mean of that class's
// batch features by a step of center_lr. Unseen centers are untouched.
void update_centers(ClassCenters& centers, const Eigen::MatrixXd& features,
                    const std::vector<int>& labels, double center_lr);

struct LossToggles {
  bool id = true;
  bool triplet = true;
  bool center = true;
};

struct LossReport {
  double id_loss = 0.0;
  double triplet_loss = 0.0;
  double center_loss = 0.0;
  double total = 0.0;
  double active_triplet_fraction = 0.0;
};

// total = id + triplet + beta * center, disabled parts contributing zero.
LossReport total_loss(double id, double tri, double cen, double beta, const LossToggles& toggles);

}  // namespace reidkit
