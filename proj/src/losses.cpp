#include "reidkit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "reidkit/rng.hpp"

namespace reidkit {

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  throw std::invalid_argument("unknown distance metric: " + name);
}

std::string metric_name(Metric m) {
  return m == Metric::euclidean ? "euclidean" : "cosine";
}

void LossConfig::validate() const {
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("losses: epsilon must lie in [0, 1)");
  if (margin < 0.0) throw std::invalid_argument("losses: margin must be >= 0");
  if (beta < 0.0) throw std::invalid_argument("losses: beta must be >= 0");
  if (center_lr < 0.0) throw std::invalid_argument("losses: center_lr must be >= 0");
}

Eigen::VectorXd smooth_labels(int y, int num_classes, double epsilon) {
  if (num_classes < 1) throw std::invalid_argument("smooth_labels: num_classes must be >= 1");
  if (y < 0 || y >= num_classes)
    throw std::invalid_argument("smooth_labels: label " + std::to_string(y) +
                                " outside [0, " + std::to_string(num_classes) + ")");
  const double off = epsilon / num_classes;
  Eigen::VectorXd q = Eigen::VectorXd::Constant(num_classes, off);
  q(y) = 1.0 - (static_cast<double>(num_classes - 1) / num_classes) * epsilon;
  return q;
}

double id_loss(const Eigen::MatrixXd& logits, const std::vector<int>& labels, double epsilon,
               Eigen::MatrixXd* grad) {
  const auto B = logits.rows();
  const auto N = logits.cols();
  if (B == 0) throw std::invalid_argument("id_loss: empty batch");
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw std::invalid_argument("id_loss: labels size does not match batch");

  if (grad) grad->setZero(B, N);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < B; ++i) {
    const Eigen::VectorXd q = smooth_labels(labels[i], static_cast<int>(N), epsilon);
    const double m = logits.row(i).maxCoeff();
    const Eigen::VectorXd shifted = logits.row(i).transpose().array() - m;
    const double lse = m + std::log(shifted.array().exp().sum());
    const Eigen::VectorXd logp = logits.row(i).transpose().array() - lse;
    loss -= q.dot(logp);
    if (grad) grad->row(i) = (logp.array().exp().matrix() - q).transpose() / static_cast<double>(B);
  }
  return loss / static_cast<double>(B);
}

namespace {

double row_distance(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b,
                    Eigen::Index j, Metric metric, const Eigen::VectorXd& norms_a,
                    const Eigen::VectorXd& norms_b) {
  if (metric == Metric::euclidean) return (a.row(i) - b.row(j)).norm();
  return 1.0 - a.row(i).dot(b.row(j)) / (norms_a(i) * norms_b(j));
}

Eigen::VectorXd row_norms_checked(const Eigen::MatrixXd& x, Metric metric, const char* who) {
  Eigen::VectorXd norms = x.rowwise().norm();
  if (metric == Metric::cosine)
    for (Eigen::Index i = 0; i < norms.size(); ++i)
      if (norms(i) == 0.0)
        throw std::invalid_argument(std::string(who) + ": zero-norm row " + std::to_string(i) +
                                    " is undefined under the cosine metric");
  return norms;
}

}  // namespace

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& features, Metric metric) {
  if (features.cols() < 1) throw std::invalid_argument("pairwise_distances: empty feature dim");
  const auto B = features.rows();
  const Eigen::VectorXd norms = row_norms_checked(features, metric, "pairwise_distances");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(B, B);
  for (Eigen::Index i = 0; i < B; ++i)
    for (Eigen::Index j = i + 1; j < B; ++j) {
      const double v = row_distance(features, i, features, j, metric, norms, norms);
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Metric metric) {
  if (a.cols() != b.cols()) throw std::invalid_argument("cross_distances: feature dims differ");
  const Eigen::VectorXd na = row_norms_checked(a, metric, "cross_distances");
  const Eigen::VectorXd nb = row_norms_checked(b, metric, "cross_distances");
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      d(i, j) = row_distance(a, i, b, j, metric, na, nb);
  return d;
}

namespace {

// Accumulates the gradient of d = ||x_i - x_j|| into rows i and j.
void add_distance_grad(Eigen::MatrixXd& grad, const Eigen::MatrixXd& f, Eigen::Index i,
                       Eigen::Index j, double dist, double coeff) {
  if (dist <= 0.0) return;  // subgradient 0 at coincident points
  const Eigen::RowVectorXd dir = (f.row(i) - f.row(j)) / dist;
  grad.row(i) += coeff * dir;
  grad.row(j) -= coeff * dir;
}

}  // namespace

TripletResult triplet_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                           double margin, Eigen::MatrixXd* grad, TripletMining mining) {
  const auto B = features.rows();
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw std::invalid_argument("triplet_loss: labels size does not match batch");
  std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2)
    throw std::invalid_argument("triplet_loss: batch holds fewer than 2 identities");

  const Eigen::MatrixXd d = pairwise_distances(features, Metric::euclidean);
  if (grad) grad->setZero(B, features.cols());

  std::vector<Eigen::Index> anchors;
  for (Eigen::Index i = 0; i < B; ++i)
    for (Eigen::Index j = 0; j < B; ++j)
      if (j != i && labels[j] == labels[i]) {
        anchors.push_back(i);
        break;
      }
  if (anchors.empty())
    throw std::invalid_argument("triplet_loss: no identity contributes 2 or more samples");

  TripletResult result;
  if (mining == TripletMining::batch_hard) {
    const double inv = 1.0 / static_cast<double>(anchors.size());
    int active = 0;
    for (Eigen::Index a : anchors) {
      Eigen::Index hardest_pos = -1, hardest_neg = -1;
      double dp = -1.0, dn = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < B; ++j) {
        if (j == a) continue;
        if (labels[j] == labels[a]) {
          if (d(a, j) > dp) { dp = d(a, j); hardest_pos = j; }
        } else if (d(a, j) < dn) {
          dn = d(a, j);
          hardest_neg = j;
        }
      }
      const double hinge = dp - dn + margin;
      if (hinge > 0.0) {
        result.loss += hinge * inv;
        ++active;
        if (grad) {
          add_distance_grad(*grad, features, a, hardest_pos, dp, inv);
          add_distance_grad(*grad, features, a, hardest_neg, dn, -inv);
        }
      }
    }
    result.active_fraction = static_cast<double>(active) / static_cast<double>(anchors.size());
    return result;
  }

  // All-pairs averaging over every (anchor, positive, negative) triple.
  long triples = 0, active = 0;
  for (Eigen::Index a : anchors)
    for (Eigen::Index p = 0; p < B; ++p) {
      if (p == a || labels[p] != labels[a]) continue;
      for (Eigen::Index n = 0; n < B; ++n)
        if (labels[n] != labels[a]) ++triples;
    }
  const double inv = 1.0 / static_cast<double>(triples);
  for (Eigen::Index a : anchors)
    for (Eigen::Index p = 0; p < B; ++p) {
      if (p == a || labels[p] != labels[a]) continue;
      for (Eigen::Index n = 0; n < B; ++n) {
        if (labels[n] == labels[a]) continue;
        const double hinge = d(a, p) - d(a, n) + margin;
        if (hinge > 0.0) {
          result.loss += hinge * inv;
          ++active;
          if (grad) {
            add_distance_grad(*grad, features, a, p, d(a, p), inv);
            add_distance_grad(*grad, features, a, n, d(a, n), -inv);
          }
        }
      }
    }
  result.active_fraction = triples > 0 ? static_cast<double>(active) / triples : 0.0;
  return result;
}

ClassCenters ClassCenters::init(int num_classes, int feature_dim, std::uint64_t seed) {
  Rng rng(seed);
  ClassCenters c;
  c.centers.resize(num_classes, feature_dim);
  for (int i = 0; i < num_classes; ++i)
    for (int j = 0; j < feature_dim; ++j) c.centers(i, j) = rng.normal();
  return c;
}

double center_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                   const ClassCenters& centers, Eigen::MatrixXd* grad) {
  const auto B = features.rows();
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw std::invalid_argument("center_loss: labels size does not match batch");
  if (grad) grad->setZero(B, features.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < B; ++i) {
    if (labels[i] < 0 || labels[i] >= centers.centers.rows())
      throw std::invalid_argument("center_loss: no center for label " +
                                  std::to_string(labels[i]));
    const Eigen::RowVectorXd diff = features.row(i) - centers.centers.row(labels[i]);
    loss += 0.5 * diff.squaredNorm();
    if (grad) grad->row(i) = diff;
  }
  return loss;
}

void update_centers(ClassCenters& centers, const Eigen::MatrixXd& features,
                    const std::vector<int>& labels, double center_lr) {
  std::map<int, std::pair<Eigen::RowVectorXd, int>> sums;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    if (labels[i] < 0 || labels[i] >= centers.centers.rows())
      throw std::invalid_argument("update_centers: no center for label " +
                                  std::to_string(labels[i]));
    auto it = sums.find(labels[i]);
    if (it == sums.end())
      sums.emplace(labels[i], std::make_pair(Eigen::RowVectorXd(features.row(i)), 1));
    else {
      it->second.first += features.row(i);
      it->second.second += 1;
    }
  }
  for (const auto& [label, acc] : sums) {
    const Eigen::RowVectorXd mean = acc.first / static_cast<double>(acc.second);
    centers.centers.row(label) += center_lr * (mean - centers.centers.row(label));
  }
}

LossReport total_loss(double id, double tri, double cen, double beta, const LossToggles& toggles) {
  LossReport report;
  report.id_loss = toggles.id ? id : 0.0;
  report.triplet_loss = toggles.triplet ? tri : 0.0;
  report.center_loss = toggles.center ? cen : 0.0;
  report.total = report.id_loss + report.triplet_loss + beta * report.center_loss;
  return report;
}

}  // namespace reidkit
