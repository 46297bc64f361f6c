#pragma once

#include <string>
#include <vector>

#include "reidkit/image.hpp"
#include "reidkit/rng.hpp"

namespace reidkit {

enum class Split { train, query, gallery };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

// One image with its retrieval annotations.
struct ReIDSample {
  Image image;
  int person_id = 0;
  int camera_id = 0;
  std::string domain_tag;
};

// An ordered collection of samples belonging to one split.
struct IdentityDataset {
  std::vector<ReIDSample> samples;
  Split split = Split::train;

  // Number of distinct person ids present.
  int num_identities() const;
  bool empty() const { return samples.empty(); }
  int size() const { return static_cast<int>(samples.size()); }
};

struct DatasetBundle {
  IdentityDataset train;
  IdentityDataset query;
  IdentityDataset gallery;
};

// Style descriptor for the synthetic renderer. Geometry is controlled by
// the seed only; everything here shifts global appearance, so two calls
// with the same seed and different styles produce the same identities
// under a different look.
struct DomainParams {
  std::string tag = "A";
  double hue_shift = 0.0;                          // rotates every rendered hue
  std::array<double, 3> background{0.16, 0.16, 0.18};
  std::array<double, 3> channel_gain{1.0, 1.0, 1.0};
  // Per-image nuisance strength.
  double translate_frac = 0.10;    // glyph shift as a fraction of each dimension
  double scale_jitter = 0.12;      // relative size jitter of the glyph
  double brightness_jitter = 0.22; // whole-image brightness factor range
  double noise_sigma = 0.04;       // additive Gaussian pixel noise
  double camera_color_strength = 0.10;
  int num_cameras = 3;
};

// Built-in style pairs for same-domain / cross-domain experiments.
DomainParams domain_preset(const std::string& name);

// Renders num_ids * imgs_per_id samples. Each identity gets a stable
// glyph (shape and color signature); each image applies translation,
// scale, brightness and noise jitter plus a camera color cast.
IdentityDataset generate_synthetic(int num_ids, int imgs_per_id, int image_h, int image_w,
                                   const DomainParams& params, std::uint64_t seed);

// Carves a generated pool into train / query / gallery. The last
// gallery_per_id images of every identity become gallery, the
// query_per_id before them become query, the rest train. Camera ids
// cycle within an identity, so query and gallery always overlap in
// identity but not completely in camera.
DatasetBundle split_dataset(const IdentityDataset& pool, int query_per_id, int gallery_per_id);

// On-disk layout: <dir>/images/*.ppm plus <dir>/manifest.csv with columns
// path, person_id, camera_id, split, domain_tag.
void save_dataset_dir(const DatasetBundle& bundle, const std::string& dir);
DatasetBundle load_dataset_dir(const std::string& dir);

// A training mini-batch of P identities with K images each.
struct PKBatch {
  std::vector<Image> images;
  std::vector<int> labels;   // person ids, P distinct values, each K times
  std::vector<int> indices;  // positions into the source dataset
  int P = 0;
  int K = 0;

  int size() const { return static_cast<int>(labels.size()); }
};

// Draws P distinct identities and K images per identity. Identities with
// fewer than K images are sampled with replacement.
PKBatch pk_sample(const IdentityDataset& dataset, int P, int K, Rng& rng);

}  // namespace reidkit
