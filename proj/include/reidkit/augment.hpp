#pragma once

#include <array>
#include <optional>

#include "reidkit/dataset.hpp"
#include "reidkit/image.hpp"
#include "reidkit/rng.hpp"

namespace reidkit {

enum class EraseFill { mean, random };

struct AugmentConfig {
  int target_h = 256;
  int target_w = 128;
  int pad = 10;
  double flip_prob = 0.5;
  std::array<double, 3> mean{0.485, 0.456, 0.406};
  std::array<double, 3> stddev{0.229, 0.224, 0.225};
  // Random erasing.
  double rea_prob = 0.5;
  double rea_area_lo = 0.02;
  double rea_area_hi = 0.4;
  double rea_aspect_lo = 0.3;
  double rea_aspect_hi = 3.33;
  EraseFill rea_fill = EraseFill::mean;
  int rea_max_attempts = 100;

  void validate() const;
};

struct EraseRect {
  int x = 0, y = 0, w = 0, h = 0;
};

// Per-channel (x - mean) / std and its inverse.
Image normalize(const Image& img, const std::array<double, 3>& mean,
                const std::array<double, 3>& stddev);
Image denormalize(const Image& img, const std::array<double, 3>& mean,
                  const std::array<double, 3>& stddev);

// Occludes one rectangle with probability rea_prob. The rectangle's area
// ratio and aspect ratio are drawn from the configured ranges and must
// land fully inside the image; after rea_max_attempts without a fit the
// image is returned unchanged. Fill is the per-channel image mean by
// default. If applied is non-null it receives the accepted rectangle.
Image random_erase(const Image& img, const AugmentConfig& cfg, Rng& rng,
                   std::optional<EraseRect>* applied = nullptr);

// Training path: resize, zero-pad, random crop back to target size,
// random horizontal flip, normalize, random erase.
Image augment_train(const ReIDSample& sample, const AugmentConfig& cfg, Rng& rng);

// Evaluation path: deterministic resize + normalize.
Image preprocess_eval(const ReIDSample& sample, const AugmentConfig& cfg);

}  // namespace reidkit
