#include "reidkit/augment.hpp"

#include <cmath>
#include <stdexcept>

namespace reidkit {

void AugmentConfig::validate() const {
  if (target_h <= 0 || target_w <= 0)
    throw std::invalid_argument("augment: target size must be positive");
  if (pad < 0) throw std::invalid_argument("augment: pad must be non-negative");
  if (flip_prob < 0.0 || flip_prob > 1.0)
    throw std::invalid_argument("augment: flip_prob outside [0, 1]");
  if (rea_prob < 0.0 || rea_prob > 1.0)
    throw std::invalid_argument("augment: rea_prob outside [0, 1]");
  if (!(0.0 < rea_area_lo && rea_area_lo < rea_area_hi && rea_area_hi < 1.0))
    throw std::invalid_argument("augment: need 0 < rea_area_lo < rea_area_hi < 1");
  if (!(0.0 < rea_aspect_lo && rea_aspect_lo <= rea_aspect_hi))
    throw std::invalid_argument("augment: need 0 < rea_aspect_lo <= rea_aspect_hi");
  for (double s : stddev)
    if (s <= 0.0) throw std::invalid_argument("augment: stddev entries must be positive");
}

Image normalize(const Image& img, const std::array<double, 3>& mean,
                const std::array<double, 3>& stddev) {
  Image out = img;
  const std::size_t npix = static_cast<std::size_t>(img.height) * img.width;
  for (std::size_t i = 0; i < npix; ++i)
    for (int c = 0; c < 3; ++c) out.data[i * 3 + c] = (out.data[i * 3 + c] - mean[c]) / stddev[c];
  return out;
}

Image denormalize(const Image& img, const std::array<double, 3>& mean,
                  const std::array<double, 3>& stddev) {
  Image out = img;
  const std::size_t npix = static_cast<std::size_t>(img.height) * img.width;
  for (std::size_t i = 0; i < npix; ++i)
    for (int c = 0; c < 3; ++c) out.data[i * 3 + c] = out.data[i * 3 + c] * stddev[c] + mean[c];
  return out;
}

Image random_erase(const Image& img, const AugmentConfig& cfg, Rng& rng,
                   std::optional<EraseRect>* applied) {
  if (applied) applied->reset();
  if (!rng.bernoulli(cfg.rea_prob)) return img;

  const int H = img.height;
  const int W = img.width;
  const double area = static_cast<double>(H) * W;
  for (int attempt = 0; attempt < cfg.rea_max_attempts; ++attempt) {
    const double target_area = rng.uniform(cfg.rea_area_lo, cfg.rea_area_hi) * area;
    const double aspect = rng.uniform(cfg.rea_aspect_lo, cfg.rea_aspect_hi);  // height / width
    const int eh = static_cast<int>(std::lround(std::sqrt(target_area * aspect)));
    const int ew = static_cast<int>(std::lround(std::sqrt(target_area / aspect)));
    if (eh < 1 || ew < 1 || eh > H || ew > W) continue;
    const int ey = rng.index(H);
    const int ex = rng.index(W);
    if (ey + eh > H || ex + ew > W) continue;
    // Integer rounding can push the realized ratios outside the sampled
    // ranges; only rectangles that still satisfy them are accepted.
    const double realized_area = static_cast<double>(eh) * ew / area;
    const double realized_aspect = static_cast<double>(eh) / ew;
    if (realized_area < cfg.rea_area_lo || realized_area > cfg.rea_area_hi) continue;
    if (realized_aspect < cfg.rea_aspect_lo || realized_aspect > cfg.rea_aspect_hi) continue;

    Image out = img;
    std::array<double, 3> fill = channel_means(img);
    for (int y = ey; y < ey + eh; ++y)
      for (int x = ex; x < ex + ew; ++x)
        for (int c = 0; c < 3; ++c) {
          if (cfg.rea_fill == EraseFill::random)
            fill[c] = (rng.uniform() - cfg.mean[c]) / cfg.stddev[c];
          out.at(y, x, c) = fill[c];
        }
    if (applied) *applied = EraseRect{ex, ey, ew, eh};
    return out;
  }
  return img;
}

Image augment_train(const ReIDSample& sample, const AugmentConfig& cfg, Rng& rng) {
  Image img = resize(sample.image, cfg.target_h, cfg.target_w);
  if (cfg.pad > 0) {
    img = pad_zero(img, cfg.pad);
    const int top = rng.index(2 * cfg.pad + 1);
    const int left = rng.index(2 * cfg.pad + 1);
    img = crop(img, top, left, cfg.target_h, cfg.target_w);
  }
  if (rng.bernoulli(cfg.flip_prob)) img = flip_horizontal(img);
  img = normalize(img, cfg.mean, cfg.stddev);
  return random_erase(img, cfg, rng);
}

Image preprocess_eval(const ReIDSample& sample, const AugmentConfig& cfg) {
  return normalize(resize(sample.image, cfg.target_h, cfg.target_w), cfg.mean, cfg.stddev);
}

}  // namespace reidkit
