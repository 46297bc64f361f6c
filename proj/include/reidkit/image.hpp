#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace reidkit {

// Dense H x W x 3 image, channels-last, double precision. Raw pixel
// values live in [0, 1]; after normalization the range is unconstrained.
struct Image {
  int height = 0;
  int width = 0;
  std::vector<double> data;  // size height * width * 3

  Image() = default;
  Image(int h, int w, double fill = 0.0)
      : height(h), width(w), data(static_cast<std::size_t>(h) * w * 3, fill) {}

  double& at(int y, int x, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  double at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }
};

// Bilinear resize with half-pixel centers.
Image resize(const Image& src, int out_h, int out_w);

// Mirrors the image left-right.
Image flip_horizontal(const Image& src);

// Surrounds the image with `pad` zero pixels on every side.
Image pad_zero(const Image& src, int pad);

// Copies the h x w window whose top-left corner is (top, left).
Image crop(const Image& src, int top, int left, int h, int w);

// Mean over all pixels, one value per channel.
std::array<double, 3> channel_means(const Image& img);

// 8-bit binary PPM round trip. Values are clamped to [0, 1] on write.
void write_ppm(const Image& img, const std::string& path);
Image read_ppm(const std::string& path);

}  // namespace reidkit
