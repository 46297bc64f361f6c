#include "reidkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace reidkit {

std::string split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::query: return "query";
    case Split::gallery: return "gallery";
  }
  return "train";
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "query") return Split::query;
  if (name == "gallery") return Split::gallery;
  throw std::invalid_argument("unknown split name: " + name);
}

int IdentityDataset::num_identities() const {
  std::set<int> ids;
  for (const auto& s : samples) ids.insert(s.person_id);
  return static_cast<int>(ids.size());
}

DomainParams domain_preset(const std::string& name) {
  DomainParams p;
  p.tag = name;
  if (name == "A") return p;
  if (name == "B") {
    p.hue_shift = 0.38;
    p.background = {0.55, 0.52, 0.46};
    p.channel_gain = {1.05, 0.92, 0.88};
    return p;
  }
  throw std::invalid_argument("unknown domain preset: " + name);
}

namespace {

std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
  h = h - std::floor(h);
  const double c = v * s;
  const double hp = h * 6.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1)      { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else             { r = c; b = x; }
  const double m = v - c;
  return {r + m, g + m, b + m};
}

enum class ShapeKind { rect, ellipse };

struct GlyphShape {
  ShapeKind kind;
  double cy, cx;      // center as a fraction of image height/width
  double hy, hx;      // half extents as a fraction
  double hue, sat, val;
};

struct IdentityGlyph {
  std::vector<GlyphShape> shapes;
};

IdentityGlyph make_glyph(int person_id, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x1DF0, static_cast<std::uint64_t>(person_id)));
  // Hue anchors are spread by the golden ratio so identities stay apart
  // even when the per-shape offsets collide.
  const double anchor = std::fmod(person_id * 0.61803398874989485 + rng.uniform(0.0, 0.04), 1.0);
  IdentityGlyph glyph;
  const int num_shapes = 3;
  for (int i = 0; i < num_shapes; ++i) {
    GlyphShape sh;
    sh.kind = rng.bernoulli(0.5) ? ShapeKind::rect : ShapeKind::ellipse;
    sh.cy = rng.uniform(0.22, 0.78);
    sh.cx = rng.uniform(0.28, 0.72);
    sh.hy = rng.uniform(0.10, 0.24);
    sh.hx = rng.uniform(0.14, 0.34);
    sh.hue = anchor + i * 0.17 + rng.uniform(-0.03, 0.03);
    sh.sat = rng.uniform(0.60, 1.0);
    sh.val = rng.uniform(0.55, 1.0);
    glyph.shapes.push_back(sh);
  }
  return glyph;
}

// Camera color casts cycle through fixed primaries.
std::array<double, 3> camera_gain(int camera_id, double strength) {
  static const double pattern[4][3] = {
      {1.0, -0.4, -0.6}, {-0.6, 1.0, -0.4}, {-0.4, -0.6, 1.0}, {0.6, 0.6, -1.0}};
  const double* p = pattern[camera_id % 4];
  return {1.0 + strength * p[0], 1.0 + strength * p[1], 1.0 + strength * p[2]};
}

Image render_sample(const IdentityGlyph& glyph, const DomainParams& dom, int camera_id,
                    int image_h, int image_w, Rng& jitter_rng) {
  const double dy = jitter_rng.uniform(-dom.translate_frac, dom.translate_frac);
  const double dx = jitter_rng.uniform(-dom.translate_frac, dom.translate_frac);
  const double scale = jitter_rng.uniform(1.0 - dom.scale_jitter, 1.0 + dom.scale_jitter);
  const double brightness =
      jitter_rng.uniform(1.0 - dom.brightness_jitter, 1.0 + dom.brightness_jitter);

  Image img(image_h, image_w);
  const double grad_dir = (camera_id % 2 == 0) ? 1.0 : -1.0;
  for (int y = 0; y < image_h; ++y) {
    const double shade = 1.0 + 0.12 * grad_dir * (static_cast<double>(y) / image_h - 0.5);
    for (int x = 0; x < image_w; ++x)
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = dom.background[c] * shade;
  }

  for (const auto& sh : glyph.shapes) {
    const auto rgb = hsv_to_rgb(sh.hue + dom.hue_shift, sh.sat, sh.val);
    const double cy = (sh.cy + dy) * image_h;
    const double cx = (sh.cx + dx) * image_w;
    const double hy = sh.hy * scale * image_h;
    const double hx = sh.hx * scale * image_w;
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - hy)));
    const int y1 = std::min(image_h - 1, static_cast<int>(std::ceil(cy + hy)));
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - hx)));
    const int x1 = std::min(image_w - 1, static_cast<int>(std::ceil(cx + hx)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        bool inside = true;
        if (sh.kind == ShapeKind::ellipse) {
          const double ny = (y - cy) / hy;
          const double nx = (x - cx) / hx;
          inside = ny * ny + nx * nx <= 1.0;
        }
        if (inside)
          for (int c = 0; c < 3; ++c) img.at(y, x, c) = rgb[c];
      }
  }

  const auto cam = camera_gain(camera_id, dom.camera_color_strength);
  for (int y = 0; y < image_h; ++y)
    for (int x = 0; x < image_w; ++x)
      for (int c = 0; c < 3; ++c) {
        double v = img.at(y, x, c) * brightness * cam[c] * dom.channel_gain[c];
        v += dom.noise_sigma * jitter_rng.normal();
        img.at(y, x, c) = std::clamp(v, 0.0, 1.0);
      }
  return img;
}

}  // namespace

IdentityDataset generate_synthetic(int num_ids, int imgs_per_id, int image_h, int image_w,
                                   const DomainParams& params, std::uint64_t seed) {
  if (num_ids < 2 || imgs_per_id < 2)
    throw std::invalid_argument("generate_synthetic: need num_ids >= 2 and imgs_per_id >= 2");
  if (image_h < 8 || image_w < 8)
    throw std::invalid_argument("generate_synthetic: image size too small");
  if (params.num_cameras < 2)
    throw std::invalid_argument("generate_synthetic: need at least 2 cameras");

  IdentityDataset ds;
  ds.split = Split::train;
  ds.samples.reserve(static_cast<std::size_t>(num_ids) * imgs_per_id);
  for (int pid = 0; pid < num_ids; ++pid) {
    const IdentityGlyph glyph = make_glyph(pid, seed);
    for (int k = 0; k < imgs_per_id; ++k) {
      Rng jitter(derive_seed(seed, 0x5EED, static_cast<std::uint64_t>(pid),
                             static_cast<std::uint64_t>(k)));
      ReIDSample sample;
      sample.person_id = pid;
      sample.camera_id = k % params.num_cameras;
      sample.domain_tag = params.tag;
      sample.image = render_sample(glyph, params, sample.camera_id, image_h, image_w, jitter);
      ds.samples.push_back(std::move(sample));
    }
  }
  return ds;
}

DatasetBundle split_dataset(const IdentityDataset& pool, int query_per_id, int gallery_per_id) {
  if (query_per_id < 1 || gallery_per_id < 1)
    throw std::invalid_argument("split_dataset: query_per_id and gallery_per_id must be >= 1");

  std::map<int, std::vector<int>> by_id;
  for (int i = 0; i < pool.size(); ++i) by_id[pool.samples[i].person_id].push_back(i);

  DatasetBundle bundle;
  bundle.train.split = Split::train;
  bundle.query.split = Split::query;
  bundle.gallery.split = Split::gallery;
  for (const auto& [pid, idxs] : by_id) {
    const int holdout = query_per_id + gallery_per_id;
    if (static_cast<int>(idxs.size()) < holdout + 1)
      throw std::invalid_argument("split_dataset: identity " + std::to_string(pid) +
                                  " has too few images for the requested holdout");
    const int n = static_cast<int>(idxs.size());
    for (int j = 0; j < n; ++j) {
      const ReIDSample& s = pool.samples[idxs[j]];
      if (j < n - holdout)
        bundle.train.samples.push_back(s);
      else if (j < n - gallery_per_id)
        bundle.query.samples.push_back(s);
      else
        bundle.gallery.samples.push_back(s);
    }
  }
  return bundle;
}

namespace {

void append_manifest_rows(std::ofstream& manifest, const IdentityDataset& ds,
                          const std::string& dir) {
  const std::string split = split_name(ds.split);
  for (int i = 0; i < ds.size(); ++i) {
    const ReIDSample& s = ds.samples[i];
    std::ostringstream rel;
    rel << "images/" << split << "_" << i << ".ppm";
    write_ppm(s.image, dir + "/" + rel.str());
    manifest << rel.str() << "," << s.person_id << "," << s.camera_id << "," << split << ","
             << s.domain_tag << "\n";
  }
}

}  // namespace

void save_dataset_dir(const DatasetBundle& bundle, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "images");
  std::ofstream manifest(fs::path(dir) / "manifest.csv");
  if (!manifest) throw std::runtime_error("save_dataset_dir: cannot write manifest in " + dir);
  manifest << "path,person_id,camera_id,split,domain_tag\n";
  append_manifest_rows(manifest, bundle.train, dir);
  append_manifest_rows(manifest, bundle.query, dir);
  append_manifest_rows(manifest, bundle.gallery, dir);
}

DatasetBundle load_dataset_dir(const std::string& dir) {
  std::ifstream manifest(fs::path(dir) / "manifest.csv");
  if (!manifest) throw std::runtime_error("load_dataset_dir: no manifest.csv in " + dir);
  DatasetBundle bundle;
  bundle.train.split = Split::train;
  bundle.query.split = Split::query;
  bundle.gallery.split = Split::gallery;

  std::string line;
  std::getline(manifest, line);  // header
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string path, pid, cam, split, tag;
    if (!std::getline(row, path, ',') || !std::getline(row, pid, ',') ||
        !std::getline(row, cam, ',') || !std::getline(row, split, ','))
      throw std::runtime_error("load_dataset_dir: malformed manifest row: " + line);
    std::getline(row, tag, ',');
    ReIDSample s;
    s.image = read_ppm((fs::path(dir) / path).string());
    s.person_id = std::stoi(pid);
    s.camera_id = std::stoi(cam);
    s.domain_tag = tag;
    switch (split_from_name(split)) {
      case Split::train: bundle.train.samples.push_back(std::move(s)); break;
      case Split::query: bundle.query.samples.push_back(std::move(s)); break;
      case Split::gallery: bundle.gallery.samples.push_back(std::move(s)); break;
    }
  }
  return bundle;
}

PKBatch pk_sample(const IdentityDataset& dataset, int P, int K, Rng& rng) {
  if (P < 1 || K < 1) throw std::invalid_argument("pk_sample: P and K must be positive");

  std::map<int, std::vector<int>> by_id;
  for (int i = 0; i < dataset.size(); ++i) by_id[dataset.samples[i].person_id].push_back(i);
  if (static_cast<int>(by_id.size()) < P)
    throw std::runtime_error("pk_sample: P=" + std::to_string(P) + " exceeds the " +
                             std::to_string(by_id.size()) + " identities available");

  std::vector<int> ids;
  ids.reserve(by_id.size());
  for (const auto& [pid, _] : by_id) ids.push_back(pid);
  // Partial Fisher-Yates for the first P slots.
  for (int i = 0; i < P; ++i) {
    const int j = i + rng.index(static_cast<int>(ids.size()) - i);
    std::swap(ids[i], ids[j]);
  }

  PKBatch batch;
  batch.P = P;
  batch.K = K;
  batch.images.reserve(static_cast<std::size_t>(P) * K);
  for (int i = 0; i < P; ++i) {
    const int pid = ids[i];
    const std::vector<int>& pool = by_id[pid];
    std::vector<int> chosen;
    if (static_cast<int>(pool.size()) >= K) {
      std::vector<int> shuffled = pool;
      for (int s = 0; s < K; ++s) {
        const int j = s + rng.index(static_cast<int>(shuffled.size()) - s);
        std::swap(shuffled[s], shuffled[j]);
      }
      chosen.assign(shuffled.begin(), shuffled.begin() + K);
    } else {
      for (int s = 0; s < K; ++s) chosen.push_back(pool[rng.index(static_cast<int>(pool.size()))]);
    }
    for (int idx : chosen) {
      batch.images.push_back(dataset.samples[idx].image);
      batch.labels.push_back(pid);
      batch.indices.push_back(idx);
    }
  }
  return batch;
}

}  // namespace reidkit
