#include "synsal/assets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "synsal/error.hpp"
#include "synsal/image_ops.hpp"
#include "synsal/png_io.hpp"
#include "synsal/rng.hpp"

namespace synsal {

namespace {

constexpr std::uint64_t kForegroundStream = 0x466f7265ULL;  // per-asset seed streams
constexpr std::uint64_t kBackgroundStream = 0x4261636bULL;

struct Rgb {
  double r, g, b;
};

Rgb hsv_to_rgb(double h, double s, double v) {
  h = h - std::floor(h);
  const double c = v * s;
  const double hp = h * 6.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c; g = x;
  } else if (hp < 2) {
    r = x; g = c;
  } else if (hp < 3) {
    g = c; b = x;
  } else if (hp < 4) {
    g = x; b = c;
  } else if (hp < 5) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  const double m = v - c;
  return {r + m, g + m, b + m};
}

std::uint8_t to_byte(double v01) {
  return std::uint8_t(std::lround(std::clamp(v01, 0.0, 1.0) * 255.0));
}

// ---- foreground shapes -------------------------------------------------

struct EllipseShape {
  double cy, cx, a, b, phi;

  bool inside(double y, double x) const {
    const double dy = y - cy, dx = x - cx;
    const double c = std::cos(phi), s = std::sin(phi);
    const double u = dx * c + dy * s;
    const double v = -dx * s + dy * c;
    return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
  }
};

struct PolygonShape {
  std::vector<double> ys, xs;

  // even-odd crossing test
  bool inside(double y, double x) const {
    bool in = false;
    const std::size_t n = ys.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      if ((ys[i] > y) != (ys[j] > y)) {
        const double t = (y - ys[i]) / (ys[j] - ys[i]);
        if (x < xs[i] + t * (xs[j] - xs[i])) in = !in;
      }
    }
    return in;
  }
};

struct ShapeSet {
  std::vector<EllipseShape> ellipses;
  std::vector<PolygonShape> polygons;

  bool inside(double y, double x) const {
    for (const auto& e : ellipses)
      if (e.inside(y, x)) return true;
    for (const auto& p : polygons)
      if (p.inside(y, x)) return true;
    return false;
  }
};

EllipseShape random_ellipse(Rng& rng, int h, int w, double radius_lo, double radius_hi) {
  EllipseShape e;
  e.cy = rng.uniform(0.35, 0.65) * h;
  e.cx = rng.uniform(0.35, 0.65) * w;
  e.a = rng.uniform(radius_lo, radius_hi) * w;
  e.b = rng.uniform(radius_lo, radius_hi) * h;
  e.phi = rng.uniform(0.0, 3.14159265358979323846);
  return e;
}

PolygonShape random_polygon(Rng& rng, int h, int w) {
  PolygonShape p;
  const int n = int(rng.uniform_int(3, 7));
  const double cy = rng.uniform(0.4, 0.6) * h;
  const double cx = rng.uniform(0.4, 0.6) * w;
  std::vector<double> angles(std::size_t(n));
  for (auto& a : angles) a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  std::sort(angles.begin(), angles.end());
  for (double a : angles) {
    const double r = rng.uniform(0.18, 0.42) * std::min(h, w);
    p.ys.push_back(cy + r * std::sin(a));
    p.xs.push_back(cx + r * std::cos(a));
  }
  return p;
}

ForegroundAsset make_foreground(const std::string& id, int h, int w, Rng& rng) {
  ShapeSet shapes;
  const int kind = int(rng.uniform_int(0, 2));
  switch (kind) {
    case 0:
      shapes.ellipses.push_back(random_ellipse(rng, h, w, 0.2, 0.42));
      break;
    case 1:
      shapes.polygons.push_back(random_polygon(rng, h, w));
      break;
    default:
      shapes.ellipses.push_back(random_ellipse(rng, h, w, 0.16, 0.32));
      if (rng.bernoulli(0.5)) {
        shapes.ellipses.push_back(random_ellipse(rng, h, w, 0.12, 0.26));
      } else {
        shapes.polygons.push_back(random_polygon(rng, h, w));
      }
      break;
  }

  // vivid fill so objects stand out against the muted backgrounds
  const Rgb c0 = hsv_to_rgb(rng.uniform(), rng.uniform(0.55, 1.0), rng.uniform(0.6, 1.0));
  const bool gradient = rng.bernoulli(0.5);
  const Rgb c1 = gradient
                     ? hsv_to_rgb(rng.uniform(), rng.uniform(0.55, 1.0), rng.uniform(0.5, 1.0))
                     : c0;
  const double grad_angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  const double gy = std::sin(grad_angle), gx = std::cos(grad_angle);

  ForegroundAsset fg;
  fg.id = id;
  fg.image = RgbaImage(h, w);
  const double diag = std::sqrt(double(h) * h + double(w) * w);
  bool any_alpha = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // 4x4 supersampled coverage gives a soft anti-aliased alpha edge
      int hits = 0;
      for (int sy = 0; sy < 4; ++sy)
        for (int sx = 0; sx < 4; ++sx)
          if (shapes.inside(y + (sy + 0.5) / 4.0, x + (sx + 0.5) / 4.0)) ++hits;
      if (hits == 0) continue;
      const double alpha = hits / 16.0;
      double t = ((y - h / 2.0) * gy + (x - w / 2.0) * gx) / diag + 0.5;
      t = std::clamp(t, 0.0, 1.0);
      fg.image.at(y, x, 0) = to_byte(c0.r + (c1.r - c0.r) * t);
      fg.image.at(y, x, 1) = to_byte(c0.g + (c1.g - c0.g) * t);
      fg.image.at(y, x, 2) = to_byte(c0.b + (c1.b - c0.b) * t);
      fg.image.at(y, x, 3) = to_byte(alpha);
      any_alpha = any_alpha || fg.image.at(y, x, 3) > 0;
    }
  }
  if (!any_alpha) {
    // degenerate shape draw (practically unreachable); keep the invariant
    fg.image.at(h / 2, w / 2, 0) = to_byte(c0.r);
    fg.image.at(h / 2, w / 2, 1) = to_byte(c0.g);
    fg.image.at(h / 2, w / 2, 2) = to_byte(c0.b);
    fg.image.at(h / 2, w / 2, 3) = 255;
  }
  return fg;
}

// ---- backgrounds -------------------------------------------------------

Rgb muted_color(Rng& rng) {
  return hsv_to_rgb(rng.uniform(), rng.uniform(0.05, 0.35), rng.uniform(0.25, 0.85));
}

RgbImage noise_background(Rng& rng, int h, int w) {
  const int grid = int(rng.uniform_int(3, 6));
  RgbImage coarse(grid, grid);
  for (int y = 0; y < grid; ++y)
    for (int x = 0; x < grid; ++x) {
      const Rgb c = muted_color(rng);
      coarse.at(y, x, 0) = to_byte(c.r);
      coarse.at(y, x, 1) = to_byte(c.g);
      coarse.at(y, x, 2) = to_byte(c.b);
    }
  return resize_bilinear(coarse, h, w);
}

RgbImage gradient_background(Rng& rng, int h, int w) {
  const Rgb c0 = muted_color(rng);
  const Rgb c1 = muted_color(rng);
  const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  const double gy = std::sin(angle), gx = std::cos(angle);
  const double diag = std::sqrt(double(h) * h + double(w) * w);
  RgbImage img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double t = ((y - h / 2.0) * gy + (x - w / 2.0) * gx) / diag + 0.5;
      t = std::clamp(t, 0.0, 1.0);
      img.at(y, x, 0) = to_byte(c0.r + (c1.r - c0.r) * t);
      img.at(y, x, 1) = to_byte(c0.g + (c1.g - c0.g) * t);
      img.at(y, x, 2) = to_byte(c0.b + (c1.b - c0.b) * t);
    }
  return img;
}

RgbImage stripe_background(Rng& rng, int h, int w) {
  const Rgb base = muted_color(rng);
  const double angle = rng.uniform(0.0, 3.14159265358979323846);
  const double gy = std::sin(angle), gx = std::cos(angle);
  const double period = rng.uniform(8.0, 24.0);
  const double amplitude = rng.uniform(0.02, 0.08);
  RgbImage img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double phase = (y * gy + x * gx) / period * 2.0 * 3.14159265358979323846;
      const double mod = amplitude * std::sin(phase);
      img.at(y, x, 0) = to_byte(base.r + mod);
      img.at(y, x, 1) = to_byte(base.g + mod);
      img.at(y, x, 2) = to_byte(base.b + mod);
    }
  return img;
}

BackgroundAsset make_background(const std::string& id, int h, int w, Rng& rng) {
  BackgroundAsset bg;
  bg.id = id;
  switch (int(rng.uniform_int(0, 2))) {
    case 0:
      bg.image = noise_background(rng, h, w);
      break;
    case 1:
      bg.image = gradient_background(rng, h, w);
      break;
    default:
      bg.image = stripe_background(rng, h, w);
      break;
  }
  return bg;
}

std::string indexed_id(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04d", prefix, i);
  return buf;
}

}  // namespace

const ForegroundAsset* AssetLibrary::find_foreground(const std::string& id) const {
  for (const auto& fg : foregrounds)
    if (fg.id == id) return &fg;
  return nullptr;
}

const BackgroundAsset* AssetLibrary::find_background(const std::string& id) const {
  for (const auto& bg : backgrounds)
    if (bg.id == id) return &bg;
  return nullptr;
}

void validate(const ForegroundAsset& fg) {
  validate(fg.image);
  for (std::size_t i = 3; i < fg.image.pixels.size(); i += 4) {
    if (fg.image.pixels[i] > 0) return;
  }
  throw std::invalid_argument("ForegroundAsset '" + fg.id + "': no pixel with alpha > 0");
}

void validate(const BackgroundAsset& bg, int min_height, int min_width) {
  validate(bg.image);
  if (bg.image.height < min_height || bg.image.width < min_width) {
    throw std::invalid_argument("BackgroundAsset '" + bg.id + "': smaller than minimum canvas " +
                                std::to_string(min_height) + "x" + std::to_string(min_width));
  }
}

AssetLibrary procedural_assets(int n_fg, int n_bg, std::uint64_t seed,
                               const ProceduralAssetConfig& cfg) {
  if (n_fg < 1 || n_bg < 1) {
    throw std::invalid_argument("procedural_assets: n_fg and n_bg must be >= 1");
  }
  AssetLibrary lib;
  lib.foregrounds.reserve(std::size_t(n_fg));
  lib.backgrounds.reserve(std::size_t(n_bg));
  for (int i = 0; i < n_fg; ++i) {
    Rng rng(derive_seed(seed, kForegroundStream + std::uint64_t(i)));
    lib.foregrounds.push_back(make_foreground(indexed_id("fg", i), cfg.fg_height, cfg.fg_width, rng));
  }
  for (int i = 0; i < n_bg; ++i) {
    Rng rng(derive_seed(seed, kBackgroundStream + std::uint64_t(i)));
    lib.backgrounds.push_back(make_background(indexed_id("bg", i), cfg.bg_height, cfg.bg_width, rng));
  }
  return lib;
}

void save_assets(const AssetLibrary& assets, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "foregrounds");
  fs::create_directories(dir / "backgrounds");
  for (const auto& fg : assets.foregrounds) {
    write_file(dir / "foregrounds" / (fg.id + ".png"), encode_png(fg.image));
  }
  for (const auto& bg : assets.backgrounds) {
    write_file(dir / "backgrounds" / (bg.id + ".png"), encode_png(bg.image));
  }
}

AssetLibrary load_assets(const std::filesystem::path& dir, int min_bg_height, int min_bg_width) {
  namespace fs = std::filesystem;
  AssetLibrary lib;
  auto sorted_pngs = [](const fs::path& d) {
    std::vector<fs::path> files;
    if (!fs::exists(d)) throw Error("asset directory not found: " + d.string());
    for (const auto& entry : fs::directory_iterator(d)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  for (const auto& path : sorted_pngs(dir / "foregrounds")) {
    ForegroundAsset fg{path.stem().string(), decode_rgba(read_file(path))};
    validate(fg);
    lib.foregrounds.push_back(std::move(fg));
  }
  for (const auto& path : sorted_pngs(dir / "backgrounds")) {
    BackgroundAsset bg{path.stem().string(), decode_rgb(read_file(path))};
    validate(bg, min_bg_height, min_bg_width);
    lib.backgrounds.push_back(std::move(bg));
  }
  return lib;
}

}  // namespace synsal
