#include "interactee/seam_carving.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "interactee/error.hpp"

namespace interactee {
namespace {

bool pixel_in_box(std::size_t x, std::size_t y, const BoundingBox& box) {
  return box.contains({static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5});
}

BoundingBox transpose_box(const BoundingBox& b) { return {b.y_min(), b.x_min(), b.height(), b.width()}; }

/// Moves a protected box into post-removal coordinates. Returns nullopt when
/// the seam consumed its last column.
std::optional<BoundingBox> track_box(const BoundingBox& box, const Seam& seam) {
  bool through = false;
  bool left = false;
  for (std::size_t y = 0; y < seam.columns.size(); ++y) {
    const double cy = static_cast<double>(y) + 0.5;
    if (cy < box.y_min() || cy > box.y_max()) continue;
    const double cx = static_cast<double>(seam.columns[y]) + 0.5;
    if (cx >= box.x_min() && cx <= box.x_max()) through = true;
    else if (cx < box.x_min()) left = true;
  }
  if (through) {
    if (box.width() <= 1.0) return std::nullopt;
    return BoundingBox(box.x_min(), box.y_min(), box.width() - 1.0, box.height());
  }
  if (left) return box.translated(-1.0, 0.0);
  return box;
}

template <typename T>
Grid<T> remove_vertical_seam(const Grid<T>& g, const Seam& seam) {
  Grid<T> out(g.width() - 1, g.height());
  for (std::size_t y = 0; y < g.height(); ++y) {
    std::size_t ox = 0;
    for (std::size_t x = 0; x < g.width(); ++x) {
      if (x != seam.columns[y]) out(ox++, y) = g(x, y);
    }
  }
  return out;
}

struct CarveState {
  RgbImage image;
  Grid<PixelCoord> origin;
  std::vector<BoundingBox> boxes;
};

void carve_vertical(CarveState& s, std::size_t target_w, RetargetResult& result) {
  while (s.image.width() > target_w) {
    const EnergyMap energy = boost_energy(gradient_energy(luminance(s.image)), s.boxes);
    const Seam seam = find_min_vertical_seam(energy);

    double removed = 0.0;
    for (std::size_t y = 0; y < seam.columns.size(); ++y) removed += energy(seam.columns[y], y);
    if (std::abs(removed - seam.total) > 1e-9 * std::max(1.0, std::abs(seam.total))) {
      throw std::logic_error("seam energy disagrees with its dynamic-programming total");
    }
    result.seam_totals.push_back(seam.total);

    for (std::size_t y = 0; y < seam.columns.size(); ++y) result.removed.push_back(s.origin(seam.columns[y], y));
    std::vector<BoundingBox> tracked;
    for (const auto& b : s.boxes) {
      if (auto moved = track_box(b, seam)) tracked.push_back(*moved);
    }
    s.boxes = std::move(tracked);
    s.image = remove_vertical_seam(s.image, seam);
    s.origin = remove_vertical_seam(s.origin, seam);
  }
}

void transpose_state(CarveState& s) {
  s.image = s.image.transposed();
  s.origin = s.origin.transposed();
  for (auto& b : s.boxes) b = transpose_box(b);
}

}  // namespace

GrayImage luminance(const RgbImage& image) {
  GrayImage out(image.width(), image.height());
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      const Rgb& p = image(x, y);
      out(x, y) = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    }
  }
  return out;
}

EnergyMap gradient_energy(const GrayImage& image) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (w < 2 || h < 2) throw InvalidArgument("gradient energy needs an image of at least 2x2");
  EnergyMap e(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t up = y == 0 ? 0 : y - 1;
    const std::size_t down = y + 1 == h ? y : y + 1;
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t left = x == 0 ? 0 : x - 1;
      const std::size_t right = x + 1 == w ? x : x + 1;
      e(x, y) = std::abs(image(right, y) - image(left, y)) / 2.0 + std::abs(image(x, down) - image(x, up)) / 2.0;
    }
  }
  return e;
}

EnergyMap boost_energy(EnergyMap energy, std::span<const BoundingBox> boxes) {
  for (std::size_t y = 0; y < energy.height(); ++y) {
    for (std::size_t x = 0; x < energy.width(); ++x) {
      const bool inside = std::any_of(boxes.begin(), boxes.end(), [&](const BoundingBox& b) { return pixel_in_box(x, y, b); });
      if (inside) energy(x, y) = (energy(x, y) + kBoostOffset) * kBoostGain;
    }
  }
  return energy;
}

Seam find_min_vertical_seam(const EnergyMap& energy) {
  const std::size_t w = energy.width();
  const std::size_t h = energy.height();
  if (w < 2 || h < 1) throw InvalidArgument("vertical seam needs width >= 2");

  Grid<double> cost(w, h);
  for (std::size_t x = 0; x < w; ++x) cost(x, 0) = energy(x, 0);
  for (std::size_t y = 1; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double best = cost(x, y - 1);
      if (x > 0) best = std::min(best, cost(x - 1, y - 1));
      if (x + 1 < w) best = std::min(best, cost(x + 1, y - 1));
      cost(x, y) = best + energy(x, y);
    }
  }

  Seam seam;
  seam.columns.resize(h);
  std::size_t x = 0;
  for (std::size_t c = 1; c < w; ++c) {
    if (cost(c, h - 1) < cost(x, h - 1)) x = c;
  }
  seam.total = cost(x, h - 1);
  seam.columns[h - 1] = x;
  for (std::size_t y = h - 1; y-- > 0;) {
    const std::size_t lo = x == 0 ? 0 : x - 1;
    const std::size_t hi = std::min(x + 1, w - 1);
    std::size_t pick = lo;
    for (std::size_t c = lo + 1; c <= hi; ++c) {
      if (cost(c, y) < cost(pick, y)) pick = c;
    }
    x = pick;
    seam.columns[y] = x;
  }
  return seam;
}

RetargetResult retarget_detailed(const RgbImage& image, std::size_t target_w, std::size_t target_h,
                                 std::span<const BoundingBox> protected_boxes) {
  if (target_w > image.width() || target_h > image.height()) {
    throw TargetLargerThanSource("retarget target exceeds the source dimensions");
  }
  if (target_w == 0 || target_h == 0) throw InvalidArgument("retarget target must be non-empty");
  if ((target_w < image.width() && image.height() < 2) || (target_h < image.height() && target_w < 2)) {
    throw InvalidArgument("seam removal needs an image of at least 2x2");
  }

  CarveState state{image, Grid<PixelCoord>(image.width(), image.height()), {protected_boxes.begin(), protected_boxes.end()}};
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < image.width(); ++x) state.origin(x, y) = {x, y};

  RetargetResult result;
  carve_vertical(state, target_w, result);
  if (state.image.height() > target_h) {
    transpose_state(state);
    carve_vertical(state, target_h, result);
    transpose_state(state);
  }
  result.image = std::move(state.image);
  result.protected_boxes = std::move(state.boxes);
  return result;
}

RgbImage retarget(const RgbImage& image, std::size_t target_w, std::size_t target_h,
                  std::span<const BoundingBox> protected_boxes) {
  return retarget_detailed(image, target_w, target_h, protected_boxes).image;
}

}  // namespace interactee
