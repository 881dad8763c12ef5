#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "interactee/geometry.hpp"
#include "interactee/grid.hpp"

namespace interactee {

using EnergyMap = Grid<double>;

/// Rec. 601 luma in [0, 255].
GrayImage luminance(const RgbImage& image);

/// e(x,y) = |I(x+1,y) - I(x-1,y)|/2 + |I(x,y+1) - I(x,y-1)|/2 with
/// out-of-range indices clamped to the border. Needs width, height >= 2.
EnergyMap gradient_energy(const GrayImage& image);

inline constexpr double kBoostOffset = 5.0;
inline constexpr double kBoostGain = 5.0;

/// g <- (g + 5) * 5 for every pixel whose center (x+0.5, y+0.5) lies in at
/// least one box; each pixel is boosted at most once.
EnergyMap boost_energy(EnergyMap energy, std::span<const BoundingBox> boxes);

struct Seam {
  std::vector<std::size_t> columns;  // one per row, 8-connected
  double total = 0.0;
};

/// Minimal top-to-bottom 8-connected path by dynamic programming; every
/// argmin prefers the leftmost column.
Seam find_min_vertical_seam(const EnergyMap& energy);

struct PixelCoord {
  std::size_t x = 0;
  std::size_t y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct RetargetResult {
  RgbImage image;
  std::vector<BoundingBox> protected_boxes;  // tracked into output coordinates
  std::vector<PixelCoord> removed;           // source coordinates of removed pixels
  std::vector<double> seam_totals;           // boosted energy of each removed seam
};

/// Removes vertical seams down to target_w, then horizontal seams down to
/// target_h. Energy is recomputed and boosted inside the tracked protected
/// boxes before every seam. Throws TargetLargerThanSource.
RetargetResult retarget_detailed(const RgbImage& image, std::size_t target_w, std::size_t target_h,
                                 std::span<const BoundingBox> protected_boxes);

RgbImage retarget(const RgbImage& image, std::size_t target_w, std::size_t target_h,
                  std::span<const BoundingBox> protected_boxes);

}  // namespace interactee
