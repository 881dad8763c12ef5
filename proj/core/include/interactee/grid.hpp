#pragma once

#include <cstddef>
#include <vector>

#include "interactee/error.hpp"

namespace interactee {

/// Dense row-major 2-D array. Used for heatmaps, energy maps and images.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  const T& operator()(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  Grid transposed() const {
    Grid out(height_, width_);
    for (std::size_t y = 0; y < height_; ++y)
      for (std::size_t x = 0; x < width_; ++x) out(y, x) = (*this)(x, y);
    return out;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

struct Rgb {
  unsigned char r = 0;
  unsigned char g = 0;
  unsigned char b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using GrayImage = Grid<double>;
using RgbImage = Grid<Rgb>;

}  // namespace interactee
