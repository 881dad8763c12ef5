#pragma once

#include <filesystem>

#include "interactee/grid.hpp"

namespace interactee {

/// 8-bit PNG of any color type; alpha is dropped and gray is expanded to RGB.
RgbImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Binary PGM (P5). Values are max-normalized to 0..255; an all-zero map
/// stays black.
void write_pgm(const std::filesystem::path& path, const Grid<double>& map);

}  // namespace interactee
