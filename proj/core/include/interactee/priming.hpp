#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

struct Detection {
  BoundingBox box;
  double score = 0.0;  // -infinity marks a suppressed detection
  std::string category;
};

inline constexpr double kPrimingEnlargement = 1.5;

/// Scales width and height by `factor` about the unchanged center.
BoundingBox enlarge_box(const BoundingBox& box, double factor);

enum class PrimingRule {
  kCenterInside,  // keep when the detection center lies in the enlarged box (closed)
  kIouAbove,      // keep when IOU with the enlarged box exceeds a threshold
};

struct PrimingOptions {
  PrimingRule rule = PrimingRule::kCenterInside;
  double enlargement = kPrimingEnlargement;
  double iou_threshold = 0.0;
};

/// Same list, same order; rejected detections get a score of -infinity.
std::vector<Detection> prime_detections(std::span<const Detection> detections, const BoundingBox& predicted,
                                        const PrimingOptions& options = {});

}  // namespace interactee
