#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

struct EvalRecord {
  std::string image_id;
  BoundingBox person_box;
  BoundingBox gt_interactee;
  BoundingBox predicted;
};

struct ExampleMetrics {
  std::string image_id;
  double position_error = 0.0;
  double size_error = 0.0;
  double iou = 0.0;
};

struct EvalReport {
  double mean_position_error = 0.0;
  double mean_size_error = 0.0;
  double mean_iou = 0.0;
  std::size_t n = 0;
  std::vector<ExampleMetrics> per_example;
};

/// Center distance between prediction and ground truth over person scale.
double position_error(const EvalRecord& r);

/// |area_pred - area_gt| / person scale. Carries pixel units, so it grows
/// linearly under a uniform zoom of the whole record.
double size_error(const EvalRecord& r);

/// Throws EmptyInput.
EvalReport evaluate(std::span<const EvalRecord> records);

inline constexpr double kNearPersonAreaRatio = 0.74;
inline constexpr double kRandomMinAreaFraction = 0.05;
inline constexpr double kRandomMaxAreaFraction = 1.0;

/// Square centered on the person with 0.74 of the person box area.
BoundingBox near_person_baseline(const PersonInstance& person);

/// Square with center uniform over the image and area uniform over
/// [0.05, 1.0] x image area.
BoundingBox random_baseline(const PersonInstance& person, std::mt19937_64& rng);
BoundingBox random_baseline(const PersonInstance& person, std::uint64_t seed);

/// Fixed column order: image_id,pos_err,size_err,iou.
std::string report_to_csv(const EvalReport& report);

}  // namespace interactee
