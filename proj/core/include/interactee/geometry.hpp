#pragma once

#include <string>

namespace interactee {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Axis-aligned pixel rectangle stored as (x_min, y_min, width, height).
/// Width and height are strictly positive and all fields are finite; the
/// constructor throws InvalidArgument otherwise.
class BoundingBox {
 public:
  BoundingBox() = default;  // unit box at the origin
  BoundingBox(double x_min, double y_min, double width, double height);

  static BoundingBox from_corners(double x_min, double y_min, double x_max, double y_max);
  static BoundingBox square(Point2 center, double side);

  double x_min() const noexcept { return x_min_; }
  double y_min() const noexcept { return y_min_; }
  double width() const noexcept { return width_; }
  double height() const noexcept { return height_; }
  double x_max() const noexcept { return x_min_ + width_; }
  double y_max() const noexcept { return y_min_ + height_; }
  double area() const noexcept { return width_ * height_; }
  Point2 center() const noexcept { return {x_min_ + width_ / 2.0, y_min_ + height_ / 2.0}; }

  /// Closed containment: points on the boundary are inside.
  bool contains(Point2 p) const noexcept {
    return p.x >= x_min_ && p.x <= x_max() && p.y >= y_min_ && p.y <= y_max();
  }

  BoundingBox translated(double tx, double ty) const { return {x_min_ + tx, y_min_ + ty, width_, height_}; }
  BoundingBox scaled(double factor) const {
    return {x_min_ * factor, y_min_ * factor, width_ * factor, height_ * factor};
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_min_ = 0.0;
  double y_min_ = 0.0;
  double width_ = 1.0;
  double height_ = 1.0;
};

std::string to_string(const BoundingBox& box);

/// Interactee placement relative to its person: center displacement (dx, dy)
/// in person-scale units and area `a` in person-scale-squared units.
struct LocalizationParams {
  double dx = 0.0;
  double dy = 0.0;
  double a = 1.0;

  friend bool operator==(const LocalizationParams&, const LocalizationParams&) = default;
};

bool is_valid(const LocalizationParams& p) noexcept;

struct PersonInstance {
  std::string image_id;
  BoundingBox person_box;
  double image_width = 1.0;
  double image_height = 1.0;
};

/// Linear size of a person: sqrt(width * height).
double person_scale(const BoundingBox& person_box);

LocalizationParams normalize_localization(const BoundingBox& person_box, const BoundingBox& interactee_box);

/// Inverse of normalize_localization up to aspect: the result is a square of
/// side s*sqrt(a) centered at the displaced person center. Not clipped.
BoundingBox denormalize_to_box(const LocalizationParams& params, const BoundingBox& person_box);

double intersection_area(const BoundingBox& a, const BoundingBox& b) noexcept;
double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Intersection of `box` with [0,w]x[0,h]. Returns false when nothing of
/// positive area remains.
bool clamp_to_image(const BoundingBox& box, double image_width, double image_height, BoundingBox& out);

}  // namespace interactee
