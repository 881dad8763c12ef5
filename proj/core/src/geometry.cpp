#include "interactee/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "interactee/error.hpp"

namespace interactee {

BoundingBox::BoundingBox(double x_min, double y_min, double width, double height)
    : x_min_(x_min), y_min_(y_min), width_(width), height_(height) {
  if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(width) || !std::isfinite(height)) {
    throw InvalidArgument("bounding box fields must be finite");
  }
  if (!(width > 0.0) || !(height > 0.0)) {
    throw InvalidArgument("bounding box width and height must be positive, got " + to_string(*this));
  }
}

BoundingBox BoundingBox::from_corners(double x_min, double y_min, double x_max, double y_max) {
  return {x_min, y_min, x_max - x_min, y_max - y_min};
}

BoundingBox BoundingBox::square(Point2 center, double side) {
  return {center.x - side / 2.0, center.y - side / 2.0, side, side};
}

std::string to_string(const BoundingBox& box) {
  std::ostringstream os;
  os << "box(" << box.x_min() << ", " << box.y_min() << ", " << box.width() << ", " << box.height() << ")";
  return os.str();
}

bool is_valid(const LocalizationParams& p) noexcept {
  return std::isfinite(p.dx) && std::isfinite(p.dy) && std::isfinite(p.a) && p.a > 0.0;
}

double person_scale(const BoundingBox& person_box) { return std::sqrt(person_box.width() * person_box.height()); }

LocalizationParams normalize_localization(const BoundingBox& person_box, const BoundingBox& interactee_box) {
  const double s = person_scale(person_box);
  const Point2 cp = person_box.center();
  const Point2 ci = interactee_box.center();
  return {(ci.x - cp.x) / s, (ci.y - cp.y) / s, interactee_box.area() / (s * s)};
}

BoundingBox denormalize_to_box(const LocalizationParams& params, const BoundingBox& person_box) {
  if (!is_valid(params)) {
    throw InvalidArgument("localization params must be finite with a > 0");
  }
  const double s = person_scale(person_box);
  const Point2 cp = person_box.center();
  return BoundingBox::square({cp.x + s * params.dx, cp.y + s * params.dy}, s * std::sqrt(params.a));
}

double intersection_area(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double w = std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const double h = std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  if (a == b) return 1.0;
  const double inter = intersection_area(a, b);
  if (inter == 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

bool clamp_to_image(const BoundingBox& box, double image_width, double image_height, BoundingBox& out) {
  const double x0 = std::clamp(box.x_min(), 0.0, image_width);
  const double y0 = std::clamp(box.y_min(), 0.0, image_height);
  const double x1 = std::clamp(box.x_max(), 0.0, image_width);
  const double y1 = std::clamp(box.y_max(), 0.0, image_height);
  if (!(x1 > x0) || !(y1 > y0)) return false;
  if (x0 == box.x_min() && y0 == box.y_min() && x1 == box.x_max() && y1 == box.y_max()) {
    out = box;
    return true;
  }
  out = BoundingBox::from_corners(x0, y0, x1, y1);
  return true;
}

}  // namespace interactee
