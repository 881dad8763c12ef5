#include "interactee/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "interactee/error.hpp"

namespace interactee {

double position_error(const EvalRecord& r) {
  const Point2 p = r.predicted.center();
  const Point2 g = r.gt_interactee.center();
  return std::hypot(p.x - g.x, p.y - g.y) / person_scale(r.person_box);
}

double size_error(const EvalRecord& r) {
  return std::abs(r.predicted.area() - r.gt_interactee.area()) / person_scale(r.person_box);
}

EvalReport evaluate(std::span<const EvalRecord> records) {
  if (records.empty()) throw EmptyInput("evaluation needs at least one record");
  EvalReport report;
  report.n = records.size();
  report.per_example.reserve(records.size());
  for (const auto& r : records) {
    ExampleMetrics m{r.image_id, position_error(r), size_error(r), iou(r.predicted, r.gt_interactee)};
    report.mean_position_error += m.position_error;
    report.mean_size_error += m.size_error;
    report.mean_iou += m.iou;
    report.per_example.push_back(std::move(m));
  }
  const double n = static_cast<double>(records.size());
  report.mean_position_error /= n;
  report.mean_size_error /= n;
  report.mean_iou /= n;
  return report;
}

BoundingBox near_person_baseline(const PersonInstance& person) {
  return BoundingBox::square(person.person_box.center(), std::sqrt(kNearPersonAreaRatio * person.person_box.area()));
}

BoundingBox random_baseline(const PersonInstance& person, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double cx = unit(rng) * person.image_width;
  const double cy = unit(rng) * person.image_height;
  const double fraction = kRandomMinAreaFraction + unit(rng) * (kRandomMaxAreaFraction - kRandomMinAreaFraction);
  return BoundingBox::square({cx, cy}, std::sqrt(fraction * person.image_width * person.image_height));
}

BoundingBox random_baseline(const PersonInstance& person, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_baseline(person, rng);
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "image_id,pos_err,size_err,iou\n";
  char line[128];
  for (const auto& m : report.per_example) {
    std::snprintf(line, sizeof line, ",%.17g,%.17g,%.17g\n", m.position_error, m.size_error, m.iou);
    os << m.image_id << line;
  }
  return os.str();
}

}  // namespace interactee
