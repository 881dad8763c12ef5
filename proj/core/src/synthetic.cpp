#include "interactee/synthetic.hpp"

#include <cmath>
#include <random>

#include "interactee/features.hpp"

namespace interactee {
namespace {

struct CategoryInfo {
  const char* name;
  const char* verb;
};

constexpr CategoryInfo kCategories[] = {
    {"cup", "holding"},    {"phone", "using"},  {"bicycle", "riding"}, {"horse", "riding"},
    {"ball", "kicking"},   {"book", "reading"}, {"dog", "walking"},    {"laptop", "typing on"},
};

bool inside_image(const BoundingBox& b, double w, double h) {
  return b.x_min() >= 0.0 && b.y_min() >= 0.0 && b.x_max() <= w && b.y_max() <= h;
}

}  // namespace

LocalizationParams synthetic_localization(const std::array<double, 3>& pose) {
  return {1.5 * (pose[0] - 0.5), 0.6 * pose[1] - 0.4, 0.1 + 0.4 * pose[2]};
}

SyntheticDataset make_synthetic_dataset(const SyntheticConfig& config, const std::string& store_name) {
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double W = config.image_width;
  const double H = config.image_height;

  std::vector<std::pair<std::string, std::size_t>> dims = {
      {blocks::kAspect, 1}, {blocks::kPosition, 2}, {"pose", 3}, {blocks::kGist, config.noise_dims}};
  auto layout = std::make_shared<const Layout>(dims);

  SyntheticDataset out{{}, DescriptorStore(layout, {"synthetic generator: pose block is the latent u"})};
  out.dataset.descriptor_store = store_name;
  const auto train_count = static_cast<std::size_t>(std::llround(config.train_fraction * static_cast<double>(config.images)));

  for (std::size_t i = 0; i < config.images; ++i) {
    ImageRecord img;
    char id[32];
    std::snprintf(id, sizeof id, "syn%05zu", i);
    img.image_id = id;
    img.width = W;
    img.height = H;
    img.split = i < train_count ? "train" : "test";

    std::array<double, 3> pose{};
    BoundingBox person;
    BoundingBox interactee;
    for (;;) {
      for (double& u : pose) u = unit(rng);
      const double ph = 120.0 + 140.0 * unit(rng);
      const double pw = ph * (0.4 + 0.3 * unit(rng));
      const double cx = pw / 2.0 + (W - pw) * unit(rng);
      const double cy = ph / 2.0 + (H - ph) * unit(rng);
      person = BoundingBox(cx - pw / 2.0, cy - ph / 2.0, pw, ph);
      const LocalizationParams y = synthetic_localization(pose);
      const double s = person_scale(person);
      const double aspect = 0.7 + 0.7 * unit(rng);  // interactee h / w
      const double area = y.a * s * s;
      const double iw = std::sqrt(area / aspect);
      const double ih = area / iw;
      interactee = BoundingBox(cx + s * y.dx - iw / 2.0, cy + s * y.dy - ih / 2.0, iw, ih);
      if (inside_image(interactee, W, H)) break;
    }

    PersonRecord p;
    p.person_box = person;
    std::uniform_real_distribution<double> jitter(-config.annotator_jitter, config.annotator_jitter);
    for (std::size_t a = 0; a < config.annotators; ++a) {
      const double jx = jitter(rng);
      const double jy = jitter(rng);
      const double jw = jitter(rng);
      const double jh = jitter(rng);
      p.annotator_boxes.emplace_back(interactee.x_min() + jx, interactee.y_min() + jy,
                                     std::max(4.0, interactee.width() + jw), std::max(4.0, interactee.height() + jh));
    }
    if (unit(rng) < config.outlier_probability) {
      // One annotator marks something at the far side of the image.
      const Point2 c = interactee.center();
      const double ox = c.x < W / 2.0 ? W - 40.0 : 10.0;
      const double oy = c.y < H / 2.0 ? H - 40.0 : 10.0;
      p.annotator_boxes.emplace_back(ox, oy, 30.0, 30.0);
    }

    const std::size_t cat_index = std::min<std::size_t>(3, static_cast<std::size_t>(pose[0] * 4.0)) * 2 + (pose[2] > 0.5 ? 1 : 0);
    const CategoryInfo& cat = kCategories[cat_index];
    p.interactee_category = cat.name;
    p.captions = {std::string("a person ") + cat.verb + " a " + cat.name,
                  std::string("someone is ") + cat.verb + " the " + cat.name + "."};

    p.scene_objects.push_back({interactee, cat.name, "o0"});
    for (int d = 1; d <= 2; ++d) {
      const double side = 20.0 + 60.0 * unit(rng);
      const double ox = (W - side) * unit(rng);
      const double oy = (H - side) * unit(rng);
      const auto& other = kCategories[static_cast<std::size_t>(unit(rng) * 8.0) % 8];
      p.scene_objects.push_back({BoundingBox(ox, oy, side, side), other.name, "o" + std::to_string(d)});
    }

    const std::string key = descriptor_key(img.image_id, 0);
    p.descriptor_ref = key;
    const auto [aspect_block, position_block] = geometric_features(PersonInstance{img.image_id, person, W, H});
    DescriptorBlock noise{blocks::kGist, {}};
    for (std::size_t d = 0; d < config.noise_dims; ++d) noise.values.push_back(unit(rng));
    img.persons.push_back(std::move(p));

    std::vector<double> values;
    values.insert(values.end(), aspect_block.values.begin(), aspect_block.values.end());
    values.insert(values.end(), position_block.values.begin(), position_block.values.end());
    values.insert(values.end(), pose.begin(), pose.end());
    values.insert(values.end(), noise.values.begin(), noise.values.end());
    out.store.add(key, DescriptorVector(layout, std::move(values)));
    out.dataset.images.push_back(std::move(img));
  }
  return out;
}

}  // namespace interactee
