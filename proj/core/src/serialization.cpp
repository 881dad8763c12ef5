#include "interactee/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "interactee/error.hpp"

namespace interactee {

void to_json(Json& j, const BoundingBox& b) { j = Json::array({b.x_min(), b.y_min(), b.width(), b.height()}); }

void from_json(const Json& j, BoundingBox& b) {
  if (j.is_array()) {
    if (j.size() != 4) throw ValidationError("", "box arrays must have four entries");
    b = BoundingBox(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  } else if (j.is_object()) {
    b = BoundingBox::from_corners(j.at("x_min").get<double>(), j.at("y_min").get<double>(), j.at("x_max").get<double>(),
                                  j.at("y_max").get<double>());
  } else {
    throw ValidationError("", "a box must be [x, y, w, h] or a corner object");
  }
}

void to_json(Json& j, const LocalizationParams& p) { j = Json::array({p.dx, p.dy, p.a}); }

void from_json(const Json& j, LocalizationParams& p) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("", "localization params must be [dx, dy, a]");
  p = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void to_json(Json& j, const Quantizer& q) {
  j = Json::object();
  j["format"] = "interactee.quantizer";
  j["version"] = 1;
  j["seed"] = q.seed;
  Json xy = Json::array();
  for (const auto& c : q.xy_centroids) xy.push_back({c.x, c.y});
  j["xy_centroids"] = xy;
  j["area_centroids"] = q.area_centroids;
  j["xy_distortion"] = q.xy_distortion;
  j["area_distortion"] = q.area_distortion;
}

void from_json(const Json& j, Quantizer& q) {
  if (j.value("format", "") != "interactee.quantizer") throw ValidationError("/format", "not a quantizer codebook");
  q = Quantizer{};
  q.seed = j.at("seed").get<std::uint64_t>();
  const auto& xy = j.at("xy_centroids");
  if (xy.size() != kDisplacementClusters) throw ValidationError("/xy_centroids", "expected 10 centroids");
  for (std::size_t c = 0; c < kDisplacementClusters; ++c) q.xy_centroids[c] = {xy[c].at(0).get<double>(), xy[c].at(1).get<double>()};
  const auto& area = j.at("area_centroids");
  if (area.size() != kAreaClusters) throw ValidationError("/area_centroids", "expected 4 centroids");
  for (std::size_t c = 0; c < kAreaClusters; ++c) q.area_centroids[c] = area[c].get<double>();
  q.xy_distortion = j.at("xy_distortion").get<double>();
  q.area_distortion = j.at("area_distortion").get<double>();
}

void to_json(Json& j, const BlockNormalizer& n) {
  j = Json::array();
  for (std::size_t i = 0; i < n.names.size(); ++i) j.push_back({{"name", n.names[i]}, {"scale", n.scales[i]}});
}

void from_json(const Json& j, BlockNormalizer& n) {
  n = BlockNormalizer{};
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double s = j[i].at("scale").get<double>();
    if (!(s > 0.0)) throw ValidationError("/" + std::to_string(i) + "/scale", "normalizer scales must be positive");
    n.names.push_back(j[i].at("name").get<std::string>());
    n.scales.push_back(s);
  }
}

void to_json(Json& j, const MdnNetwork& net) {
  j = Json::object();
  j["format"] = "interactee.mdn";
  j["version"] = 1;
  j["input_dim"] = net.input_dim;
  j["hidden_dims"] = net.hidden_dims;
  j["components"] = net.components;
  j["sigma_floor"] = net.sigma_floor;
  j["parameters"] = net.parameters;
}

void from_json(const Json& j, MdnNetwork& net) {
  if (j.value("format", "") != "interactee.mdn") throw ValidationError("/format", "not an MDN network file");
  net = MdnNetwork{};
  net.input_dim = j.at("input_dim").get<std::size_t>();
  net.hidden_dims = j.at("hidden_dims").get<std::vector<std::size_t>>();
  net.components = j.at("components").get<std::size_t>();
  net.sigma_floor = j.at("sigma_floor").get<double>();
  net.parameters = j.at("parameters").get<std::vector<double>>();
  if (net.parameters.size() != MdnNetwork::parameter_count(net.input_dim, net.hidden_dims, net.components)) {
    throw ValidationError("/parameters", "parameter count does not match the declared dimensions");
  }
  for (double p : net.parameters) {
    if (!std::isfinite(p)) throw ValidationError("/parameters", "parameters must be finite");
  }
}

void to_json(Json& j, const GmmParams& g) {
  j = Json{{"weights", g.weights}, {"means", g.means}, {"sigmas", g.sigmas}};
}

void to_json(Json& j, const EvalReport& r) {
  Json rows = Json::array();
  for (const auto& m : r.per_example) {
    rows.push_back({{"image_id", m.image_id}, {"pos_err", m.position_error}, {"size_err", m.size_error}, {"iou", m.iou}});
  }
  j = Json{{"n", r.n},
           {"mean_position_error", r.mean_position_error},
           {"mean_size_error", r.mean_size_error},
           {"mean_iou", r.mean_iou},
           {"per_example", rows}};
}

void to_json(Json& j, const TypeDistribution& d) {
  j = Json{{"type_id", d.type_id},
           {"xy_index", d.type_id / kAreaClusters},
           {"area_index", d.type_id % kAreaClusters},
           {"total", d.total},
           {"counts", d.counts},
           {"probabilities", d.probabilities},
           {"entropy", d.entropy}};
}

void to_json(Json& j, const BleuScore& s) {
  j = Json{{"precisions", s.precisions}, {"per_n", s.per_n}, {"brevity_penalty", s.brevity_penalty}, {"combined", s.combined}};
}

// JSON has no infinities; a suppressed detection's score is written as null.
void to_json(Json& j, const Detection& d) {
  j = Json{{"box", d.box}, {"category", d.category}};
  if (std::isfinite(d.score)) j["score"] = d.score;
  else j["score"] = nullptr;
}

void from_json(const Json& j, Detection& d) {
  d.box = j.at("box").get<BoundingBox>();
  d.category = j.value("category", "");
  const auto& s = j.at("score");
  d.score = s.is_null() ? -std::numeric_limits<double>::infinity() : s.get<double>();
}

void to_json(Json& j, const SceneObject& o) { j = Json{{"object_id", o.object_id}, {"category", o.category}, {"box", o.box}}; }

void from_json(const Json& j, SceneObject& o) {
  o.object_id = j.at("object_id").get<std::string>();
  o.category = j.value("category", "");
  o.box = j.at("box").get<BoundingBox>();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace interactee
