#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "common.hpp"
#include "interactee/bleu.hpp"
#include "interactee/captions.hpp"
#include "interactee/error.hpp"
#include "interactee/image_io.hpp"
#include "interactee/importance.hpp"
#include "interactee/priming.hpp"
#include "interactee/seam_carving.hpp"

namespace interactee::cli {
namespace {

/// Either --box, or a predictions file plus --image-id / --person.
struct TargetBox {
  std::string box;
  std::string predictions;
  std::string image_id;
  std::size_t person = 0;

  BoundingBox resolve() const {
    if (!box.empty()) {
      if (!predictions.empty()) throw UsageError("give either --box or --predictions, not both");
      return parse_box(box);
    }
    if (predictions.empty() || image_id.empty()) throw UsageError("need --box, or --predictions with --image-id");
    const auto found = find_prediction(predictions_from_json(read_json_file(predictions)), image_id, person);
    if (!found) throw ValidationError("/predictions", "no prediction for " + image_id + " person " + std::to_string(person));
    return *found;
  }
};

void add_target_options(CLI::App* sub, TargetBox& t) {
  sub->add_option("--box", t.box, "Predicted interactee box x,y,w,h");
  sub->add_option("--predictions", t.predictions, "Predictions JSON to take the box from")->check(CLI::ExistingFile);
  sub->add_option("--image-id", t.image_id, "Image to look up in --predictions");
  sub->add_option("--person", t.person, "Person index to look up in --predictions")->capture_default_str();
}

template <typename T>
std::vector<T> read_list(const std::string& path, const char* key) {
  const Json j = read_json_file(path);
  const Json& arr = j.is_object() ? j.at(key) : j;
  if (!arr.is_array()) throw ValidationError(std::string("/") + key, "expected a list");
  return arr.get<std::vector<T>>();
}

struct PrimeOptions {
  std::string detections;
  std::string out;
  std::string rule = "center";
  double enlargement = kPrimingEnlargement;
  double iou_threshold = 0.0;
  TargetBox target;
};

void run_prime(const PrimeOptions& o) {
  PrimingOptions opts;
  if (o.rule == "center") opts.rule = PrimingRule::kCenterInside;
  else if (o.rule == "iou") opts.rule = PrimingRule::kIouAbove;
  else throw UsageError("--rule must be center or iou");
  if (!(o.enlargement > 0.0)) throw UsageError("--enlargement must be positive");
  opts.enlargement = o.enlargement;
  opts.iou_threshold = o.iou_threshold;

  const BoundingBox predicted = o.target.resolve();
  const auto dets = read_list<Detection>(o.detections, "detections");
  const auto primed = prime_detections(dets, predicted, opts);
  std::size_t kept = 0;
  for (const auto& d : primed) kept += std::isinf(d.score) && d.score < 0 ? 0 : 1;
  write_json_file(o.out, Json{{"predicted", predicted}, {"detections", primed}});
  std::printf("kept %zu of %zu detections\n", kept, primed.size());
}

struct RetargetOptions {
  std::string in;
  std::string out;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::string> protect;
};

void run_retarget(const RetargetOptions& o) {
  std::vector<BoundingBox> boxes;
  for (const auto& p : o.protect) boxes.push_back(parse_box(p));
  const RgbImage image = read_png(o.in);
  if (o.width < 2 || o.height < 2) throw UsageError("--width and --height must be at least 2");
  const RgbImage out = retarget(image, o.width, o.height, boxes);
  write_png(o.out, out);
  std::printf("retargeted %zux%zu -> %zux%zu with %zu protected boxes\n", image.width(), image.height(), out.width(),
              out.height(), boxes.size());
}

Json ranking_json(const std::vector<RankedObject>& ranked) {
  Json arr = Json::array();
  for (const auto& r : ranked) arr.push_back({{"object", r.object}, {"score", r.score}});
  return arr;
}

struct ImportanceOptions {
  std::string objects;
  std::string dataset;
  std::string out;
  TargetBox target;
};

void run_importance(const ImportanceOptions& o) {
  if (!o.objects.empty()) {
    const auto objects = read_list<SceneObject>(o.objects, "objects");
    const auto ranked = rank_importance(objects, o.target.resolve());
    write_json_file(o.out, Json{{"ranking", ranking_json(ranked)}});
    std::printf("most important: %s (%s, score %.4f)\n", ranked.front().object.object_id.c_str(),
                ranked.front().object.category.c_str(), ranked.front().score);
    return;
  }
  if (o.dataset.empty() || o.target.predictions.empty()) {
    throw UsageError("need --objects with a box, or --dataset with --predictions");
  }
  const LoadedDataset data = load_dataset(o.dataset);
  const auto predictions = predictions_from_json(read_json_file(o.target.predictions));
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < data.file.images.size(); ++i) by_id[data.file.images[i].image_id] = i;

  Json rows = Json::array();
  std::size_t scored = 0, hits = 0;
  for (const auto& p : predictions) {
    const auto it = by_id.find(p.image_id);
    if (it == by_id.end()) throw ValidationError("/predictions", "unknown image '" + p.image_id + "'");
    const auto& person = data.file.images[it->second].persons.at(p.person_index);
    if (person.scene_objects.empty()) continue;
    const auto ranked = rank_importance(person.scene_objects, p.box);
    ++scored;
    const bool hit = person.interactee_category && ranked.front().object.category == *person.interactee_category;
    hits += hit ? 1 : 0;
    rows.push_back({{"image_id", p.image_id}, {"person_index", p.person_index}, {"ranking", ranking_json(ranked)}});
  }
  write_json_file(o.out, Json{{"images", rows}});
  std::printf("ranked objects for %zu persons; top object matches the interactee category in %zu\n", scored, hits);
}

struct CaptionOptions {
  std::string dataset;
  std::string predictions;
  std::string out;
  std::string db_split = "train";
  std::string blocks;
  std::size_t k_s = kDefaultCaptionNeighbors;
  std::size_t max_pairs = kDefaultMaxPairs;
  std::uint64_t seed = 0;
};

std::string join(const Tokens& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

void run_caption(const CaptionOptions& o) {
  if (o.k_s == 0) throw UsageError("--k-s must be positive");
  const LoadedDataset data = load_dataset(o.dataset);
  const auto blocks = split_list(o.blocks);

  std::vector<CaptionedExample> db;
  std::vector<std::pair<std::string, std::size_t>> db_ids;
  for (const auto& r : select_persons(data.file, o.db_split)) {
    const auto& person = person_at(data.file, r);
    if (person.captions.empty()) continue;
    CaptionedExample e{person_descriptor(data, r, blocks), person_target(data.file, r), {}};
    for (const auto& c : person.captions) e.sentences.push_back(tokenize_sentence(c));
    db.push_back(std::move(e));
    db_ids.emplace_back(data.file.images[r.image].image_id, r.person);
  }
  if (db.size() < o.k_s) throw ValidationError("/images", "caption database has fewer than --k-s entries");
  const CaptionIndex index(db, o.max_pairs, o.seed);

  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < data.file.images.size(); ++i) by_id[data.file.images[i].image_id] = i;

  Json rows = Json::array();
  double bleu_sum = 0.0;
  std::size_t bleu_n = 0;
  for (const auto& p : predictions_from_json(read_json_file(o.predictions))) {
    const auto it = by_id.find(p.image_id);
    if (it == by_id.end()) throw ValidationError("/predictions", "unknown image '" + p.image_id + "'");
    const PersonRef ref{it->second, p.person_index};
    const DescriptorVector d = person_descriptor(data, ref, blocks);

    // One extra neighbor so the query can be skipped when it sits in the database.
    const auto matches = index.nearest(d, p.params, std::min(o.k_s + 1, db.size()));
    Json sentences = Json::array();
    Json neighbors = Json::array();
    std::vector<Tokens> retrieved;
    for (const auto& m : matches) {
      if (neighbors.size() == o.k_s) break;
      if (db_ids[m.index] == std::pair{p.image_id, p.person_index}) continue;
      neighbors.push_back({{"image_id", db_ids[m.index].first}, {"person_index", db_ids[m.index].second}, {"distance", m.distance}});
      for (const auto& s : db[m.index].sentences) {
        sentences.push_back(join(s));
        retrieved.push_back(s);
      }
    }
    Json row{{"image_id", p.image_id}, {"person_index", p.person_index}, {"neighbors", neighbors}, {"sentences", sentences}};
    const auto& own = person_at(data.file, ref).captions;
    if (!own.empty() && !retrieved.empty()) {
      std::vector<Tokens> refs;
      for (const auto& c : own) refs.push_back(tokenize_sentence(c));
      const BleuScore s = bleu(retrieved.front(), refs);
      row["bleu"] = s;
      bleu_sum += s.combined;
      ++bleu_n;
    }
    rows.push_back(std::move(row));
  }
  write_json_file(o.out, Json{{"k_s", o.k_s}, {"queries", rows}});
  std::printf("retrieved captions for %zu queries", rows.size());
  if (bleu_n) std::printf("; mean BLEU of the top sentence %.4f", bleu_sum / static_cast<double>(bleu_n));
  std::printf("\n");
}

struct BleuOptions {
  std::string candidates;
  std::string references;
  std::string out;
  std::size_t max_n = 4;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void run_bleu(const BleuOptions& o) {
  if (o.max_n == 0) throw UsageError("--max-n must be positive");
  const auto cands = read_lines(o.candidates);
  const auto refs = read_lines(o.references);
  if (cands.size() != refs.size()) {
    throw ValidationError(o.references, "expected " + std::to_string(cands.size()) + " reference lines, found " +
                                            std::to_string(refs.size()));
  }
  Json rows = Json::array();
  std::vector<double> mean_per_n(o.max_n, 0.0);
  double mean = 0.0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::vector<Tokens> r;
    std::size_t start = 0;
    for (;;) {
      const std::size_t bar = refs[i].find("|||", start);
      r.push_back(tokenize_sentence(refs[i].substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 3;
    }
    const BleuScore s = bleu(tokenize_sentence(cands[i]), r, o.max_n);
    rows.push_back(s);
    mean += s.combined;
    for (std::size_t n = 0; n < o.max_n; ++n) mean_per_n[n] += s.per_n[n];
  }
  const double count = cands.empty() ? 1.0 : static_cast<double>(cands.size());
  mean /= count;
  for (double& v : mean_per_n) v /= count;
  if (!o.out.empty()) write_json_file(o.out, Json{{"mean_combined", mean}, {"mean_per_n", mean_per_n}, {"sentences", rows}});
  std::printf("sentences: %zu\n", cands.size());
  for (std::size_t n = 0; n < o.max_n; ++n) std::printf("BLEU-%zu: %.4f\n", n + 1, mean_per_n[n]);
  std::printf("combined: %.4f\n", mean);
}

}  // namespace

void add_app_commands(CLI::App& app, CommandTable& table) {
  {
    auto o = std::make_shared<PrimeOptions>();
    auto* sub = app.add_subcommand("prime", "Suppress detections outside the enlarged predicted interactee box");
    sub->add_option("--detections", o->detections, "Detections JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Primed detections JSON")->required();
    sub->add_option("--rule", o->rule, "center or iou")->capture_default_str();
    sub->add_option("--enlargement", o->enlargement, "Scale applied to the predicted box")->capture_default_str();
    sub->add_option("--iou-threshold", o->iou_threshold, "Threshold for --rule iou")->capture_default_str();
    add_target_options(sub, o->target);
    table.emplace_back(sub, [o] { run_prime(*o); });
  }
  {
    auto o = std::make_shared<RetargetOptions>();
    auto* sub = app.add_subcommand("retarget", "Seam-carve a PNG while protecting person and interactee boxes");
    sub->add_option("--in", o->in, "Input PNG")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Output PNG")->required();
    sub->add_option("--width", o->width, "Target width")->required();
    sub->add_option("--height", o->height, "Target height")->required();
    sub->add_option("--protect", o->protect, "Protected box x,y,w,h (repeatable)");
    table.emplace_back(sub, [o] { run_retarget(*o); });
  }
  {
    auto o = std::make_shared<ImportanceOptions>();
    auto* sub = app.add_subcommand("importance", "Rank scene objects by overlap with the predicted interactee");
    sub->add_option("--objects", o->objects, "Scene objects JSON")->check(CLI::ExistingFile);
    sub->add_option("--dataset", o->dataset, "Dataset JSON with scene objects")->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Ranking JSON")->required();
    add_target_options(sub, o->target);
    table.emplace_back(sub, [o] { run_importance(*o); });
  }
  {
    auto o = std::make_shared<CaptionOptions>();
    auto* sub = app.add_subcommand("caption", "Retrieve sentences from the nearest captioned examples");
    sub->add_option("--dataset", o->dataset, "Dataset JSON with captions")->required()->check(CLI::ExistingFile);
    sub->add_option("--predictions", o->predictions, "Predictions JSON (queries)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Retrieved captions JSON")->required();
    sub->add_option("--db-split", o->db_split, "Split used as the caption database")->capture_default_str();
    sub->add_option("--blocks", o->blocks, "Comma-separated descriptor blocks (default: all)");
    sub->add_option("--k-s", o->k_s, "Neighbors to retrieve")->capture_default_str();
    sub->add_option("--max-pairs", o->max_pairs, "Pair sample size for distance normalization")->capture_default_str();
    sub->add_option("--seed", o->seed, "Pair sampling seed")->capture_default_str();
    table.emplace_back(sub, [o] { run_caption(*o); });
  }
  {
    auto o = std::make_shared<BleuOptions>();
    auto* sub = app.add_subcommand("bleu", "Score candidate sentences against references");
    sub->add_option("--candidates", o->candidates, "One candidate sentence per line")->required()->check(CLI::ExistingFile);
    sub->add_option("--references", o->references, "Matching lines; several references separated by |||")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--max-n", o->max_n, "Largest n-gram order")->capture_default_str();
    sub->add_option("--out", o->out, "Per-sentence scores JSON");
    table.emplace_back(sub, [o] { run_bleu(*o); });
  }
}

}  // namespace interactee::cli
