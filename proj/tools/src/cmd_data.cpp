#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "commands.hpp"
#include "common.hpp"
#include "interactee/consensus.hpp"
#include "interactee/interaction_types.hpp"
#include "interactee/synthetic.hpp"

namespace interactee::cli {
namespace {

struct SynthOptions {
  std::string out_dir;
  SyntheticConfig config;
};

void run_synth(const SynthOptions& o) {
  const fs::path dir(o.out_dir);
  auto data = make_synthetic_dataset(o.config, "descriptors.bin");
  data.store.save(dir / "descriptors.bin");
  save_dataset(data.dataset, dir / "dataset.json");
  std::printf("wrote %zu images to %s\n", data.dataset.images.size(), (dir / "dataset.json").string().c_str());
}

struct ConsensusOptions {
  std::string dataset;
  std::string out;
  double bandwidth_fraction = 0.1;
};

void run_consensus(const ConsensusOptions& o) {
  if (!(o.bandwidth_fraction > 0.0)) throw UsageError("--bandwidth-fraction must be positive");
  LoadedDataset data = load_dataset(o.dataset);
  DatasetFile& ds = data.file;
  std::size_t filled = 0;
  for (auto& img : ds.images) {
    const double bandwidth = o.bandwidth_fraction * std::hypot(img.width, img.height);
    for (std::size_t p = 0; p < img.persons.size(); ++p) {
      auto& person = img.persons[p];
      if (person.annotator_boxes.empty()) continue;
      person.gt_interactee = consensus_box({img.image_id, p, person.annotator_boxes}, bandwidth);
      ++filled;
    }
  }
  if (!ds.descriptor_store.empty()) {
    ds.descriptor_store = relative_to(fs::path(o.dataset).parent_path() / ds.descriptor_store, o.out);
  }
  save_dataset(ds, o.out);
  std::printf("consensus boxes: %zu (clamped on load: %zu)\n", filled, data.clamped_boxes);
}

struct QuantizeOptions {
  std::string dataset;
  std::string out;
  std::string report;
  std::string quantizer;
  std::string split = "train";
  std::uint64_t seed = 0;
};

void run_quantize(const QuantizeOptions& o) {
  const LoadedDataset data = load_dataset(o.dataset);
  const auto refs = select_persons(data.file, o.split);

  Quantizer q;
  if (!o.quantizer.empty()) {
    q = read_json_file(o.quantizer).get<Quantizer>();
  } else {
    std::vector<LocalizationParams> ys;
    for (const auto& r : refs) ys.push_back(person_target(data.file, r));
    q = fit_quantizer(ys, o.seed);
    if (o.out.empty()) throw UsageError("--out is required when fitting a quantizer");
  }
  if (!o.out.empty()) write_json_file(o.out, Json(q));

  std::vector<std::pair<InteractionType, std::string>> labelled;
  Json assignments = Json::array();
  for (const auto& r : refs) {
    const auto& person = person_at(data.file, r);
    const InteractionType t = assign_type(q, person_target(data.file, r));
    const std::string label = person.interactee_category.value_or("unknown");
    labelled.emplace_back(t, label);
    assignments.push_back({{"image_id", data.file.images[r.image].image_id},
                           {"person_index", r.person},
                           {"type_id", t.type_id()},
                           {"xy_index", t.xy_index},
                           {"area_index", t.area_index},
                           {"category", label}});
  }
  const auto dist = type_distribution(labelled);
  std::size_t used = 0;
  for (const auto& d : dist) used += d.total > 0 ? 1 : 0;
  if (!o.report.empty()) write_json_file(o.report, Json{{"assignments", assignments}, {"distribution", dist}});
  std::printf("interaction types: %zu, populated: %zu, examples: %zu\n", kInteractionTypeCount, used, refs.size());
  std::printf("distortion: xy %.6g, area %.6g\n", q.xy_distortion, q.area_distortion);
}

}  // namespace

void add_data_commands(CLI::App& app, CommandTable& table) {
  {
    auto o = std::make_shared<SynthOptions>();
    auto* sub = app.add_subcommand("synth", "Generate a synthetic dataset with a known interactee generator");
    sub->add_option("--out-dir", o->out_dir, "Directory for dataset.json and descriptors.bin")->required();
    sub->add_option("--images", o->config.images, "Number of images")->capture_default_str();
    sub->add_option("--seed", o->config.seed, "Random seed")->capture_default_str();
    sub->add_option("--train-fraction", o->config.train_fraction, "Fraction of images in the train split")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--annotators", o->config.annotators, "Annotator boxes per person")->capture_default_str();
    sub->add_option("--outlier-probability", o->config.outlier_probability, "Chance of one far outlier annotation")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--noise-dims", o->config.noise_dims, "Uninformative descriptor dimensions")->capture_default_str();
    table.emplace_back(sub, [o] { run_synth(*o); });
  }
  {
    auto o = std::make_shared<ConsensusOptions>();
    auto* sub = app.add_subcommand("consensus", "Reduce annotator boxes to one ground-truth interactee box");
    sub->add_option("--dataset", o->dataset, "Input dataset JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Output dataset JSON")->required();
    sub->add_option("--bandwidth-fraction", o->bandwidth_fraction, "Mean-shift bandwidth as a fraction of the image diagonal")
        ->capture_default_str();
    table.emplace_back(sub, [o] { run_consensus(*o); });
  }
  {
    auto o = std::make_shared<QuantizeOptions>();
    auto* sub = app.add_subcommand("quantize", "Fit or apply the 10x4 interaction-type quantizer");
    sub->add_option("--dataset", o->dataset, "Dataset JSON with ground truth")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Where to write the fitted quantizer");
    sub->add_option("--quantizer", o->quantizer, "Existing quantizer to apply instead of fitting")->check(CLI::ExistingFile);
    sub->add_option("--report", o->report, "Assignments and per-type category distributions (JSON)");
    sub->add_option("--split", o->split, "train, test or all")->capture_default_str();
    sub->add_option("--seed", o->seed, "k-means seed")->capture_default_str();
    table.emplace_back(sub, [o] { run_quantize(*o); });
  }
}

}  // namespace interactee::cli
