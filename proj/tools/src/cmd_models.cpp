#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "commands.hpp"
#include "common.hpp"
#include "interactee/error.hpp"
#include "interactee/evaluation.hpp"
#include "interactee/image_io.hpp"

namespace interactee::cli {
namespace {

struct TrainingSet {
  std::vector<PersonRef> refs;
  std::vector<TrainingExample> examples;
};

TrainingSet training_set(const LoadedDataset& data, const std::string& split, const std::vector<std::string>& blocks) {
  TrainingSet t;
  t.refs = select_persons(data.file, split);
  for (const auto& r : t.refs) t.examples.push_back({person_descriptor(data, r, blocks), person_target(data.file, r)});
  if (t.examples.empty()) throw ValidationError("/images", "no training persons in split '" + split + "'");
  return t;
}

fs::path store_path(const std::string& dataset_path, const LoadedDataset& data) {
  if (data.file.descriptor_store.empty()) throw ValidationError("/descriptor_store", "dataset names no descriptor store");
  return fs::path(dataset_path).parent_path() / data.file.descriptor_store;
}

struct FitKnnOptions {
  std::string dataset;
  std::string out;
  std::string split = "train";
  std::string blocks;
  std::size_t k = kDefaultNeighbors;
  std::size_t max_pairs = kDefaultMaxPairs;
  std::uint64_t seed = 0;
};

void run_fit_knn(const FitKnnOptions& o) {
  const LoadedDataset data = load_dataset(o.dataset);
  KnnModelFile m;
  m.blocks = split_list(o.blocks);
  const TrainingSet t = training_set(data, o.split, m.blocks);
  if (o.k == 0 || o.k > t.examples.size()) throw UsageError("--k must be between 1 and the training size");
  const KnnModel model = KnnModel::fit(t.examples, o.k, o.max_pairs, o.seed);

  m.descriptor_store = relative_to(store_path(o.dataset, data), o.out);
  m.k = o.k;
  m.normalizer = model.normalizer();
  for (std::size_t i = 0; i < t.refs.size(); ++i) {
    m.keys.push_back(*person_at(data.file, t.refs[i]).descriptor_ref);
    m.params.push_back(t.examples[i].params);
  }
  write_json_file(o.out, knn_model_to_json(m));
  std::printf("knn model: %zu examples, k = %zu\n", m.keys.size(), m.k);
  for (std::size_t b = 0; b < m.normalizer.names.size(); ++b) {
    std::printf("  block %-10s scale %.6g\n", m.normalizer.names[b].c_str(), m.normalizer.scales[b]);
  }
}

struct TrainMdnOptions {
  std::string dataset;
  std::string out;
  std::string split = "train";
  std::string blocks;
  std::string hidden = "64";
  std::size_t components = 5;
  std::string loss_log;
  TrainConfig train;
};

void run_train_mdn(const TrainMdnOptions& o) {
  const LoadedDataset data = load_dataset(o.dataset);
  MdnModelFile m;
  m.blocks = split_list(o.blocks);
  const TrainingSet t = training_set(data, o.split, m.blocks);

  std::vector<std::size_t> hidden;
  for (const auto& h : split_list(o.hidden)) {
    try {
      hidden.push_back(static_cast<std::size_t>(std::stoul(h)));
    } catch (const std::exception&) {
      throw UsageError("--hidden expects comma-separated layer sizes");
    }
  }
  if (o.components == 0) throw UsageError("--components must be positive");

  const std::size_t dim = t.examples.front().descriptor.values().size();
  m.input_mean.assign(dim, 0.0);
  m.input_scale.assign(dim, 0.0);
  const double n = static_cast<double>(t.examples.size());
  for (const auto& e : t.examples)
    for (std::size_t i = 0; i < dim; ++i) m.input_mean[i] += e.descriptor.values()[i] / n;
  for (const auto& e : t.examples)
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = e.descriptor.values()[i] - m.input_mean[i];
      m.input_scale[i] += d * d / n;
    }
  for (double& s : m.input_scale) s = s < 1e-24 ? 1.0 : std::sqrt(s);

  const auto layout = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"input", dim}});
  std::vector<TrainingExample> standardized;
  for (const auto& e : t.examples) standardized.push_back({DescriptorVector(layout, m.standardize(e.descriptor)), e.params});

  const MdnNetwork init = mdn_init(dim, hidden, o.components, o.train.seed);
  const TrainResult result = train(init, standardized, o.train);
  m.net = result.net;
  write_json_file(o.out, mdn_model_to_json(m));

  if (!o.loss_log.empty()) {
    std::string csv = "iteration,loss\n";
    char line[64];
    for (std::size_t i = 0; i < result.loss_history.size(); ++i) {
      std::snprintf(line, sizeof line, "%zu,%.17g\n", i, result.loss_history[i]);
      csv += line;
    }
    write_text_file(o.loss_log, csv);
  }
  const std::size_t tail = std::min<std::size_t>(100, result.loss_history.size());
  double last = 0.0;
  for (std::size_t i = result.loss_history.size() - tail; i < result.loss_history.size(); ++i) last += result.loss_history[i];
  std::printf("mdn: %zu examples, %d iterations, mean loss over the last %zu: %.6g\n", standardized.size(),
              o.train.iterations, tail, tail ? last / static_cast<double>(tail) : 0.0);
}

struct PredictOptions {
  std::string dataset;
  std::string model = "knn";
  std::string model_file;
  std::string out;
  std::string split = "test";
  std::string heatmap_dir;
  std::size_t heatmap_width = 64;
  std::size_t heatmap_height = 48;
  std::size_t heatmap_samples = 500;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
};

std::string heatmap_name(const std::string& image_id, std::size_t person) {
  return image_id + "_" + std::to_string(person) + ".pgm";
}

void run_predict(const PredictOptions& o) {
  if (o.model != "knn" && o.model != "mdn") throw UsageError("--model must be knn or mdn");
  if (o.model == "mdn" && o.k) throw UsageError("--k applies to the knn model only");
  if (!o.heatmap_dir.empty() && (o.heatmap_width == 0 || o.heatmap_height == 0)) throw UsageError("heatmap size must be positive");
  const LoadedDataset data = load_dataset(o.dataset);
  const auto refs = select_persons(data.file, o.split);
  std::vector<Prediction> out;

  if (o.model == "knn") {
    const KnnModel model = load_knn_model(o.model_file, o.k);
    const auto blocks = knn_model_from_json(read_json_file(o.model_file)).blocks;
    for (const auto& r : refs) {
      const auto& img = data.file.images[r.image];
      const PersonInstance person = img.person_instance(r.person);
      const DescriptorVector d = person_descriptor(data, r, blocks);
      const LocalizationParams y = model.predict(d).params;
      out.push_back({img.image_id, r.person, y, denormalize_to_box(y, person.person_box)});
      if (!o.heatmap_dir.empty()) {
        write_pgm(fs::path(o.heatmap_dir) / heatmap_name(img.image_id, r.person),
                  model.predict_heatmap(d, person, o.heatmap_width, o.heatmap_height));
      }
    }
  } else {
    const MdnModelFile m = mdn_model_from_json(read_json_file(o.model_file));
    std::mt19937_64 rng(o.seed);
    for (const auto& r : refs) {
      const auto& img = data.file.images[r.image];
      const PersonInstance person = img.person_instance(r.person);
      const std::vector<double> x = m.standardize(person_descriptor(data, r, m.blocks));
      const MdnPrediction p = mdn_predict(m.net, x, person);
      out.push_back({img.image_id, r.person, p.params, p.box});
      if (!o.heatmap_dir.empty()) {
        std::vector<std::pair<BoundingBox, double>> votes;
        for (auto y : mdn_sample(mdn_forward(m.net, x), o.heatmap_samples, rng)) {
          y.a = std::max(y.a, 1e-4);
          votes.emplace_back(denormalize_to_box(y, person.person_box), 1.0);
        }
        write_pgm(fs::path(o.heatmap_dir) / heatmap_name(img.image_id, r.person),
                  rasterize_votes(votes, img.width, img.height, o.heatmap_width, o.heatmap_height));
      }
    }
  }
  write_json_file(o.out, predictions_to_json(o.model, out));
  std::printf("predicted %zu persons with the %s model\n", out.size(), o.model.c_str());
}

struct EvaluateOptions {
  std::string dataset;
  std::string predictions;
  std::string out;
  std::string csv;
  std::uint64_t seed = 0;
};

void run_evaluate(const EvaluateOptions& o) {
  const LoadedDataset data = load_dataset(o.dataset);
  const Json pj = read_json_file(o.predictions);
  const std::string model = pj.value("model", "model");
  const auto predictions = predictions_from_json(pj);

  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < data.file.images.size(); ++i) by_id[data.file.images[i].image_id] = i;

  std::vector<EvalRecord> ours, near, random;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    const std::string where = "/predictions/" + std::to_string(i);
    const auto it = by_id.find(p.image_id);
    if (it == by_id.end()) throw ValidationError(where + "/image_id", "unknown image '" + p.image_id + "'");
    const auto& img = data.file.images[it->second];
    if (p.person_index >= img.persons.size()) throw ValidationError(where + "/person_index", "no such person");
    const auto& person = img.persons[p.person_index];
    if (!person.gt_interactee) throw ValidationError(where, "person has no ground truth");
    const PersonInstance inst = img.person_instance(p.person_index);
    ours.push_back({img.image_id, person.person_box, *person.gt_interactee, p.box});
    near.push_back({img.image_id, person.person_box, *person.gt_interactee, near_person_baseline(inst)});
    random.push_back({img.image_id, person.person_box, *person.gt_interactee, random_baseline(inst, rng)});
  }

  const EvalReport r_ours = evaluate(ours);
  const EvalReport r_near = evaluate(near);
  const EvalReport r_random = evaluate(random);
  write_json_file(o.out, Json{{"n", r_ours.n},
                              {"model", model},
                              {"methods", {{model, r_ours}, {"near_person", r_near}, {"random", r_random}}}});
  if (!o.csv.empty()) write_text_file(o.csv, report_to_csv(r_ours));

  std::printf("%-12s %10s %10s %10s\n", "method", "pos_err", "size_err", "iou");
  for (const auto& [name, r] : {std::pair<std::string, const EvalReport*>{model, &r_ours},
                                {"near_person", &r_near},
                                {"random", &r_random}}) {
    std::printf("%-12s %10.4f %10.4f %10.4f\n", name.c_str(), r->mean_position_error, r->mean_size_error, r->mean_iou);
  }
}

}  // namespace

void add_model_commands(CLI::App& app, CommandTable& table) {
  {
    auto o = std::make_shared<FitKnnOptions>();
    auto* sub = app.add_subcommand("fit-knn", "Fit the nearest-neighbor regressor");
    sub->add_option("--dataset", o->dataset, "Dataset JSON with ground truth and descriptors")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Model JSON")->required();
    sub->add_option("--split", o->split, "train, test or all")->capture_default_str();
    sub->add_option("--blocks", o->blocks, "Comma-separated descriptor blocks (default: all)");
    sub->add_option("--k", o->k, "Neighbors")->capture_default_str();
    sub->add_option("--max-pairs", o->max_pairs, "Pair sample size for distance normalization")->capture_default_str();
    sub->add_option("--seed", o->seed, "Pair sampling seed")->capture_default_str();
    table.emplace_back(sub, [o] { run_fit_knn(*o); });
  }
  {
    auto o = std::make_shared<TrainMdnOptions>();
    auto* sub = app.add_subcommand("train-mdn", "Train the mixture density network");
    sub->add_option("--dataset", o->dataset, "Dataset JSON with ground truth and descriptors")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Model JSON")->required();
    sub->add_option("--split", o->split, "train, test or all")->capture_default_str();
    sub->add_option("--blocks", o->blocks, "Comma-separated descriptor blocks (default: all)");
    sub->add_option("--hidden", o->hidden, "Comma-separated hidden layer sizes")->capture_default_str();
    sub->add_option("--components", o->components, "Mixture components")->capture_default_str();
    sub->add_option("--iterations", o->train.iterations, "SGD iterations")->capture_default_str();
    sub->add_option("--learning-rate", o->train.learning_rate, "SGD step size")->capture_default_str();
    sub->add_option("--batch-size", o->train.batch_size, "Minibatch size")->capture_default_str();
    sub->add_option("--sigma-floor", o->train.sigma_floor, "Lower bound on component sigma")->capture_default_str();
    sub->add_option("--clip-norm", o->train.clip_norm, "Gradient-norm clip (0 disables)")->capture_default_str();
    sub->add_option("--seed", o->train.seed, "Initialization and shuffling seed")->capture_default_str();
    sub->add_option("--loss-log", o->loss_log, "CSV of per-iteration loss");
    table.emplace_back(sub, [o] { run_train_mdn(*o); });
  }
  {
    auto o = std::make_shared<PredictOptions>();
    auto* sub = app.add_subcommand("predict", "Predict interactee boxes with a fitted model");
    sub->add_option("--dataset", o->dataset, "Dataset JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--model", o->model, "knn or mdn")->capture_default_str();
    sub->add_option("--model-file", o->model_file, "Model JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Predictions JSON")->required();
    sub->add_option("--split", o->split, "train, test or all")->capture_default_str();
    sub->add_option("--k", o->k, "Override the stored neighbor count (knn)");
    sub->add_option("--heatmap-dir", o->heatmap_dir, "Write one PGM heatmap per person here");
    sub->add_option("--heatmap-width", o->heatmap_width, "Heatmap columns")->capture_default_str();
    sub->add_option("--heatmap-height", o->heatmap_height, "Heatmap rows")->capture_default_str();
    sub->add_option("--heatmap-samples", o->heatmap_samples, "Mixture samples per MDN heatmap")->capture_default_str();
    sub->add_option("--seed", o->seed, "Sampling seed for MDN heatmaps")->capture_default_str();
    table.emplace_back(sub, [o] { run_predict(*o); });
  }
  {
    auto o = std::make_shared<EvaluateOptions>();
    auto* sub = app.add_subcommand("evaluate", "Score predictions against ground truth and the baselines");
    sub->add_option("--dataset", o->dataset, "Dataset JSON with ground truth")->required()->check(CLI::ExistingFile);
    sub->add_option("--predictions", o->predictions, "Predictions JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Report JSON")->required();
    sub->add_option("--csv", o->csv, "Per-example CSV for the model");
    sub->add_option("--seed", o->seed, "Random baseline seed")->capture_default_str();
    table.emplace_back(sub, [o] { run_evaluate(*o); });
  }
}

}  // namespace interactee::cli
