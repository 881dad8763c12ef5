#include "interactee/mdn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "interactee/error.hpp"

namespace interactee {
namespace {

constexpr double kMinPredictedArea = 1e-4;

struct LayerView {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
};

std::vector<LayerView> layer_views(const MdnNetwork& net) {
  const auto dims = net.layer_dims();
  std::vector<LayerView> layers;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    LayerView v{dims[l], dims[l + 1], offset, offset + dims[l] * dims[l + 1]};
    offset = v.bias_offset + v.out;
    layers.push_back(v);
  }
  return layers;
}

/// Activations per layer: acts[0] = x, acts[l+1] = layer l output (tanh for
/// hidden layers, identity for the head).
std::vector<std::vector<double>> forward_pass(const MdnNetwork& net, std::span<const double> x) {
  if (x.size() != net.input_dim) {
    throw DimensionMismatch("MDN expects input of dimension " + std::to_string(net.input_dim) + ", got " +
                            std::to_string(x.size()));
  }
  const auto layers = layer_views(net);
  std::vector<std::vector<double>> acts;
  acts.reserve(layers.size() + 1);
  acts.emplace_back(x.begin(), x.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerView& v = layers[l];
    const auto& in = acts.back();
    std::vector<double> out(v.out);
    for (std::size_t o = 0; o < v.out; ++o) {
      double z = net.parameters[v.bias_offset + o];
      const double* w = net.parameters.data() + v.weight_offset + o * v.in;
      for (std::size_t i = 0; i < v.in; ++i) z += w[i] * in[i];
      out[o] = (l + 1 < layers.size()) ? std::tanh(z) : z;
    }
    acts.push_back(std::move(out));
  }
  return acts;
}

double log_sum_exp(std::span<const double> v) {
  const double peak = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - peak);
  return peak + std::log(sum);
}

double squared_residual(const std::array<double, 3>& mean, const LocalizationParams& y) {
  const double a = y.dx - mean[0];
  const double b = y.dy - mean[1];
  const double c = y.a - mean[2];
  return a * a + b * b + c * c;
}

/// Per-component log(alpha_i * N(y; mu_i, sigma_i^2 I)).
std::vector<double> component_log_terms(const GmmParams& gmm, const LocalizationParams& y) {
  const double log_norm = -1.5 * std::log(2.0 * std::numbers::pi);
  std::vector<double> terms(gmm.size());
  for (std::size_t i = 0; i < gmm.size(); ++i) {
    const double s = gmm.sigmas[i];
    terms[i] = std::log(gmm.weights[i]) + log_norm - 3.0 * std::log(s) - squared_residual(gmm.means[i], y) / (2.0 * s * s);
  }
  return terms;
}

}  // namespace

std::vector<std::size_t> MdnNetwork::layer_dims() const {
  std::vector<std::size_t> dims{input_dim};
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(output_dim());
  return dims;
}

std::size_t MdnNetwork::parameter_count(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                                        std::size_t components) {
  std::size_t count = 0;
  std::size_t prev = input_dim;
  for (std::size_t h : hidden_dims) {
    count += prev * h + h;
    prev = h;
  }
  return count + prev * 5 * components + 5 * components;
}

MdnNetwork mdn_init(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims, std::size_t components,
                    std::uint64_t seed) {
  if (input_dim == 0 || components == 0) throw InvalidArgument("MDN dimensions must be at least 1");
  for (std::size_t h : hidden_dims) {
    if (h == 0) throw InvalidArgument("MDN hidden layers must have at least one unit");
  }
  MdnNetwork net;
  net.input_dim = input_dim;
  net.hidden_dims = hidden_dims;
  net.components = components;
  net.parameters.assign(MdnNetwork::parameter_count(input_dim, hidden_dims, components), 0.0);

  std::mt19937_64 rng(seed);
  for (const LayerView& v : layer_views(net)) {
    const double limit = std::sqrt(6.0 / static_cast<double>(v.in + v.out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (std::size_t i = 0; i < v.in * v.out; ++i) net.parameters[v.weight_offset + i] = dist(rng);
  }
  return net;
}

std::vector<double> mdn_raw_output(const MdnNetwork& net, std::span<const double> x) {
  return forward_pass(net, x).back();
}

GmmParams gmm_from_output(std::span<const double> output, std::size_t m, double sigma_floor) {
  if (output.size() != 5 * m) throw DimensionMismatch("MDN output head has the wrong size");
  GmmParams g;
  const auto logits = output.subspan(0, m);
  const double lse = log_sum_exp(logits);
  g.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.weights[i] = std::exp(logits[i] - lse);
  g.means.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.means[i] = {output[m + 3 * i], output[m + 3 * i + 1], output[m + 3 * i + 2]};
  g.sigmas.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.sigmas[i] = std::max(std::exp(output[4 * m + i]), sigma_floor);
  return g;
}

GmmParams mdn_forward(const MdnNetwork& net, std::span<const double> x) {
  return gmm_from_output(mdn_raw_output(net, x), net.components, net.sigma_floor);
}

double nll(const GmmParams& gmm, const LocalizationParams& y) {
  const auto terms = component_log_terms(gmm, y);
  return -log_sum_exp(terms);
}

double nll_with_gradient(const MdnNetwork& net, std::span<const double> x, const LocalizationParams& y,
                         std::span<double> grad) {
  if (grad.size() != net.parameters.size()) throw DimensionMismatch("gradient buffer has the wrong size");
  const auto acts = forward_pass(net, x);
  const auto& out = acts.back();
  const std::size_t m = net.components;
  const GmmParams gmm = gmm_from_output(out, m, net.sigma_floor);
  const auto terms = component_log_terms(gmm, y);
  const double lse = log_sum_exp(terms);

  // Gradient of the loss with respect to the raw head.
  std::vector<double> delta(out.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double posterior = std::exp(terms[i] - lse);
    const double s2 = gmm.sigmas[i] * gmm.sigmas[i];
    delta[i] = gmm.weights[i] - posterior;
    const double resid[3] = {y.dx - gmm.means[i][0], y.dy - gmm.means[i][1], y.a - gmm.means[i][2]};
    for (std::size_t d = 0; d < 3; ++d) delta[m + 3 * i + d] = -posterior * resid[d] / s2;
    const bool clamped = std::exp(out[4 * m + i]) < net.sigma_floor;
    delta[4 * m + i] = clamped ? 0.0 : posterior * (3.0 - squared_residual(gmm.means[i], y) / s2);
  }

  const auto layers = layer_views(net);
  for (std::size_t l = layers.size(); l-- > 0;) {
    const LayerView& v = layers[l];
    const auto& in = acts[l];
    for (std::size_t o = 0; o < v.out; ++o) {
      grad[v.bias_offset + o] += delta[o];
      double* gw = grad.data() + v.weight_offset + o * v.in;
      for (std::size_t i = 0; i < v.in; ++i) gw[i] += delta[o] * in[i];
    }
    if (l == 0) break;
    std::vector<double> prev(v.in, 0.0);
    for (std::size_t o = 0; o < v.out; ++o) {
      const double* w = net.parameters.data() + v.weight_offset + o * v.in;
      for (std::size_t i = 0; i < v.in; ++i) prev[i] += w[i] * delta[o];
    }
    for (std::size_t i = 0; i < v.in; ++i) prev[i] *= 1.0 - in[i] * in[i];  // tanh'
    delta = std::move(prev);
  }
  return -lse;
}

TrainResult train(MdnNetwork net, std::span<const TrainingExample> examples, const TrainConfig& cfg) {
  if (cfg.iterations < 0 || cfg.batch_size == 0 || !(cfg.learning_rate > 0.0) || !(cfg.sigma_floor > 0.0)) {
    throw InvalidArgument("MDN training config values must be positive");
  }
  net.sigma_floor = cfg.sigma_floor;
  TrainResult result{std::move(net), {}};
  if (cfg.iterations == 0) return result;
  if (examples.empty()) throw EmptyInput("MDN training needs at least one example");
  for (const auto& ex : examples) {
    if (ex.descriptor.values().size() != result.net.input_dim) {
      throw DimensionMismatch("training descriptor dimension does not match the MDN input");
    }
  }

  MdnNetwork& model = result.net;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t cursor = 0;

  std::vector<double> grad(model.parameters.size());
  std::vector<std::size_t> batch(cfg.batch_size);
  result.loss_history.reserve(static_cast<std::size_t>(cfg.iterations));

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (auto& b : batch) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      b = order[cursor++];
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t b : batch) {
      loss += nll_with_gradient(model, examples[b].descriptor.values(), examples[b].params, grad);
    }
    const double scale = 1.0 / static_cast<double>(batch.size());
    loss *= scale;
    double norm2 = 0.0;
    for (double& g : grad) {
      g *= scale;
      norm2 += g * g;
    }
    if (!std::isfinite(loss) || !std::isfinite(norm2)) {
      std::ostringstream os;
      os << "non-finite MDN loss at iteration " << iter << ", batch indices [";
      for (std::size_t i = 0; i < batch.size(); ++i) os << (i ? ", " : "") << batch[i];
      os << "]";
      throw NonFiniteLoss(os.str());
    }
    double step = cfg.learning_rate;
    const double norm = std::sqrt(norm2);
    if (cfg.clip_norm > 0.0 && norm > cfg.clip_norm) step *= cfg.clip_norm / norm;
    for (std::size_t p = 0; p < grad.size(); ++p) model.parameters[p] -= step * grad[p];
    result.loss_history.push_back(loss);
  }

  for (double p : model.parameters) {
    if (!std::isfinite(p)) throw NonFiniteLoss("MDN parameters became non-finite during training");
  }
  return result;
}

double gradient_check(const MdnNetwork& net, const TrainingExample& example, double epsilon) {
  const auto x = example.descriptor.values();
  std::vector<double> analytic(net.parameters.size(), 0.0);
  nll_with_gradient(net, x, example.params, analytic);

  MdnNetwork probe = net;
  double worst = 0.0;
  for (std::size_t p = 0; p < probe.parameters.size(); ++p) {
    const double original = probe.parameters[p];
    probe.parameters[p] = original + epsilon;
    const double up = nll(mdn_forward(probe, x), example.params);
    probe.parameters[p] = original - epsilon;
    const double down = nll(mdn_forward(probe, x), example.params);
    probe.parameters[p] = original;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double denom = std::max({std::abs(analytic[p]), std::abs(numeric), 1e-8});
    worst = std::max(worst, std::abs(analytic[p] - numeric) / denom);
  }
  return worst;
}

std::size_t highest_weight_component(const GmmParams& gmm) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < gmm.size(); ++i) {
    if (gmm.weights[i] > gmm.weights[best]) best = i;
  }
  return best;
}

MdnPrediction mdn_predict(const MdnNetwork& net, std::span<const double> x, const PersonInstance& person) {
  const GmmParams gmm = mdn_forward(net, x);
  MdnPrediction pred;
  pred.component = highest_weight_component(gmm);
  const auto& mu = gmm.means[pred.component];
  pred.params = {mu[0], mu[1], mu[2] > 0.0 ? mu[2] : kMinPredictedArea};
  pred.box = denormalize_to_box(pred.params, person.person_box);
  return pred;
}

std::vector<LocalizationParams> mdn_sample(const GmmParams& gmm, std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("mdn_sample needs n >= 1");
  std::discrete_distribution<std::size_t> pick(gmm.weights.begin(), gmm.weights.end());
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<LocalizationParams> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t c = pick(rng);
    const double sigma = gmm.sigmas[c];
    const double dx = gmm.means[c][0] + sigma * unit(rng);
    const double dy = gmm.means[c][1] + sigma * unit(rng);
    const double a = gmm.means[c][2] + sigma * unit(rng);
    out.push_back({dx, dy, a});
  }
  return out;
}

std::vector<LocalizationParams> mdn_sample(const GmmParams& gmm, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return mdn_sample(gmm, n, rng);
}

}  // namespace interactee
