#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "interactee/features.hpp"
#include "interactee/geometry.hpp"

namespace interactee {

/// Spherical Gaussian mixture over (dx, dy, a).
struct GmmParams {
  std::vector<double> weights;             // simplex
  std::vector<std::array<double, 3>> means;
  std::vector<double> sigmas;              // per-component isotropic std, > 0

  std::size_t size() const noexcept { return weights.size(); }
};

inline constexpr double kDefaultSigmaFloor = 1e-3;

/// Fully connected tanh network whose linear output head has 5m entries:
/// m mixture logits, 3m means and m log-sigmas.
///
/// `parameters` is one flat array. For each layer, in order, it holds the
/// weight matrix (out x in, row-major) followed by the bias vector.
struct MdnNetwork {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden_dims;
  std::size_t components = 0;
  double sigma_floor = kDefaultSigmaFloor;
  std::vector<double> parameters;

  std::size_t output_dim() const noexcept { return 5 * components; }
  /// Layer widths from input to output.
  std::vector<std::size_t> layer_dims() const;
  static std::size_t parameter_count(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                                     std::size_t components);

  friend bool operator==(const MdnNetwork&, const MdnNetwork&) = default;
};

/// Glorot-uniform weights, zero biases (so alpha starts uniform and sigma at 1).
MdnNetwork mdn_init(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims, std::size_t components,
                    std::uint64_t seed);

/// Raw 5m-dimensional output head. Throws DimensionMismatch.
std::vector<double> mdn_raw_output(const MdnNetwork& net, std::span<const double> x);

/// Softmax weights, raw means, exp(log-sigma) clamped at net.sigma_floor.
GmmParams gmm_from_output(std::span<const double> output, std::size_t components, double sigma_floor);

GmmParams mdn_forward(const MdnNetwork& net, std::span<const double> x);

/// Negative log-density of y under the mixture (log-sum-exp).
double nll(const GmmParams& gmm, const LocalizationParams& y);

/// nll(forward(x), y) and its gradient with respect to every parameter,
/// accumulated into `grad` (same length as net.parameters).
double nll_with_gradient(const MdnNetwork& net, std::span<const double> x, const LocalizationParams& y,
                         std::span<double> grad);

struct TrainConfig {
  int iterations = 10000;
  double learning_rate = 0.001;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  double sigma_floor = kDefaultSigmaFloor;
  /// Global gradient-norm clip per step; 0 disables clipping.
  double clip_norm = 10.0;
};

struct TrainResult {
  MdnNetwork net;
  std::vector<double> loss_history;  // mean batch loss per iteration
};

/// Minibatch SGD on mean nll with a fresh seeded shuffle every epoch.
/// Throws DimensionMismatch, EmptyInput, or NonFiniteLoss (with the
/// iteration and batch indices in the message).
TrainResult train(MdnNetwork net, std::span<const TrainingExample> examples, const TrainConfig& cfg);

/// Max over parameters of |g_analytic - g_numeric| / max(|g_a|, |g_n|, 1e-8)
/// using central differences of step `epsilon`.
double gradient_check(const MdnNetwork& net, const TrainingExample& example, double epsilon);

struct MdnPrediction {
  LocalizationParams params;
  BoundingBox box;
  std::size_t component = 0;
};

/// Mean of the highest-weight component (ties go to the lowest index), with
/// a clamped to at least 1e-4 before it is turned into a box.
MdnPrediction mdn_predict(const MdnNetwork& net, std::span<const double> x, const PersonInstance& person);

std::size_t highest_weight_component(const GmmParams& gmm);

std::vector<LocalizationParams> mdn_sample(const GmmParams& gmm, std::size_t n, std::mt19937_64& rng);
std::vector<LocalizationParams> mdn_sample(const GmmParams& gmm, std::size_t n, std::uint64_t seed);

}  // namespace interactee
