#include <benchmark/benchmark.h>

#include <random>

#include "interactee/consensus.hpp"
#include "interactee/knn.hpp"
#include "interactee/mdn.hpp"
#include "interactee/seam_carving.hpp"

using namespace interactee;

namespace {

std::vector<TrainingExample> random_training(std::size_t n, std::size_t dim, std::uint64_t seed) {
  auto layout = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"a", dim / 2}, {"b", dim - dim / 2}});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<TrainingExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = u(rng);
    out.push_back({DescriptorVector(layout, v), {u(rng) - 0.5, u(rng) - 0.5, 0.1 + u(rng)}});
  }
  return out;
}

void BM_KnnPredict(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto training = random_training(n, 64, 1);
  const KnnModel model = KnnModel::fit(training, kDefaultNeighbors, 100000, 1);
  const auto query = random_training(1, 64, 2).front().descriptor;
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(query));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KnnPredict)->Arg(1000)->Arg(10000);

void BM_MdnForward(benchmark::State& state) {
  const auto net = mdn_init(64, {64, 64}, 5, 1);
  std::vector<double> x(64, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(mdn_forward(net, x));
}
BENCHMARK(BM_MdnForward);

void BM_MdnGradient(benchmark::State& state) {
  const auto net = mdn_init(64, {64, 64}, 5, 1);
  std::vector<double> x(64, 0.3);
  std::vector<double> grad(net.parameters.size());
  for (auto _ : state) benchmark::DoNotOptimize(nll_with_gradient(net, x, {0.1, 0.2, 0.3}, grad));
}
BENCHMARK(BM_MdnGradient);

void BM_Retarget(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> px(0, 255);
  RgbImage img(side, side);
  for (auto& p : img.data()) p = {static_cast<unsigned char>(px(rng)), static_cast<unsigned char>(px(rng)), static_cast<unsigned char>(px(rng))};
  const std::vector<BoundingBox> boxes{BoundingBox(side / 4.0, side / 4.0, side / 4.0, side / 2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(retarget(img, side * 3 / 5, side * 3 / 5, boxes));
}
BENCHMARK(BM_Retarget)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Consensus(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> j(-3, 3);
  AnnotationSet a{"img", 0, {}};
  for (int i = 0; i < 10; ++i) a.boxes.emplace_back(100 + j(rng), 120 + j(rng), 50 + j(rng), 40 + j(rng));
  a.boxes.emplace_back(500, 400, 30, 30);
  for (auto _ : state) benchmark::DoNotOptimize(consensus_box(a, 80.0));
}
BENCHMARK(BM_Consensus);

}  // namespace

BENCHMARK_MAIN();
