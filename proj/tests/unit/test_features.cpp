#include <cmath>
#include <random>

#include "doctest.h"
#include "interactee/error.hpp"
#include "interactee/features.hpp"

using namespace interactee;

namespace {

DescriptorVector one_block(double v) { return assemble({{"f", {v}}}); }

std::vector<DescriptorVector> random_two_block_set(std::mt19937_64& rng, std::size_t n, double scale_second = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<DescriptorVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(assemble({{"a", {g(rng), g(rng)}}, {"b", {scale_second * g(rng), scale_second * g(rng), scale_second * g(rng)}}}));
  }
  return out;
}

}  // namespace

TEST_CASE("geometric features") {
  const auto [sq_aspect, sq_pos] = geometric_features({"i", BoundingBox(50, 50, 100, 100), 200, 200});
  CHECK(sq_aspect.values == std::vector<double>{1.0});
  CHECK(sq_pos.values == std::vector<double>{0.5, 0.5});
  const auto [aspect, pos] = geometric_features({"i", BoundingBox(0, 0, 50, 100), 200, 200});
  CHECK(aspect.name == blocks::kAspect);
  CHECK(aspect.values == std::vector<double>{2.0});
  CHECK(pos.name == blocks::kPosition);
  CHECK(pos.values == std::vector<double>{0.125, 0.25});
}

TEST_CASE("assemble records the layout") {
  CHECK(assemble({{"x", {1, 2, 3}}}).layout().total_dim() == 3);
  const auto v = assemble({{"aspect", {1}}, {"position", {2, 3}}, {"cnn", std::vector<double>(4096, 0.5)}});
  CHECK(v.layout().total_dim() == 4099);
  CHECK(v.layout().blocks()[0].offset == 0);
  CHECK(v.layout().blocks()[1].offset == 1);
  CHECK(v.layout().blocks()[2].offset == 3);
  CHECK_THROWS_AS(assemble({{"x", {1}}, {"x", {2}}}), DuplicateBlockName);
  CHECK_THROWS_AS(assemble({{"x", {NAN}}}), InvalidArgument);
}

TEST_CASE("assemble then slice recovers every block exactly") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1e3);
  std::vector<DescriptorBlock> blocks;
  for (int b = 0; b < 5; ++b) {
    DescriptorBlock block{"b" + std::to_string(b), {}};
    for (int i = 0; i <= b * 3; ++i) block.values.push_back(g(rng));
    blocks.push_back(block);
  }
  const auto v = assemble(blocks);
  for (const auto& b : blocks) {
    const auto s = v.block(b.name);
    CHECK(std::vector<double>(s.begin(), s.end()) == b.values);
  }
  CHECK_THROWS_AS(v.block("missing"), LayoutMismatch);
}

TEST_CASE("fit_normalizer hand cases") {
  SUBCASE("identical vectors fall back to scale 1") {
    const std::vector<DescriptorVector> same(5, assemble({{"a", {1, 2}}, {"b", {3}}}));
    const auto n = fit_normalizer(same);
    CHECK(n.scales == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("single pair has zero spread") {
    const std::vector<DescriptorVector> two{one_block(0.0), one_block(4.0)};
    CHECK(fit_normalizer(two).scales == std::vector<double>{1.0});
  }
  SUBCASE("three points 0, 1, 3") {
    // Pair distances {1, 3, 2}: mean 2, population variance 2/3.
    const std::vector<DescriptorVector> three{one_block(0.0), one_block(1.0), one_block(3.0)};
    CHECK(fit_normalizer(three).scales[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  }
  const std::vector<DescriptorVector> mixed{one_block(0.0), assemble({{"g", {1.0}}})};
  CHECK_THROWS_AS(fit_normalizer(mixed), LayoutMismatch);
  CHECK_THROWS_AS(fit_normalizer(std::vector<DescriptorVector>{one_block(1.0)}), TooFewExamples);
}

TEST_CASE("sampled pairs estimate the same spread") {
  std::mt19937_64 rng(8);
  const auto set = random_two_block_set(rng, 300);
  const auto full = fit_normalizer(set);
  const auto sampled = fit_normalizer(set, 20000, 3);
  CHECK(sampled.scales[0] == doctest::Approx(full.scales[0]).epsilon(0.03));
  CHECK(sampled.scales[1] == doctest::Approx(full.scales[1]).epsilon(0.03));
  CHECK(pair_sample(300, 20000, 3).size() == 20000);
  CHECK(pair_sample(4, 100, 3).size() == 6);
}

TEST_CASE("normalized distance hand cases") {
  BlockNormalizer n{{"f"}, {2.0}};
  CHECK(normalized_distance(n, one_block(1.0), one_block(1.0)) == 0.0);
  CHECK(normalized_distance(n, one_block(0.0), one_block(6.0)) == 3.0);
  BlockNormalizer two{{"a", "b"}, {1.0, 2.0}};
  const auto p = assemble({{"a", {0.0}}, {"b", {0.0}}});
  const auto q = assemble({{"a", {3.0}}, {"b", {8.0}}});
  CHECK(normalized_distance(two, p, q) == 5.0);
  CHECK_THROWS_AS(normalized_distance(n, p, q), LayoutMismatch);
}

TEST_CASE("normalized distance is a metric") {
  std::mt19937_64 rng(12);
  const auto set = random_two_block_set(rng, 40);
  const auto n = fit_normalizer(set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      const double dij = normalized_distance(n, set[i], set[j]);
      CHECK(dij >= 0.0);
      CHECK(dij == normalized_distance(n, set[j], set[i]));
      if (i == j) CHECK(dij == 0.0);
      const std::size_t k = (i * 7 + j * 3) % set.size();
      CHECK(dij <= normalized_distance(n, set[i], set[k]) + normalized_distance(n, set[k], set[j]) + 1e-12);
    }
  }
}

TEST_CASE("rescaling one block leaves normalized distances unchanged") {
  std::mt19937_64 rng_a(21), rng_b(21);
  const auto base = random_two_block_set(rng_a, 60, 1.0);
  const auto scaled = random_two_block_set(rng_b, 60, 37.5);
  const auto nb = fit_normalizer(base);
  const auto ns = fit_normalizer(scaled);
  CHECK(ns.scales[1] == doctest::Approx(37.5 * nb.scales[1]).epsilon(1e-12));
  for (std::size_t i = 1; i < base.size(); ++i) {
    CHECK(normalized_distance(ns, scaled[0], scaled[i]) ==
          doctest::Approx(normalized_distance(nb, base[0], base[i])).epsilon(1e-12));
  }
}
