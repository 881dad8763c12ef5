#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "interactee/bleu.hpp"
#include "interactee/captions.hpp"
#include "interactee/error.hpp"

using namespace interactee;

namespace {

DescriptorVector desc(double v) {
  static const auto layout = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"gist", 1}});
  return DescriptorVector(layout, {v});
}

CaptionedExample entry(double v, LocalizationParams p, std::string sentence) {
  return {desc(v), p, {tokenize_sentence(sentence)}};
}

double pop_std(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize_sentence("A man, riding a Horse!") == Tokens{"a", "man", "riding", "a", "horse"});
  CHECK(tokenize_sentence("  ").empty());
}

TEST_CASE("identical query returns its own sentences") {
  const std::vector<CaptionedExample> db{entry(0.0, {0, 0, 0.2}, "a dog runs"), entry(1.0, {0.5, 0.1, 0.3}, "a man reads"),
                                         entry(3.0, {-0.4, 0.2, 0.1}, "a kid kicks a ball")};
  const auto out = retrieve_captions(desc(1.0), {0.5, 0.1, 0.3}, db, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == Tokens{"a", "man", "reads"});
  CHECK_THROWS_AS(retrieve_captions(desc(1.0), {0, 0, 0.1}, db, 4), TooFewExamples);
}

TEST_CASE("equal descriptors rank by params") {
  const std::vector<CaptionedExample> db{entry(1.0, {0.9, 0.0, 0.2}, "far"), entry(1.0, {0.1, 0.0, 0.2}, "near"),
                                         entry(5.0, {-0.9, 0.5, 0.6}, "other")};
  const CaptionIndex index(db);
  const auto m = index.nearest(desc(1.0), {0.0, 0.0, 0.2}, 2);
  CHECK(m[0].index == 1);
  CHECK(m[1].index == 0);
}

TEST_CASE("ordering matches a brute-force joint distance") {
  const std::vector<double> d{0.0, 2.0, 7.0};
  const std::vector<LocalizationParams> p{{0.0, 0.0, 0.1}, {0.6, -0.2, 0.4}, {0.1, 0.1, 0.15}};
  std::vector<CaptionedExample> db;
  for (std::size_t i = 0; i < 3; ++i) db.push_back(entry(d[i], p[i], "s" + std::to_string(i)));

  // Single block: the descriptor term is |dv| / std(|dv|) over the pairs.
  std::vector<double> ddesc, dpar;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      ddesc.push_back(std::abs(d[i] - d[j]));
      dpar.push_back(std::hypot(p[i].dx - p[j].dx, p[i].dy - p[j].dy, p[i].a - p[j].a));
    }
  }
  const double sd = pop_std(ddesc), sp = pop_std(dpar);

  const LocalizationParams qp{0.55, -0.1, 0.3};
  const double qd = 5.5;
  std::vector<std::pair<double, std::size_t>> expected;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = std::abs(qd - d[i]) / sd;
    const double b = std::hypot(qp.dx - p[i].dx, qp.dy - p[i].dy, qp.a - p[i].a) / sp;
    expected.push_back({std::sqrt(a * a + b * b), i});
  }
  std::sort(expected.begin(), expected.end());

  const CaptionIndex index(db);
  const auto m = index.nearest(desc(qd), qp, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(m[r].index == expected[r].second);
    CHECK(m[r].distance == doctest::Approx(expected[r].first).epsilon(1e-12));
  }
}

TEST_CASE("k_s equal to the database size returns every sentence once") {
  std::vector<CaptionedExample> db;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 6; ++i) {
    CaptionedExample e = entry(u(rng), {u(rng) - 0.5, u(rng) - 0.5, 0.1 + u(rng)}, "first " + std::to_string(i));
    e.sentences.push_back(tokenize_sentence("second " + std::to_string(i)));
    db.push_back(e);
  }
  const auto out = retrieve_captions(desc(0.5), {0, 0, 0.3}, db, 6);
  std::map<Tokens, int> seen;
  for (const auto& s : out) ++seen[s];
  CHECK(out.size() == 12);
  CHECK(seen.size() == 12);
}

TEST_CASE("bleu hand cases") {
  const Tokens cand{"a", "man", "is", "riding", "a", "horse"};
  const std::vector<Tokens> self{cand};
  const auto id = bleu(cand, self);
  CHECK(id.combined == doctest::Approx(1.0).epsilon(1e-15));
  for (double p : id.precisions) CHECK(p == 1.0);

  const std::vector<Tokens> other{{"dogs", "bark", "loudly"}};
  const auto disjoint = bleu(cand, other);
  CHECK(disjoint.per_n[0] == 0.0);
  CHECK(disjoint.combined < 1e-6);

  const std::vector<Tokens> cat{{"the", "cat"}};
  const auto the = bleu({"the", "the", "the"}, cat);
  CHECK(the.precisions[0] == 1.0 / 3.0);
  CHECK(the.brevity_penalty == 1.0);
  CHECK(the.per_n[0] == 1.0 / 3.0);

  const auto empty = bleu({}, cat);
  CHECK(empty.combined == 0.0);
  CHECK(empty.brevity_penalty == 0.0);
}

TEST_CASE("brevity penalty uses the closest reference length") {
  const std::vector<Tokens> refs{{"a", "b", "c", "d", "e"}, {"a", "b", "x"}};
  // c = 2: closest r = 3, BP = exp(1 - 3/2).
  const auto s = bleu({"a", "b"}, refs, 2);
  CHECK(s.brevity_penalty == doctest::Approx(std::exp(1.0 - 1.5)));
  // c = 4: r = 3 and 5 are equally close; the shorter wins and c > r.
  CHECK(bleu({"a", "b", "c", "d"}, refs, 2).brevity_penalty == 1.0);
}

TEST_CASE("adding the candidate as a reference never lowers bleu") {
  std::mt19937_64 rng(31);
  const std::vector<std::string> vocab{"a", "man", "dog", "the", "ball", "rides", "on", "red", "big", "with"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 12);
  auto sentence = [&] {
    Tokens t(len(rng));
    for (auto& w : t) w = vocab[word(rng)];
    return t;
  };
  for (int i = 0; i < 300; ++i) {
    const Tokens cand = sentence();
    std::vector<Tokens> refs{sentence()};
    const auto before = bleu(cand, refs);
    refs.push_back(cand);
    const auto after = bleu(cand, refs);
    CHECK(after.combined >= before.combined);
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(after.per_n[n] >= before.per_n[n]);
      CHECK(before.per_n[n] >= 0.0);
      CHECK(before.per_n[n] <= 1.0);
    }
  }
}
