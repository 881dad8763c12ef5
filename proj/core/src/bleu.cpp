#include "interactee/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "interactee/error.hpp"

namespace interactee {
namespace {

constexpr double kLogFloor = 1e-9;

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t closest_reference_length(std::size_t c, std::span<const std::vector<std::string>> references) {
  std::size_t best = references.front().size();
  for (const auto& r : references) {
    const auto d = [c](std::size_t len) { return len > c ? len - c : c - len; };
    if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
  }
  return best;
}

}  // namespace

BleuScore bleu(const std::vector<std::string>& candidate, std::span<const std::vector<std::string>> references,
               std::size_t max_n) {
  if (max_n == 0) throw InvalidArgument("BLEU max_n must be at least 1");
  if (references.empty()) throw InvalidArgument("BLEU needs at least one reference");

  BleuScore score;
  score.precisions.assign(max_n, 0.0);
  score.per_n.assign(max_n, 0.0);
  if (candidate.empty()) return score;

  const std::size_t c = candidate.size();
  const std::size_t r = closest_reference_length(c, references);
  score.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const NgramCounts cand = count_ngrams(candidate, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : count_ngrams(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(count, it->second);
    }
    const double p = total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
    score.precisions[n - 1] = p;
    score.per_n[n - 1] = score.brevity_penalty * p;
    log_sum += std::log(std::max(p, kLogFloor));
  }
  score.combined = score.brevity_penalty * std::exp(log_sum / static_cast<double>(max_n));
  return score;
}

}  // namespace interactee
