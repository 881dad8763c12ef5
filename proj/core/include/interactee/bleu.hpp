#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace interactee {

struct BleuScore {
  std::vector<double> precisions;  // modified n-gram precision p_n, n = 1..max_n
  std::vector<double> per_n;       // brevity_penalty * p_n
  double brevity_penalty = 0.0;
  double combined = 0.0;           // BP * exp(mean log p_n), p_n floored at 1e-9
};

/// Sentence-level BLEU with counts clipped by the maximum count in any single
/// reference. The effective reference length is the one closest to the
/// candidate length (ties -> shorter). An empty candidate scores all zeros.
BleuScore bleu(const std::vector<std::string>& candidate, std::span<const std::vector<std::string>> references,
               std::size_t max_n = 4);

}  // namespace interactee
