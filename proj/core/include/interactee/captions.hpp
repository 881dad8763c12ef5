#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "interactee/features.hpp"
#include "interactee/geometry.hpp"

namespace interactee {

using Tokens = std::vector<std::string>;

/// Lowercases, strips ASCII punctuation, splits on whitespace.
Tokens tokenize_sentence(const std::string& sentence);

struct CaptionedExample {
  DescriptorVector descriptor;
  LocalizationParams params;
  std::vector<Tokens> sentences;
};

inline constexpr std::size_t kDefaultCaptionNeighbors = 5;

/// Caption database with a joint descriptor + localization distance:
/// sqrt((d_x / s_x)^2 + (d_y / s_y)^2), where d_x is the block-normalized
/// descriptor distance, d_y the Euclidean distance between (dx, dy, a)
/// triples, and s_x, s_y their standard deviations over database pairs.
class CaptionIndex {
 public:
  struct Match {
    std::size_t index = 0;
    double distance = 0.0;
  };

  /// Throws EmptyInput, LayoutMismatch, or InvalidArgument (entry without sentences).
  explicit CaptionIndex(std::vector<CaptionedExample> db, std::size_t max_pairs = kDefaultMaxPairs,
                        std::uint64_t seed = 0);

  double joint_distance(const DescriptorVector& descriptor, const LocalizationParams& params, std::size_t index) const;

  /// The k_s closest entries, nearest first (distance ties -> lower index).
  /// Throws TooFewExamples when k_s exceeds the database size.
  std::vector<Match> nearest(const DescriptorVector& descriptor, const LocalizationParams& params, std::size_t k_s) const;

  /// All sentences of the k_s nearest entries, nearest entry first.
  std::vector<Tokens> retrieve(const DescriptorVector& descriptor, const LocalizationParams& params, std::size_t k_s) const;

  const std::vector<CaptionedExample>& entries() const noexcept { return db_; }
  double descriptor_scale() const noexcept { return s_x_; }
  double params_scale() const noexcept { return s_y_; }

 private:
  std::vector<CaptionedExample> db_;
  BlockNormalizer normalizer_;
  double s_x_ = 1.0;
  double s_y_ = 1.0;
};

double params_distance(const LocalizationParams& a, const LocalizationParams& b);

std::vector<Tokens> retrieve_captions(const DescriptorVector& query_descriptor, const LocalizationParams& query_params,
                                      std::vector<CaptionedExample> db, std::size_t k_s = kDefaultCaptionNeighbors);

}  // namespace interactee
