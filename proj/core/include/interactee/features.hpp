#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

/// Well-known block names. Any other unique name is also accepted.
namespace blocks {
inline constexpr const char* kHeadOrientation = "theta_h";
inline constexpr const char* kTorsoOrientation = "theta_t";
inline constexpr const char* kHog = "hog";
inline constexpr const char* kAspect = "aspect";
inline constexpr const char* kGist = "gist";
inline constexpr const char* kPosition = "position";
inline constexpr const char* kCnnPerson = "cnn_p";
inline constexpr const char* kCnnScene = "cnn_s";
}  // namespace blocks

struct DescriptorBlock {
  std::string name;
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
};

struct BlockSpan {
  std::string name;
  std::size_t offset = 0;
  std::size_t dim = 0;

  friend bool operator==(const BlockSpan&, const BlockSpan&) = default;
};

/// Ordered named blocks over one flat vector.
class Layout {
 public:
  Layout() = default;
  /// Throws DuplicateBlockName on repeated names.
  explicit Layout(const std::vector<std::pair<std::string, std::size_t>>& named_dims);

  const std::vector<BlockSpan>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t total_dim() const noexcept { return total_dim_; }
  std::optional<std::size_t> find(const std::string& name) const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<BlockSpan> blocks_;
  std::size_t total_dim_ = 0;
};

using LayoutPtr = std::shared_ptr<const Layout>;

/// Concatenated feature vector with its block layout. The layout is shared
/// between vectors built from the same schema.
class DescriptorVector {
 public:
  DescriptorVector() = default;
  /// Throws InvalidArgument if values.size() != layout->total_dim() or a value is not finite.
  DescriptorVector(LayoutPtr layout, std::vector<double> values);

  const Layout& layout() const noexcept { return *layout_; }
  const LayoutPtr& layout_ptr() const noexcept { return layout_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> block(std::size_t index) const;
  std::span<const double> block(const std::string& name) const;

  bool same_layout(const DescriptorVector& other) const noexcept {
    return layout_ == other.layout_ || (layout_ && other.layout_ && *layout_ == *other.layout_);
  }

 private:
  LayoutPtr layout_;
  std::vector<double> values_;
};

/// Descriptor paired with its localization target.
struct TrainingExample {
  DescriptorVector descriptor;
  LocalizationParams params;
};

/// Aspect (h/w) and normalized image position of the person box center.
std::pair<DescriptorBlock, DescriptorBlock> geometric_features(const PersonInstance& person);

/// Concatenates blocks in the given order. Throws DuplicateBlockName.
DescriptorVector assemble(const std::vector<DescriptorBlock>& blocks);

/// Keeps only the named blocks, in the requested order.
DescriptorVector select_blocks(const DescriptorVector& v, const std::vector<std::string>& names);

/// Per-block distance scale: the population standard deviation of pairwise
/// L2 distances between training blocks (1 when that is below 1e-12).
struct BlockNormalizer {
  std::vector<std::string> names;
  std::vector<double> scales;
};

inline constexpr std::size_t kDefaultMaxPairs = 1'000'000;

/// Visits every unordered pair (i<j) of `n` items, or `max_pairs` pairs drawn
/// uniformly with replacement when there are more than that.
std::vector<std::pair<std::size_t, std::size_t>> pair_sample(std::size_t n, std::size_t max_pairs, std::uint64_t seed);

double population_stddev(std::span<const double> values);

/// Throws LayoutMismatch or TooFewExamples (< 2 vectors).
BlockNormalizer fit_normalizer(std::span<const DescriptorVector> training, std::size_t max_pairs = kDefaultMaxPairs,
                               std::uint64_t seed = 0);

/// sqrt(sum over blocks of (||a_b - b_b|| / scale_b)^2). Throws LayoutMismatch.
double normalized_distance(const BlockNormalizer& n, const DescriptorVector& a, const DescriptorVector& b);

}  // namespace interactee
