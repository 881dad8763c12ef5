#include "interactee/features.hpp"

#include <cmath>
#include <random>
#include <set>

#include "interactee/error.hpp"

namespace interactee {

Layout::Layout(const std::vector<std::pair<std::string, std::size_t>>& named_dims) {
  std::set<std::string> seen;
  for (const auto& [name, dim] : named_dims) {
    if (!seen.insert(name).second) throw DuplicateBlockName("duplicate descriptor block '" + name + "'");
    blocks_.push_back({name, total_dim_, dim});
    total_dim_ += dim;
  }
}

std::optional<std::size_t> Layout::find(const std::string& name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name == name) return i;
  }
  return std::nullopt;
}

DescriptorVector::DescriptorVector(LayoutPtr layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (!layout_) throw InvalidArgument("descriptor needs a layout");
  if (values_.size() != layout_->total_dim()) {
    throw InvalidArgument("descriptor has " + std::to_string(values_.size()) + " values, layout expects " +
                          std::to_string(layout_->total_dim()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("descriptor values must be finite");
  }
}

std::span<const double> DescriptorVector::block(std::size_t index) const {
  const BlockSpan& s = layout_->blocks().at(index);
  return std::span<const double>(values_).subspan(s.offset, s.dim);
}

std::span<const double> DescriptorVector::block(const std::string& name) const {
  const auto idx = layout_->find(name);
  if (!idx) throw LayoutMismatch("descriptor has no block '" + name + "'");
  return block(*idx);
}

std::pair<DescriptorBlock, DescriptorBlock> geometric_features(const PersonInstance& person) {
  const BoundingBox& b = person.person_box;
  const Point2 c = b.center();
  return {DescriptorBlock{blocks::kAspect, {b.height() / b.width()}},
          DescriptorBlock{blocks::kPosition, {c.x / person.image_width, c.y / person.image_height}}};
}

DescriptorVector assemble(const std::vector<DescriptorBlock>& blocks) {
  std::vector<std::pair<std::string, std::size_t>> dims;
  std::vector<double> values;
  dims.reserve(blocks.size());
  for (const auto& b : blocks) {
    dims.emplace_back(b.name, b.dim());
    values.insert(values.end(), b.values.begin(), b.values.end());
  }
  return DescriptorVector(std::make_shared<const Layout>(dims), std::move(values));
}

DescriptorVector select_blocks(const DescriptorVector& v, const std::vector<std::string>& names) {
  std::vector<DescriptorBlock> picked;
  for (const auto& name : names) {
    const auto span = v.block(name);
    picked.push_back({name, {span.begin(), span.end()}});
  }
  return assemble(picked);
}

std::vector<std::pair<std::size_t, std::size_t>> pair_sample(std::size_t n, std::size_t max_pairs, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n < 2) return pairs;
  const std::size_t total = n * (n - 1) / 2;
  if (total <= max_pairs) {
    pairs.reserve(total);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> other(0, n - 2);
  pairs.reserve(max_pairs);
  for (std::size_t p = 0; p < max_pairs; ++p) {
    const std::size_t i = first(rng);
    std::size_t j = other(rng);
    if (j >= i) ++j;
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  return pairs;
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

namespace {

double block_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

BlockNormalizer fit_normalizer(std::span<const DescriptorVector> training, std::size_t max_pairs, std::uint64_t seed) {
  if (training.size() < 2) throw TooFewExamples("normalizer needs at least two training vectors");
  for (const auto& v : training) {
    if (!v.same_layout(training.front())) throw LayoutMismatch("training descriptors have differing layouts");
  }
  const Layout& layout = training.front().layout();
  const auto pairs = pair_sample(training.size(), max_pairs, seed);

  BlockNormalizer n;
  std::vector<double> distances(pairs.size());
  for (std::size_t b = 0; b < layout.block_count(); ++b) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      distances[p] = block_distance(training[pairs[p].first].block(b), training[pairs[p].second].block(b));
    }
    const double sd = population_stddev(distances);
    n.names.push_back(layout.blocks()[b].name);
    n.scales.push_back(sd < 1e-12 ? 1.0 : sd);
  }
  return n;
}

double normalized_distance(const BlockNormalizer& n, const DescriptorVector& a, const DescriptorVector& b) {
  if (!a.same_layout(b)) throw LayoutMismatch("descriptor layouts differ");
  const Layout& layout = a.layout();
  if (layout.block_count() != n.names.size()) throw LayoutMismatch("normalizer was fitted on a different layout");
  double sum = 0.0;
  for (std::size_t i = 0; i < layout.block_count(); ++i) {
    if (layout.blocks()[i].name != n.names[i]) throw LayoutMismatch("normalizer block '" + n.names[i] + "' does not match");
    const double d = block_distance(a.block(i), b.block(i)) / n.scales[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace interactee
