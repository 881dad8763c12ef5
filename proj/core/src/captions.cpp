#include "interactee/captions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "interactee/error.hpp"

namespace interactee {

Tokens tokenize_sentence(const std::string& sentence) {
  std::string cleaned;
  cleaned.reserve(sentence.size());
  for (unsigned char c : sentence) {
    if (std::ispunct(c)) continue;
    cleaned.push_back(static_cast<char>(std::tolower(c)));
  }
  std::istringstream in(cleaned);
  Tokens tokens;
  for (std::string t; in >> t;) tokens.push_back(std::move(t));
  return tokens;
}

double params_distance(const LocalizationParams& a, const LocalizationParams& b) {
  const double x = a.dx - b.dx;
  const double y = a.dy - b.dy;
  const double z = a.a - b.a;
  return std::sqrt(x * x + y * y + z * z);
}

CaptionIndex::CaptionIndex(std::vector<CaptionedExample> db, std::size_t max_pairs, std::uint64_t seed)
    : db_(std::move(db)) {
  if (db_.empty()) throw EmptyInput("caption database is empty");
  for (const auto& e : db_) {
    if (!e.descriptor.same_layout(db_.front().descriptor)) throw LayoutMismatch("caption database layouts differ");
    if (e.sentences.empty()) throw InvalidArgument("caption database entry without sentences");
  }
  if (db_.size() == 1) {
    for (const auto& b : db_.front().descriptor.layout().blocks()) {
      normalizer_.names.push_back(b.name);
      normalizer_.scales.push_back(1.0);
    }
    return;
  }

  std::vector<DescriptorVector> descriptors;
  descriptors.reserve(db_.size());
  for (const auto& e : db_) descriptors.push_back(e.descriptor);
  normalizer_ = fit_normalizer(descriptors, max_pairs, seed);

  const auto pairs = pair_sample(db_.size(), max_pairs, seed);
  std::vector<double> dx(pairs.size());
  std::vector<double> dy(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& a = db_[pairs[p].first];
    const auto& b = db_[pairs[p].second];
    dx[p] = normalized_distance(normalizer_, a.descriptor, b.descriptor);
    dy[p] = params_distance(a.params, b.params);
  }
  const double sx = population_stddev(dx);
  const double sy = population_stddev(dy);
  s_x_ = sx < 1e-12 ? 1.0 : sx;
  s_y_ = sy < 1e-12 ? 1.0 : sy;
}

double CaptionIndex::joint_distance(const DescriptorVector& descriptor, const LocalizationParams& params,
                                    std::size_t index) const {
  const auto& e = db_.at(index);
  const double a = normalized_distance(normalizer_, descriptor, e.descriptor) / s_x_;
  const double b = params_distance(params, e.params) / s_y_;
  return std::sqrt(a * a + b * b);
}

std::vector<CaptionIndex::Match> CaptionIndex::nearest(const DescriptorVector& descriptor,
                                                       const LocalizationParams& params, std::size_t k_s) const {
  if (k_s == 0 || k_s > db_.size()) {
    throw TooFewExamples("k_s = " + std::to_string(k_s) + " with a caption database of " + std::to_string(db_.size()));
  }
  std::vector<Match> all(db_.size());
  for (std::size_t i = 0; i < db_.size(); ++i) all[i] = {i, joint_distance(descriptor, params, i)};
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k_s), all.end(),
                    [](const Match& a, const Match& b) {
                      return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
                    });
  all.resize(k_s);
  return all;
}

std::vector<Tokens> CaptionIndex::retrieve(const DescriptorVector& descriptor, const LocalizationParams& params,
                                           std::size_t k_s) const {
  std::vector<Tokens> out;
  for (const Match& m : nearest(descriptor, params, k_s)) {
    const auto& s = db_[m.index].sentences;
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<Tokens> retrieve_captions(const DescriptorVector& query_descriptor, const LocalizationParams& query_params,
                                      std::vector<CaptionedExample> db, std::size_t k_s) {
  if (k_s > db.size()) throw TooFewExamples("caption database smaller than k_s");
  return CaptionIndex(std::move(db)).retrieve(query_descriptor, query_params, k_s);
}

}  // namespace interactee
