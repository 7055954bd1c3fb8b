#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "premsel/fof.hpp"

namespace premsel {

using FeatureIndex = std::uint32_t;

/// Append-only enumeration of feature keys. Index i is the i-th key ever
/// added, so a dictionary built in chronological order doubles as a record of
/// when each feature first appeared.
class FeatureDictionary {
 public:
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  const std::string& key(FeatureIndex i) const { return keys_.at(i); }
  const std::vector<std::string>& keys() const { return keys_; }

  /// Index of `key`, or -1 when absent.
  std::int64_t find(std::string_view key) const;

  /// Index of `key`, appending it when absent.
  FeatureIndex intern(const std::string& key);

  /// FNV-1a over the keys in order; used to detect model/dictionary mismatch.
  std::uint64_t fingerprint() const;

  /// One key per line; line number is the index.
  void save(std::ostream& out) const;
  static FeatureDictionary load(std::istream& in);

  friend bool operator==(const FeatureDictionary& a, const FeatureDictionary& b) {
    return a.keys_ == b.keys_;
  }

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, FeatureIndex> index_;
};

/// Sparse binary feature vector: strictly increasing feature indices.
class FeatureVector {
 public:
  FeatureVector() = default;
  /// Sorts and deduplicates.
  explicit FeatureVector(std::vector<FeatureIndex> indices);

  std::span<const FeatureIndex> indices() const& { return indices_; }
  std::span<const FeatureIndex> indices() const&& = delete;  // would dangle
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(FeatureIndex i) const;

  /// Copy restricted to indices below `limit`.
  FeatureVector truncated(std::size_t limit) const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<FeatureIndex> indices_;
};

/// Symbol keys `s:<name>/<arity>` and subterm keys `t:<term>` with variables
/// written `*<de Bruijn index>`.
std::set<std::string> extract_features(const Formula& formula);

/// Canonical subterm string used inside `t:` keys.
std::string canonical_term(const Term& term);

/// Maps the formula's feature keys to indices. Unknown keys are appended when
/// `extend` is set and dropped otherwise.
FeatureVector vectorize(const Formula& formula, FeatureDictionary& dict,
                        bool extend);
FeatureVector vectorize(const Formula& formula, const FeatureDictionary& dict);

/// Size of the index intersection.
std::size_t dot(const FeatureVector& a, const FeatureVector& b);

}  // namespace premsel
