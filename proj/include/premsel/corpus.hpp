#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "premsel/features.hpp"
#include "premsel/fof.hpp"

namespace premsel {

/// Semantic corpus error: unknown identifier, forward dependency, etc.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One `<id>: <dep> <dep> ...` line per item, in file order.
using DependencyList = std::vector<std::pair<std::string, std::vector<std::string>>>;

DependencyList parse_dependencies(std::string_view text);

/// Sparse 0/1 relation mu(c, p) over corpus positions.
class ProofMatrix {
 public:
  ProofMatrix() = default;
  /// `rows[c]` lists the positions used by c; sorted on construction.
  explicit ProofMatrix(std::vector<std::vector<std::size_t>> rows);

  std::size_t size() const { return rows_.size(); }
  bool operator()(std::size_t conjecture, std::size_t premise) const;
  std::span<const std::size_t> used(std::size_t conjecture) const {
    return rows_.at(conjecture);
  }
  std::size_t nonzeros() const;

 private:
  std::vector<std::vector<std::size_t>> rows_;
};

struct CorpusEntry {
  NamedItem item;
  std::vector<std::string> dependencies;  // ordered by corpus position
  FeatureVector features;
};

/// Which pool items contribute labelled training rows.
enum class RowPolicy {
  TheoremsOnly,  // role theorem or conjecture
  AllItems,
};

bool is_theorem_like(Role role);

class Corpus;

/// Items strictly before a position plus, optionally, the item at that
/// position as the conjecture. Never exposes anything later.
class TrainingView {
 public:
  TrainingView(const Corpus& corpus, std::size_t end, bool with_conjecture);

  const Corpus& corpus() const { return *corpus_; }

  /// Candidate premises are positions 0..pool_size()-1.
  std::size_t pool_size() const { return end_; }
  bool has_conjecture() const { return with_conjecture_; }
  std::size_t conjecture_position() const;
  const CorpusEntry& conjecture() const;

  const CorpusEntry& entry(std::size_t position) const;

  /// Pool positions that act as labelled rows.
  std::vector<std::size_t> training_rows(RowPolicy policy) const;

  /// mu restricted to the pool.
  bool used(std::size_t row, std::size_t premise) const;

  /// Number of dictionary features that occur somewhere in the pool.
  std::size_t known_features() const { return known_features_; }

  /// Conjecture features with pool-unseen features dropped.
  FeatureVector conjecture_features() const;

 private:
  const Corpus* corpus_;
  std::size_t end_;
  bool with_conjecture_;
  std::size_t known_features_;
};

/// Chronologically ordered items with their proof dependencies. Immutable
/// after construction.
class Corpus {
 public:
  Corpus() = default;

  static Corpus build(std::vector<NamedItem> items, const DependencyList& deps);

  /// Corpus over externally computed features. `features[i]` indexes into
  /// `dict`; numbering features by first appearance keeps unseen-feature
  /// filtering exact.
  static Corpus build(std::vector<NamedItem> items, const DependencyList& deps,
                      std::vector<FeatureVector> features, FeatureDictionary dict);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const CorpusEntry& entry(std::size_t position) const { return entries_.at(position); }
  const std::vector<CorpusEntry>& entries() const { return entries_; }

  std::optional<std::size_t> position(std::string_view id) const;

  const ProofMatrix& proof_matrix() const { return mu_; }
  const FeatureDictionary& dictionary() const { return dict_; }

  /// Dictionary prefix length covering every feature of items before
  /// `position`.
  std::size_t features_known_before(std::size_t position) const;

  /// Pool = items 0..i-1, conjecture = item i. Requires i < size().
  TrainingView training_view(std::size_t i) const;
  /// Whole corpus as the pool, no conjecture.
  TrainingView full_view() const;

 private:
  static Corpus build_unfeatured(std::vector<NamedItem> items, const DependencyList& deps);

  std::vector<CorpusEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  ProofMatrix mu_;
  FeatureDictionary dict_;
  std::vector<std::size_t> known_prefix_;  // size()+1 entries
};

/// Reads formula files in order, then the dependency file.
Corpus load_corpus(std::span<const std::filesystem::path> formula_files,
                   const std::optional<std::filesystem::path>& dependency_file);

std::string read_file(const std::filesystem::path& path);

}  // namespace premsel
