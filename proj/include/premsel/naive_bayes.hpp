#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "premsel/corpus.hpp"
#include "premsel/features.hpp"

namespace premsel {

/// Per-premise naive-Bayes classifiers over binary features.
///
/// All probabilities use add-one smoothing over the training rows:
///
///   P(theta)           = (uses + 1) / (rows + 2)
///   P(t_i | theta)     = (co_i + 1) / (uses + 2)
///   P(t_i | not theta) = (n_i - co_i + 1) / (rows - uses + 2)
///
/// where `co_i` counts rows that use the premise and contain t_i and `n_i`
/// counts rows containing t_i. The weight of t_i is the log ratio of the two
/// conditionals. Features that occur in no training row are not part of the
/// model and weigh nothing.
class NbModel {
 public:
  struct Premise {
    std::string id;
    std::size_t position = 0;
    std::uint32_t uses = 0;
    /// (feature, co-occurrence count), sorted by feature, counts > 0.
    std::vector<std::pair<FeatureIndex, std::uint32_t>> cooccurrence;
  };

  NbModel() = default;
  NbModel(std::size_t rows, std::vector<std::uint32_t> feature_counts,
          std::vector<Premise> premises, std::size_t dictionary_size,
          std::uint64_t dictionary_fingerprint);

  std::size_t rows() const { return rows_; }
  std::size_t premise_count() const { return premises_.size(); }
  const Premise& premise(std::size_t k) const { return premises_.at(k); }
  const std::vector<Premise>& premises() const { return premises_; }

  /// Training rows containing feature i (0 for features outside the model).
  std::uint32_t feature_count(FeatureIndex i) const;
  bool trained_feature(FeatureIndex i) const { return feature_count(i) > 0; }

  double prior_log_odds(std::size_t k) const;
  /// Weight of feature i for premise k; 0 for untrained features.
  double weight(std::size_t k, FeatureIndex i) const;

  /// Score per premise (same order as premises()).
  std::vector<double> score(const FeatureVector& conjecture) const;

  std::size_t dictionary_size() const { return dict_size_; }
  std::uint64_t dictionary_fingerprint() const { return dict_fingerprint_; }

  void save(std::ostream& out) const;
  static NbModel load(std::istream& in);

 private:
  double weight_from_counts(std::size_t k, std::uint32_t co, std::uint32_t total) const;
  std::uint32_t cooccurrence(std::size_t k, FeatureIndex i) const;

  std::size_t rows_ = 0;
  std::vector<std::uint32_t> feature_counts_;
  std::vector<Premise> premises_;
  std::size_t dict_size_ = 0;
  std::uint64_t dict_fingerprint_ = 0;
};

/// Trains one classifier per pool item. Throws std::invalid_argument on an
/// empty pool.
NbModel nb_train(const TrainingView& pool, RowPolicy rows = RowPolicy::TheoremsOnly);

inline std::vector<double> nb_score(const NbModel& model, const FeatureVector& conjecture) {
  return model.score(conjecture);
}

}  // namespace premsel
