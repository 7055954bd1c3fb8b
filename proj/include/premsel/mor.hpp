#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "premsel/corpus.hpp"
#include "premsel/kernel.hpp"

namespace premsel {

/// Kernel multi-output ranker: one regularized least-squares classifier per
/// candidate premise, all sharing the kernel matrix of the training rows.
/// Column p of the coefficient matrix holds the weights of premise p.
struct MorModel {
  KernelSpec<double> kernel;
  double lambda = 1.0;
  std::vector<std::size_t> row_positions;
  std::vector<FeatureVector> rows;
  std::vector<std::string> premise_ids;
  std::vector<std::size_t> premise_positions;
  Eigen::MatrixXd coefficients;  // rows.size() x premise_ids.size()
  double residual = 0.0;         // max |(K + lambda I) A - Y| after training
  std::size_t dictionary_size = 0;
  std::uint64_t dictionary_fingerprint = 0;

  /// Score per premise: A^T [k(x, x_1) ... k(x, x_n)]^T.
  Eigen::VectorXd score(const FeatureVector& conjecture) const;

  void save(std::ostream& out) const;
  static MorModel load(std::istream& in);
};

/// Label matrix Y(r, p) = mu(row r, premise p) over the pool.
Eigen::MatrixXd label_matrix(const TrainingView& pool,
                             const std::vector<std::size_t>& row_positions);

/// Residual bound every trained model must meet.
inline constexpr double kResidualTolerance = 1e-8;

/// Trains on every pool row selected by `policy`. Throws std::invalid_argument
/// when the pool has no training rows, FactorizationError on solver failure.
MorModel mor_train(const TrainingView& pool, const KernelSpec<double>& kernel,
                   double lambda, RowPolicy policy = RowPolicy::TheoremsOnly);

inline Eigen::VectorXd mor_score(const MorModel& model, const FeatureVector& conjecture) {
  return model.score(conjecture);
}

enum class SplitMode { Shuffle, Chronological };

struct GridSearchConfig {
  std::vector<double> lambdas;
  std::vector<double> sigmas;
  double split = 0.7;
  std::uint64_t seed = 0;
  KernelKind kernel = KernelKind::Gaussian;
  SplitMode mode = SplitMode::Shuffle;

  /// lambda in {2^-7, 2^-5, ..., 2^7}, sigma^2 in {2^-3, ..., 2^9}.
  static GridSearchConfig defaults();
  /// Throws std::invalid_argument on empty grids, non-positive values or a
  /// split fraction outside (0, 1).
  void validate() const;
};

struct GridPoint {
  double lambda;
  double sigma;  // 0 for the linear kernel
  double loss;   // mean square loss on the validation rows
};

struct GridSearchResult {
  double lambda = 0;
  double sigma = 0;
  std::vector<GridPoint> table;
  MorModel model;  // retrained on the whole pool with the chosen pair
};

/// Seeded 70/30 (by default) split of the training rows; first element is
/// the fit part, second the validation part. Both nonempty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(
    const std::vector<std::size_t>& rows, double fraction, std::uint64_t seed,
    SplitMode mode);

/// Throws std::invalid_argument when fewer than two training rows exist.
GridSearchResult grid_search(const TrainingView& pool, const GridSearchConfig& config,
                             RowPolicy policy = RowPolicy::TheoremsOnly);

/// CSV with columns lambda,sigma,validation_loss.
void write_loss_table(std::ostream& out, const std::vector<GridPoint>& table);

}  // namespace premsel
