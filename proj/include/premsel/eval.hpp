#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "premsel/corpus.hpp"
#include "premsel/mor.hpp"
#include "premsel/naive_bayes.hpp"

namespace premsel {

/// Premises of a pool in descending score order; ties go to the earlier
/// premise.
struct RankedAdvice {
  std::string conjecture_id;
  std::size_t conjecture_position = 0;
  std::vector<std::size_t> premises;  // corpus positions
  std::vector<std::string> ids;
  std::vector<double> scores;
  bool fallback = false;  // chronological order, no model

  std::size_t size() const { return premises.size(); }
};

/// Orders the pool `0..scores.size()-1` by score.
RankedAdvice rank_by_scores(const TrainingView& view, std::span<const double> scores);

/// Pool in chronological order, all scores zero.
RankedAdvice chronological_advice(const TrainingView& view);

/// |used ∩ top-n advice|; n beyond the advice length means all of it.
std::size_t recall_hits(std::span<const std::size_t> used, const RankedAdvice& advice,
                        std::size_t n);

/// Recall(c, n) = |used ∩ advised(n)| / |used|, or nullopt when `used` is
/// empty (such conjectures are skipped).
std::optional<double> recall_at(std::span<const std::size_t> used,
                                const RankedAdvice& advice, std::size_t n);

struct NbRankerConfig {
  RowPolicy rows = RowPolicy::TheoremsOnly;
};

struct MorRankerConfig {
  GridSearchConfig grid = GridSearchConfig::defaults();
  bool search_per_step = false;
  RowPolicy rows = RowPolicy::TheoremsOnly;
};

using RankerConfig = std::variant<NbRankerConfig, MorRankerConfig>;

/// Outcome of hyperparameter selection for the kernel ranker.
struct TuningInfo {
  bool searched = false;
  std::optional<std::size_t> position;  // view used for the search
  double lambda = 0;
  double sigma = 0;
  std::vector<GridPoint> table;
};

/// A ranker with its hyperparameters settled, ready to advise at any
/// position of a corpus.
class Ranker {
 public:
  static Ranker naive_bayes(RowPolicy rows = RowPolicy::TheoremsOnly);
  static Ranker kernel(KernelKind kind, double lambda, double sigma,
                       RowPolicy rows = RowPolicy::TheoremsOnly,
                       std::optional<GridSearchConfig> per_step = std::nullopt);

  /// Trains on the view's pool and ranks it for the view's conjecture.
  /// `residual` receives the normal-equation residual of a kernel solve.
  RankedAdvice advise(const TrainingView& view, double* residual = nullptr) const;

  bool is_kernel() const { return kernel_; }
  double lambda() const { return lambda_; }
  double sigma() const { return sigma_; }

 private:
  bool kernel_ = false;
  KernelKind kind_ = KernelKind::Gaussian;
  double lambda_ = 1;
  double sigma_ = 1;
  RowPolicy rows_ = RowPolicy::TheoremsOnly;
  std::optional<GridSearchConfig> per_step_;
};

/// Resolves hyperparameters. Single-point grids are taken as given; other
/// grids are searched once on the training view of the median evaluated
/// conjecture (or per step when configured).
Ranker prepare_ranker(const Corpus& corpus, const RankerConfig& config,
                      std::span<const std::size_t> conjectures, TuningInfo* tuning = nullptr);

/// Theorem-like items, or exactly the listed identifiers.
std::vector<std::size_t> select_conjectures(const Corpus& corpus,
                                            const std::optional<std::vector<std::string>>& ids);

/// 1..10, 20..100
std::vector<std::size_t> default_recall_points();

enum class StepStatus { Ok, Fallback, NoDependencies, Error };

std::string_view status_name(StepStatus status);

struct ConjectureRecall {
  std::string id;
  std::size_t position = 0;
  std::size_t pool_size = 0;
  std::size_t used = 0;
  StepStatus status = StepStatus::Ok;
  std::string error;
  std::vector<double> recall;  // one per recall point; empty unless averaged
  std::optional<RankedAdvice> advice;
};

struct RecallReport {
  std::vector<std::size_t> points;
  std::vector<ConjectureRecall> steps;
  std::vector<double> average;                   // empty when nothing averaged
  std::array<std::vector<double>, 4> segments;   // chronological quarters
  std::array<std::size_t, 4> segment_sizes{};
  std::size_t averaged = 0;
  std::size_t no_dependencies = 0;
  std::size_t fallbacks = 0;
  std::size_t errors = 0;
  double max_residual = 0;
  TuningInfo tuning;
};

struct EvalConfig {
  RankerConfig ranker = NbRankerConfig{};
  std::vector<std::size_t> conjectures;  // positions
  std::vector<std::size_t> points = default_recall_points();
  unsigned jobs = 1;
  bool keep_advice = false;
};

/// Chronological protocol: each selected conjecture is ranked by a model
/// trained only on the items before it.
RecallReport run_incremental(const Corpus& corpus, const EvalConfig& config);

/// Same, with a ranker whose hyperparameters are already settled.
RecallReport run_incremental(const Corpus& corpus, const Ranker& ranker,
                             const EvalConfig& config);

/// Per-conjecture CSV: conjecture,position,pool_size,used,status,recall@n...
void write_report_csv(std::ostream& out, const RecallReport& report);
/// n,average_recall,segment_1..segment_4
void write_aggregate_csv(std::ostream& out, const RecallReport& report);

enum class EmitMode { Bushy, Chainy, Advised };

struct EmitConfig {
  EmitMode mode = EmitMode::Bushy;
  std::vector<std::size_t> conjectures;
  std::size_t advised = 0;             // Advised only
  std::optional<Ranker> ranker;        // Advised only
};

struct EmittedProblem {
  std::string id;
  std::filesystem::path path;
  std::vector<std::size_t> axioms;  // corpus positions
};

/// Problem text: axioms with role axiom, then the conjecture.
std::string problem_text(const Corpus& corpus, std::size_t conjecture,
                         std::span<const std::size_t> axioms, std::string_view comment);

/// Writes `<id>.p` for every selected conjecture into `out_dir`.
std::vector<EmittedProblem> emit_problems(const Corpus& corpus, const EmitConfig& config,
                                          const std::filesystem::path& out_dir);

}  // namespace premsel
