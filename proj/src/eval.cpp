#include "premsel/eval.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "premsel/text_io.hpp"

namespace premsel {

RankedAdvice rank_by_scores(const TrainingView& view, std::span<const double> scores) {
  if (scores.size() != view.pool_size())
    throw std::invalid_argument("score vector does not cover the pool");
  RankedAdvice out;
  if (view.has_conjecture()) {
    out.conjecture_position = view.conjecture_position();
    out.conjecture_id = view.conjecture().item.id;
  }
  out.premises.resize(scores.size());
  std::iota(out.premises.begin(), out.premises.end(), std::size_t{0});
  std::stable_sort(out.premises.begin(), out.premises.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  for (auto p : out.premises) {
    out.ids.push_back(view.entry(p).item.id);
    out.scores.push_back(scores[p]);
  }
  return out;
}

RankedAdvice chronological_advice(const TrainingView& view) {
  std::vector<double> zeros(view.pool_size(), 0.0);
  auto out = rank_by_scores(view, zeros);
  out.fallback = true;
  return out;
}

std::size_t recall_hits(std::span<const std::size_t> used, const RankedAdvice& advice,
                        std::size_t n) {
  const std::size_t top = std::min(n, advice.premises.size());
  std::unordered_set<std::size_t> wanted(used.begin(), used.end());
  std::size_t hits = 0;
  for (std::size_t k = 0; k < top; ++k) hits += wanted.count(advice.premises[k]);
  return hits;
}

std::optional<double> recall_at(std::span<const std::size_t> used,
                                const RankedAdvice& advice, std::size_t n) {
  if (used.empty()) return std::nullopt;
  std::unordered_set<std::size_t> distinct(used.begin(), used.end());
  return static_cast<double>(recall_hits(used, advice, n)) /
         static_cast<double>(distinct.size());
}

Ranker Ranker::naive_bayes(RowPolicy rows) {
  Ranker r;
  r.rows_ = rows;
  return r;
}

Ranker Ranker::kernel(KernelKind kind, double lambda, double sigma, RowPolicy rows,
                      std::optional<GridSearchConfig> per_step) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (kind == KernelKind::Gaussian && !(sigma > 0))
    throw std::invalid_argument("sigma must be positive");
  Ranker r;
  r.kernel_ = true;
  r.kind_ = kind;
  r.lambda_ = lambda;
  r.sigma_ = sigma;
  r.rows_ = rows;
  r.per_step_ = std::move(per_step);
  return r;
}

RankedAdvice Ranker::advise(const TrainingView& view, double* residual) const {
  const auto features = view.conjecture_features();
  if (!kernel_) {
    if (view.pool_size() == 0) return chronological_advice(view);
    const auto model = nb_train(view, rows_);
    const auto scores = model.score(features);
    return rank_by_scores(view, scores);
  }

  const auto rows = view.training_rows(rows_);
  if (view.pool_size() < 2 || rows.empty()) return chronological_advice(view);

  MorModel model;
  if (per_step_ && rows.size() >= 2) {
    auto cfg = *per_step_;
    cfg.kernel = kind_;
    model = grid_search(view, cfg, rows_).model;
  } else {
    auto spec = kind_ == KernelKind::Linear ? KernelSpec<double>::linear()
                                            : KernelSpec<double>::gaussian(sigma_);
    model = mor_train(view, spec, lambda_, rows_);
  }
  if (residual) *residual = model.residual;
  const Eigen::VectorXd s = model.score(features);
  return rank_by_scores(view, std::span<const double>(s.data(), static_cast<std::size_t>(s.size())));
}

Ranker prepare_ranker(const Corpus& corpus, const RankerConfig& config,
                      std::span<const std::size_t> conjectures, TuningInfo* tuning) {
  if (const auto* nb = std::get_if<NbRankerConfig>(&config)) return Ranker::naive_bayes(nb->rows);

  const auto& mor = std::get<MorRankerConfig>(config);
  mor.grid.validate();
  TuningInfo info;
  info.lambda = mor.grid.lambdas.front();
  info.sigma = mor.grid.kernel == KernelKind::Linear ? 0.0 : mor.grid.sigmas.front();
  const bool single = mor.grid.lambdas.size() == 1 &&
                      (mor.grid.kernel == KernelKind::Linear || mor.grid.sigmas.size() == 1);

  if (!single && !mor.search_per_step) {
    // Candidates with labelled history, median first, then later ones.
    std::vector<std::size_t> eligible;
    for (auto c : conjectures)
      if (!corpus.proof_matrix().used(c).empty()) eligible.push_back(c);
    std::rotate(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(eligible.size() / 2),
                eligible.end());
    for (auto c : eligible) {
      auto view = corpus.training_view(c);
      if (view.training_rows(mor.rows).size() < 2) continue;
      auto result = grid_search(view, mor.grid, mor.rows);
      info.searched = true;
      info.position = c;
      info.lambda = result.lambda;
      info.sigma = result.sigma;
      info.table = std::move(result.table);
      break;
    }
  }
  if (tuning) *tuning = info;
  std::optional<GridSearchConfig> per_step;
  if (mor.search_per_step && !single) per_step = mor.grid;
  return Ranker::kernel(mor.grid.kernel, info.lambda,
                        mor.grid.kernel == KernelKind::Linear ? 1.0 : info.sigma, mor.rows,
                        per_step);
}

std::vector<std::size_t> select_conjectures(const Corpus& corpus,
                                            const std::optional<std::vector<std::string>>& ids) {
  std::vector<std::size_t> out;
  if (!ids) {
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (is_theorem_like(corpus.entry(i).item.role)) out.push_back(i);
    return out;
  }
  for (const auto& id : *ids) {
    auto pos = corpus.position(id);
    if (!pos) throw CorpusError("unknown conjecture identifier '" + id + "'");
    out.push_back(*pos);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> default_recall_points() {
  std::vector<std::size_t> n;
  for (std::size_t k = 1; k <= 10; ++k) n.push_back(k);
  for (std::size_t k = 20; k <= 100; k += 10) n.push_back(k);
  return n;
}

std::string_view status_name(StepStatus status) {
  switch (status) {
    case StepStatus::Ok: return "ok";
    case StepStatus::Fallback: return "fallback";
    case StepStatus::NoDependencies: return "no-dependencies";
    case StepStatus::Error: return "error";
  }
  return "error";
}

namespace {

ConjectureRecall run_step(const Corpus& corpus, const Ranker& ranker, std::size_t position,
                          const std::vector<std::size_t>& points, bool keep_advice,
                          double& residual) {
  ConjectureRecall step;
  const auto& entry = corpus.entry(position);
  step.id = entry.item.id;
  step.position = position;
  step.pool_size = position;
  const auto used = corpus.proof_matrix().used(position);
  step.used = used.size();
  if (used.empty()) {
    step.status = StepStatus::NoDependencies;
    return step;
  }
  try {
    auto view = corpus.training_view(position);
    auto advice = ranker.advise(view, &residual);
    step.status = advice.fallback ? StepStatus::Fallback : StepStatus::Ok;
    for (auto n : points) step.recall.push_back(*recall_at(used, advice, n));
    if (keep_advice) step.advice = std::move(advice);
  } catch (const std::exception& e) {
    step.status = StepStatus::Error;
    step.error = e.what();
    step.recall.clear();
  }
  return step;
}

std::vector<double> mean_of(const std::vector<const ConjectureRecall*>& steps, std::size_t width) {
  if (steps.empty()) return {};
  std::vector<double> sum(width, 0.0);
  for (const auto* s : steps)
    for (std::size_t k = 0; k < width; ++k) sum[k] += s->recall[k];
  for (auto& v : sum) v /= static_cast<double>(steps.size());
  return sum;
}

}  // namespace

RecallReport run_incremental(const Corpus& corpus, const EvalConfig& config) {
  TuningInfo tuning;
  auto ranker = prepare_ranker(corpus, config.ranker, config.conjectures, &tuning);
  auto report = run_incremental(corpus, ranker, config);
  report.tuning = std::move(tuning);
  return report;
}

RecallReport run_incremental(const Corpus& corpus, const Ranker& ranker,
                             const EvalConfig& config) {
  for (auto n : config.points)
    if (n == 0) throw std::invalid_argument("recall points must be positive");
  for (auto c : config.conjectures)
    if (c >= corpus.size()) throw std::out_of_range("conjecture position out of range");

  RecallReport report;
  report.points = config.points;
  report.tuning.lambda = ranker.lambda();
  report.tuning.sigma = ranker.sigma();
  const auto& todo = config.conjectures;
  report.steps.resize(todo.size());
  std::vector<double> residuals(todo.size(), 0.0);

  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(todo.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();)
      report.steps[k] = run_step(corpus, ranker, todo[k], config.points, config.keep_advice,
                                 residuals[k]);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  std::vector<const ConjectureRecall*> averaged;
  for (const auto& s : report.steps) {
    switch (s.status) {
      case StepStatus::Ok: averaged.push_back(&s); break;
      case StepStatus::Fallback: averaged.push_back(&s); ++report.fallbacks; break;
      case StepStatus::NoDependencies: ++report.no_dependencies; break;
      case StepStatus::Error: ++report.errors; break;
    }
  }
  for (double r : residuals) report.max_residual = std::max(report.max_residual, r);
  report.averaged = averaged.size();
  report.average = mean_of(averaged, config.points.size());
  const std::size_t total = averaged.size();
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<const ConjectureRecall*> part(
        averaged.begin() + static_cast<std::ptrdiff_t>(s * total / 4),
        averaged.begin() + static_cast<std::ptrdiff_t>((s + 1) * total / 4));
    report.segment_sizes[s] = part.size();
    report.segments[s] = mean_of(part, config.points.size());
  }
  return report;
}

void write_report_csv(std::ostream& out, const RecallReport& report) {
  out << "conjecture,position,pool_size,used,status";
  for (auto n : report.points) out << ",recall@" << n;
  out << '\n';
  for (const auto& s : report.steps) {
    out << s.id << ',' << s.position << ',' << s.pool_size << ',' << s.used << ','
        << status_name(s.status);
    for (std::size_t k = 0; k < report.points.size(); ++k) {
      out << ',';
      if (k < s.recall.size()) out << format_double(s.recall[k]);
    }
    out << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const RecallReport& report) {
  out << "n,average_recall,segment_1,segment_2,segment_3,segment_4\n";
  for (std::size_t k = 0; k < report.points.size(); ++k) {
    out << report.points[k] << ',';
    if (!report.average.empty()) out << format_double(report.average[k]);
    for (const auto& seg : report.segments) {
      out << ',';
      if (!seg.empty()) out << format_double(seg[k]);
    }
    out << '\n';
  }
}

std::string problem_text(const Corpus& corpus, std::size_t conjecture,
                         std::span<const std::size_t> axioms, std::string_view comment) {
  std::string text;
  if (!comment.empty()) {
    text += "% ";
    text += comment;
    text += '\n';
  }
  for (auto a : axioms) {
    NamedItem item = corpus.entry(a).item;
    item.role = Role::Axiom;
    text += print_item(item);
    text += '\n';
  }
  NamedItem goal = corpus.entry(conjecture).item;
  goal.role = Role::Conjecture;
  text += print_item(goal);
  text += '\n';
  return text;
}

std::vector<EmittedProblem> emit_problems(const Corpus& corpus, const EmitConfig& config,
                                          const std::filesystem::path& out_dir) {
  if (config.mode == EmitMode::Advised && !config.ranker)
    throw std::invalid_argument("advised problem emission needs a ranker");
  std::filesystem::create_directories(out_dir);

  std::vector<EmittedProblem> out;
  for (auto c : config.conjectures) {
    EmittedProblem prob;
    prob.id = corpus.entry(c).item.id;
    if (prob.id.find('/') != std::string::npos || prob.id == "." || prob.id == "..")
      throw std::invalid_argument("identifier '" + prob.id + "' cannot be used as a file name");
    std::string comment;
    switch (config.mode) {
      case EmitMode::Bushy: {
        auto used = corpus.proof_matrix().used(c);
        prob.axioms.assign(used.begin(), used.end());
        comment = "bushy problem for " + prob.id;
        break;
      }
      case EmitMode::Chainy:
        prob.axioms.resize(c);
        std::iota(prob.axioms.begin(), prob.axioms.end(), std::size_t{0});
        comment = "chainy problem for " + prob.id;
        break;
      case EmitMode::Advised: {
        auto advice = config.ranker->advise(corpus.training_view(c));
        auto top = std::min(config.advised, advice.premises.size());
        prob.axioms.assign(advice.premises.begin(),
                           advice.premises.begin() + static_cast<std::ptrdiff_t>(top));
        std::sort(prob.axioms.begin(), prob.axioms.end());
        comment = "top-" + std::to_string(config.advised) + " advised problem for " + prob.id;
        break;
      }
    }
    comment += ", " + std::to_string(prob.axioms.size()) + " axioms";
    prob.path = out_dir / (prob.id + ".p");
    std::ofstream file(prob.path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + prob.path.string() + "'");
    file << problem_text(corpus, c, prob.axioms, comment);
    if (!file) throw std::runtime_error("error writing '" + prob.path.string() + "'");
    out.push_back(std::move(prob));
  }
  return out;
}

}  // namespace premsel
