#include "premsel/mor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "premsel/text_io.hpp"

namespace premsel {

Eigen::VectorXd MorModel::score(const FeatureVector& conjecture) const {
  Eigen::VectorXd k(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    k(static_cast<Eigen::Index>(i)) = kernel_eval(kernel, conjecture, rows[i]);
  return coefficients.transpose() * k;
}

Eigen::MatrixXd label_matrix(const TrainingView& pool,
                             const std::vector<std::size_t>& row_positions) {
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(row_positions.size()),
                                            static_cast<Eigen::Index>(pool.pool_size()));
  const auto& mu = pool.corpus().proof_matrix();
  for (std::size_t r = 0; r < row_positions.size(); ++r) {
    for (auto p : mu.used(row_positions[r]))
      if (p < pool.pool_size())
        Y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p)) = 1.0;
  }
  return Y;
}

namespace {

std::vector<FeatureVector> row_features(const TrainingView& pool,
                                        const std::vector<std::size_t>& positions) {
  std::vector<FeatureVector> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(pool.entry(p).features);
  return out;
}

KernelSpec<double> make_kernel(KernelKind kind, double sigma) {
  return kind == KernelKind::Linear ? KernelSpec<double>::linear()
                                    : KernelSpec<double>::gaussian(sigma);
}

}  // namespace

MorModel mor_train(const TrainingView& pool, const KernelSpec<double>& kernel,
                   double lambda, RowPolicy policy) {
  if (!(lambda > 0)) throw std::invalid_argument("regularization parameter must be positive");
  MorModel model;
  model.kernel = kernel;
  model.lambda = lambda;
  model.row_positions = pool.training_rows(policy);
  if (model.row_positions.empty())
    throw std::invalid_argument("kernel ranker needs at least one training row");
  model.rows = row_features(pool, model.row_positions);
  for (std::size_t p = 0; p < pool.pool_size(); ++p) {
    model.premise_ids.push_back(pool.entry(p).item.id);
    model.premise_positions.push_back(p);
  }

  const Eigen::MatrixXd K = build_kernel_matrix(kernel, std::span<const FeatureVector>(model.rows));
  const Eigen::MatrixXd Y = label_matrix(pool, model.row_positions);
  model.coefficients = mor_solve(K, Y, lambda);
  model.residual = normal_equation_residual(K, Y, model.coefficients, lambda);
  if (!(model.residual <= kResidualTolerance))
    throw FactorizationError("normal-equation residual " + format_double(model.residual) +
                             " exceeds tolerance");
  const auto& dict = pool.corpus().dictionary();
  model.dictionary_size = dict.size();
  model.dictionary_fingerprint = dict.fingerprint();
  return model;
}

GridSearchConfig GridSearchConfig::defaults() {
  GridSearchConfig c;
  for (int e = -7; e <= 7; e += 2) c.lambdas.push_back(std::ldexp(1.0, e));
  for (int e = -3; e <= 9; ++e) c.sigmas.push_back(std::sqrt(std::ldexp(1.0, e)));
  return c;
}

void GridSearchConfig::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
  if (kernel == KernelKind::Gaussian && sigmas.empty())
    throw std::invalid_argument("sigma grid is empty");
  for (double l : lambdas)
    if (!(l > 0) || !std::isfinite(l))
      throw std::invalid_argument("lambda grid values must be positive");
  for (double s : sigmas)
    if (!(s > 0) || !std::isfinite(s))
      throw std::invalid_argument("sigma grid values must be positive");
  if (!(split > 0 && split < 1))
    throw std::invalid_argument("split fraction must lie strictly between 0 and 1");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(
    const std::vector<std::size_t>& rows, double fraction, std::uint64_t seed,
    SplitMode mode) {
  if (rows.size() < 2) throw std::invalid_argument("need at least two rows to split");
  std::vector<std::size_t> order = rows;
  if (mode == SplitMode::Shuffle) {
    // Fisher-Yates on raw engine output; std::shuffle is not portable across
    // standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
  }
  auto fit = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(rows.size())));
  fit = std::clamp<std::size_t>(fit, 1, rows.size() - 1);
  std::vector<std::size_t> a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(fit));
  std::vector<std::size_t> b(order.begin() + static_cast<std::ptrdiff_t>(fit), order.end());
  return {std::move(a), std::move(b)};
}

GridSearchResult grid_search(const TrainingView& pool, const GridSearchConfig& config,
                             RowPolicy policy) {
  config.validate();
  const auto rows = pool.training_rows(policy);
  if (rows.size() < 2)
    throw std::invalid_argument("grid search needs at least two training rows");

  auto [fit, val] = split_rows(rows, config.split, config.seed, config.mode);
  const auto fit_x = row_features(pool, fit);
  const auto val_x = row_features(pool, val);
  const Eigen::MatrixXd fit_y = label_matrix(pool, fit);
  const Eigen::MatrixXd val_y = label_matrix(pool, val);
  const double cells = static_cast<double>(val_y.size());

  std::vector<double> sigmas =
      config.kernel == KernelKind::Linear ? std::vector<double>{0.0} : config.sigmas;

  GridSearchResult result;
  bool have_best = false;
  double best = 0;
  for (double sigma : sigmas) {
    const auto kernel = make_kernel(config.kernel, sigma);
    const Eigen::MatrixXd K = build_kernel_matrix(kernel, std::span<const FeatureVector>(fit_x));
    const Eigen::MatrixXd Kv = cross_kernel(kernel, std::span<const FeatureVector>(val_x),
                                            std::span<const FeatureVector>(fit_x));
    for (double lambda : config.lambdas) {
      const Eigen::MatrixXd A = mor_solve(K, fit_y, lambda);
      double loss = cells > 0 ? (Kv * A - val_y).squaredNorm() / cells : 0.0;
      result.table.push_back({lambda, sigma, loss});
      bool better = !have_best || loss < best ||
                    (loss == best && (lambda < result.lambda ||
                                      (lambda == result.lambda && sigma < result.sigma)));
      if (better) {
        have_best = true;
        best = loss;
        result.lambda = lambda;
        result.sigma = sigma;
      }
    }
  }
  std::sort(result.table.begin(), result.table.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.sigma < b.sigma;
  });
  result.model = mor_train(pool, make_kernel(config.kernel, result.sigma), result.lambda, policy);
  return result;
}

void write_loss_table(std::ostream& out, const std::vector<GridPoint>& table) {
  out << "lambda,sigma,validation_loss\n";
  for (const auto& g : table)
    out << format_double(g.lambda) << ',' << format_double(g.sigma) << ','
        << format_double(g.loss) << '\n';
}

void MorModel::save(std::ostream& out) const {
  out << "premsel-mor 1\n";
  if (kernel.kind == KernelKind::Linear) out << "kernel linear\n";
  else out << "kernel gaussian " << format_double(kernel.sigma) << '\n';
  out << "lambda " << format_double(lambda) << '\n';
  std::ostringstream fp;
  fp << std::hex << dictionary_fingerprint;
  out << "dictionary " << dictionary_size << ' ' << fp.str() << '\n';
  out << "residual " << format_double(residual) << '\n';
  out << "rows " << rows.size() << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "row " << row_positions[r] << ' ' << rows[r].size();
    for (auto f : rows[r].indices()) out << ' ' << f;
    out << '\n';
  }
  out << "premises " << premise_ids.size() << '\n';
  for (std::size_t p = 0; p < premise_ids.size(); ++p)
    out << "premise " << premise_ids[p] << ' ' << premise_positions[p] << '\n';
  out << "coefficients " << coefficients.rows() << ' ' << coefficients.cols() << '\n';
  for (Eigen::Index r = 0; r < coefficients.rows(); ++r) {
    for (Eigen::Index c = 0; c < coefficients.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(coefficients(r, c));
    }
    out << '\n';
  }
}

MorModel MorModel::load(std::istream& in) {
  auto w = read_words(in, "header");
  if (w.size() != 2 || w[0] != "premsel-mor" || w[1] != "1")
    throw std::runtime_error("not a kernel ranker model file");
  MorModel m;
  w = read_words(in, "kernel");
  expect_words(w, "kernel", 2);
  if (w[1] == "linear") m.kernel = KernelSpec<double>::linear();
  else if (w[1] == "gaussian" && w.size() == 3)
    m.kernel = KernelSpec<double>::gaussian(parse_double(w[2]));
  else throw std::runtime_error("unknown kernel '" + w[1] + "'");
  w = read_words(in, "lambda");
  expect_words(w, "lambda", 2);
  m.lambda = parse_double(w[1]);
  w = read_words(in, "dictionary");
  expect_words(w, "dictionary", 3);
  m.dictionary_size = parse_integer<std::size_t>(w[1]);
  m.dictionary_fingerprint = parse_integer<std::uint64_t>(w[2], 16);
  w = read_words(in, "residual");
  expect_words(w, "residual", 2);
  m.residual = parse_double(w[1]);
  w = read_words(in, "rows");
  expect_words(w, "rows", 2);
  auto n = parse_integer<std::size_t>(w[1]);
  for (std::size_t r = 0; r < n; ++r) {
    w = read_words(in, "row");
    expect_words(w, "row", 3);
    m.row_positions.push_back(parse_integer<std::size_t>(w[1]));
    auto k = parse_integer<std::size_t>(w[2]);
    if (w.size() != 3 + k) throw std::runtime_error("malformed row line");
    std::vector<FeatureIndex> idx;
    for (std::size_t j = 0; j < k; ++j) idx.push_back(parse_integer<FeatureIndex>(w[3 + j]));
    m.rows.emplace_back(std::move(idx));
  }
  w = read_words(in, "premises");
  expect_words(w, "premises", 2);
  auto np = parse_integer<std::size_t>(w[1]);
  for (std::size_t p = 0; p < np; ++p) {
    w = read_words(in, "premise");
    expect_words(w, "premise", 3);
    m.premise_ids.push_back(w[1]);
    m.premise_positions.push_back(parse_integer<std::size_t>(w[2]));
  }
  w = read_words(in, "coefficients");
  expect_words(w, "coefficients", 3);
  auto cr = parse_integer<std::size_t>(w[1]);
  auto cc = parse_integer<std::size_t>(w[2]);
  if (cr != n || cc != np) throw std::runtime_error("coefficient matrix has wrong shape");
  m.coefficients.resize(static_cast<Eigen::Index>(cr), static_cast<Eigen::Index>(cc));
  for (std::size_t r = 0; r < cr; ++r) {
    w = read_words(in, "coefficient row");
    if (w.size() != cc) throw std::runtime_error("malformed coefficient row");
    for (std::size_t c = 0; c < cc; ++c)
      m.coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double(w[c]);
  }
  return m;
}

}  // namespace premsel
