#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "premsel/features.hpp"

namespace premsel {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class KernelKind { Linear, Gaussian };

template <typename Scalar = double>
struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;
  Scalar sigma = Scalar(1);  // Gaussian only

  static KernelSpec linear() { return {KernelKind::Linear, Scalar(1)}; }
  static KernelSpec gaussian(Scalar sigma) {
    if (!(sigma > Scalar(0)) || !std::isfinite(static_cast<double>(sigma)))
      throw std::invalid_argument("Gaussian kernel width must be positive");
    return {KernelKind::Gaussian, sigma};
  }
};

/// Linear: <a, b>. Gaussian: exp(-(<a,a> - 2<a,b> + <b,b>) / sigma^2).
template <typename Scalar>
Scalar kernel_eval(const KernelSpec<Scalar>& spec, const FeatureVector& a,
                   const FeatureVector& b) {
  const auto ab = static_cast<Scalar>(dot(a, b));
  if (spec.kind == KernelKind::Linear) return ab;
  const auto sq = static_cast<Scalar>(a.size()) - Scalar(2) * ab +
                  static_cast<Scalar>(b.size());
  return std::exp(-sq / (spec.sigma * spec.sigma));
}

/// Symmetric n x n matrix of kernel values; only the upper triangle is
/// evaluated and then mirrored so symmetry is exact.
template <typename Scalar>
MatrixX<Scalar> build_kernel_matrix(const KernelSpec<Scalar>& spec,
                                    std::span<const FeatureVector> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  MatrixX<Scalar> K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = spec.kind == KernelKind::Gaussian
                  ? Scalar(1)
                  : static_cast<Scalar>(rows[static_cast<std::size_t>(i)].size());
    for (Eigen::Index j = i + 1; j < n; ++j) {
      K(i, j) = kernel_eval(spec, rows[static_cast<std::size_t>(i)],
                            rows[static_cast<std::size_t>(j)]);
      K(j, i) = K(i, j);
    }
  }
  return K;
}

/// Kernel values of every `queries` row against every `rows` entry.
template <typename Scalar>
MatrixX<Scalar> cross_kernel(const KernelSpec<Scalar>& spec,
                             std::span<const FeatureVector> queries,
                             std::span<const FeatureVector> rows) {
  MatrixX<Scalar> out(static_cast<Eigen::Index>(queries.size()),
                      static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < queries.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kernel_eval(spec, queries[i], rows[j]);
  return out;
}

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves (K + lambda I) A = Y for all columns of Y with one Cholesky
/// factorization, followed by a single refinement step.
template <typename DerivedK, typename DerivedY>
MatrixX<typename DerivedK::Scalar> mor_solve(const Eigen::MatrixBase<DerivedK>& K,
                                             const Eigen::MatrixBase<DerivedY>& Y,
                                             typename DerivedK::Scalar lambda) {
  using Scalar = typename DerivedK::Scalar;
  if (!(lambda > Scalar(0)))
    throw std::invalid_argument("regularization parameter must be positive");
  if (K.rows() != K.cols() || K.rows() != Y.rows())
    throw std::invalid_argument("kernel and label matrices disagree in size");

  MatrixX<Scalar> regularized = K;
  regularized.diagonal().array() += lambda;
  Eigen::LLT<MatrixX<Scalar>> llt(regularized);
  if (llt.info() != Eigen::Success)
    throw FactorizationError(
        "K + lambda I is not positive definite (kernel matrix not PSD?)");
  MatrixX<Scalar> A = llt.solve(Y);
  MatrixX<Scalar> residual = Y - regularized * A;
  A.noalias() += llt.solve(residual);
  return A;
}

/// max |(K + lambda I) A - Y|
template <typename DerivedK, typename DerivedY, typename DerivedA>
typename DerivedK::Scalar normal_equation_residual(const Eigen::MatrixBase<DerivedK>& K,
                                                   const Eigen::MatrixBase<DerivedY>& Y,
                                                   const Eigen::MatrixBase<DerivedA>& A,
                                                   typename DerivedK::Scalar lambda) {
  if (A.size() == 0) return 0;
  return ((K * A + lambda * A) - Y).cwiseAbs().maxCoeff();
}

/// tr((Y - K A)^T (Y - K A) + lambda A^T K A)
template <typename DerivedK, typename DerivedY, typename DerivedA>
typename DerivedK::Scalar mor_objective(const Eigen::MatrixBase<DerivedK>& K,
                                        const Eigen::MatrixBase<DerivedY>& Y,
                                        const Eigen::MatrixBase<DerivedA>& A,
                                        typename DerivedK::Scalar lambda) {
  const auto R = (Y - K * A).eval();
  return R.squaredNorm() + lambda * (A.transpose() * K * A).trace();
}

/// -2 K (Y - K A) + 2 lambda K A
template <typename DerivedK, typename DerivedY, typename DerivedA>
MatrixX<typename DerivedK::Scalar> mor_objective_gradient(
    const Eigen::MatrixBase<DerivedK>& K, const Eigen::MatrixBase<DerivedY>& Y,
    const Eigen::MatrixBase<DerivedA>& A, typename DerivedK::Scalar lambda) {
  return -2 * K * (Y - K * A) + 2 * lambda * K * A;
}

}  // namespace premsel
