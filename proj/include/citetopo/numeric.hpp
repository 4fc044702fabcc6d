#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <utility>
#include <optional>

namespace citetopo {

/// Pearson correlation of two equally sized vectors, using population means
/// and deviations. Returns nullopt when either side is constant.
template <typename DerivedX, typename DerivedY>
std::optional<typename DerivedX::Scalar> pearson(const Eigen::DenseBase<DerivedX>& x,
                                                 const Eigen::DenseBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  eigen_assert(x.size() == y.size());
  if (x.size() < 2) return std::nullopt;
  const auto xa = x.derived().array().template cast<Scalar>();
  const auto ya = y.derived().array().template cast<Scalar>();
  if ((xa == xa(0)).all() || (ya == ya(0)).all()) return std::nullopt;

  const Eigen::Array<Scalar, Eigen::Dynamic, 1> dx = xa - xa.mean();
  const Eigen::Array<Scalar, Eigen::Dynamic, 1> dy = ya - ya.mean();
  const Scalar sxx = dx.square().sum();
  const Scalar syy = dy.square().sum();
  if (sxx <= Scalar(0) || syy <= Scalar(0)) return std::nullopt;
  Scalar r = (dx * dy).sum() / std::sqrt(sxx * syy);
  // Rounding can push |r| a few ulps past 1.
  return std::clamp(r, Scalar(-1), Scalar(1));
}

/// Sample mean and standard error of the mean (sample s.d. / sqrt(n)).
template <typename Derived>
std::pair<typename Derived::Scalar, typename Derived::Scalar> mean_and_sem(
    const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const auto n = v.size();
  if (n == 0) return {Scalar(0), Scalar(0)};
  if ((v.derived().array() == v.derived()(0)).all()) return {v.derived()(0), Scalar(0)};
  const Scalar mean = v.derived().array().mean();
  const Scalar ss = (v.derived().array() - mean).square().sum();
  return {mean, std::sqrt(ss / Scalar(n - 1)) / std::sqrt(Scalar(n))};
}

}  // namespace citetopo
