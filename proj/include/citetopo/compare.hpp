#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citetopo/error.hpp"
#include "citetopo/numeric.hpp"

namespace citetopo {

/// Datasets x statistics. Missing values are NaN.
struct StatMatrix {
  std::vector<std::string> datasets;
  std::vector<std::string> statistics;
  Eigen::MatrixXd values;

  Eigen::Index column(std::string_view name) const;
  Eigen::Index row(std::string_view name) const;
  StatMatrix select_statistics(const std::vector<std::string>& names) const;
  StatMatrix select_datasets(const std::vector<std::string>& names) const;
  /// Concatenates rows; statistics must agree by name (order from `a`).
  static StatMatrix stack(const StatMatrix& a, const StatMatrix& b);
};

/// CSV with a header row "dataset,<stat>,..." and one row per dataset.
/// Lines starting with '#' are comments; empty cells are missing values.
StatMatrix read_stat_matrix_csv(std::istream& in, std::string_view source = "<csv>");
void write_stat_matrix_csv(std::ostream& out, const StatMatrix& m);

// ---------------------------------------------------------------------------
// Externally studentized residuals

/// Leave-one-out residuals: (x_ij - mean_ij) / (sd_ij sqrt(1 - 1/N)), where
/// mean_ij and sd_ij (N-2 divisor) exclude dataset i. p-values are two-tailed
/// under Student's t with N-2 degrees of freedom.
///
/// When the other datasets agree exactly (sd_ij = 0) the residual is 0 with
/// p = 1 if x_ij agrees too, and +-inf with p = 0 otherwise. Columns holding
/// a missing value yield NaN residuals and p-values.
template <typename Scalar>
struct ResidualMatrixT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix residual;
  Matrix p_value;
  Matrix loo_mean;
  Matrix loo_sd;

  bool defined(Eigen::Index i, Eigen::Index j) const { return !std::isnan(residual(i, j)); }
  bool saturated(Eigen::Index i, Eigen::Index j) const { return std::isinf(residual(i, j)); }
};
using ResidualMatrix = ResidualMatrixT<double>;

inline constexpr Eigen::Index kMinDatasets = 4;

template <typename Derived>
ResidualMatrixT<typename Derived::Scalar> studentized_residuals(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index N = x.rows(), S = x.cols();
  if (N < kMinDatasets)
    throw InvalidArgument("studentized residuals need at least 4 datasets, got " + std::to_string(N));
  constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  ResidualMatrixT<Scalar> r;
  r.residual.setConstant(N, S, nan);
  r.p_value.setConstant(N, S, nan);
  r.loo_mean.setConstant(N, S, nan);
  r.loo_sd.setConstant(N, S, nan);
  const boost::math::students_t_distribution<Scalar> t_dist(static_cast<Scalar>(N - 2));
  const Scalar shrink = std::sqrt(Scalar(1) - Scalar(1) / static_cast<Scalar>(N));

  for (Eigen::Index j = 0; j < S; ++j) {
    const auto col = x.col(j);
    if (col.array().isNaN().any()) continue;
    for (Eigen::Index i = 0; i < N; ++i) {
      Scalar sum = 0, lo = std::numeric_limits<Scalar>::infinity(), hi = -lo;
      for (Eigen::Index k = 0; k < N; ++k) {
        if (k == i) continue;
        sum += col(k);
        lo = std::min(lo, col(k));
        hi = std::max(hi, col(k));
      }
      const Scalar mean = sum / static_cast<Scalar>(N - 1);
      Scalar ss = 0;
      for (Eigen::Index k = 0; k < N; ++k)
        if (k != i) ss += (col(k) - mean) * (col(k) - mean);
      const Scalar sd = lo == hi ? Scalar(0) : std::sqrt(ss / static_cast<Scalar>(N - 2));
      r.loo_mean(i, j) = mean;
      r.loo_sd(i, j) = sd;

      if (sd == Scalar(0)) {
        const Scalar diff = col(i) - lo;
        r.residual(i, j) = diff == Scalar(0) ? Scalar(0)
                                             : std::copysign(std::numeric_limits<Scalar>::infinity(), diff);
        r.p_value(i, j) = diff == Scalar(0) ? Scalar(1) : Scalar(0);
        continue;
      }
      const Scalar res = (col(i) - mean) / (sd * shrink);
      r.residual(i, j) = res;
      r.p_value(i, j) = Scalar(2) * boost::math::cdf(boost::math::complement(t_dist, std::abs(res)));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Ranking

/// Ranks of one vector in ascending order; exact ties share their mean position.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> average_ranks(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v(a) < v(b); });
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ranks(n);
  for (Eigen::Index lo = 0; lo < n;) {
    Eigen::Index hi = lo;
    while (hi + 1 < n && v(order[hi + 1]) == v(order[lo])) ++hi;
    const Scalar shared = static_cast<Scalar>(lo + hi + 2) / Scalar(2);
    for (Eigen::Index k = lo; k <= hi; ++k) ranks(order[k]) = shared;
    lo = hi + 1;
  }
  return ranks;
}

template <typename Scalar>
struct RankMatrixT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ranks;  // datasets x statistics
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mean_ranks;
};
using RankMatrix = RankMatrixT<double>;

/// Per statistic, the dataset with the smallest |residual| gets rank 1.
/// Throws InvalidArgument on undefined residuals.
template <typename Derived>
RankMatrixT<typename Derived::Scalar> rank_datasets(const Eigen::MatrixBase<Derived>& residuals) {
  using Scalar = typename Derived::Scalar;
  if (residuals.array().isNaN().any())
    throw InvalidArgument("cannot rank datasets on an undefined residual; drop the statistic");
  RankMatrixT<Scalar> r;
  r.ranks.resize(residuals.rows(), residuals.cols());
  for (Eigen::Index j = 0; j < residuals.cols(); ++j)
    r.ranks.col(j) = average_ranks(residuals.col(j).cwiseAbs());
  r.mean_ranks = r.ranks.rowwise().mean();
  return r;
}

// ---------------------------------------------------------------------------
// Independence screening

/// Spearman correlation of two statistics: Pearson over their rank columns.
template <typename Scalar>
std::optional<Scalar> spearman(const RankMatrixT<Scalar>& r, Eigen::Index a, Eigen::Index b) {
  return pearson(r.ranks.col(a), r.ranks.col(b));
}

template <typename Scalar>
struct FisherTestT {
  Scalar z = 0;
  Scalar p = 1;
  bool saturated = false;  // |rho| = 1
};
using FisherTest = FisherTestT<double>;

/// z = sqrt(N-3)/2 * ln((1+rho)/(1-rho)), two-tailed p under N(0,1).
template <typename Scalar>
FisherTestT<Scalar> fisher_independence_test(Scalar rho, Eigen::Index N) {
  if (N < kMinDatasets) throw InvalidArgument("Fisher test needs N >= 4");
  FisherTestT<Scalar> f;
  if (std::abs(rho) >= Scalar(1)) {
    f.saturated = true;
    f.z = std::copysign(std::numeric_limits<Scalar>::infinity(), rho);
    f.p = 0;
    return f;
  }
  f.z = std::sqrt(static_cast<Scalar>(N - 3)) / Scalar(2) * std::log((Scalar(1) + rho) / (Scalar(1) - rho));
  const boost::math::normal_distribution<Scalar> normal;
  f.p = Scalar(2) * boost::math::cdf(boost::math::complement(normal, std::abs(f.z)));
  return f;
}

// ---------------------------------------------------------------------------
// Friedman and Nemenyi

template <typename Scalar>
struct FriedmanResultT {
  Scalar statistic = 0;
  Scalar p = 1;
  Eigen::Index df = 0;
};
using FriedmanResult = FriedmanResultT<double>;

/// 12S / (N(N+1)) * (sum_i R_i^2 - N(N+1)^2 / 4), upper-tail chi^2 with N-1 df.
template <typename Derived>
FriedmanResultT<typename Derived::Scalar> friedman_test(const Eigen::MatrixBase<Derived>& mean_ranks,
                                                        Eigen::Index num_statistics) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index N = mean_ranks.size();
  if (N < 2 || num_statistics < 2) throw InvalidArgument("Friedman test needs N >= 2 and S >= 2");
  const Scalar n = static_cast<Scalar>(N), s = static_cast<Scalar>(num_statistics);
  FriedmanResultT<Scalar> f;
  f.df = N - 1;
  f.statistic = Scalar(12) * s / (n * (n + 1)) *
                (mean_ranks.squaredNorm() - n * (n + 1) * (n + 1) / Scalar(4));
  const boost::math::chi_squared_distribution<Scalar> chi2(static_cast<Scalar>(f.df));
  f.p = boost::math::cdf(boost::math::complement(chi2, std::max(f.statistic, Scalar(0))));
  return f;
}

/// Two-tailed Nemenyi critical value q_alpha (studentized range / sqrt 2)
/// for N = 2..20 datasets and alpha in {0.05, 0.10}.
double nemenyi_critical_value(Eigen::Index N, double alpha);

/// q_alpha * sqrt(N(N+1) / (6S)).
double nemenyi_cd(Eigen::Index N, Eigen::Index S, double alpha);

/// Maximal runs of rank-sorted datasets whose mean ranks span at most `cd`.
/// Each group lists dataset indices in ascending mean-rank order.
std::vector<std::vector<Eigen::Index>> cd_groups(const Eigen::VectorXd& mean_ranks, double cd);

/// Pairs (i < j) whose mean ranks differ by more than `cd`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> significant_pairs(const Eigen::VectorXd& mean_ranks,
                                                                     double cd);

// ---------------------------------------------------------------------------
// Full pipeline

/// Statistic presets: "paper10", "validation10", "all21".
std::vector<std::string> preset_statistics(std::string_view preset);

struct IndependenceEntry {
  std::string a;
  std::string b;
  std::optional<double> rho;
  FisherTest test;
};

struct ComparisonReport {
  StatMatrix input;              // all statistics supplied
  ResidualMatrix residuals;      // over input.statistics
  std::vector<std::string> selected;
  RankMatrix ranks;              // over the selected statistics
  std::vector<IndependenceEntry> independence;
  FriedmanResult friedman;
  double alpha = 0.05;
  bool friedman_rejects = false;
  double critical_value = 0;
  double cd = 0;
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> significant;
};

/// Residuals on every statistic, ranking and tests on `selected`.
ComparisonReport compare_datasets(const StatMatrix& input, const std::vector<std::string>& selected,
                                  double alpha);

}  // namespace citetopo
