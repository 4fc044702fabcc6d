#include <cmath>
#include <map>
#include <numeric>

#include "citetopo/degree_stats.hpp"
#include "citetopo/error.hpp"
#include "doctest.h"
#include "support/support.hpp"

using namespace citetopo;
using namespace testsupport;

namespace {

std::vector<double> pareto_samples(std::mt19937_64& rng, std::size_t n, double gamma, double kmin) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = kmin * std::pow(1.0 - u(rng), -1.0 / (gamma - 1.0));
  return out;
}

// Exact zeta-type law P(k) ~ k^-gamma on k >= kmin, sampled by inverting the
// tabulated CDF.
std::vector<std::uint32_t> zeta_samples(std::mt19937_64& rng, std::size_t n, double gamma, std::uint32_t kmin) {
  std::vector<double> cdf;
  double z = 0;
  for (std::uint32_t k = kmin; k < 2'000'000; ++k) z += std::pow(k, -gamma);
  double acc = 0;
  for (std::uint32_t k = kmin; k < 2'000'000; ++k) {
    acc += std::pow(k, -gamma) / z;
    cdf.push_back(acc);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::uint32_t> out(n);
  for (auto& x : out) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u(rng));
    x = kmin + static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
  }
  return out;
}

double brute_ks(std::vector<double> x, double kmin, double gamma) {
  std::erase_if(x, [&](double v) { return v < kmin; });
  double d = 0;
  for (double v : x) {
    double ge = 0;
    for (double w : x) ge += w >= v;
    d = std::max(d, std::abs(ge / x.size() - std::pow(v / kmin, 1 - gamma)));
  }
  return d;
}

}  // namespace

TEST_CASE("power-law formula on a tiny tail") {
  const std::vector<std::uint32_t> k = {1, 3, 20, 40, 80};
  auto fit = fit_power_law<std::uint32_t>(k, 10);
  CHECK(fit.tail_n == 3);
  CHECK(fit.gamma == doctest::Approx(1 + 3 / (6 * std::log(2.0))).epsilon(1e-12));
  CHECK(fit.gamma == doctest::Approx(1.7213).epsilon(1e-4));
  CHECK(fit.ks_distance == doctest::Approx(brute_ks({1, 3, 20, 40, 80}, 10, fit.gamma)));
}

TEST_CASE("degenerate and empty tails") {
  const std::vector<std::uint32_t> flat = {10, 10, 10, 2};
  auto fit = fit_power_law<std::uint32_t>(flat, 10);
  CHECK(fit.degenerate);
  CHECK(std::isinf(fit.gamma));
  const std::vector<std::uint32_t> small = {1, 2, 3};
  CHECK_THROWS_AS(fit_power_law<std::uint32_t>(small, 10), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law<std::uint32_t>(small, 0), InvalidArgument);
}

TEST_CASE("exponent depends only on k / kmin") {
  std::mt19937_64 rng(8);
  auto x = pareto_samples(rng, 500, 2.3, 5);
  std::vector<double> y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [](double v) { return 7 * v; });
  auto a = fit_power_law<double>(x, 5), b = fit_power_law<double>(y, 35);
  CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-12));
  CHECK(a.ks_distance == doctest::Approx(b.ks_distance).epsilon(1e-9));
  CHECK(a.ks_distance == doctest::Approx(brute_ks(x, 5, a.gamma)).epsilon(1e-9));
}

TEST_CASE("recovers exponent 2.5 from 1e5 continuous samples") {
  std::mt19937_64 rng(42);
  auto x = pareto_samples(rng, 100'000, 2.5, 10);
  auto fit = fit_power_law<double>(x, 10);
  CHECK(fit.gamma >= 2.45);
  CHECK(fit.gamma <= 2.55);
  CHECK(fit.ks_distance < 0.01);
}

TEST_CASE("discrete samples follow the analytic expectation of the estimator") {
  // For an exact discrete law the estimator converges to
  // 1 + 1 / E[ln(k / kmin)], about 2.620 at gamma 2.5 and kmin 10.
  double z = 0, e = 0;
  for (int k = 10; k < 2'000'000; ++k) {
    z += std::pow(k, -2.5);
    e += std::pow(k, -2.5) * std::log(k / 10.0);
  }
  const double expected = 1 + z / e;
  std::mt19937_64 rng(4);
  auto k = zeta_samples(rng, 100'000, 2.5, 10);
  auto fit = fit_power_law<std::uint32_t>(k, 10);
  CHECK(fit.gamma == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("kmin selection and plausibility") {
  std::mt19937_64 rng(17);
  auto k = zeta_samples(rng, 5000, 2.5, 1);
  auto both = select_power_law(k, KminPolicy::both, 1, 200);
  REQUIRE(both.candidates.size() == 2);
  const auto& best = both.candidates[0].ks_distance <= both.candidates[1].ks_distance ? both.candidates[0]
                                                                                      : both.candidates[1];
  CHECK(both.chosen.kmin == best.kmin);
  CHECK(both.plausible);

  auto only10 = select_power_law(k, KminPolicy::k10, 1, 0);
  CHECK(only10.candidates.size() == 1);
  CHECK(only10.chosen.kmin == 10);

  std::geometric_distribution<std::uint32_t> geo(0.08);
  std::vector<std::uint32_t> light(5000);
  for (auto& v : light) v = 1 + geo(rng);
  auto bad = select_power_law(light, KminPolicy::both, 1, 200);
  CHECK_FALSE(bad.plausible);
  CHECK(bad.gof_pvalue < kPlausibilityThreshold);

  const std::vector<std::uint32_t> flat10 = {10, 10, 10, 30, 1};
  auto s = select_power_law(flat10, KminPolicy::both, 1, 10);
  CHECK_FALSE(s.chosen.degenerate);
  CHECK(s.chosen.kmin == 10);
  CHECK(parse_kmin_policy("25") == KminPolicy::k25);
  CHECK_THROWS_AS(parse_kmin_policy("5"), InvalidArgument);
}

TEST_CASE("distribution histogram sums to n") {
  std::mt19937_64 rng(1);
  auto g = random_graph(rng, 60, 0.05);
  auto t = degrees(g);
  for (auto mode : {DegreeMode::total, DegreeMode::in, DegreeMode::out}) {
    auto d = degree_distribution(t, mode);
    std::size_t n = 0, sum = 0;
    for (auto [k, c] : d.histogram) {
      n += c;
      sum += k * c;
    }
    CHECK(n == g.num_nodes());
    CHECK(sum == (mode == DegreeMode::total ? 2 : 1) * g.num_edges());
  }
}

TEST_CASE("neighbour connectivity of small graphs") {
  auto star = graph_from({{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  auto p = neighbour_connectivity(star, DegreeMode::total);
  CHECK(p.at(1) == doctest::Approx(4));
  CHECK(p.at(4) == doctest::Approx(1));
  auto tri = neighbour_connectivity(graph_from({{1, 2}, {2, 3}, {3, 1}}), DegreeMode::total);
  CHECK(tri.size() == 1);
  CHECK(tri.at(2) == doctest::Approx(2));
}

TEST_CASE("neighbour connectivity against a double loop") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_graph(rng, 5 + static_cast<int>(rng() % 46), 0.08);
    auto a = undirected_matrix(g);
    auto t = degrees(g);
    for (auto mode : {DegreeMode::total, DegreeMode::in, DegreeMode::out}) {
      auto k = t.of(mode);
      std::map<std::uint32_t, std::pair<double, double>> acc;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          if (a[i][j]) {
            acc[k[i]].first += k[j];
            acc[k[i]].second += 1;
          }
      auto p = neighbour_connectivity(g, mode);
      REQUIRE(p.size() == acc.size());
      const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
      for (auto [d, s] : acc) {
        CHECK(p.at(d) == doctest::Approx(s.first / s.second).epsilon(1e-12));
        CHECK(p.at(d) >= *lo);
        CHECK(p.at(d) <= *hi);
      }
    }
  }
}

TEST_CASE("mixing on small graphs") {
  auto cycle = graph_from({{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  CHECK_FALSE(degree_mixing_directed(cycle, DegreeSide::in, DegreeSide::in));
  auto k4 = graph_from({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK_FALSE(degree_mixing_undirected(undirected_view(k4)));
  auto star = graph_from({{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  CHECK(*degree_mixing_undirected(undirected_view(star)) == doctest::Approx(-1));
  CHECK_FALSE(degree_mixing_directed(graph_from({{1, 2}}), DegreeSide::out, DegreeSide::in));
}

TEST_CASE("mixing against the explicit edge list") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng, 4 + static_cast<int>(rng() % 47), 0.1);
    auto a = directed_matrix(g);
    std::vector<int> kin(a.size(), 0), kout(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[i][j]) ++kout[i], ++kin[j];
    for (auto al : {DegreeSide::in, DegreeSide::out})
      for (auto be : {DegreeSide::in, DegreeSide::out}) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j]) {
              x.push_back(al == DegreeSide::in ? kin[i] : kout[i]);
              y.push_back(be == DegreeSide::in ? kin[j] : kout[j]);
            }
        auto want = textbook_pearson(x, y);
        auto got = degree_mixing_directed(g, al, be);
        REQUIRE(want.has_value() == got.has_value());
        if (got) {
          CHECK(*got == doctest::Approx(*want).epsilon(1e-9));
          CHECK(std::abs(*got) <= 1.0);
        }
      }

    auto u = undirected_matrix(g);
    auto k = row_degrees(u);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        if (u[i][j]) x.push_back(k[i]), y.push_back(k[j]);
    auto want = textbook_pearson(x, y);
    auto got = degree_mixing_undirected(undirected_view(g));
    REQUIRE(want.has_value() == got.has_value());
    if (got) CHECK(*got == doctest::Approx(*want).epsilon(1e-9));
  }
}

TEST_CASE("undirected mixing ignores relabeling") {
  std::mt19937_64 rng(21);
  auto g = random_graph(rng, 40, 0.08);
  std::vector<Label> perm(g.num_nodes());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<Label, Label>> pairs;
  for (auto [a, b] : g.edges()) pairs.emplace_back(perm[a] * 13 + 1000, perm[b] * 13 + 1000);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  auto h = graph_from(pairs);
  CHECK(*degree_mixing_undirected(undirected_view(h)) ==
        doctest::Approx(*degree_mixing_undirected(undirected_view(g))).epsilon(1e-12));
}
