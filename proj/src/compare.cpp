#include "citetopo/compare.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace citetopo {

Eigen::Index StatMatrix::column(std::string_view name) const {
  auto it = std::find(statistics.begin(), statistics.end(), name);
  if (it == statistics.end()) throw InvalidArgument("unknown statistic '" + std::string(name) + "'");
  return it - statistics.begin();
}

Eigen::Index StatMatrix::row(std::string_view name) const {
  auto it = std::find(datasets.begin(), datasets.end(), name);
  if (it == datasets.end()) throw InvalidArgument("unknown dataset '" + std::string(name) + "'");
  return it - datasets.begin();
}

StatMatrix StatMatrix::select_statistics(const std::vector<std::string>& names) const {
  StatMatrix out;
  out.datasets = datasets;
  out.statistics = names;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j)
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(column(names[j]));
  return out;
}

StatMatrix StatMatrix::select_datasets(const std::vector<std::string>& names) const {
  StatMatrix out;
  out.datasets = names;
  out.statistics = statistics;
  out.values.resize(static_cast<Eigen::Index>(names.size()), values.cols());
  for (std::size_t i = 0; i < names.size(); ++i)
    out.values.row(static_cast<Eigen::Index>(i)) = values.row(row(names[i]));
  return out;
}

StatMatrix StatMatrix::stack(const StatMatrix& a, const StatMatrix& b) {
  if (a.datasets.empty()) return b;
  if (b.datasets.empty()) return a;
  const StatMatrix bb = b.select_statistics(a.statistics);
  StatMatrix out;
  out.statistics = a.statistics;
  out.datasets = a.datasets;
  out.datasets.insert(out.datasets.end(), b.datasets.begin(), b.datasets.end());
  std::set<std::string> seen;
  for (const auto& d : out.datasets)
    if (!seen.insert(d).second) throw InvalidArgument("duplicate dataset '" + d + "'");
  out.values.resize(a.values.rows() + bb.values.rows(), a.values.cols());
  out.values << a.values, bb.values;
  return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

StatMatrix read_stat_matrix_csv(std::istream& in, std::string_view source) {
  const std::string src(source);
  StatMatrix m;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 2) throw ParseError(src, line_no, "header needs a dataset column and statistics");
      m.statistics.assign(cells.begin() + 1, cells.end());
      have_header = true;
      continue;
    }
    if (cells.size() != m.statistics.size() + 1)
      throw ParseError(src, line_no, "expected " + std::to_string(m.statistics.size() + 1) + " cells");
    m.datasets.push_back(cells[0]);
    auto& row = rows.emplace_back();
    for (std::size_t j = 1; j < cells.size(); ++j) {
      const std::string& c = cells[j];
      if (c.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double v = 0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size())
        throw ParseError(src, line_no, "not a number: '" + c + "'");
      row.push_back(v);
    }
  }
  if (!have_header) throw DataError(src + ": empty statistics table");
  m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.statistics.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

void write_stat_matrix_csv(std::ostream& out, const StatMatrix& m) {
  out << "dataset";
  for (const auto& s : m.statistics) out << ',' << s;
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    out << m.datasets[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      out << ',';
      const double v = m.values(i, j);
      if (std::isnan(v)) continue;
      std::snprintf(buf, sizeof buf, "%.6g", v);
      out << buf;
    }
    out << '\n';
  }
}

namespace {

// Studentized range quantiles for infinite df, divided by sqrt(2).
constexpr std::array<double, 19> kQ05 = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                                         3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                         3.426, 3.458, 3.489, 3.517, 3.544};
constexpr std::array<double, 19> kQ10 = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                                         2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                         3.196, 3.230, 3.261, 3.291, 3.319};

}  // namespace

double nemenyi_critical_value(Eigen::Index N, double alpha) {
  if (N < 2 || N > 20)
    throw InvalidArgument("Nemenyi critical values cover 2..20 datasets, got " + std::to_string(N));
  const auto idx = static_cast<std::size_t>(N - 2);
  if (std::abs(alpha - 0.05) < 1e-9) return kQ05[idx];
  if (std::abs(alpha - 0.10) < 1e-9) return kQ10[idx];
  throw InvalidArgument("Nemenyi alpha must be 0.05 or 0.10");
}

double nemenyi_cd(Eigen::Index N, Eigen::Index S, double alpha) {
  if (S < 1) throw InvalidArgument("Nemenyi critical difference needs S >= 1");
  const double n = static_cast<double>(N);
  return nemenyi_critical_value(N, alpha) * std::sqrt(n * (n + 1) / (6.0 * static_cast<double>(S)));
}

std::vector<std::vector<Eigen::Index>> cd_groups(const Eigen::VectorXd& mean_ranks, double cd) {
  const Eigen::Index n = mean_ranks.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return mean_ranks(a) < mean_ranks(b); });

  std::vector<std::vector<Eigen::Index>> groups;
  Eigen::Index covered_to = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = i;
    while (j + 1 < n && mean_ranks(order[j + 1]) - mean_ranks(order[i]) <= cd) ++j;
    if (j <= covered_to) continue;
    groups.emplace_back(order.begin() + i, order.begin() + j + 1);
    covered_to = j;
  }
  return groups;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> significant_pairs(const Eigen::VectorXd& mean_ranks,
                                                                     double cd) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (Eigen::Index i = 0; i < mean_ranks.size(); ++i)
    for (Eigen::Index j = i + 1; j < mean_ranks.size(); ++j)
      if (std::abs(mean_ranks(i) - mean_ranks(j)) > cd) out.emplace_back(i, j);
  return out;
}

std::vector<std::string> preset_statistics(std::string_view preset) {
  if (preset == "paper10")
    return {"pct_in_field", "pct_core", "mean_k",  "gamma_in", "gamma_out",
            "r_in_in",      "r_out_out", "mean_D", "r_D",      "diam_eff_und"};
  if (preset == "validation10")
    return {"pct_core", "pct_out_field", "mean_k", "gamma_in", "gamma_out",
            "r_in_in",  "r_out_out",     "mean_B", "r_B",      "diam_eff_und"};
  if (preset == "all21")
    return {"pct_wcc", "pct_in_field", "pct_core", "pct_out_field", "mean_k",  "gamma",    "gamma_in",
            "gamma_out", "r",          "r_in_in",  "r_in_out",      "r_out_in", "r_out_out", "mean_C",
            "mean_B",  "mean_D",       "r_C",      "r_B",           "r_D",      "diam_eff", "diam_eff_und"};
  throw InvalidArgument("unknown preset '" + std::string(preset) + "' (paper10|validation10|all21)");
}

ComparisonReport compare_datasets(const StatMatrix& input, const std::vector<std::string>& selected,
                                  double alpha) {
  const auto N = static_cast<Eigen::Index>(input.datasets.size());
  if (N < kMinDatasets)
    throw InvalidArgument("comparison needs at least 4 datasets, got " + std::to_string(N));
  if (selected.size() < 2) throw InvalidArgument("comparison needs at least 2 selected statistics");

  ComparisonReport rep;
  rep.input = input;
  rep.alpha = alpha;
  rep.selected = selected;
  rep.residuals = studentized_residuals(input.values);

  const StatMatrix sel = input.select_statistics(selected);
  for (std::size_t j = 0; j < selected.size(); ++j)
    if (sel.values.col(static_cast<Eigen::Index>(j)).array().isNaN().any())
      throw InvalidArgument("statistic '" + selected[j] + "' is undefined for some dataset");

  Eigen::MatrixXd sel_residuals(N, static_cast<Eigen::Index>(selected.size()));
  for (std::size_t j = 0; j < selected.size(); ++j)
    sel_residuals.col(static_cast<Eigen::Index>(j)) = rep.residuals.residual.col(input.column(selected[j]));
  rep.ranks = rank_datasets(sel_residuals);

  for (std::size_t a = 0; a < selected.size(); ++a)
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      IndependenceEntry e{selected[a], selected[b], spearman(rep.ranks, static_cast<Eigen::Index>(a),
                                                             static_cast<Eigen::Index>(b)), {}};
      if (e.rho) e.test = fisher_independence_test(*e.rho, N);
      rep.independence.push_back(std::move(e));
    }

  const auto S = static_cast<Eigen::Index>(selected.size());
  rep.friedman = friedman_test(rep.ranks.mean_ranks, S);
  rep.friedman_rejects = rep.friedman.p < alpha;
  rep.critical_value = nemenyi_critical_value(N, alpha);
  rep.cd = nemenyi_cd(N, S, alpha);
  rep.groups = cd_groups(rep.ranks.mean_ranks, rep.cd);
  rep.significant = significant_pairs(rep.ranks.mean_ranks, rep.cd);
  return rep;
}

}  // namespace citetopo
