#include "citetopo/report.hpp"

#include <algorithm>
#include <cmath>

#include "citetopo/profile.hpp"

namespace citetopo {

nlohmann::ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return round_significant(v);
}

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

Eigen::Index selected_column(const ComparisonReport& r, const std::string& stat) {
  auto it = std::find(r.selected.begin(), r.selected.end(), stat);
  return it == r.selected.end() ? -1 : static_cast<Eigen::Index>(it - r.selected.begin());
}

}  // namespace

nlohmann::ordered_json comparison_to_json(const ComparisonReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "citetopo.comparison";
  j["schema_version"] = 1;
  j["datasets"] = r.input.datasets;
  j["statistics"] = r.input.statistics;
  j["selected_statistics"] = r.selected;
  j["alpha"] = r.alpha;

  ordered_json residuals = ordered_json::object();
  for (std::size_t i = 0; i < r.input.datasets.size(); ++i) {
    ordered_json row = ordered_json::object();
    for (std::size_t s = 0; s < r.input.statistics.size(); ++s) {
      const auto ii = static_cast<Eigen::Index>(i), ss = static_cast<Eigen::Index>(s);
      row[r.input.statistics[s]] = {{"value", json_number(r.input.values(ii, ss))},
                                    {"residual", json_number(r.residuals.residual(ii, ss))},
                                    {"p_value", json_number(r.residuals.p_value(ii, ss))}};
    }
    residuals[r.input.datasets[i]] = row;
  }
  j["residuals"] = residuals;

  ordered_json ranks = ordered_json::object();
  for (std::size_t i = 0; i < r.input.datasets.size(); ++i)
    ranks[r.input.datasets[i]] = json_number(r.ranks.mean_ranks(static_cast<Eigen::Index>(i)));
  j["mean_ranks"] = ranks;

  ordered_json indep = ordered_json::array();
  for (const auto& e : r.independence)
    indep.push_back({{"a", e.a},
                     {"b", e.b},
                     {"rho", e.rho ? json_number(*e.rho) : ordered_json(nullptr)},
                     {"z", json_number(e.test.z)},
                     {"p_value", json_number(e.test.p)},
                     {"saturated", e.test.saturated}});
  j["independence"] = indep;

  j["friedman"] = {{"statistic", json_number(r.friedman.statistic)},
                   {"df", r.friedman.df},
                   {"p_value", json_number(r.friedman.p)},
                   {"rejects", r.friedman_rejects}};

  ordered_json groups = ordered_json::array();
  for (const auto& g : r.groups) {
    ordered_json members = ordered_json::array();
    for (auto i : g) members.push_back(r.input.datasets[static_cast<std::size_t>(i)]);
    groups.push_back(members);
  }
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : r.significant)
    pairs.push_back({r.input.datasets[static_cast<std::size_t>(a)], r.input.datasets[static_cast<std::size_t>(b)]});
  j["nemenyi"] = {{"critical_value", json_number(r.critical_value)},
                  {"cd", json_number(r.cd)},
                  {"groups", groups},
                  {"significant_pairs", pairs}};
  return j;
}

void write_residual_csv(std::ostream& out, const ComparisonReport& r) {
  out << "dataset,statistic,value,residual,p_value,rank\n";
  for (std::size_t i = 0; i < r.input.datasets.size(); ++i)
    for (std::size_t s = 0; s < r.input.statistics.size(); ++s) {
      const auto ii = static_cast<Eigen::Index>(i), ss = static_cast<Eigen::Index>(s);
      out << r.input.datasets[i] << ',' << r.input.statistics[s] << ',' << csv_number(r.input.values(ii, ss)) << ','
          << csv_number(r.residuals.residual(ii, ss)) << ',' << csv_number(r.residuals.p_value(ii, ss)) << ',';
      const Eigen::Index c = selected_column(r, r.input.statistics[s]);
      if (c >= 0) out << csv_number(r.ranks.ranks(ii, c));
      out << '\n';
    }
}

void write_rank_csv(std::ostream& out, const ComparisonReport& r) {
  out << "dataset,mean_rank\n";
  for (std::size_t i = 0; i < r.input.datasets.size(); ++i)
    out << r.input.datasets[i] << ',' << csv_number(r.ranks.mean_ranks(static_cast<Eigen::Index>(i))) << '\n';
}

CdDiagramLayout cd_layout(const ComparisonReport& r) {
  return cd_layout(r.input.datasets, r.ranks.mean_ranks, r.groups, r.cd);
}

}  // namespace citetopo
