#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "citetopo/clustering.hpp"
#include "citetopo/compare.hpp"
#include "citetopo/degree_stats.hpp"
#include "citetopo/distance.hpp"
#include "citetopo/graph.hpp"
#include "json.hpp"

namespace citetopo {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kProfileSchemaVersion = 1;

/// Canonical statistic names, in output order. The last 21 are the
/// statistics used for comparison; percentages are in percent.
inline constexpr std::array<std::string_view, 23> kProfileStatistics = {
    "n",        "m",       "pct_wcc",  "pct_in_field", "pct_core",  "pct_out_field",
    "mean_k",   "gamma",   "gamma_in", "gamma_out",    "r",         "r_in_in",
    "r_in_out", "r_out_in", "r_out_out", "mean_C",      "mean_B",    "mean_D",
    "r_C",      "r_B",     "r_D",      "diam_eff",     "diam_eff_und"};

struct ProfileOptions {
  std::uint64_t seed = 1;
  int anf_realizations = 100;
  int anf_trials = 32;
  KminPolicy kmin_policy = KminPolicy::both;
  std::size_t exact_distance_cap = 0;  // graphs with n <= cap use exact BFS
  unsigned threads = 0;
  std::size_t gof_replicates = 100;
};

struct PowerLawSummary {
  double kmin = 0;
  double gamma = 0;
  std::size_t tail_n = 0;
  double ks_distance = 0;
  double gof_pvalue = 0;
  bool plausible = false;
  bool degenerate = false;
  std::vector<PowerLawFit> candidates;
};

struct StatProfile {
  std::string dataset;
  std::map<std::string, std::optional<double>, std::less<>> statistics;
  std::optional<double> diam_eff_sem;
  std::optional<double> diam_eff_und_sem;
  std::map<std::string, PowerLawSummary> power_law;  // keyed gamma / gamma_in / gamma_out
  nlohmann::ordered_json provenance;
  nlohmann::ordered_json diagnostics;
  std::vector<std::string> warnings;

  std::optional<double> get(std::string_view name) const;
};

/// A profile plus the per-degree and per-hop series behind it.
struct ProfileRun {
  StatProfile profile;
  std::array<DegreeDistribution, 3> distributions;           // total, in, out
  std::array<NeighbourConnectivityProfile, 3> connectivity;  // total, in, out
  ClusteringProfile clustering;
  HopPlot hop_directed;
  HopPlot hop_undirected;
};

ProfileRun compute_profile(const DirectedGraph& g, const std::string& dataset, const ProfileOptions& options,
                           const PreprocessReport* report = nullptr);

/// Six significant digits, the precision of every emitted statistic.
std::string format_number(double v);
double round_significant(double v);

nlohmann::ordered_json profile_to_json(const StatProfile& p);
/// Validates the schema name, version and the full statistic set.
StatProfile profile_from_json(const nlohmann::json& j);

/// One-row StatMatrix CSV: dataset, the 23 statistics, then the two s.e.m. columns.
void write_profile_csv(std::ostream& out, const StatProfile& p);

/// Rows of the comparison statistics (all21 order) for a set of profiles.
StatMatrix profiles_to_matrix(const std::vector<StatProfile>& profiles);

// Series CSVs.
void write_degree_distribution_csv(std::ostream& out, const DegreeDistribution& d);
void write_connectivity_csv(std::ostream& out, const NeighbourConnectivityProfile& p);
void write_clustering_profile_csv(std::ostream& out, const ClusteringProfile& p);
void write_hop_plot_csv(std::ostream& out, const HopPlot& hp);

}  // namespace citetopo
