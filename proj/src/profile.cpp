#include "citetopo/profile.hpp"

#include <cstdio>
#include <cstdlib>

#include "citetopo/decomposition.hpp"
#include "citetopo/error.hpp"

namespace citetopo {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double round_significant(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::optional<double> StatProfile::get(std::string_view name) const {
  auto it = statistics.find(name);
  if (it == statistics.end()) throw InvalidArgument("unknown statistic '" + std::string(name) + "'");
  return it->second;
}

namespace {

PowerLawSummary summarize_fit(const PowerLawSelection& s) {
  PowerLawSummary out;
  out.kmin = s.chosen.kmin;
  out.gamma = s.chosen.gamma;
  out.tail_n = s.chosen.tail_n;
  out.ks_distance = s.chosen.ks_distance;
  out.gof_pvalue = s.gof_pvalue;
  out.plausible = s.plausible;
  out.degenerate = s.chosen.degenerate;
  out.candidates = s.candidates;
  return out;
}

bool is_integer_statistic(std::string_view name) { return name == "n" || name == "m"; }

std::optional<double> emit(std::string_view name, std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return std::nullopt;
  return is_integer_statistic(name) ? *v : round_significant(*v);
}

}  // namespace

ProfileRun compute_profile(const DirectedGraph& g, const std::string& dataset, const ProfileOptions& options,
                           const PreprocessReport* report) {
  ProfileRun run;
  StatProfile& p = run.profile;
  p.dataset = dataset;
  std::map<std::string, std::optional<double>, std::less<>> s;
  for (auto name : kProfileStatistics) s[std::string(name)] = std::nullopt;

  const double n = static_cast<double>(g.num_nodes());
  s["n"] = n;
  s["m"] = static_cast<double>(g.num_edges());

  const WccResult wcc = largest_wcc(g);
  const FieldBowTie bowtie = field_bowtie(g, wcc);
  s["pct_wcc"] = 100.0 * wcc.largest_fraction();
  s["pct_in_field"] = 100.0 * bowtie.in_fraction();
  s["pct_core"] = 100.0 * bowtie.core_fraction();
  s["pct_out_field"] = 100.0 * bowtie.out_fraction();

  const DegreeTable table = degrees(g);
  const UndirectedView view = undirected_view(g);
  s["mean_k"] = mean_degree(g);
  constexpr std::array<DegreeMode, 3> modes = {DegreeMode::total, DegreeMode::in, DegreeMode::out};
  constexpr std::array<const char*, 3> gamma_names = {"gamma", "gamma_in", "gamma_out"};
  for (std::size_t i = 0; i < modes.size(); ++i) {
    run.distributions[i] = degree_distribution(table, modes[i]);
    run.connectivity[i] = neighbour_connectivity(g, view, modes[i]);
    try {
      auto sel = select_power_law(table.of(modes[i]), options.kmin_policy, options.seed + i,
                                  options.gof_replicates);
      p.power_law[gamma_names[i]] = summarize_fit(sel);
      if (!sel.chosen.degenerate) s[gamma_names[i]] = sel.chosen.gamma;
      if (!sel.plausible)
        p.warnings.push_back(std::string(gamma_names[i]) + ": power law is not a plausible fit (p = " +
                             format_number(sel.gof_pvalue) + ")");
    } catch (const InvalidArgument& e) {
      p.warnings.push_back(std::string(gamma_names[i]) + ": " + e.what());
    }
  }

  s["r"] = degree_mixing_undirected(view);
  s["r_in_in"] = degree_mixing_directed(g, DegreeSide::in, DegreeSide::in);
  s["r_in_out"] = degree_mixing_directed(g, DegreeSide::in, DegreeSide::out);
  s["r_out_in"] = degree_mixing_directed(g, DegreeSide::out, DegreeSide::in);
  s["r_out_out"] = degree_mixing_directed(g, DegreeSide::out, DegreeSide::out);

  const ClusteringScores cs = clustering_all(view);
  run.clustering = clustering_profile(view, cs);
  s["mean_C"] = mean_clustering(cs, ClusteringVariant::standard);
  s["mean_B"] = mean_clustering(cs, ClusteringVariant::delta);
  s["mean_D"] = mean_clustering(cs, ClusteringVariant::degree_corrected);
  s["r_C"] = clustering_mixing(g, cs, ClusteringVariant::standard);
  s["r_B"] = clustering_mixing(g, cs, ClusteringVariant::delta);
  s["r_D"] = clustering_mixing(g, cs, ClusteringVariant::degree_corrected);

  const bool exact = g.num_nodes() <= options.exact_distance_cap;
  if (exact) {
    run.hop_directed = exact_hop_plot(g, true, options.exact_distance_cap);
    run.hop_undirected = exact_hop_plot(g, false, options.exact_distance_cap);
  } else {
    AnfOptions anf;
    anf.realizations = options.anf_realizations;
    anf.trials = options.anf_trials;
    anf.seed = options.seed;
    anf.threads = options.threads;
    anf.directed = true;
    run.hop_directed = anf_hop_plot(g, anf);
    anf.directed = false;
    run.hop_undirected = anf_hop_plot(g, anf);
  }
  const EffectiveDiameter ed = effective_diameter(run.hop_directed);
  const EffectiveDiameter ed_und = effective_diameter(run.hop_undirected);
  s["diam_eff"] = ed.mean;
  s["diam_eff_und"] = ed_und.mean;

  for (auto& [name, v] : s) {
    auto shown = emit(name, v);
    if (!shown) p.warnings.push_back(name + ": undefined");
    p.statistics[name] = shown;
  }
  p.diam_eff_sem = round_significant(ed.sem);
  p.diam_eff_und_sem = round_significant(ed_und.sem);

  const CycleDiagnostics cyc = cycle_diagnostics(g);
  p.diagnostics = {{"undirected_edges", view.num_edges},
                   {"max_undirected_degree", cs.max_degree},
                   {"num_wcc", wcc.num_components},
                   {"cyclic_components", cyc.cyclic_components},
                   {"nodes_on_cycles", cyc.nodes_on_cycles},
                   {"reciprocal_pairs", cyc.reciprocal_pairs}};
  if (report)
    p.diagnostics["preprocess"] = {{"raw_edges", report->raw_edges},
                                   {"self_loops", report->self_loops},
                                   {"duplicate_edges", report->duplicate_edges},
                                   {"dropped_labels", report->dropped_labels}};

  p.provenance = {{"tool_version", kToolVersion},
                  {"seed", options.seed},
                  {"kmin_policy", to_string(options.kmin_policy)},
                  {"gof_replicates", options.gof_replicates},
                  {"distance_method", exact ? "exact" : "anf"}};
  if (!exact) {
    p.provenance["anf_realizations"] = options.anf_realizations;
    p.provenance["anf_trials"] = options.anf_trials;
  }
  nlohmann::ordered_json kmins = nlohmann::ordered_json::object();
  for (const auto& [name, fit] : p.power_law) kmins[name] = fit.kmin;
  p.provenance["kmin_chosen"] = kmins;
  return run;
}

namespace {

nlohmann::ordered_json optional_number(std::optional<double> v, bool integer = false) {
  if (!v) return nullptr;
  return integer ? nlohmann::ordered_json(static_cast<std::int64_t>(*v)) : nlohmann::ordered_json(*v);
}

}  // namespace

nlohmann::ordered_json profile_to_json(const StatProfile& p) {
  nlohmann::ordered_json j;
  j["schema"] = "citetopo.profile";
  j["schema_version"] = kProfileSchemaVersion;
  j["dataset"] = p.dataset;
  auto& stats = j["statistics"] = nlohmann::ordered_json::object();
  for (auto name : kProfileStatistics) stats[std::string(name)] = optional_number(p.get(name), is_integer_statistic(name));
  j["sem"] = {{"diam_eff", optional_number(p.diam_eff_sem)},
              {"diam_eff_und", optional_number(p.diam_eff_und_sem)}};

  auto& pl = j["power_law"] = nlohmann::ordered_json::object();
  for (auto name : {"gamma", "gamma_in", "gamma_out"}) {
    auto it = p.power_law.find(name);
    if (it == p.power_law.end()) continue;
    const PowerLawSummary& f = it->second;
    nlohmann::ordered_json cands = nlohmann::ordered_json::array();
    for (const auto& c : f.candidates)
      cands.push_back({{"kmin", c.kmin},
                       {"gamma", c.degenerate ? nlohmann::ordered_json(nullptr)
                                              : nlohmann::ordered_json(round_significant(c.gamma))},
                       {"tail_n", c.tail_n},
                       {"ks_distance", round_significant(c.ks_distance)}});
    pl[name] = {{"kmin", f.kmin},
                {"gamma", f.degenerate ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(round_significant(f.gamma))},
                {"tail_n", f.tail_n},
                {"ks_distance", round_significant(f.ks_distance)},
                {"gof_pvalue", round_significant(f.gof_pvalue)},
                {"plausible", f.plausible},
                {"degenerate", f.degenerate},
                {"candidates", cands}};
  }
  j["provenance"] = p.provenance.is_null() ? nlohmann::ordered_json::object() : p.provenance;
  j["diagnostics"] = p.diagnostics.is_null() ? nlohmann::ordered_json::object() : p.diagnostics;
  j["warnings"] = p.warnings;
  return j;
}

StatProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "citetopo.profile")
    throw DataError("not a citetopo profile");
  const int version = j.value("schema_version", 0);
  if (version != kProfileSchemaVersion)
    throw DataError("unsupported profile schema version " + std::to_string(version));
  StatProfile p;
  p.dataset = j.at("dataset").get<std::string>();
  const auto& stats = j.at("statistics");
  for (auto name : kProfileStatistics) {
    const std::string key(name);
    if (!stats.contains(key)) throw DataError("profile '" + p.dataset + "' lacks statistic " + key);
    const auto& v = stats.at(key);
    if (!v.is_null() && !v.is_number()) throw DataError("profile statistic " + key + " is not a number");
    p.statistics[key] = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
  }
  if (j.contains("sem")) {
    const auto& sem = j.at("sem");
    if (sem.contains("diam_eff") && sem["diam_eff"].is_number()) p.diam_eff_sem = sem["diam_eff"].get<double>();
    if (sem.contains("diam_eff_und") && sem["diam_eff_und"].is_number())
      p.diam_eff_und_sem = sem["diam_eff_und"].get<double>();
  }
  if (j.contains("power_law"))
    for (const auto& [name, f] : j["power_law"].items()) {
      PowerLawSummary s;
      s.kmin = f.value("kmin", 0.0);
      s.degenerate = f.value("degenerate", false);
      s.gamma = f["gamma"].is_number() ? f["gamma"].get<double>() : std::numeric_limits<double>::infinity();
      s.tail_n = f.value("tail_n", std::size_t{0});
      s.ks_distance = f.value("ks_distance", 0.0);
      s.gof_pvalue = f.value("gof_pvalue", 0.0);
      s.plausible = f.value("plausible", false);
      p.power_law[name] = s;
    }
  if (j.contains("provenance")) p.provenance = j["provenance"];
  if (j.contains("diagnostics")) p.diagnostics = j["diagnostics"];
  if (j.contains("warnings")) p.warnings = j["warnings"].get<std::vector<std::string>>();
  return p;
}

void write_profile_csv(std::ostream& out, const StatProfile& p) {
  out << "dataset";
  for (auto name : kProfileStatistics) out << ',' << name;
  out << ",diam_eff_sem,diam_eff_und_sem\n" << p.dataset;
  auto cell = [&](std::optional<double> v, bool integer) {
    out << ',';
    if (!v) return;
    if (integer) {
      out << static_cast<long long>(*v);
    } else {
      out << format_number(*v);
    }
  };
  for (auto name : kProfileStatistics) cell(p.get(name), is_integer_statistic(name));
  cell(p.diam_eff_sem, false);
  cell(p.diam_eff_und_sem, false);
  out << '\n';
}

StatMatrix profiles_to_matrix(const std::vector<StatProfile>& profiles) {
  StatMatrix m;
  m.statistics = preset_statistics("all21");
  m.values.resize(static_cast<Eigen::Index>(profiles.size()), static_cast<Eigen::Index>(m.statistics.size()));
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    m.datasets.push_back(profiles[i].dataset);
    for (std::size_t j = 0; j < m.statistics.size(); ++j) {
      auto v = profiles[i].get(m.statistics[j]);
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          v ? *v : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return m;
}

void write_degree_distribution_csv(std::ostream& out, const DegreeDistribution& d) {
  out << "degree,count\n";
  for (const auto& [k, c] : d.histogram) out << k << ',' << c << '\n';
}

void write_connectivity_csv(std::ostream& out, const NeighbourConnectivityProfile& p) {
  out << "degree,mean_neighbour_degree\n";
  for (const auto& [k, v] : p) out << k << ',' << format_number(v) << '\n';
}

void write_clustering_profile_csv(std::ostream& out, const ClusteringProfile& p) {
  out << "degree,meanC,meanB,meanD\n";
  for (const auto& [k, row] : p)
    out << k << ',' << format_number(row.mean_standard) << ',' << format_number(row.mean_delta) << ','
        << format_number(row.mean_degree_corrected) << '\n';
}

void write_hop_plot_csv(std::ostream& out, const HopPlot& hp) {
  out << "hop,mean_fraction,sem\n";
  for (std::size_t h = 0; h < hp.num_hops(); ++h)
    out << h << ',' << format_number(hp.mean_curve[h]) << ',' << format_number(hp.sem_curve[h]) << '\n';
}

}  // namespace citetopo
