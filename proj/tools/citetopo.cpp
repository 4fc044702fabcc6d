#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "citetopo/cd_diagram.hpp"
#include "citetopo/edge_list.hpp"
#include "citetopo/error.hpp"
#include "citetopo/manifest.hpp"
#include "citetopo/profile.hpp"
#include "citetopo/report.hpp"

namespace fs = std::filesystem;
using namespace citetopo;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kResource = 3 };

struct DatasetArgs {
  std::string dataset;
  std::string manifest;
  std::string format = "snap";
};

void add_dataset_args(CLI::App* cmd, DatasetArgs& a) {
  cmd->add_option("dataset", a.dataset, "edge-list file, or dataset name with --manifest")->required();
  cmd->add_option("--manifest", a.manifest, "dataset manifest file");
  cmd->add_option("--format", a.format, "edge-list format")->check(CLI::IsMember({"snap", "konect"}));
}

LoadedDataset load(const DatasetArgs& a) {
  DatasetManifest entry;
  if (!a.manifest.empty()) {
    bool found = false;
    for (auto& e : load_manifest(a.manifest))
      if (e.name == a.dataset) {
        entry = e;
        found = true;
      }
    if (!found) throw DataError("dataset '" + a.dataset + "' not in " + a.manifest);
  } else {
    entry.name = fs::path(a.dataset).stem().string();
    entry.path = a.dataset;
    entry.format = parse_format(a.format);
  }
  auto loaded = load_dataset(entry);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return loaded;
}

std::string dataset_name(const DatasetArgs& a) {
  return a.manifest.empty() ? fs::path(a.dataset).stem().string() : a.dataset;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot write");
  out << text;
}

template <typename F>
std::string to_text(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

struct StatsArgs {
  DatasetArgs data;
  ProfileOptions opts;
  std::string kmin_policy = "both";
  std::string out_dir = ".";
};

int run_stats(StatsArgs& a) {
  a.opts.kmin_policy = parse_kmin_policy(a.kmin_policy);
  auto loaded = load(a.data);
  const std::string name = dataset_name(a.data);
  auto run = compute_profile(loaded.graph, name, a.opts, &loaded.report);
  for (auto& w : loaded.warnings) run.profile.warnings.push_back(w);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_file(dir / (name + ".profile.json"), profile_to_json(run.profile).dump(2) + "\n");
  write_file(dir / (name + ".profile.csv"), to_text([&](auto& os) { write_profile_csv(os, run.profile); }));
  const char* modes[] = {"total", "in", "out"};
  for (int i = 0; i < 3; ++i) {
    write_file(dir / (name + ".degree_" + modes[i] + ".csv"),
               to_text([&](auto& os) { write_degree_distribution_csv(os, run.distributions[i]); }));
    write_file(dir / (name + ".knn_" + modes[i] + ".csv"),
               to_text([&](auto& os) { write_connectivity_csv(os, run.connectivity[i]); }));
  }
  write_file(dir / (name + ".clustering.csv"),
             to_text([&](auto& os) { write_clustering_profile_csv(os, run.clustering); }));
  write_file(dir / (name + ".hops_directed.csv"),
             to_text([&](auto& os) { write_hop_plot_csv(os, run.hop_directed); }));
  write_file(dir / (name + ".hops_undirected.csv"),
             to_text([&](auto& os) { write_hop_plot_csv(os, run.hop_undirected); }));

  for (auto& w : run.profile.warnings) std::cerr << "warning: " << w << '\n';
  write_profile_csv(std::cout, run.profile);
  return kOk;
}

StatMatrix read_inputs(const std::vector<std::string>& files) {
  StatMatrix all;
  bool first = true;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw DataError(f + ": cannot open");
    StatMatrix m;
    if (fs::path(f).extension() == ".json") {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(f + ": " + e.what());
      }
      m = profiles_to_matrix({profile_from_json(j)});
    } else {
      m = read_stat_matrix_csv(in, f);
    }
    all = first ? m : StatMatrix::stack(all, m);
    first = false;
  }
  // Comparison runs over the known statistics only, in canonical order.
  std::vector<std::string> keep;
  for (const auto& s : preset_statistics("all21"))
    if (std::find(all.statistics.begin(), all.statistics.end(), s) != all.statistics.end()) keep.push_back(s);
  return all.select_statistics(keep);
}

struct CompareArgs {
  std::vector<std::string> inputs;
  std::string preset = "paper10";
  std::vector<std::string> stats;
  std::vector<std::string> only;
  double alpha = 0.05;
  std::string svg, json, csv, ranks_csv;
};

int run_compare(const CompareArgs& a) {
  StatMatrix m = read_inputs(a.inputs);
  if (!a.only.empty()) m = m.select_datasets(a.only);
  const auto selected = a.stats.empty() ? preset_statistics(a.preset) : a.stats;
  const ComparisonReport r = compare_datasets(m, selected, a.alpha);

  const std::string json = comparison_to_json(r).dump(2) + "\n";
  if (a.json.empty()) {
    std::cout << json;
  } else {
    write_file(a.json, json);
  }
  if (!a.csv.empty()) write_file(a.csv, to_text([&](auto& os) { write_residual_csv(os, r); }));
  if (!a.ranks_csv.empty()) write_file(a.ranks_csv, to_text([&](auto& os) { write_rank_csv(os, r); }));
  if (!a.svg.empty()) write_file(a.svg, render_svg(cd_layout(r)));
  return kOk;
}

struct HopArgs {
  DatasetArgs data;
  bool directed = false;
  bool exact = false;
  AnfOptions anf;
  std::size_t exact_cap = kDefaultExactNodeCap;
  std::string out;
};

int run_hopplot(HopArgs& a) {
  auto loaded = load(a.data);
  HopPlot hp;
  if (a.exact) {
    hp = exact_hop_plot(loaded.graph, a.directed, a.exact_cap);
  } else {
    a.anf.directed = a.directed;
    hp = anf_hop_plot(loaded.graph, a.anf);
  }
  const std::string text = to_text([&](auto& os) { write_hop_plot_csv(os, hp); });
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  const auto ed = effective_diameter(hp);
  std::cerr << "effective diameter (0.9): " << format_number(ed.mean) << " +- " << format_number(ed.sem) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology statistics and consistency comparison for citation networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "compute the statistic profile of one network");
  add_dataset_args(s, stats.data);
  s->add_option("--seed", stats.opts.seed, "random seed");
  s->add_option("--anf-realizations", stats.opts.anf_realizations)->check(CLI::PositiveNumber);
  s->add_option("--anf-trials", stats.opts.anf_trials)->check(CLI::PositiveNumber);
  s->add_option("--kmin-policy", stats.kmin_policy)->check(CLI::IsMember({"both", "10", "25"}));
  s->add_option("--gof-replicates", stats.opts.gof_replicates, "power-law goodness-of-fit bootstrap size");
  s->add_option("--exact-cap", stats.opts.exact_distance_cap, "use exact distances when n <= cap");
  s->add_option("--threads", stats.opts.threads, "worker threads (0 = all cores)");
  s->add_option("--out", stats.out_dir, "output directory");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "compare profiles over a set of statistics");
  c->add_option("inputs", cmp.inputs, "profile JSON files or statistic CSV tables")->required();
  c->add_option("--preset", cmp.preset)->check(CLI::IsMember({"paper10", "validation10", "all21"}));
  c->add_option("--stats", cmp.stats, "comma-separated statistic names")->delimiter(',');
  c->add_option("--only", cmp.only, "comma-separated dataset names")->delimiter(',');
  c->add_option("--alpha", cmp.alpha)->check(CLI::IsMember({0.05, 0.10}));
  c->add_option("--svg", cmp.svg, "critical difference diagram");
  c->add_option("--json", cmp.json, "report (default stdout)");
  c->add_option("--csv", cmp.csv, "residual table");
  c->add_option("--ranks-csv", cmp.ranks_csv, "mean rank table");

  HopArgs hop;
  auto* h = app.add_subcommand("hopplot", "hop plot of one network");
  add_dataset_args(h, hop.data);
  h->add_flag("--directed", hop.directed, "follow edge direction");
  h->add_flag("--exact", hop.exact, "breadth-first search instead of ANF");
  h->add_option("--exact-cap", hop.exact_cap);
  h->add_option("--seed", hop.anf.seed);
  h->add_option("--anf-realizations", hop.anf.realizations)->check(CLI::PositiveNumber);
  h->add_option("--anf-trials", hop.anf.trials)->check(CLI::PositiveNumber);
  h->add_option("--threads", hop.anf.threads);
  h->add_option("--out", hop.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return run_stats(stats);
    if (*c) return run_compare(cmp);
    if (*h) return run_hopplot(hop);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
