#include "citetopo/distance.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <tuple>
#include <random>
#include <string>
#include <thread>

#include "citetopo/error.hpp"
#include "citetopo/numeric.hpp"

namespace citetopo {
namespace {

constexpr double kFmCorrection = 0.77351;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double estimate_pairs(const std::vector<std::uint64_t>& masks, std::size_t n, int trials) {
  double total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const std::uint64_t* m = masks.data() + u * static_cast<std::size_t>(trials);
    int zero_bits = 0;
    for (int t = 0; t < trials; ++t) zero_bits += std::countr_one(m[t]);
    total += std::exp2(static_cast<double>(zero_bits) / trials) / kFmCorrection;
  }
  return total;
}

std::vector<double> anf_realization(const Adjacency& adj, int trials, std::uint64_t seed) {
  const std::size_t n = adj.num_nodes();
  const auto width = static_cast<std::size_t>(trials);
  std::vector<std::uint64_t> cur(n * width), next(n * width);

  std::mt19937_64 rng(seed);
  for (std::uint64_t& m : cur) {
    // Bit i is set with probability 2^-(i+1).
    const int bit = std::min(std::countr_zero(rng()), 63);
    m = std::uint64_t{1} << bit;
  }

  const double baseline = estimate_pairs(cur, n, trials);
  std::vector<double> counts{0.0};
  for (std::size_t hop = 1; hop <= n; ++hop) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      std::uint64_t* dst = next.data() + u * width;
      const std::uint64_t* own = cur.data() + u * width;
      std::copy(own, own + width, dst);
      for (NodeId v : adj[static_cast<NodeId>(u)]) {
        const std::uint64_t* src = cur.data() + static_cast<std::size_t>(v) * width;
        for (std::size_t t = 0; t < width; ++t) dst[t] |= src[t];
      }
      if (!changed && !std::equal(dst, dst + width, own)) changed = true;
    }
    if (!changed) break;
    cur.swap(next);
    counts.push_back(std::max(0.0, estimate_pairs(cur, n, trials) - baseline));
  }
  return counts;
}

}  // namespace

std::vector<double> reachable_fractions(std::span<const double> counts) {
  std::vector<double> f(counts.size(), 0.0);
  if (counts.empty() || counts.back() <= 0) return f;
  for (std::size_t i = 0; i < counts.size(); ++i) f[i] = counts[i] / counts.back();
  f.back() = 1.0;
  return f;
}

void summarize(HopPlot& hp) {
  std::size_t hops = 0;
  for (const auto& r : hp.realizations) hops = std::max(hops, r.size());
  for (auto& r : hp.realizations) r.resize(hops, r.empty() ? 0.0 : r.back());

  const auto reps = static_cast<Eigen::Index>(hp.realizations.size());
  Eigen::MatrixXd fractions(hops, reps);
  for (Eigen::Index j = 0; j < reps; ++j) {
    auto f = reachable_fractions(hp.realizations[static_cast<std::size_t>(j)]);
    for (std::size_t h = 0; h < hops; ++h) fractions(static_cast<Eigen::Index>(h), j) = f[h];
  }
  hp.mean_curve.assign(hops, 0.0);
  hp.sem_curve.assign(hops, 0.0);
  for (std::size_t h = 0; h < hops; ++h) {
    auto [mean, sem] = mean_and_sem(fractions.row(static_cast<Eigen::Index>(h)));
    hp.mean_curve[h] = mean;
    hp.sem_curve[h] = sem;
  }
}

std::size_t anf_memory_bytes(std::size_t num_nodes, int trials) noexcept {
  return 2 * num_nodes * static_cast<std::size_t>(trials) * sizeof(std::uint64_t);
}

HopPlot anf_hop_plot(const DirectedGraph& g, const AnfOptions& options) {
  if (options.realizations < 1 || options.trials < 1)
    throw InvalidArgument("anf_hop_plot: realizations and trials must be >= 1");

  const std::size_t per_worker = anf_memory_bytes(g.num_nodes(), options.trials);
  if (per_worker > options.memory_limit_bytes)
    throw ResourceError("ANF needs " + std::to_string(per_worker) + " bytes of sketch state, limit is " +
                        std::to_string(options.memory_limit_bytes));

  UndirectedView view;
  if (!options.directed) view = undirected_view(g);
  const Adjacency& adj = options.directed ? g.out_adjacency() : view.adj;

  const auto reps = static_cast<std::size_t>(options.realizations);
  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(
      {workers, reps, std::max<std::size_t>(1, options.memory_limit_bytes / per_worker)}));

  HopPlot hp;
  hp.directed = options.directed;
  hp.realizations.resize(reps);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < reps;)
      hp.realizations[r] = anf_realization(adj, options.trials, splitmix64(options.seed ^ splitmix64(r)));
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  summarize(hp);
  return hp;
}

HopPlot exact_hop_plot(const DirectedGraph& g, bool directed, std::size_t node_cap) {
  const std::size_t n = g.num_nodes();
  if (n > node_cap)
    throw ResourceError("exact hop plot limited to " + std::to_string(node_cap) + " nodes (graph has " +
                        std::to_string(n) + "); use the ANF estimate");

  UndirectedView view;
  if (!directed) view = undirected_view(g);
  const Adjacency& adj = directed ? g.out_adjacency() : view.adj;

  std::vector<double> at_distance{0.0};
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue(n);
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), unseen);
    std::size_t head = 0, tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      NodeId u = queue[head++];
      for (NodeId v : adj[u]) {
        if (dist[v] != unseen) continue;
        dist[v] = dist[u] + 1;
        if (dist[v] >= at_distance.size()) at_distance.resize(dist[v] + 1, 0.0);
        at_distance[dist[v]] += 1.0;
        queue[tail++] = v;
      }
    }
  }
  std::vector<double> counts(at_distance.size(), 0.0);
  for (std::size_t d = 1; d < counts.size(); ++d) counts[d] = counts[d - 1] + at_distance[d];

  HopPlot hp;
  hp.directed = directed;
  hp.realizations.push_back(std::move(counts));
  summarize(hp);
  return hp;
}

double interpolate_crossing(std::span<const double> fractions, double quantile) {
  if (!(quantile > 0.0 && quantile < 1.0))
    throw InvalidArgument("effective diameter quantile must lie in (0, 1)");
  for (std::size_t h = 1; h < fractions.size(); ++h) {
    if (fractions[h] >= quantile) {
      const double lo = fractions[h - 1], hi = fractions[h];
      return static_cast<double>(h - 1) + (quantile - lo) / (hi - lo);
    }
  }
  throw InvalidArgument("hop plot never reaches the requested quantile");
}

EffectiveDiameter effective_diameter(const HopPlot& hp, double quantile) {
  EffectiveDiameter ed;
  ed.directed = hp.directed;
  for (const auto& counts : hp.realizations)
    ed.per_realization.push_back(interpolate_crossing(reachable_fractions(counts), quantile));
  const Eigen::Map<const Eigen::ArrayXd> values(ed.per_realization.data(),
                                                static_cast<Eigen::Index>(ed.per_realization.size()));
  std::tie(ed.mean, ed.sem) = mean_and_sem(values);
  return ed;
}

}  // namespace citetopo
