#include "commcert/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "commcert/rng.hpp"

namespace commcert {

namespace {

constexpr double kLevelTolerance = 1e-7;   // stop when a level gains less than this
constexpr double kInvariantSlack = 1e-9;   // float slack for exact identities

// Weighted graph for the aggregated levels. A self-loop of weight s counts
// 2s toward the node degree and s toward the total weight W.
struct LevelGraph {
  std::int32_t n = 0;
  std::vector<std::int64_t> off;  // size n+1
  std::vector<std::int32_t> nbr;
  std::vector<double> w;
  std::vector<double> self_w;
  std::vector<double> deg;
  double total_w = 0.0;
};

LevelGraph build_level0(std::int32_t num_nodes,
                        std::span<const std::pair<std::int32_t, std::int32_t>> edges) {
  LevelGraph g;
  g.n = num_nodes;
  g.off.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (const auto& [a, b] : edges) {
    ++g.off[static_cast<std::size_t>(a) + 1];
    ++g.off[static_cast<std::size_t>(b) + 1];
  }
  for (std::int32_t v = 0; v < num_nodes; ++v) g.off[v + 1] += g.off[v];
  g.nbr.resize(static_cast<std::size_t>(g.off[num_nodes]));
  g.w.assign(g.nbr.size(), 1.0);
  std::vector<std::int64_t> cursor(g.off.begin(), g.off.end() - 1);
  for (const auto& [a, b] : edges) {
    g.nbr[static_cast<std::size_t>(cursor[a]++)] = b;
    g.nbr[static_cast<std::size_t>(cursor[b]++)] = a;
  }
  g.self_w.assign(static_cast<std::size_t>(num_nodes), 0.0);
  g.deg.assign(static_cast<std::size_t>(num_nodes), 0.0);
  for (std::int32_t v = 0; v < num_nodes; ++v)
    g.deg[v] = static_cast<double>(g.off[v + 1] - g.off[v]);
  g.total_w = static_cast<double>(edges.size());
  return g;
}

double weighted_modularity(const LevelGraph& g, std::span<const std::int32_t> comm,
                           std::int32_t num_comms) {
  std::vector<double> intra(static_cast<std::size_t>(num_comms), 0.0);
  std::vector<double> degree(static_cast<std::size_t>(num_comms), 0.0);
  for (std::int32_t v = 0; v < g.n; ++v) {
    const std::int32_t c = comm[v];
    degree[c] += g.deg[v];
    intra[c] += g.self_w[v];
    for (std::int64_t i = g.off[v]; i < g.off[v + 1]; ++i) {
      const std::int32_t u = g.nbr[static_cast<std::size_t>(i)];
      if (u > v && comm[u] == c) intra[c] += g.w[static_cast<std::size_t>(i)];
    }
  }
  double q = 0.0;
  const double two_w = 2.0 * g.total_w;
  for (std::int32_t c = 0; c < num_comms; ++c) {
    const double dc = degree[c] / two_w;
    q += intra[c] / g.total_w - dc * dc;
  }
  return q;
}

// One local-moving phase: sweep nodes in a seeded random order (fresh
// permutation per sweep) until a full sweep makes no move. Equal-gain ties
// never leave the current community; among strictly improving ties the
// lowest community id wins.
void local_move(const LevelGraph& g, std::vector<std::int32_t>& comm, std::uint64_t seed) {
  const std::int32_t n = g.n;
  std::vector<double> comm_deg(static_cast<std::size_t>(n), 0.0);
  for (std::int32_t v = 0; v < n; ++v) comm_deg[comm[v]] += g.deg[v];

  std::vector<double> neigh_w(static_cast<std::size_t>(n), 0.0);
  std::vector<std::int32_t> touched;
  touched.reserve(64);

  const double two_w = 2.0 * g.total_w;
  const std::int32_t sweep_cap = n + 100;
  for (std::int32_t sweep = 0; sweep < sweep_cap; ++sweep) {
    SplitMix64 rng(substream(seed, static_cast<std::uint64_t>(sweep)));
    const auto order = random_permutation(static_cast<std::uint32_t>(n), rng);
    std::int64_t moves = 0;
    for (const std::uint32_t vu : order) {
      const auto v = static_cast<std::int32_t>(vu);
      const std::int32_t cv = comm[v];

      for (const std::int32_t c : touched) neigh_w[c] = 0.0;
      touched.clear();
      touched.push_back(cv);  // home is always a candidate
      for (std::int64_t i = g.off[v]; i < g.off[v + 1]; ++i) {
        const std::int32_t u = g.nbr[static_cast<std::size_t>(i)];
        if (u == v) continue;
        const std::int32_t cu = comm[u];
        if (neigh_w[cu] == 0.0 && cu != cv) touched.push_back(cu);  // weights are positive
        neigh_w[cu] += g.w[static_cast<std::size_t>(i)];
      }

      comm_deg[cv] -= g.deg[v];
      double best_gain = neigh_w[cv] - comm_deg[cv] * g.deg[v] / two_w;
      std::int32_t best_c = cv;
      for (const std::int32_t c : touched) {
        if (c == cv) continue;
        const double gain = neigh_w[c] - comm_deg[c] * g.deg[v] / two_w;
        if (gain > best_gain || (gain == best_gain && best_c != cv && c < best_c)) {
          best_gain = gain;
          best_c = c;
        }
      }
      comm_deg[best_c] += g.deg[v];
      if (best_c != cv) {
        comm[v] = best_c;
        ++moves;
      }
    }
    if (moves == 0) break;
  }
}

// Renumber community labels to 0..k-1 by first appearance in node order.
std::int32_t renumber(std::vector<std::int32_t>& comm) {
  std::vector<std::int32_t> remap(comm.size(), -1);
  std::int32_t next = 0;
  for (auto& c : comm) {
    if (remap[c] < 0) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& g, std::span<const std::int32_t> comm,
                     std::int32_t num_comms) {
  LevelGraph out;
  out.n = num_comms;
  out.self_w.assign(static_cast<std::size_t>(num_comms), 0.0);
  std::map<std::pair<std::int32_t, std::int32_t>, double> inter;
  for (std::int32_t v = 0; v < g.n; ++v) {
    out.self_w[comm[v]] += g.self_w[v];
    for (std::int64_t i = g.off[v]; i < g.off[v + 1]; ++i) {
      const std::int32_t u = g.nbr[static_cast<std::size_t>(i)];
      if (u <= v) continue;  // undirected edge once
      const std::int32_t cu = comm[u], cv = comm[v];
      const double weight = g.w[static_cast<std::size_t>(i)];
      if (cu == cv)
        out.self_w[cu] += weight;
      else
        inter[{std::min(cu, cv), std::max(cu, cv)}] += weight;
    }
  }
  out.off.assign(static_cast<std::size_t>(num_comms) + 1, 0);
  for (const auto& [key, weight] : inter) {
    (void)weight;
    ++out.off[key.first + 1];
    ++out.off[key.second + 1];
  }
  for (std::int32_t c = 0; c < num_comms; ++c) out.off[c + 1] += out.off[c];
  out.nbr.resize(static_cast<std::size_t>(out.off[num_comms]));
  out.w.resize(out.nbr.size());
  std::vector<std::int64_t> cursor(out.off.begin(), out.off.end() - 1);
  for (const auto& [key, weight] : inter) {
    out.nbr[static_cast<std::size_t>(cursor[key.first])] = key.second;
    out.w[static_cast<std::size_t>(cursor[key.first]++)] = weight;
    out.nbr[static_cast<std::size_t>(cursor[key.second])] = key.first;
    out.w[static_cast<std::size_t>(cursor[key.second]++)] = weight;
  }
  out.deg.assign(static_cast<std::size_t>(num_comms), 0.0);
  out.total_w = 0.0;
  for (std::int32_t c = 0; c < num_comms; ++c) {
    double d = 2.0 * out.self_w[c];
    for (std::int64_t i = out.off[c]; i < out.off[c + 1]; ++i)
      d += out.w[static_cast<std::size_t>(i)];
    out.deg[c] = d;
    out.total_w += out.self_w[c];
  }
  for (const auto& [key, weight] : inter) {
    (void)key;
    out.total_w += weight;
  }
  return out;
}

}  // namespace

namespace detail {

DensePartition louvain_dense(std::int32_t num_nodes,
                             std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                             std::uint64_t seed) {
  DensePartition result;
  result.membership.resize(static_cast<std::size_t>(num_nodes));
  for (std::int32_t v = 0; v < num_nodes; ++v) result.membership[v] = v;
  if (edges.empty()) {  // every node its own community
    result.num_communities = num_nodes;
    return result;
  }

  LevelGraph g = build_level0(num_nodes, edges);
  std::vector<std::int32_t> singleton(static_cast<std::size_t>(g.n));
  for (std::int32_t v = 0; v < g.n; ++v) singleton[v] = v;
  double q_prev = weighted_modularity(g, singleton, g.n);

  for (int level = 0;; ++level) {
    std::vector<std::int32_t> comm(singleton.begin(), singleton.begin() + g.n);
    local_move(g, comm, substream(seed, 0x10f1, static_cast<std::uint64_t>(level)));
    const std::int32_t k = renumber(comm);
    const double q_new = weighted_modularity(g, comm, k);
    if (q_new < q_prev - kInvariantSlack)
      throw std::logic_error("louvain: modularity decreased across a level");

    for (auto& c : result.membership) c = comm[c];
    result.num_communities = k;
    result.modularity = q_new;
    result.levels = level + 1;

    if (q_new - q_prev < kLevelTolerance || k == g.n) break;
    q_prev = q_new;

    LevelGraph next = aggregate(g, comm, k);
    std::vector<std::int32_t> next_singleton(static_cast<std::size_t>(k));
    for (std::int32_t c = 0; c < k; ++c) next_singleton[c] = c;
    const double q_agg = weighted_modularity(next, next_singleton, k);
    if (std::abs(q_agg - q_new) > kInvariantSlack)
      throw std::logic_error("louvain: aggregation changed modularity");
    g = std::move(next);
    singleton = std::move(next_singleton);
    singleton.resize(static_cast<std::size_t>(g.n));
  }

  renumber(result.membership);
  return result;
}

double modularity_dense(std::int32_t num_nodes,
                        std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                        std::span<const std::int32_t> membership) {
  if (edges.empty()) throw std::invalid_argument("modularity: undefined for an edgeless graph");
  if (membership.size() != static_cast<std::size_t>(num_nodes))
    throw std::invalid_argument("modularity: membership size mismatch");
  std::int32_t num_comms = 0;
  for (const std::int32_t c : membership) {
    if (c < 0) throw std::invalid_argument("modularity: negative community id");
    num_comms = std::max(num_comms, c + 1);
  }
  std::vector<double> intra(static_cast<std::size_t>(num_comms), 0.0);
  std::vector<double> degree(static_cast<std::size_t>(num_comms), 0.0);
  for (const auto& [a, b] : edges) {
    degree[membership[a]] += 1.0;
    degree[membership[b]] += 1.0;
    if (membership[a] == membership[b]) intra[membership[a]] += 1.0;
  }
  const double m = static_cast<double>(edges.size());
  double q = 0.0;
  for (std::int32_t c = 0; c < num_comms; ++c) {
    const double dc = degree[c] / (2.0 * m);
    q += intra[c] / m - dc * dc;
  }
  return q;
}

}  // namespace detail

double modularity(const Graph& graph, const CommunityAssignment& assignment) {
  if (graph.num_edges() == 0)
    throw std::invalid_argument("modularity: undefined for an edgeless graph");
  std::vector<std::int32_t> membership(graph.num_nodes());
  for (std::size_t i = 0; i < graph.num_nodes(); ++i) {
    const auto it = assignment.membership.find(graph.nodes()[i]);
    if (it == assignment.membership.end())
      throw std::invalid_argument("modularity: assignment does not cover node " +
                                  std::to_string(graph.nodes()[i]));
    membership[i] = it->second;
  }
  const auto edges = graph.dense_edges();
  return detail::modularity_dense(static_cast<std::int32_t>(graph.num_nodes()), edges, membership);
}

CommunityAssignment louvain_detect(const Graph& graph, std::uint64_t seed) {
  const auto edges = graph.dense_edges();
  const auto dense =
      detail::louvain_dense(static_cast<std::int32_t>(graph.num_nodes()), edges, seed);
  CommunityAssignment out;
  out.membership.reserve(graph.num_nodes());
  for (std::size_t i = 0; i < graph.num_nodes(); ++i)
    out.membership.emplace(graph.nodes()[i], dense.membership[i]);
  out.num_communities = dense.num_communities;
  return out;
}

int same_community(const CommunityAssignment& assignment, std::span<const NodeId> victims) {
  if (victims.size() < 2)
    throw std::invalid_argument("same_community: need at least 2 victim nodes");
  std::int32_t community = -1;
  for (const NodeId v : victims) {
    const auto it = assignment.membership.find(v);
    if (it == assignment.membership.end()) return 0;
    if (community < 0)
      community = it->second;
    else if (it->second != community)
      return 0;
  }
  return 1;
}

}  // namespace commcert
