#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "commcert/graph.hpp"

namespace commcert {

// Non-overlapping partition produced by the detector: every graph node maps
// to exactly one community, ids dense from 0.
struct CommunityAssignment {
  std::unordered_map<NodeId, std::int32_t> membership;
  std::int32_t num_communities = 0;
};

// Newman modularity Q = sum_c [ m_c/m - (d_c/2m)^2 ] for an unweighted
// partition: m = |E|, m_c = intra-community edges, d_c = total degree in c.
// Throws if the graph has no edges (Q undefined) or the assignment misses a
// node.
double modularity(const Graph& graph, const CommunityAssignment& assignment);

// Two-phase Louvain (local moving + aggregation), repeated until the
// modularity gain of a level drops below 1e-7. Deterministic for a fixed
// (graph, seed): node visiting order is a seeded permutation redrawn each
// sweep, and equal-gain ties go to the lowest community id. An edgeless
// graph yields singleton communities.
CommunityAssignment louvain_detect(const Graph& graph, std::uint64_t seed);

// 1 iff every victim is present and all victims share one community id.
// Victims missing from the assignment force 0. Throws if fewer than two
// victims are given.
int same_community(const CommunityAssignment& assignment, std::span<const NodeId> victims);

namespace detail {

// Dense-index entry points used by the sampling hot path (no id remapping,
// no hash maps in the result).
struct DensePartition {
  std::vector<std::int32_t> membership;  // node -> community, ids dense from 0
  std::int32_t num_communities = 0;
  double modularity = 0.0;  // 0 for an edgeless graph
  int levels = 0;
};

DensePartition louvain_dense(std::int32_t num_nodes,
                             std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                             std::uint64_t seed);

double modularity_dense(std::int32_t num_nodes,
                        std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                        std::span<const std::int32_t> membership);

}  // namespace detail

}  // namespace commcert
