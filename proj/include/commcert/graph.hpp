#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commcert {

using NodeId = std::int64_t;

// Simple undirected graph: no self-loops, no parallel edges. External node
// ids are arbitrary integers; internally they are remapped to dense indices
// 0..num_nodes()-1 (ascending id order). Immutable after construction, so
// instances can be shared read-only across threads.
class Graph {
 public:
  Graph() = default;

  // `nodes` may contain ids not touched by any edge (isolated nodes).
  // Throws on duplicate node ids, self-loops, duplicate edges, or edge
  // endpoints missing from `nodes`.
  static Graph from_edges(std::vector<NodeId> nodes,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  bool has_node(NodeId u) const { return index_.contains(u); }
  // Dense index of an external id; throws if absent.
  std::int32_t dense_index(NodeId u) const;
  NodeId node_at(std::int32_t dense) const { return nodes_[static_cast<std::size_t>(dense)]; }

  bool has_edge(NodeId u, NodeId v) const;
  // Neighbors in dense-index space, ascending.
  std::span<const std::int32_t> neighbors(std::int32_t dense) const {
    return adj_[static_cast<std::size_t>(dense)];
  }

  // All edges as (u, v) external-id pairs with u < v, in ascending order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
  // All edges in dense-index space with a < b.
  std::vector<std::pair<std::int32_t, std::int32_t>> dense_edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<NodeId> nodes_;  // sorted ascending, unique
  std::unordered_map<NodeId, std::int32_t> index_;
  std::vector<std::vector<std::int32_t>> adj_;  // sorted ascending
  std::size_t num_edges_ = 0;
};

// The set of node pairs an attacker may rewire; positions in `pairs()` give
// the coordinates of every structure vector over this space. All C(k,2)
// unordered pairs of the given nodes, ordered lexicographically by
// (min id, max id).
class PairSpace {
 public:
  explicit PairSpace(std::vector<NodeId> nodes);

  std::size_t size() const { return pairs_.size(); }  // n
  const std::vector<std::pair<NodeId, NodeId>>& pairs() const { return pairs_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::optional<std::size_t> index_of(NodeId u, NodeId v) const;

  friend bool operator==(const PairSpace& a, const PairSpace& b) { return a.pairs_ == b.pairs_; }

 private:
  std::vector<NodeId> nodes_;  // sorted ascending
  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::unordered_map<NodeId, std::uint32_t> node_pos_;
};

using PairSpacePtr = std::shared_ptr<const PairSpace>;

// Binary vector over a PairSpace. Depending on context it encodes a graph
// restricted to the space (bit i = pair i is an edge), a perturbation delta,
// or a noise draw epsilon.
struct StructureVector {
  std::vector<std::uint8_t> bits;
  PairSpacePtr space;

  std::size_t size() const { return bits.size(); }
  std::size_t popcount() const;

  friend bool operator==(const StructureVector& a, const StructureVector& b) {
    return a.bits == b.bits;
  }
};

// True if both vectors are defined over the same pair space.
bool same_space(const StructureVector& a, const StructureVector& b);

// Bitwise XOR; throws if the spaces differ.
StructureVector xor_vectors(const StructureVector& a, const StructureVector& b);

StructureVector zero_vector(PairSpacePtr space);

// Ground-truth communities as ingested; overlap between communities is
// permitted here (some corpora have it), downstream samplers don't care.
struct GroundTruth {
  std::vector<std::vector<NodeId>> communities;  // each sorted, unique, non-empty
};

struct EdgeListStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t comment_lines = 0;
};

// SNAP-style edge list: one "u v" pair per line, '#' comments, blank lines
// ignored. Self-loops are dropped (counted in stats), duplicate undirected
// edges collapse to one. Throws std::runtime_error with a line number on
// malformed input.
Graph parse_edge_list(std::istream& in, EdgeListStats* stats = nullptr);

// One community per line, whitespace-separated node ids; blank lines skipped.
GroundTruth parse_communities(std::istream& in);

// File loaders; paths ending in ".gz" are decompressed transparently.
Graph load_edge_list(const std::string& path, EdgeListStats* stats = nullptr);
GroundTruth load_communities(const std::string& path);

// All C(|nodes|,2) pairs; throws if |nodes| < 2 or ids repeat.
PairSpacePtr build_pair_space(std::span<const NodeId> nodes);

// Restriction of `graph` to the pair space: bit i = 1 iff pair i is an edge.
// Throws if a pair endpoint is not a graph node.
StructureVector structure_vector(const Graph& graph, PairSpacePtr space);

// Toggle the edge status of every pair whose mask bit is 1; edges outside
// the space are untouched. Throws if the mask was built over a different
// space or an endpoint is missing from the graph.
Graph apply_flips(const Graph& base, const PairSpace& space, const StructureVector& mask);

}  // namespace commcert
