#include "commcert/graph.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace commcert {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + what);
}

bool parse_node_id(std::string_view tok, NodeId& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

std::string gunzip_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof(buf))) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool ok = (n == 0);
  gzclose(f);
  if (!ok) throw std::runtime_error("gzip read failed for " + path);
  return out;
}

}  // namespace

Graph Graph::from_edges(std::vector<NodeId> nodes,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  Graph g;
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw std::invalid_argument("Graph: duplicate node id");
  g.nodes_ = std::move(nodes);
  g.index_.reserve(g.nodes_.size());
  for (std::size_t i = 0; i < g.nodes_.size(); ++i)
    g.index_.emplace(g.nodes_[i], static_cast<std::int32_t>(i));
  g.adj_.assign(g.nodes_.size(), {});
  for (const auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop on node " + std::to_string(u));
    const std::int32_t a = g.dense_index(u);
    const std::int32_t b = g.dense_index(v);
    g.adj_[static_cast<std::size_t>(a)].push_back(b);
    g.adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw std::invalid_argument("Graph: duplicate edge");
    g.num_edges_ += nbrs.size();
  }
  g.num_edges_ /= 2;
  return g;
}

std::int32_t Graph::dense_index(NodeId u) const {
  auto it = index_.find(u);
  if (it == index_.end())
    throw std::invalid_argument("Graph: unknown node id " + std::to_string(u));
  return it->second;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto iu = index_.find(u);
  auto iv = index_.find(v);
  if (iu == index_.end() || iv == index_.end()) return false;
  const auto& nbrs = adj_[static_cast<std::size_t>(iu->second)];
  return std::binary_search(nbrs.begin(), nbrs.end(), iv->second);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges_);
  for (std::size_t a = 0; a < adj_.size(); ++a)
    for (std::int32_t b : adj_[a])
      if (static_cast<std::int32_t>(a) < b)
        out.emplace_back(nodes_[a], nodes_[static_cast<std::size_t>(b)]);
  return out;
}

std::vector<std::pair<std::int32_t, std::int32_t>> Graph::dense_edges() const {
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  out.reserve(num_edges_);
  for (std::size_t a = 0; a < adj_.size(); ++a)
    for (std::int32_t b : adj_[a])
      if (static_cast<std::int32_t>(a) < b) out.emplace_back(static_cast<std::int32_t>(a), b);
  return out;
}

PairSpace::PairSpace(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("PairSpace: need at least 2 nodes");
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw std::invalid_argument("PairSpace: duplicate node id");
  const std::size_t k = nodes_.size();
  node_pos_.reserve(k);
  for (std::size_t i = 0; i < k; ++i) node_pos_.emplace(nodes_[i], static_cast<std::uint32_t>(i));
  pairs_.reserve(k * (k - 1) / 2);
  index_.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      index_.emplace(pair_key(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)),
                     pairs_.size());
      pairs_.emplace_back(nodes_[i], nodes_[j]);
    }
}

std::optional<std::size_t> PairSpace::index_of(NodeId u, NodeId v) const {
  auto iu = node_pos_.find(u);
  auto iv = node_pos_.find(v);
  if (iu == node_pos_.end() || iv == node_pos_.end() || u == v) return std::nullopt;
  std::uint32_t a = iu->second, b = iv->second;
  if (a > b) std::swap(a, b);
  auto it = index_.find(pair_key(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StructureVector::popcount() const {
  std::size_t c = 0;
  for (std::uint8_t b : bits) c += b;
  return c;
}

bool same_space(const StructureVector& a, const StructureVector& b) {
  if (!a.space || !b.space) return false;
  return a.space == b.space || *a.space == *b.space;
}

StructureVector xor_vectors(const StructureVector& a, const StructureVector& b) {
  if (!same_space(a, b)) throw std::invalid_argument("xor_vectors: pair-space mismatch");
  StructureVector r{a.bits, a.space};
  for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits[i] ^= b.bits[i];
  return r;
}

StructureVector zero_vector(PairSpacePtr space) {
  StructureVector v;
  v.bits.assign(space->size(), 0);
  v.space = std::move(space);
  return v;
}

Graph parse_edge_list(std::istream& in, EdgeListStats* stats) {
  EdgeListStats local;
  std::set<NodeId> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') {
      ++local.comment_lines;
      continue;
    }
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) parse_fail(line_no, "expected two node ids");
    NodeId u, v;
    if (!parse_node_id(toks[0], u) || !parse_node_id(toks[1], v))
      parse_fail(line_no, "malformed node id");
    nodes.insert(u);
    nodes.insert(v);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    if (u > v) std::swap(u, v);
    if (!edges.emplace(u, v).second) ++local.duplicate_edges_dropped;
  }
  if (stats) *stats = local;
  std::vector<std::pair<NodeId, NodeId>> edge_list(edges.begin(), edges.end());
  return Graph::from_edges(std::vector<NodeId>(nodes.begin(), nodes.end()), edge_list);
}

GroundTruth parse_communities(std::istream& in) {
  GroundTruth gt;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    std::vector<NodeId> comm;
    comm.reserve(toks.size());
    for (auto tok : toks) {
      NodeId u;
      if (!parse_node_id(tok, u)) parse_fail(line_no, "malformed node id");
      comm.push_back(u);
    }
    std::sort(comm.begin(), comm.end());
    comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
    gt.communities.push_back(std::move(comm));
  }
  return gt;
}

namespace {
template <typename Parse>
auto load_text(const std::string& path, Parse parse) {
  if (path.size() > 3 && path.ends_with(".gz")) {
    std::istringstream in(gunzip_file(path));
    return parse(in);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in);
}
}  // namespace

Graph load_edge_list(const std::string& path, EdgeListStats* stats) {
  return load_text(path, [&](std::istream& in) { return parse_edge_list(in, stats); });
}

GroundTruth load_communities(const std::string& path) {
  return load_text(path, [](std::istream& in) { return parse_communities(in); });
}

PairSpacePtr build_pair_space(std::span<const NodeId> nodes) {
  return std::make_shared<const PairSpace>(std::vector<NodeId>(nodes.begin(), nodes.end()));
}

StructureVector structure_vector(const Graph& graph, PairSpacePtr space) {
  StructureVector v;
  v.bits.reserve(space->size());
  for (const auto& [u, w] : space->pairs()) {
    if (!graph.has_node(u) || !graph.has_node(w))
      throw std::invalid_argument("structure_vector: pair endpoint missing from graph");
    v.bits.push_back(graph.has_edge(u, w) ? 1 : 0);
  }
  v.space = std::move(space);
  return v;
}

Graph apply_flips(const Graph& base, const PairSpace& space, const StructureVector& mask) {
  if (!mask.space || !(mask.space.get() == &space || *mask.space == space))
    throw std::invalid_argument("apply_flips: mask built over a different pair space");
  if (mask.bits.size() != space.size())
    throw std::invalid_argument("apply_flips: mask length does not match space");
  std::set<std::pair<NodeId, NodeId>> edges;
  for (auto& e : base.edges()) edges.insert(e);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (!mask.bits[i]) continue;
    auto [u, v] = space.pairs()[i];
    if (!base.has_node(u) || !base.has_node(v))
      throw std::invalid_argument("apply_flips: pair endpoint missing from graph");
    if (u > v) std::swap(u, v);
    const auto pos = edges.find({u, v});
    if (pos == edges.end())
      edges.emplace(u, v);
    else
      edges.erase(pos);
  }
  std::vector<std::pair<NodeId, NodeId>> edge_list(edges.begin(), edges.end());
  return Graph::from_edges(base.nodes(), edge_list);
}

}  // namespace commcert
