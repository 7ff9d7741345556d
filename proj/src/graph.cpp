#include "graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "errors.hpp"

namespace trc {

namespace {

void build_csr(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
               std::vector<uint64_t>& off, std::vector<NodeId>& tgt) {
  off.assign(n + 1, 0);
  for (const auto& [u, v] : pairs) off[u + 1]++;
  for (NodeId i = 0; i < n; ++i) off[i + 1] += off[i];
  tgt.resize(pairs.size());
  std::vector<uint64_t> cur(off.begin(), off.end() - 1);
  for (const auto& [u, v] : pairs) tgt[cur[u]++] = v;
  for (NodeId i = 0; i < n; ++i)
    std::sort(tgt.begin() + off[i], tgt.begin() + off[i + 1]);
}

bool sorted_contains(std::span<const NodeId> s, NodeId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

}  // namespace

bool DirectedGraph::has_edge(NodeId u, NodeId v) const { return sorted_contains(out(u), v); }

bool DirectedGraph::has_undirected_edge(NodeId u, NodeId v) const {
  return sorted_contains(undirected(u), v);
}

std::optional<NodeId> DirectedGraph::find(const std::string& external_id) const {
  auto it = name_index_.find(external_id);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out_edges;
  out_edges.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : out(u)) out_edges.emplace_back(u, v);
  return out_edges;
}

EgoNetwork DirectedGraph::ego_network(NodeId ego, int radius) const {
  if (ego >= node_count()) throw NotFoundError("unknown node id " + std::to_string(ego));
  if (radius != 1 && radius != 2) throw std::invalid_argument("radius must be 1 or 2");

  EgoNetwork net;
  net.ego = ego;
  net.radius = radius;

  auto hop1 = undirected(ego);
  if (radius == 1) {
    net.alters.assign(hop1.begin(), hop1.end());
  } else {
    std::vector<NodeId> alters(hop1.begin(), hop1.end());
    for (NodeId a : hop1)
      for (NodeId b : undirected(a))
        if (b != ego) alters.push_back(b);
    std::sort(alters.begin(), alters.end());
    alters.erase(std::unique(alters.begin(), alters.end()), alters.end());
    net.alters = std::move(alters);
  }

  std::vector<NodeId> members(net.alters);
  members.push_back(ego);
  std::sort(members.begin(), members.end());
  for (NodeId u : members)
    for (NodeId v : out(u))
      if (std::binary_search(members.begin(), members.end(), v)) net.edges.emplace_back(u, v);
  std::sort(net.edges.begin(), net.edges.end());
  return net;
}

double DirectedGraph::local_clustering(NodeId u) const {
  auto nbrs = undirected(u);
  size_t d = nbrs.size();
  if (d < 2) return 0.0;
  uint64_t links = 0;
  for (NodeId a : nbrs) {
    // |und(a) ∩ nbrs| by merging two sorted lists
    auto other = undirected(a);
    size_t i = 0, j = 0;
    while (i < other.size() && j < nbrs.size()) {
      if (other[i] == nbrs[j]) {
        ++links;
        ++i;
        ++j;
      } else if (other[i] < nbrs[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  // every undirected pair among neighbors was seen twice
  return static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
}

std::vector<double> DirectedGraph::clustering_values() const {
  std::vector<double> vals(node_count());
  for (NodeId u = 0; u < node_count(); ++u) vals[u] = local_clustering(u);
  return vals;
}

SummaryStats DirectedGraph::summary_stats() const {
  if (node_count() == 0) throw std::invalid_argument("summary_stats on empty graph");
  SummaryStats s;
  s.node_count = node_count();
  s.edge_count = edge_count_;
  s.mean_degree = 2.0 * static_cast<double>(edge_count_) / static_cast<double>(node_count());
  double acc = 0.0;
  for (NodeId u = 0; u < node_count(); ++u) acc += local_clustering(u);
  s.mean_clustering = acc / static_cast<double>(node_count());
  return s;
}

std::vector<uint32_t> DirectedGraph::in_degrees() const {
  std::vector<uint32_t> d(node_count());
  for (NodeId u = 0; u < node_count(); ++u) d[u] = in_degree(u);
  return d;
}

std::vector<uint32_t> DirectedGraph::out_degrees() const {
  std::vector<uint32_t> d(node_count());
  for (NodeId u = 0; u < node_count(); ++u) d[u] = out_degree(u);
  return d;
}

std::vector<uint32_t> DirectedGraph::total_degrees() const {
  std::vector<uint32_t> d(node_count());
  for (NodeId u = 0; u < node_count(); ++u) d[u] = total_degree(u);
  return d;
}

DirectedGraph DirectedGraph::induced_subgraph(const std::vector<NodeId>& nodes) const {
  std::vector<NodeId> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  GraphBuilder b;
  for (NodeId u : sorted) b.add_node(names_[u]);
  for (NodeId u : sorted)
    for (NodeId v : out(u))
      if (std::binary_search(sorted.begin(), sorted.end(), v)) b.add_edge(names_[u], names_[v]);
  return b.build();
}

DirectedGraph DirectedGraph::subgraph_with_edges(
    const std::vector<NodeId>& nodes, const std::vector<std::pair<NodeId, NodeId>>& keep_edges) const {
  GraphBuilder b;
  std::vector<NodeId> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (NodeId u : sorted) b.add_node(names_[u]);
  for (const auto& [u, v] : keep_edges) b.add_edge(names_[u], names_[v]);
  return b.build();
}

void DirectedGraph::save_edge_list(const std::string& path) const {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : out(u)) lines.emplace_back(names_[u], names_[v]);
  std::sort(lines.begin(), lines.end());

  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  for (const auto& [a, b] : lines) f << a << ' ' << b << '\n';
  if (!f) throw IoError("write failed: " + path);
}

NodeId GraphBuilder::add_node(const std::string& external_id) {
  auto it = name_index_.find(external_id);
  if (it != name_index_.end()) return it->second;
  NodeId id = static_cast<NodeId>(names_.size());
  names_.push_back(external_id);
  name_index_.emplace(external_id, id);
  return id;
}

void GraphBuilder::add_edge(const std::string& src, const std::string& dst) {
  NodeId u = add_node(src);
  NodeId v = add_node(dst);
  add_edge_ids(u, v);
}

void GraphBuilder::add_edge_ids(NodeId src, NodeId dst) {
  if (src == dst) {
    stats_.self_loops_dropped++;
    return;
  }
  edges_.emplace_back(src, dst);
}

DirectedGraph GraphBuilder::build() {
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  stats_.duplicates_dropped += static_cast<uint64_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());

  DirectedGraph g;
  g.names_ = std::move(names_);
  g.name_index_ = std::move(name_index_);
  g.edge_count_ = edges_.size();
  NodeId n = static_cast<NodeId>(g.names_.size());

  build_csr(n, edges_, g.out_off_, g.out_tgt_);
  std::vector<std::pair<NodeId, NodeId>> rev(edges_.size());
  for (size_t i = 0; i < edges_.size(); ++i) rev[i] = {edges_[i].second, edges_[i].first};
  build_csr(n, rev, g.in_off_, g.in_tgt_);

  std::vector<std::pair<NodeId, NodeId>> und;
  und.reserve(edges_.size() * 2);
  for (const auto& [u, v] : edges_) {
    und.emplace_back(u, v);
    und.emplace_back(v, u);
  }
  std::sort(und.begin(), und.end());
  und.erase(std::unique(und.begin(), und.end()), und.end());
  build_csr(n, und, g.und_off_, g.und_tgt_);
  return g;
}

DirectedGraph load_edge_list(const std::string& path, const LoadOptions& options,
                             LoadStats* stats_out) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open edge list: " + path);

  GraphBuilder b;
  std::string line;
  uint64_t lineno = 0;
  bool header_pending = options.has_header;
  LoadStats stats;

  while (std::getline(f, line)) {
    ++lineno;
    stats.lines_read++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    std::string src, dst;
    if (options.delimiter == '\0') {
      std::istringstream ss(line);
      ss >> src >> dst;
      if (dst.empty()) throw ParseError(path + ":" + std::to_string(lineno) + ": expected at least 2 fields");
    } else {
      size_t p1 = line.find(options.delimiter);
      if (p1 == std::string::npos)
        throw ParseError(path + ":" + std::to_string(lineno) + ": expected at least 2 fields");
      size_t p2 = line.find(options.delimiter, p1 + 1);
      src = line.substr(0, p1);
      dst = (p2 == std::string::npos) ? line.substr(p1 + 1) : line.substr(p1 + 1, p2 - p1 - 1);
      if (src.empty() || dst.empty())
        throw ParseError(path + ":" + std::to_string(lineno) + ": empty field");
    }
    b.add_edge(src, dst);
  }

  DirectedGraph g = b.build();
  LoadStats bs = b.stats();
  stats.duplicates_dropped = bs.duplicates_dropped;
  stats.self_loops_dropped = bs.self_loops_dropped;
  if (!options.dedupe && stats.duplicates_dropped > 0)
    throw ParseError(path + ": " + std::to_string(stats.duplicates_dropped) +
                     " duplicate edge rows (dedupe disabled)");
  if (g.node_count() == 0) throw ParseError(path + ": no edges or nodes found");
  if (stats_out) *stats_out = stats;
  return g;
}

}  // namespace trc
