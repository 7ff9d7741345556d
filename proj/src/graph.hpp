#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace trc {

using NodeId = uint32_t;

struct LoadOptions {
  char delimiter = '\0';  // '\0' = any run of whitespace
  bool has_header = false;
  bool dedupe = true;  // when false, a repeated (src,dst) row is an error
};

struct LoadStats {
  uint64_t lines_read = 0;
  uint64_t duplicates_dropped = 0;
  uint64_t self_loops_dropped = 0;
};

struct SummaryStats {
  uint64_t node_count = 0;
  uint64_t edge_count = 0;
  double mean_degree = 0.0;      // 2|E| / |V|
  double mean_clustering = 0.0;  // mean local clustering on the undirected projection
};

struct EgoNetwork {
  NodeId ego = 0;
  int radius = 1;
  std::vector<NodeId> alters;                      // sorted, excludes ego
  std::vector<std::pair<NodeId, NodeId>> edges;    // induced on {ego} + alters, sorted
};

// Immutable directed graph with dense internal ids and external string ids.
// Adjacency is CSR with sorted neighbor lists; an undirected projection index
// is kept alongside because ego extraction and clustering coefficients need
// it constantly. Safe for concurrent read-only use.
class DirectedGraph {
 public:
  NodeId node_count() const { return static_cast<NodeId>(names_.size()); }
  uint64_t edge_count() const { return edge_count_; }

  std::span<const NodeId> out(NodeId u) const { return adj(out_off_, out_tgt_, u); }
  std::span<const NodeId> in(NodeId u) const { return adj(in_off_, in_tgt_, u); }
  std::span<const NodeId> undirected(NodeId u) const { return adj(und_off_, und_tgt_, u); }

  uint32_t out_degree(NodeId u) const { return static_cast<uint32_t>(out(u).size()); }
  uint32_t in_degree(NodeId u) const { return static_cast<uint32_t>(in(u).size()); }
  uint32_t total_degree(NodeId u) const { return out_degree(u) + in_degree(u); }

  bool has_edge(NodeId u, NodeId v) const;
  bool has_undirected_edge(NodeId u, NodeId v) const;

  const std::string& name(NodeId u) const { return names_[u]; }
  std::optional<NodeId> find(const std::string& external_id) const;

  // All edges as (src, dst) pairs ordered by internal id.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  EgoNetwork ego_network(NodeId ego, int radius) const;

  SummaryStats summary_stats() const;
  double local_clustering(NodeId u) const;
  std::vector<double> clustering_values() const;

  std::vector<uint32_t> in_degrees() const;
  std::vector<uint32_t> out_degrees() const;
  std::vector<uint32_t> total_degrees() const;

  // Subgraph on `nodes` with all source edges among them. External ids are
  // preserved; `nodes` need not be sorted.
  DirectedGraph induced_subgraph(const std::vector<NodeId>& nodes) const;
  // Subgraph on `nodes` keeping exactly `keep_edges` (must exist in *this).
  DirectedGraph subgraph_with_edges(const std::vector<NodeId>& nodes,
                                    const std::vector<std::pair<NodeId, NodeId>>& keep_edges) const;

  // One "src dst" line per edge, sorted by external (src, dst) pair.
  void save_edge_list(const std::string& path) const;

 private:
  friend class GraphBuilder;

  std::span<const NodeId> adj(const std::vector<uint64_t>& off, const std::vector<NodeId>& tgt,
                              NodeId u) const {
    return {tgt.data() + off[u], tgt.data() + off[u + 1]};
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> name_index_;
  uint64_t edge_count_ = 0;
  std::vector<uint64_t> out_off_, in_off_, und_off_;
  std::vector<NodeId> out_tgt_, in_tgt_, und_tgt_;
};

// Collects nodes/edges, then builds the immutable graph. Duplicate edges
// collapse, self-loops are dropped; both are counted.
class GraphBuilder {
 public:
  NodeId add_node(const std::string& external_id);
  void add_edge(const std::string& src, const std::string& dst);
  void add_edge_ids(NodeId src, NodeId dst);

  LoadStats stats() const { return stats_; }
  DirectedGraph build();

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> name_index_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  LoadStats stats_;
};

// Parses an edge list: one edge per line, `src<delim>dst[<delim>extra...]`,
// '#'-prefixed comment lines and blank lines skipped. Extra fields ignored.
DirectedGraph load_edge_list(const std::string& path, const LoadOptions& options = {},
                             LoadStats* stats_out = nullptr);

}  // namespace trc
