#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace trc {

namespace {

uint32_t target_size(const DirectedGraph& g, double phi) {
  if (!(phi > 0.0) || phi > 1.0) throw std::invalid_argument("phi must be in (0, 1]");
  auto t = static_cast<uint64_t>(std::ceil(phi * static_cast<double>(g.node_count())));
  return static_cast<uint32_t>(std::min<uint64_t>(t, g.node_count()));
}

SampleResult vertex_sample(const DirectedGraph& g, const SampleSpec& spec) {
  Rng rng(spec.seed);
  uint32_t target = target_size(g, spec.phi);
  std::vector<NodeId> nodes = rng.sample_indices(g.node_count(), target);
  SampleResult r{g.induced_subgraph(nodes), spec, target, false};
  return r;
}

SampleResult edge_sample(const DirectedGraph& g, const SampleSpec& spec, bool induce_only) {
  if (g.edge_count() == 0) throw std::invalid_argument("edge sampling needs at least one edge");
  Rng rng(spec.seed);
  uint32_t target = target_size(g, spec.phi);

  auto edges = g.edges();
  rng.shuffle(edges);

  std::vector<bool> in_sample(g.node_count(), false);
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> kept;
  uint32_t count = 0;
  bool exhausted = true;

  for (const auto& [u, v] : edges) {
    if (count >= target) {
      exhausted = false;
      break;
    }
    if (induce_only) {
      // ES-i: nodes are collected one at a time and the drawn edge is not kept
      for (NodeId w : {u, v}) {
        if (count >= target) break;
        if (!in_sample[w]) {
          in_sample[w] = true;
          nodes.push_back(w);
          ++count;
        }
      }
    } else {
      kept.emplace_back(u, v);
      for (NodeId w : {u, v}) {
        if (!in_sample[w]) {
          in_sample[w] = true;
          nodes.push_back(w);
          ++count;
        }
      }
    }
  }
  if (count >= target) exhausted = false;

  SampleResult r{induce_only ? g.induced_subgraph(nodes) : g.subgraph_with_edges(nodes, kept),
                 spec, target, exhausted};
  return r;
}

SampleResult forest_fire_sample(const DirectedGraph& g, const SampleSpec& spec) {
  Rng rng(spec.seed);
  uint32_t target = target_size(g, spec.phi);
  NodeId n = g.node_count();

  std::vector<bool> burned(n, false);
  // uniform draws over the unburned set: swap-remove list + position index
  std::vector<NodeId> unburned(n);
  std::vector<uint32_t> pos(n);
  for (NodeId i = 0; i < n; ++i) {
    unburned[i] = i;
    pos[i] = i;
  }
  auto burn = [&](NodeId v) {
    burned[v] = true;
    uint32_t p = pos[v];
    NodeId last = unburned.back();
    unburned[p] = last;
    pos[last] = p;
    unburned.pop_back();
  };

  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> kept;
  std::deque<NodeId> frontier;
  std::vector<NodeId> candidates;

  while (nodes.size() < target) {
    // fresh fire (also covers a dead fire: restart at a random unburned node)
    NodeId seed_node = unburned[rng.index(unburned.size())];
    burn(seed_node);
    nodes.push_back(seed_node);
    frontier.clear();
    frontier.push_back(seed_node);

    while (!frontier.empty() && nodes.size() < target) {
      NodeId u = frontier.front();
      frontier.pop_front();

      uint64_t x = rng.geometric(spec.ffs_p);  // mean p / (1 - p)
      if (x == 0) continue;
      candidates.clear();
      for (NodeId w : g.out(u))
        if (!burned[w]) candidates.push_back(w);
      size_t take = std::min<uint64_t>(x, candidates.size());
      for (size_t i = 0; i < take && nodes.size() < target; ++i) {
        size_t j = i + rng.index(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
        NodeId w = candidates[i];
        burn(w);
        nodes.push_back(w);
        kept.emplace_back(u, w);
        frontier.push_back(w);
      }
    }
  }

  SampleResult r{spec.induce_edges ? g.induced_subgraph(nodes) : g.subgraph_with_edges(nodes, kept),
                 spec, target, false};
  return r;
}

}  // namespace

std::string method_name(SampleMethod m) {
  switch (m) {
    case SampleMethod::VS: return "VS";
    case SampleMethod::ES: return "ES";
    case SampleMethod::FFS: return "FFS";
    case SampleMethod::ESI: return "ESI";
  }
  return "?";
}

SampleMethod parse_method(const std::string& name) {
  if (name == "VS" || name == "vs") return SampleMethod::VS;
  if (name == "ES" || name == "es") return SampleMethod::ES;
  if (name == "FFS" || name == "ffs") return SampleMethod::FFS;
  if (name == "ESI" || name == "esi" || name == "ES-i" || name == "es-i")
    return SampleMethod::ESI;
  throw std::invalid_argument("unknown sampling method: " + name);
}

SampleResult sample_graph(const DirectedGraph& g, const SampleSpec& spec) {
  if (spec.ffs_p < 0.0 || spec.ffs_p >= 1.0)
    throw std::invalid_argument("ffs_p must be in [0, 1)");
  switch (spec.method) {
    case SampleMethod::VS: return vertex_sample(g, spec);
    case SampleMethod::ES: return edge_sample(g, spec, false);
    case SampleMethod::FFS: return forest_fire_sample(g, spec);
    case SampleMethod::ESI: return edge_sample(g, spec, true);
  }
  throw std::invalid_argument("unknown sampling method");
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance needs nonempty inputs");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() || j < b.size()) {
    double x = (i < a.size() && (j >= b.size() || a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

KsReport evaluate_samplers(const DirectedGraph& g, const std::vector<SampleMethod>& methods,
                           const std::vector<double>& phi_grid, uint32_t repetitions,
                           double ffs_p, uint64_t seed, int workers) {
  if (methods.empty() || phi_grid.empty() || repetitions == 0)
    throw std::invalid_argument("evaluate_samplers: empty grid");

  std::vector<double> full_degrees;
  for (uint32_t d : g.total_degrees()) full_degrees.push_back(d);
  std::vector<double> full_clustering = g.clustering_values();

  size_t n_cells = methods.size() * phi_grid.size();
  std::vector<double> ks_deg(n_cells * repetitions);
  std::vector<double> ks_clu(n_cells * repetitions);

  parallel_for(n_cells * repetitions, workers, [&](size_t task) {
    size_t cell = task / repetitions;
    uint32_t rep = static_cast<uint32_t>(task % repetitions);
    SampleMethod method = methods[cell / phi_grid.size()];
    double phi = phi_grid[cell % phi_grid.size()];

    char tag[64];
    std::snprintf(tag, sizeof tag, "eval:%s:%.6g", method_name(method).c_str(), phi);
    SampleSpec spec{method, phi, ffs_p, false, derive_seed(seed, tag, rep)};
    SampleResult s = sample_graph(g, spec);

    std::vector<double> deg;
    for (uint32_t d : s.graph.total_degrees()) deg.push_back(d);
    ks_deg[task] = ks_distance(deg, full_degrees);
    ks_clu[task] = ks_distance(s.graph.clustering_values(), full_clustering);
  });

  KsReport report;
  for (size_t cell = 0; cell < n_cells; ++cell) {
    KsCell c;
    c.method = methods[cell / phi_grid.size()];
    c.phi = phi_grid[cell % phi_grid.size()];
    c.repetitions = repetitions;
    double sd = 0.0, sc = 0.0;
    for (uint32_t r = 0; r < repetitions; ++r) {
      sd += ks_deg[cell * repetitions + r];
      sc += ks_clu[cell * repetitions + r];
    }
    c.mean_ks_degree = sd / repetitions;
    c.mean_ks_clustering = sc / repetitions;
    report.cells.push_back(c);
  }
  return report;
}

void save_ks_report_csv(const KsReport& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "method,phi,mean_ks_degree,mean_ks_clustering,repetitions\n";
  char buf[160];
  for (const auto& c : r.cells) {
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.9f,%.9f,%u\n", method_name(c.method).c_str(), c.phi,
                  c.mean_ks_degree, c.mean_ks_clustering, c.repetitions);
    f << buf;
  }
}

std::array<StabilityRow, kTriadClassCount> stability_from_means(
    const std::vector<std::array<double, kTriadClassCount>>& per_sample_means) {
  if (per_sample_means.size() < 2)
    throw std::invalid_argument("stability needs at least 2 samples");
  double n = static_cast<double>(per_sample_means.size());
  std::array<StabilityRow, kTriadClassCount> rows;
  for (int c = 0; c < kTriadClassCount; ++c) {
    double mean = 0.0;
    for (const auto& s : per_sample_means) mean += s[c];
    mean /= n;
    double var = 0.0;
    for (const auto& s : per_sample_means) var += (s[c] - mean) * (s[c] - mean);
    var /= (n - 1.0);
    double half = 1.96 * std::sqrt(var / n);
    rows[c] = {c, mean, mean - half, mean + half};
  }
  return rows;
}

std::array<StabilityRow, kTriadClassCount> census_stability(const DirectedGraph& g, double phi,
                                                            uint32_t n, double ffs_p, bool induce,
                                                            int radius, uint64_t seed,
                                                            int workers) {
  if (n < 2) throw std::invalid_argument("census_stability needs n >= 2");
  std::vector<std::array<double, kTriadClassCount>> means(n);

  parallel_for(n, workers, [&](size_t i) {
    SampleSpec spec{SampleMethod::FFS, phi, ffs_p, induce, derive_seed(seed, "stability", i)};
    SampleResult s = sample_graph(g, spec);
    CensusMatrix m = census_matrix(s.graph, radius, 2, 1);
    std::array<double, kTriadClassCount> mean{};
    if (!m.rows.empty()) {
      for (const auto& row : m.rows)
        for (int c = 0; c < kTriadClassCount; ++c) mean[c] += row[c];
      for (int c = 0; c < kTriadClassCount; ++c) mean[c] /= static_cast<double>(m.rows.size());
    }
    means[i] = mean;
  });

  return stability_from_means(means);
}

void save_stability_csv(const std::array<StabilityRow, kTriadClassCount>& rows,
                        const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "class_id,mean,ci_low,ci_high\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.9f,%.9f,%.9f\n", r.class_id, r.mean, r.ci_low, r.ci_high);
    f << buf;
  }
}

}  // namespace trc
