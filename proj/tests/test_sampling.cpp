#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "rng.hpp"
#include "sampling.hpp"

using namespace trc;

namespace {

std::set<std::pair<std::string, std::string>> edge_set(const DirectedGraph& g) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& [u, v] : g.edges()) s.insert({g.name(u), g.name(v)});
  return s;
}

bool is_subgraph(const DirectedGraph& sample, const DirectedGraph& full) {
  for (const auto& [u, v] : sample.edges()) {
    auto fu = full.find(sample.name(u)), fv = full.find(sample.name(v));
    if (!fu || !fv || !full.has_edge(*fu, *fv)) return false;
  }
  for (NodeId u = 0; u < sample.node_count(); ++u)
    if (!full.find(sample.name(u))) return false;
  return true;
}

}  // namespace

TEST_CASE("geometric burn counts have mean p/(1-p)") {
  Rng rng(123);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.geometric(0.7));
  CHECK(sum / n == doctest::Approx(0.7 / 0.3).epsilon(0.02));
}

TEST_CASE("VS: phi=1 reproduces the graph; target size is exact") {
  DirectedGraph g = testutil::random_graph(100, 0.05, 1);
  SampleResult full = sample_graph(g, {SampleMethod::VS, 1.0, 0.7, false, 9});
  CHECK(full.graph.node_count() == g.node_count());
  CHECK(edge_set(full.graph) == edge_set(g));

  SampleResult s = sample_graph(g, {SampleMethod::VS, 0.35, 0.7, false, 9});
  CHECK(s.target_size == 35);
  CHECK(s.graph.node_count() == 35);
  CHECK(is_subgraph(s.graph, g));
}

TEST_CASE("VS: sampled edges are exactly the induced edges") {
  DirectedGraph g = testutil::random_graph(60, 0.08, 4);
  SampleResult s = sample_graph(g, {SampleMethod::VS, 0.5, 0.7, false, 11});
  uint64_t induced = 0;
  for (const auto& [u, v] : g.edges()) {
    auto su = s.graph.find(g.name(u)), sv = s.graph.find(g.name(v));
    if (su && sv) {
      ++induced;
      CHECK(s.graph.has_edge(*su, *sv));
    }
  }
  CHECK(induced == s.graph.edge_count());
}

TEST_CASE("ES: stopping size within +1, nodes covered by kept edges") {
  GraphBuilder b;
  b.add_edge("x", "y");
  DirectedGraph single = b.build();
  SampleResult se = sample_graph(single, {SampleMethod::ES, 1.0, 0.7, false, 2});
  CHECK(se.graph.node_count() == 2);
  CHECK(se.graph.edge_count() == 1);

  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    DirectedGraph g = testutil::random_graph(80, 0.06, 100 + seed);
    SampleResult s = sample_graph(g, {SampleMethod::ES, 0.4, 0.7, false, seed});
    CHECK(s.graph.node_count() >= s.target_size);
    CHECK(s.graph.node_count() <= s.target_size + 1);
    CHECK(is_subgraph(s.graph, g));
    // every sampled node is an endpoint of some kept edge
    std::set<NodeId> touched;
    for (const auto& [u, v] : s.graph.edges()) {
      touched.insert(u);
      touched.insert(v);
    }
    CHECK(touched.size() == s.graph.node_count());
  }
}

TEST_CASE("ES: edge exhaustion reports a partial sample") {
  GraphBuilder b;
  b.add_edge("a", "b");
  for (int i = 0; i < 8; ++i) b.add_node("iso" + std::to_string(i));
  DirectedGraph g = b.build();
  SampleResult s = sample_graph(g, {SampleMethod::ES, 1.0, 0.7, false, 3});
  CHECK(s.exhausted);
  CHECK(s.graph.node_count() == 2);
}

TEST_CASE("FFS: p=0 burns nothing beyond restart seeds") {
  DirectedGraph g = testutil::random_graph(50, 0.1, 6);
  SampleResult s = sample_graph(g, {SampleMethod::FFS, 0.5, 0.0, false, 13});
  CHECK(s.graph.node_count() == s.target_size);
  CHECK(s.graph.edge_count() == 0);
}

TEST_CASE("FFS: exact target, subgraph containment, induced flag") {
  for (uint64_t seed : {1, 2, 3}) {
    DirectedGraph g = testutil::random_graph(90, 0.05, 200 + seed);
    SampleResult s = sample_graph(g, {SampleMethod::FFS, 0.35, 0.7, false, seed});
    CHECK(s.graph.node_count() == s.target_size);
    CHECK(is_subgraph(s.graph, g));

    SampleResult si = sample_graph(g, {SampleMethod::FFS, 0.35, 0.7, true, seed});
    CHECK(si.graph.node_count() == si.target_size);
    // induced closure keeps at least the burned edges among kept nodes
    CHECK(si.graph.edge_count() >= s.graph.edge_count());
    for (const auto& [u, v] : s.graph.edges()) {
      auto iu = si.graph.find(s.graph.name(u)), iv = si.graph.find(s.graph.name(v));
      if (iu && iv) CHECK(si.graph.has_edge(*iu, *iv));
    }
  }
}

TEST_CASE("ESI: phi=1 gives the full graph back; cliques stay cliques") {
  DirectedGraph g = testutil::random_graph(70, 0.07, 8, /*ensure_min_degree=*/true);
  SampleResult s = sample_graph(g, {SampleMethod::ESI, 1.0, 0.7, false, 21});
  CHECK(s.graph.node_count() == g.node_count());
  CHECK(edge_set(s.graph) == edge_set(g));

  GraphBuilder cb;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) cb.add_edge(std::to_string(i), std::to_string(j));
  DirectedGraph clique = cb.build();
  SampleResult cs = sample_graph(clique, {SampleMethod::ESI, 0.5, 0.7, false, 5});
  uint32_t m = cs.graph.node_count();
  CHECK(m == cs.target_size);
  CHECK(cs.graph.edge_count() == static_cast<uint64_t>(m) * (m - 1));
}

TEST_CASE("same seed gives a bit-identical sample for every method") {
  DirectedGraph g = testutil::random_graph(80, 0.06, 17);
  for (auto method : {SampleMethod::VS, SampleMethod::ES, SampleMethod::FFS, SampleMethod::ESI}) {
    SampleSpec spec{method, 0.4, 0.7, false, 99};
    SampleResult a = sample_graph(g, spec);
    SampleResult b = sample_graph(g, spec);
    CHECK(edge_set(a.graph) == edge_set(b.graph));
    CHECK(a.graph.node_count() == b.graph.node_count());
  }
}

TEST_CASE("ks_distance: pinned examples and properties") {
  CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
  CHECK(ks_distance({0, 0, 0}, {1, 1, 1}) == doctest::Approx(1.0));
  CHECK(ks_distance({1, 2, 3, 4}, {1, 1, 2, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_distance({}, {1.0}), std::invalid_argument);

  Rng rng(5);
  std::vector<double> a, b;
  for (int i = 0; i < 200; ++i) a.push_back(rng.real01());
  for (int i = 0; i < 150; ++i) b.push_back(rng.real01() * 1.5);
  double dab = ks_distance(a, b), dba = ks_distance(b, a);
  CHECK(dab == doctest::Approx(dba));
  CHECK(dab >= 0.0);
  CHECK(dab <= 1.0);
}

TEST_CASE("evaluate_samplers: zero distance at phi=1 for induced-edge methods") {
  DirectedGraph g = testutil::random_graph(50, 0.08, 30, true);
  KsReport r = evaluate_samplers(g, {SampleMethod::VS, SampleMethod::ESI}, {1.0}, 5, 0.7, 7, 2);
  REQUIRE(r.cells.size() == 2);
  for (const auto& c : r.cells) {
    CHECK(c.mean_ks_degree == doctest::Approx(0.0));
    CHECK(c.mean_ks_clustering == doctest::Approx(0.0));
  }
}

TEST_CASE("evaluate_samplers: one row per (method, phi), deterministic") {
  DirectedGraph g = testutil::random_graph(60, 0.06, 31);
  std::vector<SampleMethod> methods{SampleMethod::VS, SampleMethod::ES, SampleMethod::FFS};
  std::vector<double> grid{0.2, 0.4};
  KsReport a = evaluate_samplers(g, methods, grid, 4, 0.7, 11, 1);
  KsReport b = evaluate_samplers(g, methods, grid, 4, 0.7, 11, 3);
  REQUIRE(a.cells.size() == 6);
  for (size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].mean_ks_degree == b.cells[i].mean_ks_degree);
    CHECK(a.cells[i].mean_ks_clustering == b.cells[i].mean_ks_clustering);
    CHECK(a.cells[i].mean_ks_degree >= 0.0);
    CHECK(a.cells[i].mean_ks_degree <= 1.0);
  }
}

TEST_CASE("stability: identical per-sample means give zero-width intervals") {
  std::array<double, kTriadClassCount> v{};
  v[3] = 0.25;
  v[35] = 0.75;
  auto rows = stability_from_means({v, v, v, v});
  for (int c = 0; c < kTriadClassCount; ++c) {
    CHECK(rows[c].mean == doctest::Approx(v[c]));
    CHECK(rows[c].ci_high - rows[c].ci_low == doctest::Approx(0.0));
  }
}

TEST_CASE("census_stability: 36 rows, CI width shrinks with n") {
  DirectedGraph g = testutil::random_graph(60, 0.08, 77, true);
  double widths[3];
  int i = 0;
  for (uint32_t n : {5u, 20u, 80u}) {
    auto rows = census_stability(g, 0.35, n, 0.7, false, 1, 5, 2);
    double w = 0.0;
    for (const auto& r : rows) w += r.ci_high - r.ci_low;
    widths[i++] = w;
  }
  CHECK(widths[1] < widths[0]);
  CHECK(widths[2] < widths[1]);
}

TEST_CASE("invalid sampling parameters are rejected") {
  DirectedGraph g = testutil::random_graph(20, 0.2, 1);
  CHECK_THROWS_AS(sample_graph(g, {SampleMethod::VS, 0.0, 0.7, false, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sample_graph(g, {SampleMethod::VS, 1.5, 0.7, false, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sample_graph(g, {SampleMethod::FFS, 0.5, 1.0, false, 1}), std::invalid_argument);

  GraphBuilder b;
  b.add_node("lonely");
  b.add_node("also");
  DirectedGraph edgeless = b.build();
  CHECK_THROWS_AS(sample_graph(edgeless, {SampleMethod::ES, 0.5, 0.7, false, 1}),
                  std::invalid_argument);

  CHECK_THROWS_AS(evaluate_samplers(g, {}, {0.5}, 3, 0.7, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(census_stability(g, 0.5, 1, 0.7, false, 1, 1, 1), std::invalid_argument);
}
