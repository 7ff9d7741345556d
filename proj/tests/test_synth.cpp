#include <doctest.h>

#include <map>
#include <set>

#include "census.hpp"
#include "cluster.hpp"
#include "helpers.hpp"
#include "pca.hpp"
#include "powerlaw.hpp"
#include "synth.hpp"

using namespace trc;

namespace {

std::set<std::pair<std::string, std::string>> edge_set(const DirectedGraph& g) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& [u, v] : g.edges()) s.insert({g.name(u), g.name(v)});
  return s;
}

}  // namespace

TEST_CASE("broker between two 4-cliques: census mass on exactly two classes") {
  PlantedRoleSpec spec;
  spec.brokers = 1;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  DirectedGraph g = generate_planted(spec).graph;

  TriadCensus c = ego_census(g, *g.find("B0"), 1);
  // 6 alters: 6 within-clique pairs all-mutual, 9 cross-clique pairs untied
  CHECK(c.triad_pair_count == 15);
  int open = classify_triad(EgoDyad::Mutual, EgoDyad::Mutual, AlterDyad::Null);
  int closed = classify_triad(EgoDyad::Mutual, EgoDyad::Mutual, AlterDyad::Mutual);
  CHECK(c.proportions[open] == doctest::Approx(9.0 / 15.0));
  CHECK(c.proportions[closed] == doctest::Approx(6.0 / 15.0));
  for (int i = 0; i < kTriadClassCount; ++i)
    if (i != open && i != closed) CHECK(c.proportions[i] == 0.0);
}

TEST_CASE("pure clique member: all census mass on the all-mutual class") {
  PlantedRoleSpec spec;
  spec.standalone_cliques = 1;
  spec.clique_size = 5;
  DirectedGraph g = generate_planted(spec).graph;
  TriadCensus c = ego_census(g, *g.find("C0"), 1);
  CHECK(c.proportions[classify_triad(EgoDyad::Mutual, EgoDyad::Mutual, AlterDyad::Mutual)] ==
        doctest::Approx(1.0));
}

TEST_CASE("broker-clique members are structurally pure clique members too") {
  PlantedRoleSpec spec;
  spec.brokers = 1;
  spec.cliques_per_broker = 3;
  spec.clique_size = 4;
  DirectedGraph g = generate_planted(spec).graph;
  TriadCensus c = ego_census(g, *g.find("C0"), 1);
  CHECK(c.proportions[classify_triad(EgoDyad::Mutual, EgoDyad::Mutual, AlterDyad::Mutual)] ==
        doctest::Approx(1.0));
}

TEST_CASE("spokes: hub in-tie plus mutual buddy, one census class") {
  PlantedRoleSpec spec;
  spec.brokers = 1;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  spec.spokes_per_broker = 4;
  PlantedGraph pg = generate_planted(spec);
  const DirectedGraph& g = pg.graph;

  int expected = classify_triad(EgoDyad::AlterToEgo, EgoDyad::Mutual, AlterDyad::Forward);
  for (const auto& [id, role] : pg.truth) {
    if (role != PlantedRole::Spoke) continue;
    TriadCensus c = ego_census(g, *g.find(id), 1);
    CHECK(c.triad_pair_count == 1);
    CHECK(c.proportions[expected] == doctest::Approx(1.0));
  }
}

TEST_CASE("node accounting and full labeling") {
  PlantedRoleSpec spec;
  spec.brokers = 2;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  spec.standalone_cliques = 3;
  spec.spokes_per_broker = 4;
  PlantedGraph pg = generate_planted(spec);
  // 2 brokers + 2*2*3 broker-clique members + 3*4 standalone members + 2*4 spokes
  uint32_t expected = 2 + 12 + 12 + 8;
  CHECK(pg.graph.node_count() == expected);
  CHECK(pg.truth.size() == expected);

  std::map<PlantedRole, int> counts;
  for (const auto& [id, role] : pg.truth) counts[role]++;
  CHECK(counts[PlantedRole::Broker] == 2);
  CHECK(counts[PlantedRole::CliqueMember] == 24);
  CHECK(counts[PlantedRole::Spoke] == 8);
}

TEST_CASE("rewiring preserves edge count and degree sequences") {
  PlantedRoleSpec spec;
  spec.brokers = 6;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  spec.spokes_per_broker = 4;
  spec.standalone_cliques = 4;
  PlantedGraph base = generate_planted(spec);
  spec.epsilon = 0.3;
  spec.seed = 5;
  PlantedGraph noisy = generate_planted(spec);

  CHECK(noisy.graph.edge_count() == base.graph.edge_count());
  auto degree_multiset = [](const DirectedGraph& g, bool in) {
    std::multiset<std::pair<std::string, uint32_t>> m;
    for (NodeId u = 0; u < g.node_count(); ++u)
      m.insert({g.name(u), in ? g.in_degree(u) : g.out_degree(u)});
    return m;
  };
  CHECK(degree_multiset(noisy.graph, true) == degree_multiset(base.graph, true));
  CHECK(degree_multiset(noisy.graph, false) == degree_multiset(base.graph, false));
  CHECK(edge_set(noisy.graph) != edge_set(base.graph));
}

TEST_CASE("same seed reproduces the planted graph exactly") {
  PlantedRoleSpec spec;
  spec.brokers = 3;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  spec.spokes_per_broker = 2;
  spec.epsilon = 0.1;
  spec.seed = 9;
  PlantedGraph a = generate_planted(spec);
  PlantedGraph b = generate_planted(spec);
  CHECK(edge_set(a.graph) == edge_set(b.graph));
}

TEST_CASE("infeasible planted specs are rejected") {
  PlantedRoleSpec spec;
  spec.standalone_cliques = 1;
  spec.clique_size = 2;
  CHECK_THROWS_AS(generate_planted(spec), std::invalid_argument);
  PlantedRoleSpec none;
  CHECK_THROWS_AS(generate_planted(none), std::invalid_argument);
}

TEST_CASE("truth csv round trip") {
  PlantedRoleSpec spec;
  spec.brokers = 2;
  spec.cliques_per_broker = 2;
  spec.clique_size = 4;
  spec.spokes_per_broker = 2;
  PlantedGraph pg = generate_planted(spec);
  std::string path = testutil::temp_dir("synth") + "/truth.csv";
  save_truth_csv(pg, path);
  auto loaded = load_truth_csv(path);
  CHECK(loaded == pg.truth);
}

TEST_CASE("generate_powerlaw: recovery, determinism, validation") {
  DirectedGraph g = generate_powerlaw(50000, 2.5, 3);
  CHECK(g.node_count() == 50000);
  PowerLawFit fit = fit_power_law(g.out_degrees());
  CHECK(fit.alpha > 2.4);
  CHECK(fit.alpha < 2.6);

  DirectedGraph h = generate_powerlaw(500, 2.2, 8);
  DirectedGraph h2 = generate_powerlaw(500, 2.2, 8);
  CHECK(edge_set(h) == edge_set(h2));

  CHECK_THROWS_AS(generate_powerlaw(50, 2.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_powerlaw(5000, 1.0, 1), std::invalid_argument);
}

TEST_CASE("purity degrades monotonically in the rewiring noise") {
  // fixed k=3 over census -> PCA -> k-means, averaged over 5 seeds per noise
  // level
  double mean_purity[4];
  int level = 0;
  for (double eps : {0.0, 0.02, 0.05, 0.1}) {
    double acc = 0.0;
    for (uint64_t s = 0; s < 5; ++s) {
      PlantedRoleSpec spec;
      spec.brokers = 12;
      spec.cliques_per_broker = 4;
      spec.clique_size = 5;
      spec.spokes_per_broker = 2;
      spec.epsilon = eps;
      spec.seed = 40 + s;
      PlantedGraph pg = generate_planted(spec);
      CensusMatrix m = census_matrix(pg.graph, 1);
      PcaModel model = pca_fit(m);
      Embedding e = pca_transform(model, m, choose_dimensions(model, 0.85));
      Clustering c = kmeans(e.coords, 3, 7 + s);
      acc += cluster_purity(m.ego_ids, c.assignments, 3, pg.truth);
    }
    mean_purity[level++] = acc / 5.0;
  }
  CHECK(mean_purity[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(mean_purity[i] <= mean_purity[i - 1] + 0.01);
}

TEST_CASE("cluster purity") {
  std::vector<std::string> ids{"a", "b", "c", "d", "e", "f"};
  std::vector<std::pair<std::string, PlantedRole>> truth{
      {"a", PlantedRole::Broker},       {"b", PlantedRole::Broker},
      {"c", PlantedRole::CliqueMember}, {"d", PlantedRole::CliqueMember},
      {"e", PlantedRole::Spoke},        {"f", PlantedRole::Spoke}};
  CHECK(cluster_purity(ids, {0, 0, 1, 1, 2, 2}, 3, truth) == doctest::Approx(1.0));
  CHECK(cluster_purity(ids, {0, 0, 1, 1, 1, 1}, 2, truth) == doctest::Approx(4.0 / 6.0));
  CHECK(cluster_purity(ids, {0, 1, 0, 1, 0, 1}, 2, truth) == doctest::Approx(2.0 / 6.0));
}
