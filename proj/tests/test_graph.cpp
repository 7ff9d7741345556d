#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "errors.hpp"
#include "graph.hpp"
#include "helpers.hpp"

using namespace trc;

namespace {

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = testutil::temp_dir("graph") + "/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::set<std::pair<std::string, std::string>> edge_set(const DirectedGraph& g) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& [u, v] : g.edges()) s.insert({g.name(u), g.name(v)});
  return s;
}

}  // namespace

TEST_CASE("load: duplicates collapse, mutual dyads are two edges") {
  auto path = write_file("dup.txt", "a b\nb a\na b\n");
  LoadStats stats;
  DirectedGraph g = load_edge_list(path, {}, &stats);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(stats.duplicates_dropped == 1);
}

TEST_CASE("load: self loops dropped") {
  auto path = write_file("self.txt", "a a\n");
  LoadStats stats;
  DirectedGraph g = load_edge_list(path, {}, &stats);
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(stats.self_loops_dropped == 1);
}

TEST_CASE("load: comments, extra fields, header, custom delimiter") {
  auto path = write_file("fancy.csv", "src,dst,ts\n# comment\nx,y,123\ny,z,456\n");
  LoadOptions opts;
  opts.delimiter = ',';
  opts.has_header = true;
  DirectedGraph g = load_edge_list(path, opts);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(*g.find("x"), *g.find("y")));
}

TEST_CASE("load: malformed row reports the line number") {
  auto path = write_file("bad.txt", "a b\nc\n");
  CHECK_THROWS_WITH_AS(load_edge_list(path), doctest::Contains(":2"), ParseError);
}

TEST_CASE("load: missing file and empty graph are errors") {
  CHECK_THROWS_AS(load_edge_list("/nonexistent/file.txt"), IoError);
  auto path = write_file("empty.txt", "# nothing\n");
  CHECK_THROWS_AS(load_edge_list(path), ParseError);
}

TEST_CASE("load: strict mode rejects duplicate rows") {
  auto path = write_file("strict.txt", "a b\na b\n");
  LoadOptions opts;
  opts.dedupe = false;
  CHECK_THROWS_AS(load_edge_list(path, opts), ParseError);
}

TEST_CASE("save/load round trip preserves the edge set") {
  DirectedGraph g = testutil::random_graph(50, 0.07, 42);
  std::string path = testutil::temp_dir("graph") + "/rt.edges";
  g.save_edge_list(path);
  DirectedGraph r = load_edge_list(path);
  CHECK(edge_set(g) == edge_set(r));
  CHECK(r.edge_count() == g.edge_count());
  // isolated nodes are not representable in an edge list
  CHECK(r.node_count() <= g.node_count());
}

TEST_CASE("ego_network: star, isolated node, 2-hop path") {
  GraphBuilder b;
  b.add_edge("e", "a");
  b.add_edge("e", "b");
  b.add_edge("e", "c");
  b.add_node("iso");
  DirectedGraph g = b.build();

  EgoNetwork star = g.ego_network(*g.find("e"), 1);
  CHECK(star.alters.size() == 3);
  CHECK(star.edges.size() == 3);

  EgoNetwork iso = g.ego_network(*g.find("iso"), 1);
  CHECK(iso.alters.empty());
  CHECK(iso.edges.empty());

  GraphBuilder pb;
  pb.add_edge("u", "v");
  pb.add_edge("v", "w");
  DirectedGraph pg = pb.build();
  EgoNetwork r1 = pg.ego_network(*pg.find("u"), 1);
  CHECK(r1.alters.size() == 1);
  EgoNetwork r2 = pg.ego_network(*pg.find("u"), 2);
  CHECK(r2.alters.size() == 2);  // w is at undirected distance 2
  CHECK(r2.edges.size() == 2);

  CHECK_THROWS_AS(g.ego_network(999, 1), NotFoundError);
}

TEST_CASE("ego_network: radius-1 alters are the undirected neighborhood and nest in radius 2") {
  DirectedGraph g = testutil::random_graph(60, 0.05, 9);
  for (NodeId v = 0; v < g.node_count(); v += 5) {
    EgoNetwork n1 = g.ego_network(v, 1);
    auto und = g.undirected(v);
    CHECK(n1.alters.size() == und.size());
    EgoNetwork n2 = g.ego_network(v, 2);
    CHECK(std::includes(n2.alters.begin(), n2.alters.end(), n1.alters.begin(), n1.alters.end()));
    // induced edges: every edge endpoint is a member
    std::set<NodeId> members(n2.alters.begin(), n2.alters.end());
    members.insert(v);
    for (const auto& [a, bb] : n2.edges) {
      CHECK(members.count(a) == 1);
      CHECK(members.count(bb) == 1);
      CHECK(g.has_edge(a, bb));
    }
  }
}

TEST_CASE("summary_stats: directed triangle has clustering 1") {
  GraphBuilder b;
  b.add_edge("a", "b");
  b.add_edge("b", "c");
  b.add_edge("c", "a");
  DirectedGraph g = b.build();
  SummaryStats s = g.summary_stats();
  CHECK(s.node_count == 3);
  CHECK(s.edge_count == 3);
  CHECK(s.mean_degree == doctest::Approx(2.0));
  CHECK(s.mean_clustering == doctest::Approx(1.0));
}

TEST_CASE("summary_stats: star has clustering 0, mean degree identity holds") {
  GraphBuilder b;
  b.add_edge("e", "a");
  b.add_edge("e", "b");
  b.add_edge("e", "c");
  DirectedGraph g = b.build();
  SummaryStats s = g.summary_stats();
  CHECK(s.mean_clustering == doctest::Approx(0.0));
  CHECK(s.mean_degree == doctest::Approx(2.0 * 3 / 4));

  DirectedGraph rg = testutil::random_graph(40, 0.1, 5);
  SummaryStats rs = rg.summary_stats();
  CHECK(rs.mean_degree ==
        doctest::Approx(2.0 * static_cast<double>(rs.edge_count) / rs.node_count));
  CHECK(rs.mean_clustering >= 0.0);
  CHECK(rs.mean_clustering <= 1.0);
}

TEST_CASE("degree sequences") {
  GraphBuilder b;
  b.add_edge("a", "b");
  b.add_edge("b", "c");
  b.add_edge("c", "a");
  DirectedGraph tri = b.build();
  CHECK(tri.in_degrees() == std::vector<uint32_t>{1, 1, 1});
  CHECK(tri.out_degrees() == std::vector<uint32_t>{1, 1, 1});

  GraphBuilder sb;
  sb.add_edge("e", "a");
  sb.add_edge("e", "b");
  sb.add_edge("e", "c");
  DirectedGraph star = sb.build();
  CHECK(star.out_degrees() == std::vector<uint32_t>{3, 0, 0, 0});
  CHECK(star.in_degrees() == std::vector<uint32_t>{0, 1, 1, 1});

  GraphBuilder eb;
  for (int i = 0; i < 5; ++i) eb.add_node(std::to_string(i));
  DirectedGraph empty5 = eb.build();
  CHECK(empty5.in_degrees() == std::vector<uint32_t>(5, 0));
  CHECK(empty5.out_degrees() == std::vector<uint32_t>(5, 0));
}

TEST_CASE("degree sums equal the edge count") {
  for (uint64_t seed : {1, 2, 3}) {
    DirectedGraph g = testutil::random_graph(45, 0.08, seed);
    uint64_t in = 0, out = 0;
    for (uint32_t d : g.in_degrees()) in += d;
    for (uint32_t d : g.out_degrees()) out += d;
    CHECK(in == g.edge_count());
    CHECK(out == g.edge_count());
  }
}

#ifdef TRC_DATA_DIR
TEST_CASE("bundled message network loads with its known shape") {
  std::string path = std::string(TRC_DATA_DIR) + "/uci_messages.txt";
  REQUIRE(std::filesystem::exists(path));
  DirectedGraph g = load_edge_list(path);
  CHECK(g.node_count() == 1899);
  CHECK(g.edge_count() == 20296);
  SummaryStats s = g.summary_stats();
  CHECK(s.mean_degree == doctest::Approx(2.0 * 20296 / 1899));
}
#endif

TEST_CASE("adjacency indexes are mutually consistent") {
  DirectedGraph g = testutil::random_graph(30, 0.15, 77);
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.out(u)) {
      auto in = g.in(v);
      CHECK(std::binary_search(in.begin(), in.end(), u));
      CHECK(g.has_undirected_edge(u, v));
      CHECK(g.has_undirected_edge(v, u));
    }
}
