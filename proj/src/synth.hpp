#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"

namespace trc {

enum class PlantedRole { Broker, CliqueMember, Spoke };

std::string planted_role_name(PlantedRole r);

// Planted-role generator. Three templates, one census point each at epsilon=0
// (radius 1):
//   broker       - mutual ties into `cliques_per_broker` otherwise-disconnected
//                  cliques of `clique_size` (broker included in each), plus
//                  out-ties to its spokes, making the broker the
//                  high-out-degree hub of the spoke template
//   clique member - inside one dense all-mutual clique (standalone or a
//                  broker's)
//   spoke        - a single tie from the hub (hub -> spoke) plus one mutual
//                  buddy tie to the adjacent spoke of the same hub; the buddy
//                  tie keeps spokes census-eligible at radius 1
// With epsilon > 0 each edge is independently eligible for a degree-preserving
// rewiring swap, keeping the edge count fixed.
struct PlantedRoleSpec {
  uint32_t brokers = 0;
  uint32_t cliques_per_broker = 2;
  uint32_t clique_size = 4;       // includes the broker for broker cliques
  uint32_t standalone_cliques = 0;
  uint32_t spokes_per_broker = 0;  // rounded down to an even count (buddy pairs)
  double epsilon = 0.0;
  uint64_t seed = 0;
};

struct PlantedGraph {
  DirectedGraph graph;
  std::vector<std::pair<std::string, PlantedRole>> truth;  // every node is labeled
};

PlantedGraph generate_planted(const PlantedRoleSpec& spec);

void save_truth_csv(const PlantedGraph& g, const std::string& path);
std::vector<std::pair<std::string, PlantedRole>> load_truth_csv(const std::string& path);

// Degree sequences drawn from the discrete power law (x_min = 1) and wired by
// a directed configuration model; self-loops and duplicate edges dropped.
DirectedGraph generate_powerlaw(uint32_t n, double alpha, uint64_t seed);

// Fraction of members whose planted role matches the majority planted role of
// their assigned cluster, over rows with a ground-truth label.
double cluster_purity(const std::vector<std::string>& row_ids,
                      const std::vector<uint32_t>& assignments, uint32_t k,
                      const std::vector<std::pair<std::string, PlantedRole>>& truth);

}  // namespace trc
