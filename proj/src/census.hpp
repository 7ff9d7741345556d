#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"

namespace trc {

// Dyad state between the ego and an alter.
enum class EgoDyad : uint8_t { Null = 0, EgoToAlter = 1, AlterToEgo = 2, Mutual = 3 };

// Dyad state between the two alters of an ordered pair (first, second);
// Forward = first -> second only.
enum class AlterDyad : uint8_t { Null = 0, Forward = 1, Backward = 2, Mutual = 3 };

inline constexpr int kTriadClassCount = 36;

// The canonical representative of a triad class: the lexicographically
// smaller of (ego_a1, ego_a2, a1_a2) and its alter-swapped twin
// (ego_a2, ego_a1, a1_a2 with Forward/Backward exchanged).
struct TriadClass {
  EgoDyad ego_a1;
  EgoDyad ego_a2;
  AlterDyad a1_a2;
};

// Class id in [0, 36): the rank of the canonical form among all canonical
// forms in lexicographic order. Invariant under swapping the two alters.
int classify_triad(EgoDyad ego_a1, EgoDyad ego_a2, AlterDyad a1_a2);

const std::array<TriadClass, kTriadClassCount>& triad_classes();

std::string dyad_name(EgoDyad d);
std::string dyad_name(AlterDyad d);

// Writes the id -> canonical form table (one line per class).
void save_triad_classes(const std::string& path);

struct TriadCensus {
  NodeId ego = 0;
  std::array<double, kTriadClassCount> proportions{};
  uint64_t triad_pair_count = 0;
};

// One census row per included ego, keyed by external id so downstream stages
// need no reference to the graph. Egos with fewer than min_alters alters are
// excluded (a zero vector is not a proportion distribution) and listed apart.
struct CensusMatrix {
  std::vector<std::string> ego_ids;
  std::vector<std::array<double, kTriadClassCount>> rows;
  std::vector<uint64_t> pair_counts;
  std::vector<std::string> excluded_egos;
};

TriadCensus ego_census(const DirectedGraph& g, NodeId ego, int radius);

CensusMatrix census_matrix(const DirectedGraph& g, int radius, uint32_t min_alters = 2,
                           int workers = 0);

// CSV: header `ego_id,pairs,t00..t35`, proportions with 9 decimal digits.
void save_census_csv(const CensusMatrix& m, const std::string& path);
void save_excluded_csv(const CensusMatrix& m, const std::string& path);
CensusMatrix load_census_csv(const std::string& path);

}  // namespace trc
