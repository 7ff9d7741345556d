#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cluster.hpp"
#include "graph.hpp"

namespace trc {

struct RoleProfile {
  uint32_t role_id = 0;  // rank by descending member proportion
  uint32_t cluster = 0;  // original cluster index
  uint32_t member_count = 0;
  double proportion = 0.0;
  std::string central_user;
  double central_distance = 0.0;
  EgoNetwork central_structure;
};

// One profile per cluster, ordered by descending proportion. The central user
// is the member nearest its centroid; by default distances live in the
// clustered (embedded) space, with census space available for comparison.
std::vector<RoleProfile> extract_roles(const Clustering& clustering, const Embedding& embedding,
                                       const CensusMatrix& census, const DirectedGraph& g,
                                       int radius, bool census_space = false);

// Central ego-network with the ego carrying the attribute role="ego";
// deterministic node and edge order.
void export_structure_dot(const RoleProfile& p, const DirectedGraph& g, const std::string& path);
void export_structure_graphml(const RoleProfile& p, const DirectedGraph& g,
                              const std::string& path);

// ego_id,role_id,distance over all clustered egos
void save_membership_csv(const std::vector<RoleProfile>& profiles, const Clustering& clustering,
                         const Embedding& embedding, const CensusMatrix& census, bool census_space,
                         const std::string& path);

nlohmann::ordered_json role_report(const std::vector<RoleProfile>& profiles,
                                   const KSweepResult& sweep,
                                   const nlohmann::ordered_json& provenance,
                                   const std::vector<std::vector<std::string>>& structure_files);

}  // namespace trc
