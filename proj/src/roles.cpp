#include "roles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace trc {

namespace {

// distance of each row to its cluster's center, either in the embedded space
// (centroids as clustered) or in census space (center = member mean census)
std::vector<double> member_distances(const Clustering& clustering, const Embedding& embedding,
                                     const CensusMatrix& census, bool census_space) {
  size_t n = clustering.assignments.size();
  std::vector<double> dist(n, 0.0);
  if (!census_space) {
    for (size_t i = 0; i < n; ++i)
      dist[i] = (embedding.coords.row(static_cast<Eigen::Index>(i)) -
                 clustering.centroids.row(clustering.assignments[i]))
                    .norm();
    return dist;
  }
  Eigen::MatrixXd data = census_as_matrix(census);
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(clustering.k, data.cols());
  std::vector<uint64_t> counts(clustering.k, 0);
  for (size_t i = 0; i < n; ++i) {
    centers.row(clustering.assignments[i]) += data.row(static_cast<Eigen::Index>(i));
    counts[clustering.assignments[i]]++;
  }
  for (uint32_t c = 0; c < clustering.k; ++c)
    if (counts[c] > 0) centers.row(c) /= static_cast<double>(counts[c]);
  for (size_t i = 0; i < n; ++i)
    dist[i] = (data.row(static_cast<Eigen::Index>(i)) - centers.row(clustering.assignments[i])).norm();
  return dist;
}

std::vector<NodeId> structure_node_order(const EgoNetwork& net, const DirectedGraph& g) {
  // ego first, then alters by external id
  std::vector<NodeId> order(net.alters);
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return g.name(a) < g.name(b); });
  order.insert(order.begin(), net.ego);
  return order;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<RoleProfile> extract_roles(const Clustering& clustering, const Embedding& embedding,
                                       const CensusMatrix& census, const DirectedGraph& g,
                                       int radius, bool census_space) {
  size_t n = clustering.assignments.size();
  if (n == 0) throw std::invalid_argument("extract_roles: empty clustering");
  if (embedding.ids.size() != n || census.ego_ids.size() != n || embedding.ids != census.ego_ids)
    throw std::invalid_argument("extract_roles: clustering, embedding and census rows are misaligned");

  std::vector<double> dist = member_distances(clustering, embedding, census, census_space);

  std::vector<RoleProfile> profiles(clustering.k);
  std::vector<int64_t> central(clustering.k, -1);
  for (size_t i = 0; i < n; ++i) {
    uint32_t c = clustering.assignments[i];
    profiles[c].member_count++;
    if (central[c] < 0 || dist[i] < dist[static_cast<size_t>(central[c])])
      central[c] = static_cast<int64_t>(i);  // ties keep the smaller row (ego id order)
  }

  for (uint32_t c = 0; c < clustering.k; ++c) {
    RoleProfile& p = profiles[c];
    p.cluster = c;
    p.proportion = static_cast<double>(p.member_count) / static_cast<double>(n);
    if (central[c] < 0) throw std::runtime_error("extract_roles: empty cluster " + std::to_string(c));
    size_t row = static_cast<size_t>(central[c]);
    p.central_user = embedding.ids[row];
    p.central_distance = dist[row];
    auto node = g.find(p.central_user);
    if (!node)
      throw NotFoundError("extract_roles: central user " + p.central_user + " not in graph");
    p.central_structure = g.ego_network(*node, radius);
  }

  std::sort(profiles.begin(), profiles.end(), [](const RoleProfile& a, const RoleProfile& b) {
    if (a.proportion != b.proportion) return a.proportion > b.proportion;
    return a.cluster < b.cluster;
  });
  for (uint32_t r = 0; r < profiles.size(); ++r) profiles[r].role_id = r;
  return profiles;
}

void export_structure_dot(const RoleProfile& p, const DirectedGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  const EgoNetwork& net = p.central_structure;
  f << "digraph central_structure {\n";
  for (NodeId v : structure_node_order(net, g)) {
    f << "  \"" << g.name(v) << '"';
    if (v == net.ego) f << " [role=\"ego\"]";
    f << ";\n";
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [u, v] : net.edges) edges.emplace_back(g.name(u), g.name(v));
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) f << "  \"" << a << "\" -> \"" << b << "\";\n";
  f << "}\n";
  if (!f) throw IoError("write failed: " + path);
}

void export_structure_graphml(const RoleProfile& p, const DirectedGraph& g,
                              const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  const EgoNetwork& net = p.central_structure;
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
    << "  <key id=\"role\" for=\"node\" attr.name=\"role\" attr.type=\"string\"/>\n"
    << "  <graph id=\"central_structure\" edgedefault=\"directed\">\n";
  for (NodeId v : structure_node_order(net, g)) {
    f << "    <node id=\"" << xml_escape(g.name(v)) << '"';
    if (v == net.ego)
      f << ">\n      <data key=\"role\">ego</data>\n    </node>\n";
    else
      f << "/>\n";
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [u, v] : net.edges) edges.emplace_back(g.name(u), g.name(v));
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges)
    f << "    <edge source=\"" << xml_escape(a) << "\" target=\"" << xml_escape(b) << "\"/>\n";
  f << "  </graph>\n</graphml>\n";
  if (!f) throw IoError("write failed: " + path);
}

void save_membership_csv(const std::vector<RoleProfile>& profiles, const Clustering& clustering,
                         const Embedding& embedding, const CensusMatrix& census, bool census_space,
                         const std::string& path) {
  std::vector<uint32_t> cluster_to_role(profiles.size());
  for (const auto& p : profiles) cluster_to_role[p.cluster] = p.role_id;
  std::vector<double> dist = member_distances(clustering, embedding, census, census_space);

  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id,role_id,distance\n";
  char buf[48];
  for (size_t i = 0; i < embedding.ids.size(); ++i) {
    std::snprintf(buf, sizeof buf, ",%u,%.9f\n", cluster_to_role[clustering.assignments[i]],
                  dist[i]);
    f << embedding.ids[i] << buf;
  }
}

nlohmann::ordered_json role_report(const std::vector<RoleProfile>& profiles,
                                   const KSweepResult& sweep,
                                   const nlohmann::ordered_json& provenance,
                                   const std::vector<std::vector<std::string>>& structure_files) {
  if (profiles.empty()) throw std::invalid_argument("role_report: no profiles");

  nlohmann::ordered_json j;
  j["chosen_k"] = sweep.chosen_k;
  for (const auto& e : sweep.entries) {
    if (e.k == sweep.chosen_k) {
      j["mean_silhouette"] = e.mean_silhouette;
      j["best_silhouette"] = e.best_silhouette;
    }
  }
  // interpretation guide, reported but never enforced
  j["silhouette_scale"] = {{"superior", "> 0.7"}, {"reasonable", "0.5 - 0.7"}};
  j["silhouette_kind"] = "centroid";
  j["restarts"] = sweep.restarts;

  nlohmann::ordered_json roles = nlohmann::ordered_json::array();
  for (size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    nlohmann::ordered_json r;
    r["role_id"] = p.role_id;
    r["member_count"] = p.member_count;
    r["proportion"] = p.proportion;
    r["central_user"] = p.central_user;
    r["central_distance"] = p.central_distance;
    r["structure_nodes"] = p.central_structure.alters.size() + 1;
    r["structure_edges"] = p.central_structure.edges.size();
    if (i < structure_files.size()) r["structure_files"] = structure_files[i];
    roles.push_back(r);
  }
  j["roles"] = roles;
  j["provenance"] = provenance;
  return j;
}

}  // namespace trc
