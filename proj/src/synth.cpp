#include "synth.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"
#include "powerlaw.hpp"
#include "rng.hpp"

namespace trc {

namespace {

void add_mutual(std::vector<std::pair<std::string, std::string>>& edges, const std::string& a,
                const std::string& b) {
  edges.emplace_back(a, b);
  edges.emplace_back(b, a);
}

// degree-preserving double-edge swaps over the epsilon-selected subset
void rewire(std::vector<std::pair<std::string, std::string>>& edges, double epsilon, Rng& rng) {
  if (epsilon <= 0.0) return;
  std::set<std::pair<std::string, std::string>> present(edges.begin(), edges.end());

  std::vector<size_t> selected;
  for (size_t i = 0; i < edges.size(); ++i)
    if (rng.real01() < epsilon) selected.push_back(i);
  rng.shuffle(selected);

  for (size_t i = 0; i + 1 < selected.size(); i += 2) {
    auto& e1 = edges[selected[i]];
    auto& e2 = edges[selected[i + 1]];
    std::pair<std::string, std::string> n1{e1.first, e2.second};
    std::pair<std::string, std::string> n2{e2.first, e1.second};
    if (n1.first == n1.second || n2.first == n2.second) continue;
    if (present.count(n1) || present.count(n2)) continue;
    present.erase(e1);
    present.erase(e2);
    present.insert(n1);
    present.insert(n2);
    e1 = n1;
    e2 = n2;
  }
}

}  // namespace

std::string planted_role_name(PlantedRole r) {
  switch (r) {
    case PlantedRole::Broker: return "broker";
    case PlantedRole::CliqueMember: return "clique_member";
    case PlantedRole::Spoke: return "spoke";
  }
  return "?";
}

PlantedGraph generate_planted(const PlantedRoleSpec& spec) {
  if (spec.clique_size < 3) throw std::invalid_argument("planted spec: clique_size must be >= 3");
  if (spec.brokers > 0 && spec.cliques_per_broker < 2)
    throw std::invalid_argument("planted spec: brokers need at least 2 cliques");
  if (spec.brokers == 0 && spec.standalone_cliques == 0)
    throw std::invalid_argument("planted spec: nothing to generate");

  PlantedGraph out;
  std::vector<std::pair<std::string, std::string>> edges;
  uint32_t next_member = 0, next_spoke = 0;
  uint32_t spokes = spec.spokes_per_broker - spec.spokes_per_broker % 2;

  auto member_id = [&] { return "C" + std::to_string(next_member++); };

  for (uint32_t b = 0; b < spec.brokers; ++b) {
    std::string broker = "B" + std::to_string(b);
    out.truth.emplace_back(broker, PlantedRole::Broker);
    for (uint32_t q = 0; q < spec.cliques_per_broker; ++q) {
      std::vector<std::string> members;
      for (uint32_t v = 0; v + 1 < spec.clique_size; ++v) {
        members.push_back(member_id());
        out.truth.emplace_back(members.back(), PlantedRole::CliqueMember);
      }
      for (size_t i = 0; i < members.size(); ++i) {
        add_mutual(edges, broker, members[i]);
        for (size_t j = i + 1; j < members.size(); ++j) add_mutual(edges, members[i], members[j]);
      }
    }
    for (uint32_t s = 0; s < spokes; s += 2) {
      std::string s1 = "S" + std::to_string(next_spoke++);
      std::string s2 = "S" + std::to_string(next_spoke++);
      out.truth.emplace_back(s1, PlantedRole::Spoke);
      out.truth.emplace_back(s2, PlantedRole::Spoke);
      edges.emplace_back(broker, s1);
      edges.emplace_back(broker, s2);
      add_mutual(edges, s1, s2);
    }
  }

  for (uint32_t q = 0; q < spec.standalone_cliques; ++q) {
    std::vector<std::string> members;
    for (uint32_t v = 0; v < spec.clique_size; ++v) {
      members.push_back(member_id());
      out.truth.emplace_back(members.back(), PlantedRole::CliqueMember);
    }
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) add_mutual(edges, members[i], members[j]);
  }

  Rng rng(derive_seed(spec.seed, "planted-rewire"));
  rewire(edges, spec.epsilon, rng);

  GraphBuilder builder;
  for (const auto& [id, role] : out.truth) builder.add_node(id);
  for (const auto& [a, b] : edges) builder.add_edge(a, b);
  out.graph = builder.build();
  return out;
}

void save_truth_csv(const PlantedGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id,planted_role\n";
  for (const auto& [id, role] : g.truth) f << id << ',' << planted_role_name(role) << '\n';
}

std::vector<std::pair<std::string, PlantedRole>> load_truth_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open truth csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ParseError(path + ": empty file");
  std::vector<std::pair<std::string, PlantedRole>> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(path + ": malformed row: " + line);
    std::string name = line.substr(comma + 1);
    PlantedRole role;
    if (name == "broker") role = PlantedRole::Broker;
    else if (name == "clique_member") role = PlantedRole::CliqueMember;
    else if (name == "spoke") role = PlantedRole::Spoke;
    else throw ParseError(path + ": unknown role: " + name);
    out.emplace_back(line.substr(0, comma), role);
  }
  return out;
}

DirectedGraph generate_powerlaw(uint32_t n, double alpha, uint64_t seed) {
  if (!(alpha > 1.0)) throw std::invalid_argument("generate_powerlaw: alpha must be > 1");
  if (n < 100) throw std::invalid_argument("generate_powerlaw: n must be >= 100");

  Rng rng(derive_seed(seed, "powerlaw-graph"));
  DiscretePowerLawSampler draw(alpha, 1);

  std::vector<uint32_t> out_deg(n), in_deg(n);
  uint64_t out_sum = 0, in_sum = 0;
  for (uint32_t i = 0; i < n; ++i) {
    out_deg[i] = draw(rng.real01());
    in_deg[i] = draw(rng.real01());
    out_sum += out_deg[i];
    in_sum += in_deg[i];
  }
  // trim random stubs from the heavier side so the sums match
  while (out_sum > in_sum) {
    uint32_t i = static_cast<uint32_t>(rng.index(n));
    if (out_deg[i] > 1) {
      out_deg[i]--;
      out_sum--;
    }
  }
  while (in_sum > out_sum) {
    uint32_t i = static_cast<uint32_t>(rng.index(n));
    if (in_deg[i] > 1) {
      in_deg[i]--;
      in_sum--;
    }
  }

  std::vector<uint32_t> out_stubs, in_stubs;
  out_stubs.reserve(out_sum);
  in_stubs.reserve(in_sum);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t k = 0; k < out_deg[i]; ++k) out_stubs.push_back(i);
    for (uint32_t k = 0; k < in_deg[i]; ++k) in_stubs.push_back(i);
  }
  rng.shuffle(out_stubs);
  rng.shuffle(in_stubs);

  GraphBuilder b;
  for (uint32_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  for (size_t k = 0; k < out_stubs.size(); ++k)
    b.add_edge_ids(out_stubs[k], in_stubs[k]);
  return b.build();
}

double cluster_purity(const std::vector<std::string>& row_ids,
                      const std::vector<uint32_t>& assignments, uint32_t k,
                      const std::vector<std::pair<std::string, PlantedRole>>& truth) {
  if (row_ids.size() != assignments.size())
    throw std::invalid_argument("cluster_purity: size mismatch");
  std::unordered_map<std::string, PlantedRole> label(truth.begin(), truth.end());

  // per-cluster counts over the three roles
  std::vector<std::array<uint64_t, 3>> counts(k, {0, 0, 0});
  uint64_t labeled = 0;
  for (size_t i = 0; i < row_ids.size(); ++i) {
    if (assignments[i] >= k)
      throw std::invalid_argument("cluster_purity: assignment exceeds k");
    auto it = label.find(row_ids[i]);
    if (it == label.end()) continue;
    counts[assignments[i]][static_cast<int>(it->second)]++;
    ++labeled;
  }
  if (labeled == 0) throw std::invalid_argument("cluster_purity: no labeled rows");

  uint64_t majority = 0;
  for (uint32_t c = 0; c < k; ++c)
    majority += *std::max_element(counts[c].begin(), counts[c].end());
  return static_cast<double>(majority) / static_cast<double>(labeled);
}

}  // namespace trc
