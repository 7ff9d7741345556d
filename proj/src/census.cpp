#include "census.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "errors.hpp"
#include "parallel.hpp"

namespace trc {

namespace {

using Config = std::tuple<uint8_t, uint8_t, uint8_t>;  // (ego_a1, ego_a2, a1_a2)

constexpr uint8_t swap_alter_dyad(uint8_t t) {
  if (t == 1) return 2;
  if (t == 2) return 1;
  return t;
}

constexpr Config swapped(Config c) {
  return {std::get<1>(c), std::get<0>(c), swap_alter_dyad(std::get<2>(c))};
}

constexpr Config canonical(Config c) { return std::min(c, swapped(c)); }

struct ClassTables {
  std::array<int, 64> config_to_class;
  std::array<TriadClass, kTriadClassCount> classes;
};

const ClassTables& tables() {
  static const ClassTables t = [] {
    std::vector<Config> canon;
    for (uint8_t s1 = 0; s1 < 4; ++s1)
      for (uint8_t s2 = 0; s2 < 4; ++s2)
        for (uint8_t aa = 0; aa < 4; ++aa) canon.push_back(canonical({s1, s2, aa}));
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    ClassTables t;
    for (uint8_t s1 = 0; s1 < 4; ++s1)
      for (uint8_t s2 = 0; s2 < 4; ++s2)
        for (uint8_t aa = 0; aa < 4; ++aa) {
          Config c = canonical({s1, s2, aa});
          int rank = static_cast<int>(std::lower_bound(canon.begin(), canon.end(), c) - canon.begin());
          t.config_to_class[(s1 << 4) | (s2 << 2) | aa] = rank;
        }
    for (size_t i = 0; i < canon.size(); ++i)
      t.classes[i] = {static_cast<EgoDyad>(std::get<0>(canon[i])),
                      static_cast<EgoDyad>(std::get<1>(canon[i])),
                      static_cast<AlterDyad>(std::get<2>(canon[i]))};
    return t;
  }();
  return t;
}

// Census kernel shared by ego_census and census_matrix. `scratch_pos` must be
// node_count() entries of -1 and is restored before returning.
TriadCensus census_for(const DirectedGraph& g, NodeId ego, int radius,
                       std::vector<int32_t>& scratch_pos, size_t* alter_count_out = nullptr) {
  TriadCensus census;
  census.ego = ego;

  EgoNetwork net = g.ego_network(ego, radius);
  const auto& alters = net.alters;
  size_t m = alters.size();
  if (alter_count_out) *alter_count_out = m;
  if (m < 2) return census;

  for (size_t i = 0; i < m; ++i) scratch_pos[alters[i]] = static_cast<int32_t>(i);

  // ego-alter dyad per alter: bit0 = ego->alter, bit1 = alter->ego,
  // matching the EgoDyad encoding
  std::vector<uint8_t> ego_dyad(m, 0);
  for (NodeId v : g.out(ego)) {
    int32_t j = scratch_pos[v];
    if (j >= 0) ego_dyad[j] |= 1;
  }
  for (NodeId v : g.in(ego)) {
    int32_t j = scratch_pos[v];
    if (j >= 0) ego_dyad[j] |= 2;
  }

  std::array<uint64_t, kTriadClassCount> counts{};
  const auto& class_of = tables().config_to_class;

  // Directed adjacency among alters as a bit matrix when it fits; the fill is
  // one pass over the alters' out-lists and each pair costs two bit probes.
  constexpr size_t kBitMatrixLimit = 24576;  // 72 MB at the limit
  if (m <= kBitMatrixLimit) {
    size_t stride = (m + 63) / 64;
    std::vector<uint64_t> bits(stride * m, 0);
    for (size_t i = 0; i < m; ++i)
      for (NodeId w : g.out(alters[i])) {
        int32_t j = scratch_pos[w];
        if (j >= 0) bits[i * stride + static_cast<size_t>(j) / 64] |= 1ull << (j % 64);
      }
    auto bit = [&](size_t r, size_t c) {
      return (bits[r * stride + c / 64] >> (c % 64)) & 1ull;
    };
    for (size_t i = 0; i < m; ++i) {
      uint8_t s1 = ego_dyad[i];
      for (size_t j = i + 1; j < m; ++j) {
        uint8_t aa = static_cast<uint8_t>(bit(i, j) | (bit(j, i) << 1));
        counts[class_of[(s1 << 4) | (ego_dyad[j] << 2) | aa]]++;
      }
    }
  } else {
    for (size_t i = 0; i < m; ++i) {
      uint8_t s1 = ego_dyad[i];
      for (size_t j = i + 1; j < m; ++j) {
        uint8_t aa = static_cast<uint8_t>(static_cast<uint8_t>(g.has_edge(alters[i], alters[j])) |
                                          (static_cast<uint8_t>(g.has_edge(alters[j], alters[i])) << 1));
        counts[class_of[(s1 << 4) | (ego_dyad[j] << 2) | aa]]++;
      }
    }
  }

  for (size_t i = 0; i < m; ++i) scratch_pos[alters[i]] = -1;

  census.triad_pair_count = static_cast<uint64_t>(m) * (m - 1) / 2;
  for (int c = 0; c < kTriadClassCount; ++c)
    census.proportions[c] =
        static_cast<double>(counts[c]) / static_cast<double>(census.triad_pair_count);
  return census;
}

}  // namespace

int classify_triad(EgoDyad ego_a1, EgoDyad ego_a2, AlterDyad a1_a2) {
  return tables().config_to_class[(static_cast<uint8_t>(ego_a1) << 4) |
                                  (static_cast<uint8_t>(ego_a2) << 2) |
                                  static_cast<uint8_t>(a1_a2)];
}

const std::array<TriadClass, kTriadClassCount>& triad_classes() { return tables().classes; }

std::string dyad_name(EgoDyad d) {
  switch (d) {
    case EgoDyad::Null: return "null";
    case EgoDyad::EgoToAlter: return "ego->alter";
    case EgoDyad::AlterToEgo: return "alter->ego";
    case EgoDyad::Mutual: return "mutual";
  }
  return "?";
}

std::string dyad_name(AlterDyad d) {
  switch (d) {
    case AlterDyad::Null: return "null";
    case AlterDyad::Forward: return "a1->a2";
    case AlterDyad::Backward: return "a2->a1";
    case AlterDyad::Mutual: return "mutual";
  }
  return "?";
}

void save_triad_classes(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "# class_id  ego-a1  ego-a2  a1-a2 (canonical form; swapping the alters "
       "never changes the class)\n";
  const auto& cls = triad_classes();
  for (int i = 0; i < kTriadClassCount; ++i)
    f << i << '\t' << dyad_name(cls[i].ego_a1) << '\t' << dyad_name(cls[i].ego_a2) << '\t'
      << dyad_name(cls[i].a1_a2) << '\n';
}

TriadCensus ego_census(const DirectedGraph& g, NodeId ego, int radius) {
  if (ego >= g.node_count()) throw NotFoundError("unknown node id " + std::to_string(ego));
  std::vector<int32_t> scratch(g.node_count(), -1);
  return census_for(g, ego, radius, scratch);
}

CensusMatrix census_matrix(const DirectedGraph& g, int radius, uint32_t min_alters, int workers) {
  if (min_alters < 2) min_alters = 2;
  NodeId n = g.node_count();
  std::vector<TriadCensus> all(n);
  std::vector<size_t> alter_counts(n, 0);

  unsigned w = resolve_workers(workers);
  std::vector<std::vector<int32_t>> scratches(w, std::vector<int32_t>(n, -1));

  // egos are independent and rows are keyed by index, so worker count and
  // scheduling cannot change the result
  parallel_for_lanes(n, workers, [&](size_t i, unsigned lane) {
    all[i] = census_for(g, static_cast<NodeId>(i), radius, scratches[lane], &alter_counts[i]);
  });

  CensusMatrix m;
  for (NodeId u = 0; u < n; ++u) {
    if (alter_counts[u] >= min_alters) {
      m.ego_ids.push_back(g.name(u));
      m.rows.push_back(all[u].proportions);
      m.pair_counts.push_back(all[u].triad_pair_count);
    } else {
      m.excluded_egos.push_back(g.name(u));
    }
  }
  return m;
}

void save_census_csv(const CensusMatrix& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id,pairs";
  for (int c = 0; c < kTriadClassCount; ++c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, ",t%02d", c);
    f << buf;
  }
  f << '\n';
  char num[32];
  for (size_t r = 0; r < m.rows.size(); ++r) {
    f << m.ego_ids[r] << ',' << m.pair_counts[r];
    for (int c = 0; c < kTriadClassCount; ++c) {
      std::snprintf(num, sizeof num, ",%.9f", m.rows[r][c]);
      f << num;
    }
    f << '\n';
  }
  if (!f) throw IoError("write failed: " + path);
}

void save_excluded_csv(const CensusMatrix& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id\n";
  for (const auto& id : m.excluded_egos) f << id << '\n';
}

CensusMatrix load_census_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open census csv: " + path);
  CensusMatrix m;
  std::string line;
  if (!std::getline(f, line)) throw ParseError(path + ": empty file");
  uint64_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::istringstream ss(line);
      std::string field;
      if (!std::getline(ss, field, ',')) throw ParseError(path + ":" + std::to_string(lineno));
      m.ego_ids.push_back(field);
      if (!std::getline(ss, field, ','))
        throw ParseError(path + ":" + std::to_string(lineno) + ": missing pair count");
      m.pair_counts.push_back(std::stoull(field));
      std::array<double, kTriadClassCount> row{};
      for (int c = 0; c < kTriadClassCount; ++c) {
        if (!std::getline(ss, field, ','))
          throw ParseError(path + ":" + std::to_string(lineno) + ": expected 36 proportions");
        row[c] = std::stod(field);
      }
      m.rows.push_back(row);
    } catch (const std::logic_error&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed census row");
    }
  }
  return m;
}

}  // namespace trc
