#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"

namespace testutil {

// Erdos-Renyi-style directed G(n, p) with string ids "0".."n-1".
inline trc::DirectedGraph random_graph(uint32_t n, double p, uint64_t seed,
                                       bool ensure_min_degree = false) {
  std::mt19937_64 rng(seed);
  auto coin = [&] { return (rng() >> 11) * 0x1.0p-53 < p; };
  trc::GraphBuilder b;
  for (uint32_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = 0; v < n; ++v)
      if (u != v && coin()) b.add_edge_ids(u, v);
  if (ensure_min_degree)
    for (uint32_t u = 0; u < n; ++u) b.add_edge_ids(u, (u + 1) % n);  // cycle, no isolates
  return b.build();
}

inline std::string temp_dir(const std::string& tag) {
  std::string d = "/tmp/trc-test-" + tag + "-" + std::to_string(::getpid());
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace testutil
