#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "census.hpp"
#include "graph.hpp"

namespace trc {

enum class SampleMethod { VS, ES, FFS, ESI };

std::string method_name(SampleMethod m);
SampleMethod parse_method(const std::string& name);

struct SampleSpec {
  SampleMethod method = SampleMethod::FFS;
  double phi = 0.35;
  double ffs_p = 0.7;
  bool induce_edges = false;  // FFS only: replace kept edges with the induced set
  uint64_t seed = 0;
};

struct SampleResult {
  DirectedGraph graph;  // external ids preserved
  SampleSpec spec;
  uint32_t target_size = 0;
  // ES/ESI can run out of edges before reaching the target; the partial
  // sample is returned and flagged
  bool exhausted = false;
};

SampleResult sample_graph(const DirectedGraph& g, const SampleSpec& spec);

// sup_x |ECDF_a(x) - ECDF_b(x)| over the union of support points.
double ks_distance(std::vector<double> a, std::vector<double> b);

struct KsCell {
  SampleMethod method;
  double phi;
  double mean_ks_degree;
  double mean_ks_clustering;
  uint32_t repetitions;
};

struct KsReport {
  std::vector<KsCell> cells;
};

// For each (method, phi): draws `repetitions` independent samples and reports
// the mean KS distance of the sample's total-degree and local-clustering
// distributions against the full graph's. Each repetition derives its RNG
// stream from (seed, method, phi, repetition), so results do not depend on
// scheduling.
KsReport evaluate_samplers(const DirectedGraph& g, const std::vector<SampleMethod>& methods,
                           const std::vector<double>& phi_grid, uint32_t repetitions,
                           double ffs_p, uint64_t seed, int workers);

void save_ks_report_csv(const KsReport& r, const std::string& path);

struct StabilityRow {
  int class_id;
  double mean;
  double ci_low;
  double ci_high;
};

// mean and normal-approximation 95% CI per class across per-sample mean
// census vectors
std::array<StabilityRow, kTriadClassCount> stability_from_means(
    const std::vector<std::array<double, kTriadClassCount>>& per_sample_means);

// Draws n FFS samples, computes each sample's across-ego mean census, and
// summarizes per class with mean and 95% CI.
std::array<StabilityRow, kTriadClassCount> census_stability(const DirectedGraph& g, double phi,
                                                            uint32_t n, double ffs_p, bool induce,
                                                            int radius, uint64_t seed, int workers);

void save_stability_csv(const std::array<StabilityRow, kTriadClassCount>& rows,
                        const std::string& path);

}  // namespace trc
