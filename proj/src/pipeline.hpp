#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sampling.hpp"

namespace trc {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string input;
  int radius = 1;
  uint64_t seed = 0;
  int workers = 0;  // execution knob only; never written into artifacts

  char delimiter = '\0';
  bool has_header = false;

  SampleMethod method = SampleMethod::FFS;
  double phi = 0.35;
  double ffs_p = 0.7;
  bool induce = false;

  uint32_t min_alters = 2;
  double pca_threshold = 0.85;

  uint32_t k_min = 2;
  uint32_t k_max = 9;
  uint32_t restarts = 50;

  uint32_t bootstraps = 100;
  bool census_space = false;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

// Stage functions share one contract: read the documented inputs from
// cfg.input / out_dir, write the documented artifacts into out_dir. The
// pipeline drives the same functions through the same files, so stage-wise
// runs and pipeline runs produce identical artifacts.
void stage_stats(const RunConfig& cfg, const std::string& out_dir);
void stage_sample(const RunConfig& cfg, const std::string& out_dir);
void stage_census(const RunConfig& cfg, const std::string& out_dir);
void stage_reduce(const RunConfig& cfg, const std::string& out_dir);
void stage_cluster(const RunConfig& cfg, const std::string& out_dir);
void stage_roles(const RunConfig& cfg, const std::string& out_dir);

void stage_sample_eval(const RunConfig& cfg, const std::vector<SampleMethod>& methods,
                       const std::vector<double>& phi_grid, uint32_t reps, uint32_t stability_n,
                       const std::string& out_dir);
void stage_fit_powerlaw(const RunConfig& cfg, const std::string& which, const std::string& out_dir);

// load -> stats -> sample -> census -> reduce -> cluster -> roles, plus
// figures.txt and manifest.json. Any stage error aborts with the stage name;
// artifacts written so far are retained.
void run_pipeline(const RunConfig& cfg, const std::string& out_dir);

uint64_t fnv1a64_file(const std::string& path);

}  // namespace trc
