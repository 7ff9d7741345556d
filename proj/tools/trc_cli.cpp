// trc command-line front end. Links only the public C API (trc.h); all file
// formats and algorithms live behind the shared library.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trc.h"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string input;
  std::string out_dir = "trc-out";
  int64_t seed = -1;
  int workers = -1;
  int radius = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
  cmd->add_option("--input,-i", f.input, "edge list path (or set it in the config)");
  cmd->add_option("--out,-o", f.out_dir, "output directory");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  cmd->add_option("--radius", f.radius, "ego-network radius (1 or 2)");
}

// merged config: file (if given) -> command line overrides
nlohmann::json build_config(const CommonFlags& f) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!f.config_path.empty()) {
    std::FILE* fp = std::fopen(f.config_path.c_str(), "rb");
    if (!fp) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0) text.append(buf, n);
    std::fclose(fp);
    cfg = nlohmann::json::parse(text);
  }
  if (!f.input.empty()) cfg["input"] = f.input;
  if (f.seed >= 0) cfg["seed"] = static_cast<uint64_t>(f.seed);
  if (f.workers >= 0) cfg["workers"] = f.workers;
  if (f.radius >= 0) cfg["radius"] = f.radius;
  return cfg;
}

int run_status(trc_status s, const char* what) {
  if (s == TRC_OK) return 0;
  std::fprintf(stderr, "trc: %s failed (%s): %s\n", what, trc_status_name(s), trc_last_error());
  return 1;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "a:b:step" or comma list
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
      throw CLI::ValidationError("--phi-grid", "expected lo:hi:step");
    for (double p = lo; p <= hi + 1e-12; p += step) grid.push_back(p);
    return grid;
  }
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    grid.push_back(std::stod(spec.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return grid;
}

trc_sample_method parse_method_flag(const std::string& m) {
  if (m == "VS" || m == "vs") return TRC_SAMPLE_VS;
  if (m == "ES" || m == "es") return TRC_SAMPLE_ES;
  if (m == "FFS" || m == "ffs") return TRC_SAMPLE_FFS;
  if (m == "ESI" || m == "esi" || m == "ES-i") return TRC_SAMPLE_ESI;
  throw CLI::ValidationError("--method", "unknown method " + m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("trc ") + trc_version() +
               " - social role discovery via conditional triad censuses"};
  app.set_version_flag("--version", trc_version());
  app.require_subcommand(1);

  CommonFlags f;

  // pipeline
  auto* cmd_pipeline = app.add_subcommand("pipeline", "run the full analysis pipeline");
  add_common(cmd_pipeline, f);
  double phi = -1, ffs_p = -1, threshold = -1;
  std::string method;
  bool induce = false;
  uint32_t k_min = 0, k_max = 0, restarts = 0;
  cmd_pipeline->add_option("--method", method, "sampling method (VS|ES|FFS|ESI)");
  cmd_pipeline->add_option("--phi", phi, "sample fraction in (0,1]");
  cmd_pipeline->add_option("--ffs-p", ffs_p, "forward-burning parameter");
  cmd_pipeline->add_flag("--induce", induce, "induce edges after FFS");
  cmd_pipeline->add_option("--threshold", threshold, "PCA variance threshold");
  cmd_pipeline->add_option("--k-min", k_min, "smallest k in the sweep");
  cmd_pipeline->add_option("--k-max", k_max, "largest k in the sweep");
  cmd_pipeline->add_option("--restarts", restarts, "k-means restarts per k");

  // single stages
  auto* cmd_stats = app.add_subcommand("stats", "summary statistics and degree histograms");
  CommonFlags f_stats;
  add_common(cmd_stats, f_stats);

  auto* cmd_sample = app.add_subcommand("sample", "draw one sample of the graph");
  CommonFlags f_sample;
  add_common(cmd_sample, f_sample);
  std::string s_method;
  double s_phi = -1, s_ffs_p = -1;
  bool s_induce = false;
  cmd_sample->add_option("--method", s_method, "sampling method (VS|ES|FFS|ESI)");
  cmd_sample->add_option("--phi", s_phi, "sample fraction in (0,1]");
  cmd_sample->add_option("--ffs-p", s_ffs_p, "forward-burning parameter");
  cmd_sample->add_flag("--induce", s_induce, "induce edges after FFS");

  auto* cmd_eval = app.add_subcommand("sample-eval", "compare samplers by KS distance");
  CommonFlags f_eval;
  add_common(cmd_eval, f_eval);
  std::string methods_flag = "VS,ES,FFS,ESI";
  std::string phi_grid_flag = "0.05:0.50:0.05";
  uint32_t reps = 100, stability_n = 0;
  double e_phi = -1;
  cmd_eval->add_option("--methods", methods_flag, "comma list of methods");
  cmd_eval->add_option("--phi-grid", phi_grid_flag, "lo:hi:step or comma list");
  cmd_eval->add_option("--reps", reps, "samples per (method, phi) cell");
  cmd_eval->add_option("--stability-n", stability_n,
                       "also write census stability over this many FFS samples");
  cmd_eval->add_option("--phi", e_phi, "phi for the stability study");

  auto* cmd_census = app.add_subcommand("census", "conditional triad census of a saved sample");
  CommonFlags f_census;
  add_common(cmd_census, f_census);
  uint32_t min_alters = 0;
  cmd_census->add_option("--min-alters", min_alters, "exclude egos with fewer alters");

  auto* cmd_fit = app.add_subcommand("fit-powerlaw", "power-law fit of a degree distribution");
  CommonFlags f_fit;
  add_common(cmd_fit, f_fit);
  std::string which = "out";
  uint32_t bootstraps = 0;
  cmd_fit->add_option("--which", which, "in|out")->required();
  cmd_fit->add_option("--bootstraps", bootstraps, "goodness-of-fit bootstrap count");

  auto* cmd_reduce = app.add_subcommand("reduce", "PCA of the census matrix");
  CommonFlags f_reduce;
  add_common(cmd_reduce, f_reduce);
  double r_threshold = -1;
  cmd_reduce->add_option("--threshold", r_threshold, "variance threshold in (0,1)");

  auto* cmd_cluster = app.add_subcommand("cluster", "k-means sweep over the embedding");
  CommonFlags f_cluster;
  add_common(cmd_cluster, f_cluster);
  uint32_t c_kmin = 0, c_kmax = 0, c_restarts = 0;
  cmd_cluster->add_option("--k-min", c_kmin, "smallest k");
  cmd_cluster->add_option("--k-max", c_kmax, "largest k");
  cmd_cluster->add_option("--restarts", c_restarts, "restarts per k");

  auto* cmd_roles = app.add_subcommand("roles", "role profiles and central structures");
  CommonFlags f_roles;
  add_common(cmd_roles, f_roles);
  bool census_space = false;
  cmd_roles->add_flag("--census-space", census_space,
                      "measure central distance in census space");

  auto* cmd_synth = app.add_subcommand("synth", "generate synthetic graphs");
  std::string synth_kind, synth_out = "synth.edges", truth_out;
  uint32_t brokers = 0, cliques_per_broker = 2, clique_size = 4, standalone = 0, spokes = 0;
  uint32_t pl_n = 0;
  double pl_alpha = 2.5, epsilon = 0.0;
  int64_t synth_seed = 0;
  cmd_synth->add_option("kind", synth_kind, "planted|powerlaw")->required();
  cmd_synth->add_option("--out,-o", synth_out, "edge list to write");
  cmd_synth->add_option("--truth", truth_out, "ground-truth CSV (planted)");
  cmd_synth->add_option("--brokers", brokers, "broker egos");
  cmd_synth->add_option("--cliques-per-broker", cliques_per_broker, "cliques per broker");
  cmd_synth->add_option("--clique-size", clique_size, "clique size (including the broker)");
  cmd_synth->add_option("--standalone-cliques", standalone, "standalone cliques");
  cmd_synth->add_option("--spokes-per-broker", spokes, "spokes per broker (even)");
  cmd_synth->add_option("--epsilon", epsilon, "rewiring probability");
  cmd_synth->add_option("--n", pl_n, "nodes (powerlaw)");
  cmd_synth->add_option("--alpha", pl_alpha, "exponent (powerlaw)");
  cmd_synth->add_option("--seed", synth_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_synth) {
      trc_graph* g = nullptr;
      trc_status s;
      if (synth_kind == "planted") {
        trc_planted_spec spec;
        trc_planted_spec_init(&spec);
        spec.brokers = brokers;
        spec.cliques_per_broker = cliques_per_broker;
        spec.clique_size = clique_size;
        spec.standalone_cliques = standalone;
        spec.spokes_per_broker = spokes;
        spec.epsilon = epsilon;
        spec.seed = static_cast<uint64_t>(synth_seed);
        s = trc_synth_planted(&spec, truth_out.empty() ? nullptr : truth_out.c_str(), &g);
      } else if (synth_kind == "powerlaw") {
        s = trc_synth_powerlaw(pl_n, pl_alpha, static_cast<uint64_t>(synth_seed), &g);
      } else {
        std::fprintf(stderr, "trc: synth kind must be planted or powerlaw\n");
        return 1;
      }
      if (int rc = run_status(s, "synth")) return rc;
      s = trc_graph_save(g, synth_out.c_str());
      std::printf("synth: %u nodes, %llu edges -> %s\n", trc_graph_node_count(g),
                  static_cast<unsigned long long>(trc_graph_edge_count(g)), synth_out.c_str());
      trc_graph_free(g);
      return run_status(s, "synth save");
    }

    if (*cmd_pipeline) {
      nlohmann::json cfg = build_config(f);
      if (!method.empty()) cfg["sampling"]["method"] = method;
      if (phi > 0) cfg["sampling"]["phi"] = phi;
      if (ffs_p >= 0) cfg["sampling"]["ffs_p"] = ffs_p;
      if (induce) cfg["sampling"]["induce"] = true;
      if (threshold > 0) cfg["pca"]["threshold"] = threshold;
      if (k_min > 0) cfg["sweep"]["k_min"] = k_min;
      if (k_max > 0) cfg["sweep"]["k_max"] = k_max;
      if (restarts > 0) cfg["sweep"]["restarts"] = restarts;
      int rc = run_status(trc_pipeline_run(cfg.dump().c_str(), f.out_dir.c_str()), "pipeline");
      if (rc == 0) std::printf("pipeline: artifacts in %s (see report.json)\n", f.out_dir.c_str());
      return rc;
    }

    if (*cmd_stats)
      return run_status(trc_stage_run("stats", build_config(f_stats).dump().c_str(),
                                      f_stats.out_dir.c_str()),
                        "stats");

    if (*cmd_sample) {
      nlohmann::json cfg = build_config(f_sample);
      if (!s_method.empty()) cfg["sampling"]["method"] = s_method;
      if (s_phi > 0) cfg["sampling"]["phi"] = s_phi;
      if (s_ffs_p >= 0) cfg["sampling"]["ffs_p"] = s_ffs_p;
      if (s_induce) cfg["sampling"]["induce"] = true;
      return run_status(trc_stage_run("sample", cfg.dump().c_str(), f_sample.out_dir.c_str()),
                        "sample");
    }

    if (*cmd_eval) {
      nlohmann::json cfg = build_config(f_eval);
      if (e_phi > 0) cfg["sampling"]["phi"] = e_phi;
      std::vector<trc_sample_method> ms;
      for (const auto& tok : CLI::detail::split(methods_flag, ','))
        ms.push_back(parse_method_flag(tok));
      std::vector<double> grid = parse_grid(phi_grid_flag);
      return run_status(trc_stage_sample_eval(cfg.dump().c_str(), ms.data(), ms.size(),
                                              grid.data(), grid.size(), reps, stability_n,
                                              f_eval.out_dir.c_str()),
                        "sample-eval");
    }

    if (*cmd_census) {
      nlohmann::json cfg = build_config(f_census);
      if (min_alters > 0) cfg["census"]["min_alters"] = min_alters;
      return run_status(trc_stage_run("census", cfg.dump().c_str(), f_census.out_dir.c_str()),
                        "census");
    }

    if (*cmd_fit) {
      nlohmann::json cfg = build_config(f_fit);
      if (bootstraps > 0) cfg["powerlaw"]["bootstraps"] = bootstraps;
      return run_status(
          trc_stage_fit_powerlaw(cfg.dump().c_str(), which.c_str(), f_fit.out_dir.c_str()),
          "fit-powerlaw");
    }

    if (*cmd_reduce) {
      nlohmann::json cfg = build_config(f_reduce);
      if (r_threshold > 0) cfg["pca"]["threshold"] = r_threshold;
      return run_status(trc_stage_run("reduce", cfg.dump().c_str(), f_reduce.out_dir.c_str()),
                        "reduce");
    }

    if (*cmd_cluster) {
      nlohmann::json cfg = build_config(f_cluster);
      if (c_kmin > 0) cfg["sweep"]["k_min"] = c_kmin;
      if (c_kmax > 0) cfg["sweep"]["k_max"] = c_kmax;
      if (c_restarts > 0) cfg["sweep"]["restarts"] = c_restarts;
      return run_status(trc_stage_run("cluster", cfg.dump().c_str(), f_cluster.out_dir.c_str()),
                        "cluster");
    }

    if (*cmd_roles) {
      nlohmann::json cfg = build_config(f_roles);
      if (census_space) cfg["roles"]["census_space"] = true;
      return run_status(trc_stage_run("roles", cfg.dump().c_str(), f_roles.out_dir.c_str()),
                        "roles");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "trc: %s\n", e.what());
    return 1;
  }
  return 0;
}
