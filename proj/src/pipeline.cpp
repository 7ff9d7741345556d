#include "pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cluster.hpp"
#include "errors.hpp"
#include "pca.hpp"
#include "powerlaw.hpp"
#include "roles.hpp"
#include "rng.hpp"

namespace trc {

namespace fs = std::filesystem;

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

DirectedGraph load_input(const RunConfig& cfg) {
  LoadOptions opts;
  opts.delimiter = cfg.delimiter;
  opts.has_header = cfg.has_header;
  return load_edge_list(cfg.input, opts);
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << j.dump(2) << '\n';
}

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("missing artifact: " + path);
  nlohmann::ordered_json j;
  f >> j;
  return j;
}

void require_artifact(const std::string& path, const std::string& producer) {
  if (!fs::exists(path))
    throw IoError("missing artifact " + path + " (run the '" + producer + "' stage first)");
}

// sweep summary as persisted by the cluster stage; enough for the report
KSweepResult load_sweep_summary(const std::string& sweep_csv, const std::string& cluster_json) {
  KSweepResult sweep;
  auto meta = read_json(cluster_json);
  sweep.chosen_k = meta.at("chosen_k").get<uint32_t>();
  sweep.restarts = meta.at("restarts").get<uint32_t>();

  std::ifstream f(sweep_csv);
  if (!f) throw IoError("cannot open sweep csv: " + sweep_csv);
  std::string line;
  std::getline(f, line);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    KSweepEntry e;
    if (std::sscanf(line.c_str(), "%u,%lf,%lf", &e.k, &e.mean_silhouette, &e.best_silhouette) != 3)
      throw ParseError(sweep_csv + ": malformed row: " + line);
    sweep.entries.push_back(std::move(e));
  }
  return sweep;
}

Clustering clustering_from_files(const Embedding& emb, const std::string& clusters_csv) {
  auto rows = load_assignments_csv(clusters_csv);
  if (rows.size() != emb.ids.size())
    throw ParseError(clusters_csv + ": row count does not match the embedding");

  Clustering c;
  c.assignments.resize(rows.size());
  uint32_t k = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != emb.ids[i])
      throw ParseError(clusters_csv + ": ego ids misaligned with the embedding at row " +
                       std::to_string(i + 2));
    c.assignments[i] = rows[i].second;
    k = std::max(k, rows[i].second + 1);
  }
  c.k = k;

  // converged centroids are exactly the member means, recomputed in row order
  c.centroids = Eigen::MatrixXd::Zero(k, emb.coords.cols());
  std::vector<uint64_t> counts(k, 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    c.centroids.row(c.assignments[i]) += emb.coords.row(static_cast<Eigen::Index>(i));
    counts[c.assignments[i]]++;
  }
  for (uint32_t cl = 0; cl < k; ++cl)
    if (counts[cl] > 0) c.centroids.row(cl) /= static_cast<double>(counts[cl]);
  return c;
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.input = j.value("input", cfg.input);
  cfg.radius = j.value("radius", cfg.radius);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.workers = j.value("workers", cfg.workers);
  if (j.contains("load")) {
    const auto& l = j.at("load");
    std::string d = l.value("delimiter", std::string());
    cfg.delimiter = d.empty() ? '\0' : d[0];
    cfg.has_header = l.value("has_header", cfg.has_header);
  }
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    cfg.method = parse_method(s.value("method", std::string("FFS")));
    cfg.phi = s.value("phi", cfg.phi);
    cfg.ffs_p = s.value("ffs_p", cfg.ffs_p);
    cfg.induce = s.value("induce", cfg.induce);
  }
  if (j.contains("census")) cfg.min_alters = j.at("census").value("min_alters", cfg.min_alters);
  if (j.contains("pca")) cfg.pca_threshold = j.at("pca").value("threshold", cfg.pca_threshold);
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    cfg.k_min = s.value("k_min", cfg.k_min);
    cfg.k_max = s.value("k_max", cfg.k_max);
    cfg.restarts = s.value("restarts", cfg.restarts);
  }
  if (j.contains("powerlaw")) cfg.bootstraps = j.at("powerlaw").value("bootstraps", cfg.bootstraps);
  if (j.contains("roles")) cfg.census_space = j.at("roles").value("census_space", cfg.census_space);
  return cfg;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["input"] = cfg.input;
  j["radius"] = cfg.radius;
  j["seed"] = cfg.seed;
  j["load"] = {{"delimiter", cfg.delimiter ? std::string(1, cfg.delimiter) : std::string()},
               {"has_header", cfg.has_header}};
  j["sampling"] = {{"method", method_name(cfg.method)},
                   {"phi", cfg.phi},
                   {"ffs_p", cfg.ffs_p},
                   {"induce", cfg.induce}};
  j["census"] = {{"min_alters", cfg.min_alters}};
  j["pca"] = {{"threshold", cfg.pca_threshold}};
  j["sweep"] = {{"k_min", cfg.k_min}, {"k_max", cfg.k_max}, {"restarts", cfg.restarts}};
  j["powerlaw"] = {{"bootstraps", cfg.bootstraps}};
  j["roles"] = {{"census_space", cfg.census_space}};
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config: " + path);
  nlohmann::json j;
  f >> j;
  return config_from_json(j);
}

void stage_stats(const RunConfig& cfg, const std::string& out_dir) {
  DirectedGraph g = load_input(cfg);
  SummaryStats s = g.summary_stats();

  nlohmann::ordered_json j;
  j["nodes"] = s.node_count;
  j["edges"] = s.edge_count;
  j["mean_degree"] = s.mean_degree;
  j["mean_clustering"] = s.mean_clustering;
  write_json(j, join(out_dir, "stats.json"));

  // degree histograms, one row per (kind, degree)
  std::ofstream f(join(out_dir, "degree_dist.csv"));
  if (!f) throw IoError("cannot open for writing: " + join(out_dir, "degree_dist.csv"));
  f << "kind,degree,count\n";
  for (const auto& [kind, degrees] :
       {std::pair<std::string, std::vector<uint32_t>>{"in", g.in_degrees()},
        {"out", g.out_degrees()}}) {
    std::map<uint32_t, uint64_t> hist;
    for (uint32_t d : degrees) hist[d]++;
    for (const auto& [deg, count] : hist) f << kind << ',' << deg << ',' << count << '\n';
  }
}

void stage_sample(const RunConfig& cfg, const std::string& out_dir) {
  DirectedGraph g = load_input(cfg);
  SampleSpec spec{cfg.method, cfg.phi, cfg.ffs_p, cfg.induce, derive_seed(cfg.seed, "sample")};

  // phi = 1 means "analyze the whole network": FFS/ES would otherwise keep
  // only traversed/drawn edges even when every node is sampled
  bool identity = !(cfg.phi < 1.0);
  SampleResult r;
  if (identity) {
    std::vector<NodeId> all(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) all[i] = i;
    r = SampleResult{g.induced_subgraph(all), spec, g.node_count(), false};
  } else {
    r = sample_graph(g, spec);
  }
  r.graph.save_edge_list(join(out_dir, "sample.edges"));

  nlohmann::ordered_json j;
  j["method"] = method_name(spec.method);
  j["phi"] = spec.phi;
  j["ffs_p"] = spec.ffs_p;
  j["induce"] = spec.induce_edges;
  j["identity"] = identity;
  j["derived_seed"] = spec.seed;
  j["target_size"] = r.target_size;
  j["nodes"] = r.graph.node_count();
  j["edges"] = r.graph.edge_count();
  j["exhausted"] = r.exhausted;
  write_json(j, join(out_dir, "sample.json"));
}

void stage_census(const RunConfig& cfg, const std::string& out_dir) {
  std::string sample_path = join(out_dir, "sample.edges");
  require_artifact(sample_path, "sample");
  DirectedGraph g = load_edge_list(sample_path);
  CensusMatrix m = census_matrix(g, cfg.radius, cfg.min_alters, cfg.workers);
  save_census_csv(m, join(out_dir, "census.csv"));
  save_excluded_csv(m, join(out_dir, "census_excluded.csv"));
  save_triad_classes(join(out_dir, "triad_classes.txt"));
}

void stage_reduce(const RunConfig& cfg, const std::string& out_dir) {
  std::string census_path = join(out_dir, "census.csv");
  require_artifact(census_path, "census");
  CensusMatrix m = load_census_csv(census_path);
  PcaModel model = pca_fit(m);
  uint32_t retained = choose_dimensions(model, cfg.pca_threshold);
  Embedding e = pca_transform(model, m, retained);

  save_scree_csv(model, join(out_dir, "scree.csv"));
  save_embedding_csv(e, join(out_dir, "embedding.csv"));

  nlohmann::ordered_json j;
  j["retained"] = e.retained;
  j["cum_variance"] = e.cum_variance;
  j["threshold"] = cfg.pca_threshold;
  write_json(j, join(out_dir, "reduce.json"));
}

void stage_cluster(const RunConfig& cfg, const std::string& out_dir) {
  std::string emb_path = join(out_dir, "embedding.csv");
  require_artifact(emb_path, "reduce");
  Embedding e = load_embedding_csv(emb_path);

  uint32_t rows = static_cast<uint32_t>(e.coords.rows());
  uint32_t k_max = std::min(cfg.k_max, rows);
  if (cfg.k_min > k_max)
    throw std::invalid_argument("cluster: k_min " + std::to_string(cfg.k_min) +
                                " exceeds usable rows " + std::to_string(k_max));
  uint64_t sweep_seed = derive_seed(cfg.seed, "sweep");
  KSweepResult sweep = sweep_k(e.coords, cfg.k_min, k_max, cfg.restarts, sweep_seed, cfg.workers);
  save_sweep_csv(sweep, join(out_dir, "sweep.csv"));

  const KSweepEntry* chosen = nullptr;
  for (const auto& entry : sweep.entries)
    if (entry.k == sweep.chosen_k) chosen = &entry;
  if (!chosen) throw std::runtime_error("cluster: chosen k missing from sweep entries");
  save_assignments_csv(chosen->best, e.ids, join(out_dir, "clusters.csv"));

  for (auto [a, b] : {std::pair<uint32_t, uint32_t>{1, 2}, {1, 3}, {2, 3}}) {
    if (e.retained < b) continue;
    char name[40];
    std::snprintf(name, sizeof name, "scatter_pc%u_pc%u.csv", a, b);
    save_scatter_csv(e, chosen->best, a, b, join(out_dir, name));
  }

  nlohmann::ordered_json j;
  j["chosen_k"] = sweep.chosen_k;
  j["mean_silhouette"] = chosen->mean_silhouette;
  j["best_silhouette"] = chosen->best_silhouette;
  j["restarts"] = sweep.restarts;
  j["k_min"] = cfg.k_min;
  j["k_max"] = k_max;
  j["derived_seed"] = sweep_seed;
  write_json(j, join(out_dir, "cluster.json"));
}

void stage_roles(const RunConfig& cfg, const std::string& out_dir) {
  for (auto [name, producer] : {std::pair<const char*, const char*>{"sample.edges", "sample"},
                                {"census.csv", "census"},
                                {"embedding.csv", "reduce"},
                                {"clusters.csv", "cluster"},
                                {"sweep.csv", "cluster"},
                                {"cluster.json", "cluster"}})
    require_artifact(join(out_dir, name), producer);

  DirectedGraph g = load_edge_list(join(out_dir, "sample.edges"));
  CensusMatrix census = load_census_csv(join(out_dir, "census.csv"));
  Embedding emb = load_embedding_csv(join(out_dir, "embedding.csv"));
  if (emb.ids != census.ego_ids)
    throw ParseError("roles: embedding and census ego ids are misaligned");
  Clustering clustering = clustering_from_files(emb, join(out_dir, "clusters.csv"));
  KSweepResult sweep =
      load_sweep_summary(join(out_dir, "sweep.csv"), join(out_dir, "cluster.json"));

  auto profiles = extract_roles(clustering, emb, census, g, cfg.radius, cfg.census_space);

  fs::create_directories(join(out_dir, "roles"));
  std::vector<std::vector<std::string>> files;
  for (const auto& p : profiles) {
    std::string base = "roles/role_" + std::to_string(p.role_id);
    export_structure_dot(p, g, join(out_dir, base + ".dot"));
    export_structure_graphml(p, g, join(out_dir, base + ".graphml"));
    files.push_back({base + ".dot", base + ".graphml"});
  }
  save_membership_csv(profiles, clustering, emb, census, cfg.census_space,
                      join(out_dir, "membership.csv"));

  nlohmann::ordered_json provenance;
  provenance["tool"] = "trc";
  provenance["version"] = kVersion;
  provenance["config"] = config_to_json(cfg);
  provenance["sample_seed"] = derive_seed(cfg.seed, "sample");
  provenance["sweep_seed"] = derive_seed(cfg.seed, "sweep");
  write_json(role_report(profiles, sweep, provenance, files), join(out_dir, "report.json"));
}

void stage_sample_eval(const RunConfig& cfg, const std::vector<SampleMethod>& methods,
                       const std::vector<double>& phi_grid, uint32_t reps, uint32_t stability_n,
                       const std::string& out_dir) {
  DirectedGraph g = load_input(cfg);
  if (!methods.empty() && !phi_grid.empty() && reps > 0) {
    KsReport report = evaluate_samplers(g, methods, phi_grid, reps, cfg.ffs_p,
                                        derive_seed(cfg.seed, "sample-eval"), cfg.workers);
    save_ks_report_csv(report, join(out_dir, "ks_report.csv"));
  }
  if (stability_n >= 2) {
    auto rows = census_stability(g, cfg.phi, stability_n, cfg.ffs_p, cfg.induce, cfg.radius,
                                 derive_seed(cfg.seed, "stability"), cfg.workers);
    save_stability_csv(rows, join(out_dir, "stability.csv"));
  }
}

void stage_fit_powerlaw(const RunConfig& cfg, const std::string& which,
                        const std::string& out_dir) {
  if (which != "in" && which != "out")
    throw std::invalid_argument("fit-powerlaw: --which must be 'in' or 'out'");
  DirectedGraph g = load_input(cfg);
  std::vector<uint32_t> degrees = which == "in" ? g.in_degrees() : g.out_degrees();

  PowerLawFit fit = fit_power_law(degrees);
  fit.p_value = gof_pvalue(degrees, fit, cfg.bootstraps,
                           derive_seed(cfg.seed, "powerlaw:" + which), cfg.workers);
  fit.bootstraps = cfg.bootstraps;
  save_fit_json(fit, which, join(out_dir, "powerlaw_" + which + ".json"));
}

uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot hash missing file: " + path);
  uint64_t h = 1469598103934665603ull;
  char buf[65536];
  while (f.read(buf, sizeof buf) || f.gcount() > 0) {
    for (std::streamsize i = 0; i < f.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

void run_pipeline(const RunConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_json(config_to_json(cfg), join(out_dir, "config.json"));

  struct Stage {
    const char* name;
    void (*fn)(const RunConfig&, const std::string&);
  };
  const Stage stages[] = {
      {"stats", stage_stats},     {"sample", stage_sample},   {"census", stage_census},
      {"reduce", stage_reduce},   {"cluster", stage_cluster}, {"roles", stage_roles},
  };

  nlohmann::ordered_json timings = nlohmann::ordered_json::array();
  for (const auto& stage : stages) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      stage.fn(cfg, out_dir);
    } catch (const std::exception& e) {
      throw std::runtime_error("stage " + std::string(stage.name) + ": " + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    timings.push_back({{"stage", stage.name}, {"seconds", secs}});
  }

  {
    std::ofstream f(join(out_dir, "figures.txt"));
    f << "# plot recipes: which artifact feeds which figure\n"
         "degree_dist.csv     log-log degree histograms, one curve per kind (in, out)\n"
         "ks_report.csv       mean KS distance vs phi, one curve per sampling method\n"
         "                    (produced by the sample-eval command)\n"
         "stability.csv       per-class mean census proportion with 95% CI error bars\n"
         "                    (produced by sample-eval --stability-n)\n"
         "scree.csv           explained-variance ratio per component, cumulative overlay\n"
         "sweep.csv           mean centroid silhouette vs k\n"
         "scatter_pc*_pc*.csv cluster scatter for a principal-component pair\n";
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "trc";
  manifest["version"] = kVersion;
  manifest["seed"] = cfg.seed;
  manifest["stages"] = timings;
  nlohmann::ordered_json artifacts;
  std::vector<std::string> names;
  for (const auto& entry : fs::recursive_directory_iterator(out_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), out_dir).generic_string();
    if (rel == "manifest.json") continue;
    names.push_back(rel);
  }
  std::sort(names.begin(), names.end());
  for (const auto& rel : names) {
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(join(out_dir, rel))));
    artifacts[rel] = {{"bytes", fs::file_size(join(out_dir, rel))}, {"fnv64", hex}};
  }
  manifest["artifacts"] = artifacts;
  write_json(manifest, join(out_dir, "manifest.json"));
}

}  // namespace trc
