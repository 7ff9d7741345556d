#include "trc.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "census.hpp"
#include "cluster.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "pca.hpp"
#include "pipeline.hpp"
#include "powerlaw.hpp"
#include "roles.hpp"
#include "sampling.hpp"
#include "synth.hpp"

using namespace trc;

namespace {

thread_local std::string g_last_error;

trc_status fail(trc_status s, const char* what) {
  g_last_error = what ? what : "unknown error";
  return s;
}

// maps core exceptions onto status codes; the what() string is preserved
template <typename Fn>
trc_status guarded(Fn&& fn) {
  try {
    fn();
    return TRC_OK;
  } catch (const IoError& e) {
    return fail(TRC_ERR_IO, e.what());
  } catch (const ParseError& e) {
    return fail(TRC_ERR_PARSE, e.what());
  } catch (const NotFoundError& e) {
    return fail(TRC_ERR_NOT_FOUND, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TRC_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TRC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TRC_ERR_INTERNAL, e.what());
  }
}

trc_status require(bool ok, const char* what) {
  return ok ? TRC_OK : fail(TRC_ERR_INVALID, what);
}

SampleMethod to_method(trc_sample_method m) {
  switch (m) {
    case TRC_SAMPLE_VS: return SampleMethod::VS;
    case TRC_SAMPLE_ES: return SampleMethod::ES;
    case TRC_SAMPLE_FFS: return SampleMethod::FFS;
    case TRC_SAMPLE_ESI: return SampleMethod::ESI;
  }
  throw std::invalid_argument("unknown sample method");
}

RunConfig parse_config(const char* config_json) {
  if (!config_json) throw std::invalid_argument("config_json is NULL");
  return config_from_json(nlohmann::json::parse(config_json));
}

}  // namespace

struct trc_graph {
  DirectedGraph g;
};
struct trc_census {
  CensusMatrix m;
};
struct trc_pca {
  PcaModel model;
};
struct trc_embedding {
  Embedding e;
};
struct trc_clustering {
  Clustering c;
};
struct trc_sweep {
  KSweepResult r;
};

extern "C" {

const char* trc_version(void) { return kVersion; }

const char* trc_status_name(trc_status s) {
  switch (s) {
    case TRC_OK: return "ok";
    case TRC_ERR_IO: return "io error";
    case TRC_ERR_PARSE: return "parse error";
    case TRC_ERR_INVALID: return "invalid argument";
    case TRC_ERR_NOT_FOUND: return "not found";
    case TRC_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* trc_last_error(void) { return g_last_error.c_str(); }

void trc_load_options_init(trc_load_options* opts) {
  if (!opts) return;
  opts->delimiter = 0;
  opts->has_header = 0;
  opts->dedupe = 1;
}

trc_status trc_graph_load(const char* path, const trc_load_options* opts, trc_graph** out) {
  if (trc_status s = require(path && out, "path/out must not be NULL")) return s;
  return guarded([&] {
    LoadOptions o;
    if (opts) {
      o.delimiter = opts->delimiter;
      o.has_header = opts->has_header != 0;
      o.dedupe = opts->dedupe != 0;
    }
    *out = new trc_graph{load_edge_list(path, o)};
  });
}

trc_status trc_graph_save(const trc_graph* g, const char* path) {
  if (trc_status s = require(g && path, "graph/path must not be NULL")) return s;
  return guarded([&] { g->g.save_edge_list(path); });
}

void trc_graph_free(trc_graph* g) { delete g; }

uint32_t trc_graph_node_count(const trc_graph* g) { return g ? g->g.node_count() : 0; }
uint64_t trc_graph_edge_count(const trc_graph* g) { return g ? g->g.edge_count() : 0; }

const char* trc_graph_node_name(const trc_graph* g, uint32_t node) {
  if (!g || node >= g->g.node_count()) return nullptr;
  return g->g.name(node).c_str();
}

trc_status trc_graph_stats(const trc_graph* g, trc_summary_stats* out) {
  if (trc_status s = require(g && out, "graph/out must not be NULL")) return s;
  return guarded([&] {
    SummaryStats st = g->g.summary_stats();
    out->node_count = st.node_count;
    out->edge_count = st.edge_count;
    out->mean_degree = st.mean_degree;
    out->mean_clustering = st.mean_clustering;
  });
}

trc_status trc_graph_degrees(const trc_graph* g, trc_degree_kind kind, uint32_t* buf,
                             uint32_t* len) {
  if (trc_status s = require(g && len, "graph/len must not be NULL")) return s;
  return guarded([&] {
    std::vector<uint32_t> d = kind == TRC_DEGREE_IN    ? g->g.in_degrees()
                              : kind == TRC_DEGREE_OUT ? g->g.out_degrees()
                                                       : g->g.total_degrees();
    if (buf) std::memcpy(buf, d.data(), sizeof(uint32_t) * std::min<size_t>(*len, d.size()));
    *len = static_cast<uint32_t>(d.size());
  });
}

void trc_planted_spec_init(trc_planted_spec* spec) {
  if (!spec) return;
  spec->brokers = 0;
  spec->cliques_per_broker = 2;
  spec->clique_size = 4;
  spec->standalone_cliques = 0;
  spec->spokes_per_broker = 0;
  spec->epsilon = 0.0;
  spec->seed = 0;
}

trc_status trc_synth_planted(const trc_planted_spec* spec, const char* truth_csv,
                             trc_graph** out) {
  if (trc_status s = require(spec && out, "spec/out must not be NULL")) return s;
  return guarded([&] {
    PlantedRoleSpec p;
    p.brokers = spec->brokers;
    p.cliques_per_broker = spec->cliques_per_broker;
    p.clique_size = spec->clique_size;
    p.standalone_cliques = spec->standalone_cliques;
    p.spokes_per_broker = spec->spokes_per_broker;
    p.epsilon = spec->epsilon;
    p.seed = spec->seed;
    PlantedGraph pg = generate_planted(p);
    if (truth_csv) save_truth_csv(pg, truth_csv);
    *out = new trc_graph{std::move(pg.graph)};
  });
}

trc_status trc_synth_powerlaw(uint32_t n, double alpha, uint64_t seed, trc_graph** out) {
  if (trc_status s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] { *out = new trc_graph{generate_powerlaw(n, alpha, seed)}; });
}

void trc_sample_spec_init(trc_sample_spec* spec) {
  if (!spec) return;
  spec->method = TRC_SAMPLE_FFS;
  spec->phi = 0.35;
  spec->ffs_p = 0.7;
  spec->induce_edges = 0;
  spec->seed = 0;
}

trc_status trc_sample(const trc_graph* g, const trc_sample_spec* spec, trc_graph** out,
                      trc_sample_info* info) {
  if (trc_status s = require(g && spec && out, "graph/spec/out must not be NULL")) return s;
  return guarded([&] {
    SampleSpec sp{to_method(spec->method), spec->phi, spec->ffs_p, spec->induce_edges != 0,
                  spec->seed};
    SampleResult r = sample_graph(g->g, sp);
    if (info) {
      info->target_size = r.target_size;
      info->nodes = r.graph.node_count();
      info->edges = r.graph.edge_count();
      info->exhausted = r.exhausted ? 1 : 0;
    }
    *out = new trc_graph{std::move(r.graph)};
  });
}

trc_status trc_ks_distance(const double* a, size_t na, const double* b, size_t nb, double* out) {
  if (trc_status s = require(a && b && out, "inputs must not be NULL")) return s;
  return guarded([&] {
    *out = ks_distance(std::vector<double>(a, a + na), std::vector<double>(b, b + nb));
  });
}

trc_status trc_evaluate_samplers(const trc_graph* g, const trc_sample_method* methods,
                                 size_t n_methods, const double* phis, size_t n_phis,
                                 uint32_t reps, double ffs_p, uint64_t seed, int workers,
                                 const char* out_csv) {
  if (trc_status s = require(g && methods && phis && out_csv, "inputs must not be NULL")) return s;
  return guarded([&] {
    std::vector<SampleMethod> ms;
    for (size_t i = 0; i < n_methods; ++i) ms.push_back(to_method(methods[i]));
    KsReport r = evaluate_samplers(g->g, ms, std::vector<double>(phis, phis + n_phis), reps,
                                   ffs_p, seed, workers);
    save_ks_report_csv(r, out_csv);
  });
}

trc_status trc_census_stability(const trc_graph* g, double phi, uint32_t n, double ffs_p,
                                int induce, int radius, uint64_t seed, int workers,
                                const char* out_csv) {
  if (trc_status s = require(g && out_csv, "graph/out_csv must not be NULL")) return s;
  return guarded([&] {
    auto rows = census_stability(g->g, phi, n, ffs_p, induce != 0, radius, seed, workers);
    save_stability_csv(rows, out_csv);
  });
}

int trc_classify_triad(int ego_a1, int ego_a2, int a1_a2) {
  if (ego_a1 < 0 || ego_a1 > 3 || ego_a2 < 0 || ego_a2 > 3 || a1_a2 < 0 || a1_a2 > 3) return -1;
  return classify_triad(static_cast<EgoDyad>(ego_a1), static_cast<EgoDyad>(ego_a2),
                        static_cast<AlterDyad>(a1_a2));
}

trc_status trc_triad_classes_save(const char* path) {
  if (trc_status s = require(path != nullptr, "path must not be NULL")) return s;
  return guarded([&] { save_triad_classes(path); });
}

trc_status trc_census_compute(const trc_graph* g, int radius, uint32_t min_alters, int workers,
                              trc_census** out) {
  if (trc_status s = require(g && out, "graph/out must not be NULL")) return s;
  return guarded([&] { *out = new trc_census{census_matrix(g->g, radius, min_alters, workers)}; });
}

uint32_t trc_census_rows(const trc_census* c) {
  return c ? static_cast<uint32_t>(c->m.rows.size()) : 0;
}

uint32_t trc_census_excluded(const trc_census* c) {
  return c ? static_cast<uint32_t>(c->m.excluded_egos.size()) : 0;
}

trc_status trc_census_row(const trc_census* c, uint32_t row, double out36[36]) {
  if (trc_status s = require(c && out36, "census/out must not be NULL")) return s;
  if (trc_status s = require(row < c->m.rows.size(), "census row out of range")) return s;
  std::memcpy(out36, c->m.rows[row].data(), sizeof(double) * kTriadClassCount);
  return TRC_OK;
}

const char* trc_census_row_ego(const trc_census* c, uint32_t row) {
  if (!c || row >= c->m.ego_ids.size()) return nullptr;
  return c->m.ego_ids[row].c_str();
}

trc_status trc_census_save(const trc_census* c, const char* csv_path) {
  if (trc_status s = require(c && csv_path, "census/path must not be NULL")) return s;
  return guarded([&] { save_census_csv(c->m, csv_path); });
}

trc_status trc_census_save_excluded(const trc_census* c, const char* csv_path) {
  if (trc_status s = require(c && csv_path, "census/path must not be NULL")) return s;
  return guarded([&] { save_excluded_csv(c->m, csv_path); });
}

trc_status trc_census_load(const char* csv_path, trc_census** out) {
  if (trc_status s = require(csv_path && out, "path/out must not be NULL")) return s;
  return guarded([&] { *out = new trc_census{load_census_csv(csv_path)}; });
}

void trc_census_free(trc_census* c) { delete c; }

trc_status trc_fit_power_law(const uint32_t* values, size_t n, trc_powerlaw_fit* out) {
  if (trc_status s = require(values && out, "values/out must not be NULL")) return s;
  return guarded([&] {
    PowerLawFit f = fit_power_law(std::vector<uint32_t>(values, values + n));
    *out = {f.alpha, f.x_min, f.n_tail, f.ks_stat, f.p_value, f.bootstraps};
  });
}

trc_status trc_powerlaw_gof(const uint32_t* values, size_t n, trc_powerlaw_fit* fit,
                            uint32_t bootstraps, uint64_t seed, int workers) {
  if (trc_status s = require(values && fit, "values/fit must not be NULL")) return s;
  return guarded([&] {
    PowerLawFit f{fit->alpha, fit->x_min, fit->n_tail, fit->ks_stat, fit->p_value, fit->bootstraps};
    fit->p_value = gof_pvalue(std::vector<uint32_t>(values, values + n), f, bootstraps, seed, workers);
    fit->bootstraps = bootstraps;
  });
}

trc_status trc_pca_fit(const trc_census* c, trc_pca** out) {
  if (trc_status s = require(c && out, "census/out must not be NULL")) return s;
  return guarded([&] { *out = new trc_pca{pca_fit(c->m)}; });
}

trc_status trc_pca_choose_dimensions(const trc_pca* p, double threshold, uint32_t* out) {
  if (trc_status s = require(p && out, "pca/out must not be NULL")) return s;
  return guarded([&] { *out = choose_dimensions(p->model, threshold); });
}

trc_status trc_pca_transform(const trc_pca* p, const trc_census* c, uint32_t m,
                             trc_embedding** out) {
  if (trc_status s = require(p && c && out, "pca/census/out must not be NULL")) return s;
  return guarded([&] { *out = new trc_embedding{pca_transform(p->model, c->m, m)}; });
}

trc_status trc_pca_save_scree(const trc_pca* p, const char* csv_path) {
  if (trc_status s = require(p && csv_path, "pca/path must not be NULL")) return s;
  return guarded([&] { save_scree_csv(p->model, csv_path); });
}

void trc_pca_free(trc_pca* p) { delete p; }

uint32_t trc_embedding_rows(const trc_embedding* e) {
  return e ? static_cast<uint32_t>(e->e.ids.size()) : 0;
}

uint32_t trc_embedding_dims(const trc_embedding* e) { return e ? e->e.retained : 0; }

trc_status trc_embedding_save(const trc_embedding* e, const char* csv_path) {
  if (trc_status s = require(e && csv_path, "embedding/path must not be NULL")) return s;
  return guarded([&] { save_embedding_csv(e->e, csv_path); });
}

trc_status trc_embedding_load(const char* csv_path, trc_embedding** out) {
  if (trc_status s = require(csv_path && out, "path/out must not be NULL")) return s;
  return guarded([&] { *out = new trc_embedding{load_embedding_csv(csv_path)}; });
}

void trc_embedding_free(trc_embedding* e) { delete e; }

trc_status trc_kmeans(const trc_embedding* e, uint32_t k, uint64_t seed, uint32_t max_iter,
                      trc_clustering** out) {
  if (trc_status s = require(e && out, "embedding/out must not be NULL")) return s;
  return guarded([&] {
    *out = new trc_clustering{kmeans(e->e.coords, k, seed, max_iter ? max_iter : 300)};
  });
}

trc_status trc_silhouette(const trc_embedding* e, const trc_clustering* c, double* out) {
  if (trc_status s = require(e && c && out, "embedding/clustering/out must not be NULL")) return s;
  return guarded([&] { *out = silhouette_coefficient(e->e.coords, c->c); });
}

uint32_t trc_clustering_k(const trc_clustering* c) { return c ? c->c.k : 0; }

trc_status trc_clustering_assignments(const trc_clustering* c, uint32_t* buf, uint32_t* len) {
  if (trc_status s = require(c && len, "clustering/len must not be NULL")) return s;
  if (buf)
    std::memcpy(buf, c->c.assignments.data(),
                sizeof(uint32_t) * std::min<size_t>(*len, c->c.assignments.size()));
  *len = static_cast<uint32_t>(c->c.assignments.size());
  return TRC_OK;
}

trc_status trc_clustering_save(const trc_clustering* c, const trc_embedding* e,
                               const char* csv_path) {
  if (trc_status s = require(c && e && csv_path, "clustering/embedding/path must not be NULL")) return s;
  return guarded([&] { save_assignments_csv(c->c, e->e.ids, csv_path); });
}

void trc_clustering_free(trc_clustering* c) { delete c; }

trc_status trc_sweep_k(const trc_embedding* e, uint32_t k_min, uint32_t k_max, uint32_t restarts,
                       uint64_t seed, int workers, trc_sweep** out) {
  if (trc_status s = require(e && out, "embedding/out must not be NULL")) return s;
  return guarded([&] {
    *out = new trc_sweep{sweep_k(e->e.coords, k_min, k_max, restarts, seed, workers)};
  });
}

uint32_t trc_sweep_chosen_k(const trc_sweep* s) { return s ? s->r.chosen_k : 0; }

trc_status trc_sweep_mean_silhouette(const trc_sweep* s, uint32_t k, double* out) {
  if (trc_status st = require(s && out, "sweep/out must not be NULL")) return st;
  for (const auto& e : s->r.entries)
    if (e.k == k) {
      *out = e.mean_silhouette;
      return TRC_OK;
    }
  return fail(TRC_ERR_NOT_FOUND, "k not in sweep range");
}

trc_status trc_sweep_save(const trc_sweep* s, const char* csv_path) {
  if (trc_status st = require(s && csv_path, "sweep/path must not be NULL")) return st;
  return guarded([&] { save_sweep_csv(s->r, csv_path); });
}

trc_status trc_sweep_best_clustering(const trc_sweep* s, uint32_t k, trc_clustering** out) {
  if (trc_status st = require(s && out, "sweep/out must not be NULL")) return st;
  for (const auto& e : s->r.entries)
    if (e.k == k) {
      *out = new trc_clustering{e.best};
      return TRC_OK;
    }
  return fail(TRC_ERR_NOT_FOUND, "k not in sweep range");
}

void trc_sweep_free(trc_sweep* s) { delete s; }

trc_status trc_stage_run(const char* stage, const char* config_json, const char* out_dir) {
  if (trc_status s = require(stage && out_dir, "stage/out_dir must not be NULL")) return s;
  return guarded([&] {
    RunConfig cfg = parse_config(config_json);
    std::string name(stage);
    std::filesystem::create_directories(out_dir);
    if (name == "stats") stage_stats(cfg, out_dir);
    else if (name == "sample") stage_sample(cfg, out_dir);
    else if (name == "census") stage_census(cfg, out_dir);
    else if (name == "reduce") stage_reduce(cfg, out_dir);
    else if (name == "cluster") stage_cluster(cfg, out_dir);
    else if (name == "roles") stage_roles(cfg, out_dir);
    else throw std::invalid_argument("unknown stage: " + name);
  });
}

trc_status trc_stage_sample_eval(const char* config_json, const trc_sample_method* methods,
                                 size_t n_methods, const double* phis, size_t n_phis,
                                 uint32_t reps, uint32_t stability_n, const char* out_dir) {
  if (trc_status s = require(out_dir != nullptr, "out_dir must not be NULL")) return s;
  return guarded([&] {
    RunConfig cfg = parse_config(config_json);
    std::vector<SampleMethod> ms;
    for (size_t i = 0; i < n_methods; ++i) ms.push_back(to_method(methods[i]));
    std::filesystem::create_directories(out_dir);
    stage_sample_eval(cfg, ms, std::vector<double>(phis, phis + n_phis), reps, stability_n,
                      out_dir);
  });
}

trc_status trc_stage_fit_powerlaw(const char* config_json, const char* which,
                                  const char* out_dir) {
  if (trc_status s = require(which && out_dir, "which/out_dir must not be NULL")) return s;
  return guarded([&] {
    RunConfig cfg = parse_config(config_json);
    std::filesystem::create_directories(out_dir);
    stage_fit_powerlaw(cfg, which, out_dir);
  });
}

trc_status trc_pipeline_run(const char* config_json, const char* out_dir) {
  if (trc_status s = require(out_dir != nullptr, "out_dir must not be NULL")) return s;
  return guarded([&] { run_pipeline(parse_config(config_json), out_dir); });
}

}  // extern "C"
