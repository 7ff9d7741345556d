/* trc - social role discovery in directed interaction networks.
 *
 * C API for the shared library. All functions return trc_status; failures
 * leave a thread-local message readable via trc_last_error(). Objects are
 * opaque handles created by trc_*_…(…, &handle) and released with the
 * matching trc_*_free(). Handles are safe to share across threads for
 * read-only use once created.
 *
 * The pipeline: load an edge list, sample it (VS / ES / FFS / ES-i), compute
 * per-ego conditional triad censuses (36 classes), reduce by PCA, cluster by
 * k-means with centroid-silhouette model selection, and extract per-role
 * central users and structures.
 */
#ifndef TRC_H
#define TRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TRC_API __declspec(dllexport)
#else
#define TRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trc_status {
  TRC_OK = 0,
  TRC_ERR_IO = 1,          /* unreadable/unwritable file */
  TRC_ERR_PARSE = 2,       /* malformed input (message carries the line) */
  TRC_ERR_INVALID = 3,     /* precondition violated */
  TRC_ERR_NOT_FOUND = 4,   /* unknown node or missing artifact */
  TRC_ERR_INTERNAL = 5
} trc_status;

TRC_API const char* trc_version(void);
TRC_API const char* trc_status_name(trc_status s);
/* Message for the most recent failure on this thread; never NULL. */
TRC_API const char* trc_last_error(void);

/* ---------- graphs ---------- */

typedef struct trc_graph trc_graph;

typedef struct trc_load_options {
  char delimiter;   /* 0 = any run of whitespace */
  int has_header;   /* skip the first non-comment line */
  int dedupe;       /* 0 = treat duplicate (src,dst) rows as an error */
} trc_load_options;

TRC_API void trc_load_options_init(trc_load_options* opts);

/* One edge per line: src dst [extra fields ignored]; '#' comments skipped.
 * Duplicate pairs collapse, self-loops are dropped. */
TRC_API trc_status trc_graph_load(const char* path, const trc_load_options* opts,
                                  trc_graph** out);
/* Edge list sorted by external (src, dst); reloading gives the same edge set. */
TRC_API trc_status trc_graph_save(const trc_graph* g, const char* path);
TRC_API void trc_graph_free(trc_graph* g);

TRC_API uint32_t trc_graph_node_count(const trc_graph* g);
TRC_API uint64_t trc_graph_edge_count(const trc_graph* g);
/* External id of an internal node id (owned by the graph). */
TRC_API const char* trc_graph_node_name(const trc_graph* g, uint32_t node);

typedef struct trc_summary_stats {
  uint64_t node_count;
  uint64_t edge_count;
  double mean_degree;      /* 2|E| / |V| */
  double mean_clustering;  /* mean local clustering, undirected projection */
} trc_summary_stats;

TRC_API trc_status trc_graph_stats(const trc_graph* g, trc_summary_stats* out);

typedef enum trc_degree_kind { TRC_DEGREE_IN = 0, TRC_DEGREE_OUT = 1, TRC_DEGREE_TOTAL = 2 } trc_degree_kind;

/* Copies up to *len degrees into buf and sets *len to the node count. Call
 * with buf = NULL to query the required length. */
TRC_API trc_status trc_graph_degrees(const trc_graph* g, trc_degree_kind kind, uint32_t* buf,
                                     uint32_t* len);

/* ---------- synthetic graphs ---------- */

typedef struct trc_planted_spec {
  uint32_t brokers;
  uint32_t cliques_per_broker;
  uint32_t clique_size;
  uint32_t standalone_cliques;
  uint32_t spokes_per_broker;
  double epsilon;
  uint64_t seed;
} trc_planted_spec;

TRC_API void trc_planted_spec_init(trc_planted_spec* spec);

/* Planted-role graph; when truth_csv is non-NULL the ego -> role table is
 * written there. */
TRC_API trc_status trc_synth_planted(const trc_planted_spec* spec, const char* truth_csv,
                                     trc_graph** out);
TRC_API trc_status trc_synth_powerlaw(uint32_t n, double alpha, uint64_t seed, trc_graph** out);

/* ---------- sampling ---------- */

typedef enum trc_sample_method {
  TRC_SAMPLE_VS = 0,
  TRC_SAMPLE_ES = 1,
  TRC_SAMPLE_FFS = 2,
  TRC_SAMPLE_ESI = 3
} trc_sample_method;

typedef struct trc_sample_spec {
  trc_sample_method method;
  double phi;       /* (0, 1] */
  double ffs_p;     /* [0, 1), forward-burning parameter */
  int induce_edges; /* FFS: replace kept edges with the induced set */
  uint64_t seed;
} trc_sample_spec;

typedef struct trc_sample_info {
  uint32_t target_size; /* ceil(phi |V|) */
  uint32_t nodes;
  uint64_t edges;
  int exhausted; /* ES/ES-i ran out of edges; partial sample returned */
} trc_sample_info;

TRC_API void trc_sample_spec_init(trc_sample_spec* spec);
TRC_API trc_status trc_sample(const trc_graph* g, const trc_sample_spec* spec, trc_graph** out,
                              trc_sample_info* info);

/* sup-distance between the two empirical CDFs */
TRC_API trc_status trc_ks_distance(const double* a, size_t na, const double* b, size_t nb,
                                   double* out);

/* Mean KS distances (degree + clustering) per (method, phi) over `reps`
 * samples each; CSV: method,phi,mean_ks_degree,mean_ks_clustering,repetitions. */
TRC_API trc_status trc_evaluate_samplers(const trc_graph* g, const trc_sample_method* methods,
                                         size_t n_methods, const double* phis, size_t n_phis,
                                         uint32_t reps, double ffs_p, uint64_t seed, int workers,
                                         const char* out_csv);

/* Mean and 95% CI per census class over n FFS samples;
 * CSV: class_id,mean,ci_low,ci_high. */
TRC_API trc_status trc_census_stability(const trc_graph* g, double phi, uint32_t n, double ffs_p,
                                        int induce, int radius, uint64_t seed, int workers,
                                        const char* out_csv);

/* ---------- conditional triad census ---------- */

/* Ego-alter dyads: 0 null, 1 ego->alter, 2 alter->ego, 3 mutual.
 * Alter-alter dyads: 0 null, 1 first->second, 2 second->first, 3 mutual.
 * Returns the class id in [0, 36), or -1 on out-of-range input. The id is
 * invariant under swapping the two alters. */
TRC_API int trc_classify_triad(int ego_a1, int ego_a2, int a1_a2);

/* Writes the class_id -> canonical form table. */
TRC_API trc_status trc_triad_classes_save(const char* path);

typedef struct trc_census trc_census;

TRC_API trc_status trc_census_compute(const trc_graph* g, int radius, uint32_t min_alters,
                                      int workers, trc_census** out);
TRC_API uint32_t trc_census_rows(const trc_census* c);
TRC_API uint32_t trc_census_excluded(const trc_census* c);
/* Copies the 36 proportions of a row. */
TRC_API trc_status trc_census_row(const trc_census* c, uint32_t row, double out36[36]);
TRC_API const char* trc_census_row_ego(const trc_census* c, uint32_t row);
/* CSV: ego_id,pairs,t00..t35 with 9-decimal proportions. */
TRC_API trc_status trc_census_save(const trc_census* c, const char* csv_path);
TRC_API trc_status trc_census_save_excluded(const trc_census* c, const char* csv_path);
TRC_API trc_status trc_census_load(const char* csv_path, trc_census** out);
TRC_API void trc_census_free(trc_census* c);

/* ---------- power-law fitting ---------- */

typedef struct trc_powerlaw_fit {
  double alpha;
  uint32_t x_min;
  uint32_t n_tail;
  double ks_stat;
  double p_value; /* negative until trc_powerlaw_gof fills it */
  uint32_t bootstraps;
} trc_powerlaw_fit;

TRC_API trc_status trc_fit_power_law(const uint32_t* values, size_t n, trc_powerlaw_fit* out);
TRC_API trc_status trc_powerlaw_gof(const uint32_t* values, size_t n, trc_powerlaw_fit* fit,
                                    uint32_t bootstraps, uint64_t seed, int workers);

/* ---------- PCA ---------- */

typedef struct trc_pca trc_pca;
typedef struct trc_embedding trc_embedding;

TRC_API trc_status trc_pca_fit(const trc_census* c, trc_pca** out);
/* Smallest m with cumulative explained variance above the threshold. */
TRC_API trc_status trc_pca_choose_dimensions(const trc_pca* p, double threshold, uint32_t* out);
TRC_API trc_status trc_pca_transform(const trc_pca* p, const trc_census* c, uint32_t m,
                                     trc_embedding** out);
TRC_API trc_status trc_pca_save_scree(const trc_pca* p, const char* csv_path);
TRC_API void trc_pca_free(trc_pca* p);

TRC_API uint32_t trc_embedding_rows(const trc_embedding* e);
TRC_API uint32_t trc_embedding_dims(const trc_embedding* e);
TRC_API trc_status trc_embedding_save(const trc_embedding* e, const char* csv_path);
TRC_API trc_status trc_embedding_load(const char* csv_path, trc_embedding** out);
TRC_API void trc_embedding_free(trc_embedding* e);

/* ---------- clustering ---------- */

typedef struct trc_clustering trc_clustering;
typedef struct trc_sweep trc_sweep;

TRC_API trc_status trc_kmeans(const trc_embedding* e, uint32_t k, uint64_t seed,
                              uint32_t max_iter, trc_clustering** out);
/* Centroid silhouette of an existing clustering (k >= 2). */
TRC_API trc_status trc_silhouette(const trc_embedding* e, const trc_clustering* c, double* out);
TRC_API uint32_t trc_clustering_k(const trc_clustering* c);
TRC_API trc_status trc_clustering_assignments(const trc_clustering* c, uint32_t* buf,
                                              uint32_t* len);
TRC_API trc_status trc_clustering_save(const trc_clustering* c, const trc_embedding* e,
                                       const char* csv_path);
TRC_API void trc_clustering_free(trc_clustering* c);

/* Mean/best centroid silhouette per k over seeded restarts; chosen_k is the
 * argmax of the mean (ties toward smaller k). */
TRC_API trc_status trc_sweep_k(const trc_embedding* e, uint32_t k_min, uint32_t k_max,
                               uint32_t restarts, uint64_t seed, int workers, trc_sweep** out);
TRC_API uint32_t trc_sweep_chosen_k(const trc_sweep* s);
TRC_API trc_status trc_sweep_mean_silhouette(const trc_sweep* s, uint32_t k, double* out);
TRC_API trc_status trc_sweep_save(const trc_sweep* s, const char* csv_path);
/* Best clustering found for a given k (new handle). */
TRC_API trc_status trc_sweep_best_clustering(const trc_sweep* s, uint32_t k, trc_clustering** out);
TRC_API void trc_sweep_free(trc_sweep* s);

/* ---------- stages and pipeline ---------- */

/* config_json: JSON text (not a path) with the documented schema. Each stage
 * reads its upstream artifacts from out_dir and writes its own there. */
TRC_API trc_status trc_stage_run(const char* stage, const char* config_json, const char* out_dir);

/* sample-eval harness: methods/phis arrays, plus optional census stability
 * when stability_n >= 2. */
TRC_API trc_status trc_stage_sample_eval(const char* config_json, const trc_sample_method* methods,
                                         size_t n_methods, const double* phis, size_t n_phis,
                                         uint32_t reps, uint32_t stability_n, const char* out_dir);
TRC_API trc_status trc_stage_fit_powerlaw(const char* config_json, const char* which,
                                          const char* out_dir);

/* Full pipeline: stats, sample, census, reduce, cluster, roles, manifest. */
TRC_API trc_status trc_pipeline_run(const char* config_json, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* TRC_H */
