#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "pca.hpp"

namespace trc {

struct Clustering {
  uint32_t k = 0;
  std::vector<uint32_t> assignments;  // per row
  Eigen::MatrixXd centroids;          // k x d
  double inertia = 0.0;               // sum of squared row-to-own-centroid distances
  double silhouette = 0.0;            // centroid silhouette; NaN when k < 2
  uint64_t seed = 0;
  uint32_t iterations = 0;
  std::vector<double> inertia_trace;  // per assignment pass, non-increasing
};

// Lloyd iterations started from k distinct uniformly chosen rows. A row tied
// between centroids keeps its current one when still nearest, otherwise takes
// the lowest index; an emptied cluster is reseeded to the row farthest from
// its own centroid. Stops when assignments are unchanged or at max_iter.
Clustering kmeans(const Eigen::MatrixXd& x, uint32_t k, uint64_t seed, uint32_t max_iter = 300);

// The centroid silhouette: a(x) = distance to own centroid, b(x) = distance
// to the nearest other centroid, phi = (b - a) / max(a, b) (0 when both are
// 0), averaged over rows. Not the classic pairwise silhouette.
double silhouette_coefficient(const Eigen::MatrixXd& x, const Clustering& c);

struct KSweepEntry {
  uint32_t k = 0;
  double mean_silhouette = 0.0;
  double best_silhouette = 0.0;
  Clustering best;
};

struct KSweepResult {
  std::vector<KSweepEntry> entries;
  uint32_t chosen_k = 0;  // argmax of mean silhouette, ties toward smaller k
  uint32_t restarts = 0;
  uint64_t seed = 0;
};

// Restart seeds derive from (seed, k, restart index) only, so the sweep does
// not depend on scheduling or worker count.
KSweepResult sweep_k(const Eigen::MatrixXd& x, uint32_t k_min, uint32_t k_max, uint32_t restarts,
                     uint64_t seed, int workers);

void save_sweep_csv(const KSweepResult& r, const std::string& path);
void save_assignments_csv(const Clustering& c, const std::vector<std::string>& ids,
                          const std::string& path);
std::vector<std::pair<std::string, uint32_t>> load_assignments_csv(const std::string& path);
// Scatter data for a component pair (1-based): ego_id,pc_i,pc_j,cluster
void save_scatter_csv(const Embedding& e, const Clustering& c, uint32_t ci, uint32_t cj,
                      const std::string& path);

}  // namespace trc
