#include "cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace trc {

namespace {

uint32_t nearest_centroid(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids,
                          Eigen::Index row, uint32_t current, double* dist2_out) {
  uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  bool current_is_best = false;
  for (uint32_t c = 0; c < centroids.rows(); ++c) {
    double d = (x.row(row) - centroids.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
      current_is_best = (c == current);
    } else if (d == best_d && c == current) {
      current_is_best = true;
    }
  }
  if (dist2_out) *dist2_out = best_d;
  return current_is_best ? current : best;
}

}  // namespace

Clustering kmeans(const Eigen::MatrixXd& x, uint32_t k, uint64_t seed, uint32_t max_iter) {
  const Eigen::Index n = x.rows(), d = x.cols();
  if (k == 0) throw std::invalid_argument("kmeans: k must be positive");
  if (static_cast<Eigen::Index>(k) > n) throw std::invalid_argument("kmeans: k exceeds row count");

  Clustering c;
  c.k = k;
  c.seed = seed;
  c.centroids.resize(k, d);

  Rng rng(seed);
  std::vector<uint32_t> init = rng.sample_indices(static_cast<uint32_t>(n), k);
  for (uint32_t i = 0; i < k; ++i) c.centroids.row(i) = x.row(init[i]);

  const uint32_t kNone = std::numeric_limits<uint32_t>::max();
  c.assignments.assign(n, kNone);
  std::vector<double> dist2(n, 0.0);
  bool reseeded = false;

  for (uint32_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      uint32_t a = nearest_centroid(x, c.centroids, i, c.assignments[i], &dist2[i]);
      if (a != c.assignments[i]) {
        changed = true;
        c.assignments[i] = a;
      }
      inertia += dist2[i];
    }
    c.inertia_trace.push_back(inertia);
    c.inertia = inertia;
    c.iterations = iter + 1;
    // a reseed leaves centroids out of sync with assignments, so one more
    // update pass is required even when assignments did not move
    if (!changed && iter > 0 && !reseeded) break;
    reseeded = false;

    std::vector<uint64_t> counts(k, 0);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(c.assignments[i]) += x.row(i);
      counts[c.assignments[i]]++;
    }
    for (uint32_t cl = 0; cl < k; ++cl)
      if (counts[cl] > 0) c.centroids.row(cl) = sums.row(cl) / static_cast<double>(counts[cl]);

    // Reseed emptied clusters one at a time to the row farthest from its own
    // centroid, reassigning in between so consecutive reseeds cannot chase
    // the same far-away group.
    for (uint32_t attempts = 0; attempts < k; ++attempts) {
      uint32_t empty = k;
      for (uint32_t cl = 0; cl < k; ++cl)
        if (counts[cl] == 0) {
          empty = cl;
          break;
        }
      if (empty == k) break;
      reseeded = true;

      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        double dd = (x.row(i) - c.centroids.row(c.assignments[i])).squaredNorm();
        if (dd > far_d) {
          far_d = dd;
          far = i;
        }
      }
      c.centroids.row(empty) = x.row(far);
      for (Eigen::Index i = 0; i < n; ++i)
        c.assignments[i] = nearest_centroid(x, c.centroids, i, c.assignments[i], nullptr);
      c.assignments[far] = empty;
      std::fill(counts.begin(), counts.end(), 0);
      for (Eigen::Index i = 0; i < n; ++i) counts[c.assignments[i]]++;
    }
  }

  c.silhouette = k >= 2 ? silhouette_coefficient(x, c) : std::nan("");
  return c;
}

double silhouette_coefficient(const Eigen::MatrixXd& x, const Clustering& c) {
  if (c.k < 2) throw std::invalid_argument("silhouette needs k >= 2");
  const Eigen::Index n = x.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    uint32_t own = c.assignments[i];
    double a = (x.row(i) - c.centroids.row(own)).norm();
    double b = std::numeric_limits<double>::infinity();
    for (uint32_t cl = 0; cl < c.k; ++cl) {
      if (cl == own) continue;
      b = std::min(b, (x.row(i) - c.centroids.row(cl)).norm());
    }
    double m = std::max(a, b);
    total += m > 0.0 ? (b - a) / m : 0.0;
  }
  return total / static_cast<double>(n);
}

KSweepResult sweep_k(const Eigen::MatrixXd& x, uint32_t k_min, uint32_t k_max, uint32_t restarts,
                     uint64_t seed, int workers) {
  if (k_min < 2) throw std::invalid_argument("sweep_k: k_min must be >= 2");
  if (k_max < k_min) throw std::invalid_argument("sweep_k: k_max < k_min");
  if (static_cast<Eigen::Index>(k_max) > x.rows())
    throw std::invalid_argument("sweep_k: k_max exceeds row count");
  if (restarts == 0) throw std::invalid_argument("sweep_k: restarts must be positive");

  uint32_t n_k = k_max - k_min + 1;
  std::vector<Clustering> runs(static_cast<size_t>(n_k) * restarts);

  parallel_for(runs.size(), workers, [&](size_t task) {
    uint32_t k = k_min + static_cast<uint32_t>(task / restarts);
    uint32_t r = static_cast<uint32_t>(task % restarts);
    uint64_t s = derive_seed(seed, "kmeans", (static_cast<uint64_t>(k) << 32) | r);
    runs[task] = kmeans(x, k, s);
  });

  KSweepResult result;
  result.restarts = restarts;
  result.seed = seed;
  for (uint32_t ki = 0; ki < n_k; ++ki) {
    KSweepEntry e;
    e.k = k_min + ki;
    size_t base = static_cast<size_t>(ki) * restarts;
    size_t best_idx = base;
    double sum = 0.0;
    for (uint32_t r = 0; r < restarts; ++r) {
      double sc = runs[base + r].silhouette;
      sum += sc;
      if (sc > runs[best_idx].silhouette) best_idx = base + r;
    }
    e.mean_silhouette = sum / restarts;
    e.best_silhouette = runs[best_idx].silhouette;
    e.best = std::move(runs[best_idx]);
    result.entries.push_back(std::move(e));
  }

  size_t chosen = 0;
  for (size_t i = 1; i < result.entries.size(); ++i)
    if (result.entries[i].mean_silhouette > result.entries[chosen].mean_silhouette) chosen = i;
  result.chosen_k = result.entries[chosen].k;
  return result;
}

void save_sweep_csv(const KSweepResult& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "k,mean_silhouette,best_silhouette\n";
  char buf[96];
  for (const auto& e : r.entries) {
    std::snprintf(buf, sizeof buf, "%u,%.9f,%.9f\n", e.k, e.mean_silhouette, e.best_silhouette);
    f << buf;
  }
}

void save_assignments_csv(const Clustering& c, const std::vector<std::string>& ids,
                          const std::string& path) {
  if (ids.size() != c.assignments.size())
    throw std::invalid_argument("assignments/ids size mismatch");
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id,cluster\n";
  for (size_t i = 0; i < ids.size(); ++i) f << ids[i] << ',' << c.assignments[i] << '\n';
}

std::vector<std::pair<std::string, uint32_t>> load_assignments_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open assignments csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ParseError(path + ": empty file");
  std::vector<std::pair<std::string, uint32_t>> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    size_t comma = line.rfind(',');
    if (comma == std::string::npos) throw ParseError(path + ": malformed row: " + line);
    try {
      out.emplace_back(line.substr(0, comma),
                       static_cast<uint32_t>(std::stoul(line.substr(comma + 1))));
    } catch (const std::logic_error&) {
      throw ParseError(path + ": malformed cluster index: " + line);
    }
  }
  return out;
}

void save_scatter_csv(const Embedding& e, const Clustering& c, uint32_t ci, uint32_t cj,
                      const std::string& path) {
  if (ci == 0 || cj == 0 || ci > e.retained || cj > e.retained)
    throw std::invalid_argument("scatter: component out of range");
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id,pc" << ci << ",pc" << cj << ",cluster\n";
  char buf[80];
  for (size_t r = 0; r < e.ids.size(); ++r) {
    std::snprintf(buf, sizeof buf, ",%.9f,%.9f,", e.coords(static_cast<Eigen::Index>(r), ci - 1),
                  e.coords(static_cast<Eigen::Index>(r), cj - 1));
    f << e.ids[r] << buf << c.assignments[r] << '\n';
  }
}

}  // namespace trc
