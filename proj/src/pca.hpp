#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "census.hpp"

namespace trc {

struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;  // one orthonormal component per column, by descending eigenvalue
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd explained_variance_ratio;
};

struct Embedding {
  std::vector<std::string> ids;  // row ego ids, aligned with the census
  Eigen::MatrixXd coords;        // rows x retained
  uint32_t retained = 0;
  double cum_variance = 0.0;
};

// Population-covariance eigendecomposition (no per-feature standardization:
// census components are commensurate proportions). Component signs are fixed
// by making each component's largest-magnitude coordinate positive, so runs
// are bit-reproducible.
PcaModel pca_fit_matrix(const Eigen::MatrixXd& data);
PcaModel pca_fit(const CensusMatrix& census);

// Smallest m with cumulative ratio > threshold; all components if the
// threshold is never exceeded (zero-variance data).
uint32_t choose_dimensions(const PcaModel& model, double threshold = 0.85);

Embedding pca_transform(const PcaModel& model, const CensusMatrix& census, uint32_t m);
Eigen::MatrixXd census_as_matrix(const CensusMatrix& census);

void save_scree_csv(const PcaModel& model, const std::string& path);
void save_embedding_csv(const Embedding& e, const std::string& path);
Embedding load_embedding_csv(const std::string& path);

}  // namespace trc
