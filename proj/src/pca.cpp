#include "pca.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace trc {

Eigen::MatrixXd census_as_matrix(const CensusMatrix& census) {
  Eigen::MatrixXd m(census.rows.size(), kTriadClassCount);
  for (size_t r = 0; r < census.rows.size(); ++r)
    for (int c = 0; c < kTriadClassCount; ++c) m(static_cast<Eigen::Index>(r), c) = census.rows[r][c];
  return m;
}

PcaModel pca_fit_matrix(const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows(), d = data.cols();
  if (n < 2) throw std::invalid_argument("pca_fit needs at least 2 rows");

  PcaModel model;
  model.mean = data.colwise().mean();
  Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

  // ascending from Eigen; reorder to descending
  model.eigenvalues.resize(d);
  model.components.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double ev = solver.eigenvalues()(d - 1 - i);
    model.eigenvalues(i) = ev > 0.0 ? ev : 0.0;
    model.components.col(i) = solver.eigenvectors().col(d - 1 - i);
  }

  // sign convention: largest-magnitude coordinate positive
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index arg = 0;
    model.components.col(i).cwiseAbs().maxCoeff(&arg);
    if (model.components(arg, i) < 0.0) model.components.col(i) = -model.components.col(i);
  }

  double trace = model.eigenvalues.sum();
  model.explained_variance_ratio =
      trace > 0.0 ? (model.eigenvalues / trace).eval() : Eigen::VectorXd::Zero(d).eval();
  return model;
}

PcaModel pca_fit(const CensusMatrix& census) { return pca_fit_matrix(census_as_matrix(census)); }

uint32_t choose_dimensions(const PcaModel& model, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0))
    throw std::invalid_argument("threshold must be in (0, 1)");
  double cum = 0.0;
  for (Eigen::Index i = 0; i < model.explained_variance_ratio.size(); ++i) {
    cum += model.explained_variance_ratio(i);
    if (cum > threshold) return static_cast<uint32_t>(i + 1);
  }
  return static_cast<uint32_t>(model.explained_variance_ratio.size());
}

Embedding pca_transform(const PcaModel& model, const CensusMatrix& census, uint32_t m) {
  if (m == 0 || static_cast<Eigen::Index>(m) > model.components.cols())
    throw std::invalid_argument("pca_transform: dimension out of range");
  Eigen::MatrixXd data = census_as_matrix(census);
  if (data.cols() != model.mean.size())
    throw std::invalid_argument("pca_transform: dimension mismatch");

  Embedding e;
  e.ids = census.ego_ids;
  e.coords = (data.rowwise() - model.mean.transpose()) * model.components.leftCols(m);
  e.retained = m;
  e.cum_variance = model.explained_variance_ratio.head(m).sum();
  return e;
}

void save_scree_csv(const PcaModel& model, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "component,ratio,cumulative\n";
  char buf[96];
  double cum = 0.0;
  for (Eigen::Index i = 0; i < model.explained_variance_ratio.size(); ++i) {
    cum += model.explained_variance_ratio(i);
    std::snprintf(buf, sizeof buf, "%ld,%.9f,%.9f\n", static_cast<long>(i + 1),
                  model.explained_variance_ratio(i), cum);
    f << buf;
  }
}

void save_embedding_csv(const Embedding& e, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ego_id";
  for (uint32_t c = 1; c <= e.retained; ++c) f << ",pc" << c;
  f << '\n';
  char buf[40];
  for (size_t r = 0; r < e.ids.size(); ++r) {
    f << e.ids[r];
    for (uint32_t c = 0; c < e.retained; ++c) {
      // %.17g round-trips doubles exactly, keeping staged runs identical to
      // in-process ones
      std::snprintf(buf, sizeof buf, ",%.17g", e.coords(static_cast<Eigen::Index>(r), c));
      f << buf;
    }
    f << '\n';
  }
}

Embedding load_embedding_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open embedding csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ParseError(path + ": empty file");
  size_t cols = static_cast<size_t>(std::count(line.begin(), line.end(), ','));
  Embedding e;
  e.retained = static_cast<uint32_t>(cols);
  std::vector<std::vector<double>> rows;
  uint64_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::istringstream ss(line);
      std::string field;
      if (!std::getline(ss, field, ',')) throw ParseError(path + ":" + std::to_string(lineno));
      e.ids.push_back(field);
      std::vector<double> row;
      while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
      if (row.size() != cols)
        throw ParseError(path + ":" + std::to_string(lineno) + ": inconsistent column count");
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed embedding row");
    }
  }
  e.coords.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols; ++c)
      e.coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return e;
}

}  // namespace trc
