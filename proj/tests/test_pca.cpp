#include <doctest.h>

#include "pca.hpp"
#include "rng.hpp"

using namespace trc;

namespace {

CensusMatrix census_from(const Eigen::MatrixXd& m) {
  CensusMatrix c;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::array<double, kTriadClassCount> row{};
    for (int j = 0; j < kTriadClassCount; ++j) row[j] = m(r, j);
    c.rows.push_back(row);
    c.pair_counts.push_back(1);
    c.ego_ids.push_back("n" + std::to_string(r));
  }
  return c;
}

Eigen::MatrixXd random_matrix(Eigen::Index n, Eigen::Index d, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("points on a line: first ratio 1, rest 0") {
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(kTriadClassCount);
  dir(0) = 3.0;
  dir(5) = -4.0;
  Eigen::MatrixXd data(6, kTriadClassCount);
  for (int i = 0; i < 6; ++i) data.row(i) = (static_cast<double>(i) * dir).transpose();
  PcaModel m = pca_fit_matrix(data);
  CHECK(m.explained_variance_ratio(0) == doctest::Approx(1.0));
  for (Eigen::Index i = 1; i < m.explained_variance_ratio.size(); ++i)
    CHECK(m.explained_variance_ratio(i) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("orthonormal components, non-increasing ratios") {
  Eigen::MatrixXd data = random_matrix(200, kTriadClassCount, 1);
  PcaModel m = pca_fit_matrix(data);
  Eigen::MatrixXd gram = m.components.transpose() * m.components;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
  for (Eigen::Index i = 1; i < m.explained_variance_ratio.size(); ++i)
    CHECK(m.explained_variance_ratio(i) <= m.explained_variance_ratio(i - 1) + 1e-12);
  double sum = m.explained_variance_ratio.sum();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("full-rank reconstruction round trip") {
  Eigen::MatrixXd data = random_matrix(200, kTriadClassCount, 2);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  Embedding e = pca_transform(m, census, kTriadClassCount);
  Eigen::MatrixXd rebuilt =
      (e.coords * m.components.transpose()).rowwise() + m.mean.transpose();
  CHECK((rebuilt - data).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("m = full rank preserves pairwise distances") {
  Eigen::MatrixXd data = random_matrix(60, kTriadClassCount, 3);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  Embedding e = pca_transform(m, census, kTriadClassCount);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      double orig = (data.row(i) - data.row(j)).norm();
      double emb = (e.coords.row(i) - e.coords.row(j)).norm();
      CHECK(emb == doctest::Approx(orig).epsilon(1e-8));
    }
}

TEST_CASE("transforming the mean gives the zero vector") {
  Eigen::MatrixXd data = random_matrix(50, kTriadClassCount, 4);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  Eigen::MatrixXd mean_row = m.mean.transpose();
  CensusMatrix one = census_from(mean_row);
  Embedding e = pca_transform(m, one, 5);
  CHECK(e.coords.row(0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embedding column variance equals the eigenvalue") {
  Eigen::MatrixXd data = random_matrix(300, kTriadClassCount, 5);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  Embedding e = pca_transform(m, census, 6);
  for (uint32_t j = 0; j < 6; ++j) {
    Eigen::VectorXd col = e.coords.col(j);
    double mean = col.mean();
    double var = (col.array() - mean).square().sum() / static_cast<double>(col.size());
    CHECK(var == doctest::Approx(m.eigenvalues(j)).epsilon(1e-6));
  }
}

TEST_CASE("choose_dimensions thresholds") {
  PcaModel m;
  m.explained_variance_ratio.resize(4);
  m.explained_variance_ratio << 0.9, 0.1, 0.0, 0.0;
  CHECK(choose_dimensions(m, 0.85) == 1);
  m.explained_variance_ratio.resize(5);
  m.explained_variance_ratio << 0.5, 0.3, 0.1, 0.06, 0.04;
  CHECK(choose_dimensions(m, 0.85) == 3);
  CHECK_THROWS_AS(choose_dimensions(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_dimensions(m, 1.0), std::invalid_argument);

  // zero-variance data never exceeds the threshold: keep everything
  PcaModel z;
  z.explained_variance_ratio = Eigen::VectorXd::Zero(3);
  CHECK(choose_dimensions(z, 0.85) == 3);
}

TEST_CASE("deterministic fit with a fixed sign convention") {
  Eigen::MatrixXd data = random_matrix(80, kTriadClassCount, 6);
  PcaModel a = pca_fit_matrix(data);
  PcaModel b = pca_fit_matrix(data);
  CHECK((a.components - b.components).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index c = 0; c < a.components.cols(); ++c) {
    Eigen::Index arg = 0;
    a.components.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(a.components(arg, c) > 0.0);
  }
}

TEST_CASE("pca_fit rejects fewer than 2 rows; transform checks its range") {
  Eigen::MatrixXd one = random_matrix(1, kTriadClassCount, 7);
  CHECK_THROWS_AS(pca_fit_matrix(one), std::invalid_argument);

  Eigen::MatrixXd data = random_matrix(20, kTriadClassCount, 9);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  CHECK_THROWS_AS(pca_transform(m, census, 0), std::invalid_argument);
  CHECK_THROWS_AS(pca_transform(m, census, kTriadClassCount + 1), std::invalid_argument);
}

TEST_CASE("embedding csv round trip is exact") {
  Eigen::MatrixXd data = random_matrix(30, kTriadClassCount, 8);
  CensusMatrix census = census_from(data);
  PcaModel m = pca_fit(census);
  Embedding e = pca_transform(m, census, 4);
  std::string path = "/tmp/trc-test-pca-emb.csv";
  save_embedding_csv(e, path);
  Embedding r = load_embedding_csv(path);
  REQUIRE(r.ids == e.ids);
  REQUIRE(r.retained == e.retained);
  CHECK((r.coords - e.coords).cwiseAbs().maxCoeff() == 0.0);
}
