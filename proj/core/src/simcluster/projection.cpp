#include "collabrec/simcluster/projection.hpp"

#include <Eigen/Dense>

#include "collabrec/error.hpp"

namespace collabrec::simcluster {
namespace {

void fix_sign(Eigen::VectorXd& loading) {
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < loading.size(); ++i) {
    if (std::abs(loading(i)) > std::abs(loading(arg))) arg = i;
  }
  if (loading(arg) < 0) loading = -loading;
}

}  // namespace

Projection project_2d(std::span<const std::vector<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n < 2) throw validation_error("projection needs at least two vectors");
  const auto d = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != d) {
      throw validation_error("projection: rows differ in length");
    }
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  Projection out;
  out.points.assign(rows.size(), {0.0, 0.0});
  const double total = x.squaredNorm();
  if (total == 0.0 || d == 0) {
    out.degenerate = true;
    return out;
  }

  // Loadings from whichever Gram form is smaller.
  std::vector<Eigen::VectorXd> loadings;
  std::vector<double> variances;
  if (d <= n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.transpose() * x);
    for (int c = 0; c < 2 && c < d; ++c) {
      loadings.push_back(eig.eigenvectors().col(d - 1 - c));
      variances.push_back(eig.eigenvalues()(d - 1 - c));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x * x.transpose());
    for (int c = 0; c < 2 && c < n; ++c) {
      const Eigen::VectorXd u = eig.eigenvectors().col(n - 1 - c);
      Eigen::VectorXd v = x.transpose() * u;
      const double len = v.norm();
      if (len > 0) v /= len;
      loadings.push_back(v);
      variances.push_back(eig.eigenvalues()(n - 1 - c));
    }
  }

  const double cutoff = 1e-12 * variances.front();
  for (std::size_t c = 0; c < loadings.size(); ++c) {
    if (variances[c] <= cutoff) continue;
    fix_sign(loadings[c]);
    const Eigen::VectorXd scores = x * loadings[c];
    for (Eigen::Index i = 0; i < n; ++i) out.points[static_cast<std::size_t>(i)][c] = scores(i);
  }
  return out;
}

Projection project_2d(std::span<const vectorize::Representation> vectors) {
  std::vector<std::vector<double>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(vectorize::to_dense(v));
  return project_2d(rows);
}

}  // namespace collabrec::simcluster
