#include "sparsevr/metric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparsevr {

namespace {

double norm_of(const Eigen::Ref<const Eigen::RowVectorXd>& v, Norm norm) {
  switch (norm) {
    case Norm::Euclidean:
      return v.norm();
    case Norm::Manhattan:
      return v.lpNorm<1>();
    case Norm::Chebyshev:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return v.norm();
}

void check_index(Index i, Index n) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("point index " + std::to_string(i) +
                            " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

PointCloud make_point_cloud(const std::vector<std::vector<double>>& rows,
                            Norm norm) {
  if (rows.empty()) throw std::invalid_argument("empty point cloud");
  const auto d = static_cast<Index>(rows.front().size());
  if (d == 0) throw std::invalid_argument("points must have at least one coordinate");
  PointCloud cloud;
  cloud.norm = norm;
  cloud.points.resize(static_cast<Index>(rows.size()), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<Index>(rows[r].size()) != d) {
      throw std::invalid_argument("point " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) +
                                  " coordinates, expected " + std::to_string(d));
    }
    for (Index c = 0; c < d; ++c) cloud.points(static_cast<Index>(r), c) = rows[r][c];
  }
  return cloud;
}

FiniteMetricSpace FiniteMetricSpace::from_points(PointCloud cloud) {
  if (cloud.size() == 0) throw std::invalid_argument("empty point cloud");
  if (cloud.dimension() == 0) throw std::invalid_argument("points must have at least one coordinate");
  if (!cloud.points.allFinite()) throw std::invalid_argument("non-finite coordinate");
  FiniteMetricSpace s;
  s.n_ = cloud.size();
  s.has_cloud_ = true;
  s.cloud_ = std::move(cloud);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const Eigen::MatrixXd& table) {
  if (table.rows() == 0) throw std::invalid_argument("empty distance table");
  if (table.rows() != table.cols()) throw std::invalid_argument("distance table is not square");
  const Index n = table.rows();
  for (Index i = 0; i < n; ++i) {
    if (table(i, i) != 0.0) {
      throw std::invalid_argument("nonzero diagonal at " + std::to_string(i));
    }
    for (Index j = 0; j < n; ++j) {
      if (!std::isfinite(table(i, j))) throw std::invalid_argument("non-finite distance");
      if (table(i, j) < 0.0) {
        throw std::invalid_argument("negative distance at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
      if (std::abs(table(i, j) - table(j, i)) > tolerance::kSymmetry) {
        throw std::invalid_argument("asymmetric distance table at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
  FiniteMetricSpace s;
  s.n_ = n;
  s.table_ = (table + table.transpose()) / 2.0;
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_lower_triangular(
    const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Index>(rows.size()) + 1;
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  for (Index r = 1; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r - 1)];
    if (static_cast<Index>(row.size()) != r) {
      throw std::invalid_argument("lower-triangular row " + std::to_string(r) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(r));
    }
    for (Index c = 0; c < r; ++c) {
      table(r, c) = row[static_cast<std::size_t>(c)];
      table(c, r) = table(r, c);
    }
  }
  return from_matrix(table);
}

double FiniteMetricSpace::operator()(Index i, Index j) const {
  check_index(i, n_);
  check_index(j, n_);
  if (!has_cloud_) return table_(i, j);
  if (i == j) return 0.0;
  return norm_of(cloud_.points.row(i) - cloud_.points.row(j), cloud_.norm);
}

void FiniteMetricSpace::distances_from(Index i, Eigen::Ref<Eigen::VectorXd> out) const {
  check_index(i, n_);
  if (out.size() != n_) throw std::invalid_argument("output size mismatch");
  if (!has_cloud_) {
    out = table_.col(i);
    return;
  }
  const auto diff = (cloud_.points.rowwise() - cloud_.points.row(i)).eval();
  switch (cloud_.norm) {
    case Norm::Euclidean:
      out = diff.rowwise().norm();
      break;
    case Norm::Manhattan:
      out = diff.cwiseAbs().rowwise().sum();
      break;
    case Norm::Chebyshev:
      out = diff.cwiseAbs().rowwise().maxCoeff();
      break;
  }
  out(i) = 0.0;
}

Eigen::MatrixXd FiniteMetricSpace::submatrix(const std::vector<Index>& idx) const {
  const auto k = static_cast<Index>(idx.size());
  Eigen::MatrixXd sub(k, k);
  for (Index a = 0; a < k; ++a) {
    sub(a, a) = 0.0;
    for (Index b = 0; b < a; ++b) {
      sub(a, b) = (*this)(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
      sub(b, a) = sub(a, b);
    }
  }
  return sub;
}

double spread(const FiniteMetricSpace& space) {
  const Index n = space.size();
  if (n < 2) throw std::invalid_argument("spread needs at least two points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      const double d = space(i, j);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

std::vector<std::array<Index, 3>> validate_triangle(const FiniteMetricSpace& space,
                                                    double tol) {
  std::vector<std::array<Index, 3>> bad;
  const Index n = space.size();
  for (Index i = 0; i < n; ++i) {
    for (Index k = i + 1; k < n; ++k) {
      const double dik = space(i, k);
      for (Index j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (dik > space(i, j) + space(j, k) + tol) bad.push_back({i, k, j});
      }
    }
  }
  return bad;
}

}  // namespace sparsevr
