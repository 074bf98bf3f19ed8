#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace sparsevr {

using Index = std::ptrdiff_t;

namespace tolerance {
/// Slack used by every "<=" comparison on distances and scales.
inline constexpr double kCompare = 1e-9;
/// Maximum allowed |d(i,j) - d(j,i)| for a full distance table.
inline constexpr double kSymmetry = 1e-12;
}  // namespace tolerance

enum class Norm { Euclidean, Manhattan, Chebyshev };

/// n points in R^d stored row-wise.
struct PointCloud {
  Eigen::MatrixXd points;  // n x d
  Norm norm = Norm::Euclidean;

  Index size() const { return points.rows(); }
  Index dimension() const { return points.cols(); }
};

/// Builds a point cloud from ragged rows, rejecting empty input and rows of
/// differing length.
PointCloud make_point_cloud(const std::vector<std::vector<double>>& rows,
                            Norm norm = Norm::Euclidean);

/// A finite metric space. Distances are either held in an explicit table or
/// evaluated on demand from coordinates; the object is immutable after
/// construction.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_points(PointCloud cloud);
  static FiniteMetricSpace from_matrix(const Eigen::MatrixXd& table);
  /// Row r (1-based, r = 1..n-1) holds the r entries d(r,0..r-1).
  static FiniteMetricSpace from_lower_triangular(
      const std::vector<std::vector<double>>& rows);

  Index size() const { return n_; }
  double operator()(Index i, Index j) const;
  double distance(Index i, Index j) const { return (*this)(i, j); }

  /// Distances from point i to every point, written into out (size n).
  void distances_from(Index i, Eigen::Ref<Eigen::VectorXd> out) const;

  /// Dense table restricted to the given points, in the given order.
  Eigen::MatrixXd submatrix(const std::vector<Index>& idx) const;

  bool has_coordinates() const { return has_cloud_; }
  const PointCloud& cloud() const { return cloud_; }

 private:
  FiniteMetricSpace() = default;

  Index n_ = 0;
  bool has_cloud_ = false;
  PointCloud cloud_;
  Eigen::MatrixXd table_;
};

/// max / min distance over distinct pairs; +inf when two distinct indices
/// coincide. Throws for n < 2.
double spread(const FiniteMetricSpace& space);

/// Triples (i, k, j) with d(i,k) > d(i,j) + d(j,k) + tolerance.
std::vector<std::array<Index, 3>> validate_triangle(
    const FiniteMetricSpace& space, double tol = tolerance::kCompare);

}  // namespace sparsevr
