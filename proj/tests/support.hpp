#pragma once

#include "oracle.hpp"
#include "sparsevr/diagram.hpp"
#include "sparsevr/io.hpp"
#include "sparsevr/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace support {

inline sparsevr::FiniteMetricSpace line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return sparsevr::FiniteMetricSpace::from_points(sparsevr::make_point_cloud(rows));
}

inline sparsevr::FiniteMetricSpace planar(const std::vector<std::vector<double>>& pts) {
  return sparsevr::FiniteMetricSpace::from_points(sparsevr::make_point_cloud(pts));
}

inline sparsevr::FiniteMetricSpace random_planar(std::mt19937_64& gen, int n) {
  return planar(oracle::random_points(gen, n));
}

inline sparsevr::FiniteMetricSpace unit_square() {
  return planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

/// The subspace M_k as its own metric space, points in traversal order.
inline sparsevr::FiniteMetricSpace prefix_space(const sparsevr::FiniteMetricSpace& space,
                                                const sparsevr::GreedyPermutation& perm) {
  return sparsevr::FiniteMetricSpace::from_matrix(space.submatrix(perm.order));
}

inline oracle::Table table_of(const sparsevr::FiniteMetricSpace& space) {
  const auto n = static_cast<std::size_t>(space.size());
  oracle::Table t(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i][j] = space(static_cast<sparsevr::Index>(i), static_cast<sparsevr::Index>(j));
  return t;
}

inline std::vector<oracle::Point> points_of(const sparsevr::PersistenceDiagram& pd) {
  std::vector<oracle::Point> out;
  for (const auto& p : pd.points) out.push_back({p.dim, p.birth, p.death});
  std::sort(out.begin(), out.end());
  return out;
}

/// Multiset equality after sorting, entries within tol (infinities equal).
inline bool same_points(const std::vector<oracle::Point>& a, const std::vector<oracle::Point>& b,
                        double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  auto close = [tol](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::abs(x - y) <= tol;
  };
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].dim != b[i].dim || !close(a[i].birth, b[i].birth) || !close(a[i].death, b[i].death)) return false;
  return true;
}

inline std::set<oracle::Cell> cells_of(const sparsevr::SimplicialComplex& c) {
  std::set<oracle::Cell> out;
  for (const auto& s : c.simplices()) out.insert(oracle::Cell(s.begin(), s.end()));
  return out;
}

}  // namespace support
