#pragma once

#include "sparsevr/metric.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sparsevr {

/// Prefix p_1..p_k of a farthest-first traversal.
///
/// order[i] is the point index of p_{i+1}; rad[i] its insertion radius
/// (rad[0] = +inf). distance_to_prefix(q) is the distance of every point of
/// the space to {p_1..p_k}, which is what lets the traversal be extended
/// without starting over.
struct GreedyPermutation {
  std::vector<Index> order;
  std::vector<double> rad;
  Eigen::VectorXd distance_to_prefix;

  Index size() const { return static_cast<Index>(order.size()); }
  /// max_q d(q, {p_1..p_k}): the k-center cost of the prefix.
  double covering_radius() const;
};

/// Gonzalez traversal in O(kn) distance evaluations. Ties in the arg max go
/// to the smallest point index.
GreedyPermutation farthest_first(const FiniteMetricSpace& space, Index k, Index start = 0);

/// Continues an existing traversal up to k points.
void extend(const FiniteMetricSpace& space, GreedyPermutation& perm, Index k);

/// Rebuilds residual distances for a traversal given only its order (for
/// example one read back from disk), then continues it to k points.
GreedyPermutation resume(const FiniteMetricSpace& space, const std::vector<Index>& order,
                         Index k);

/// Deletion times time(p) = rad(p) / (eps (1 - 2 eps)), indexed by traversal
/// position. time[0] = +inf.
struct DeletionSchedule {
  double epsilon = 0.0;
  std::vector<double> time;

  Index size() const { return static_cast<Index>(time.size()); }
};

/// Throws unless 0 < epsilon < 1/3.
void check_epsilon(double epsilon);

DeletionSchedule schedule(const GreedyPermutation& perm, double epsilon);

/// Traversal positions whose deletion time is strictly greater than alpha.
std::vector<Index> level(const DeletionSchedule& sched, double alpha);

/// Exact k-center cost by exhaustive search over k-subsets of the space.
/// Guarded by a size cap because the search is combinatorial.
double optimal_kcenter(const FiniteMetricSpace& space, Index k, Index cap = 14);

}  // namespace sparsevr
