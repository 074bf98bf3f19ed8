#pragma once

#include "sparsevr/greedy.hpp"
#include "sparsevr/metric.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace sparsevr {

/// Piecewise-linear weight of a point with the given deletion time:
///   0                          for alpha <= (1-2eps) time
///   (alpha - (1-2eps) time)/2  on [(1-2eps) time, time]
///   eps * alpha                for alpha >= time
/// and identically 0 when time is +inf. The middle slope of 1/2 is the one
/// that makes the function continuous at both breakpoints.
double weight(double alpha, double epsilon, double time);

/// Right derivative of weight() in alpha.
double weight_slope(double alpha, double epsilon, double time);

/// Relaxed geometry on the selected prefix M_k. Vertices are traversal
/// positions 0..k-1 (position 0 is p_1).
class Relaxation {
 public:
  Relaxation(const FiniteMetricSpace& space, const GreedyPermutation& perm,
             const DeletionSchedule& sched);
  /// Direct construction from a k x k table and per-vertex deletion times.
  Relaxation(Eigen::MatrixXd dist, std::vector<double> time, double epsilon);

  Index size() const { return dist_.rows(); }
  double epsilon() const { return epsilon_; }
  double time(Index i) const { return time_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& times() const { return time_; }
  double distance(Index i, Index j) const { return dist_(i, j); }
  const Eigen::MatrixXd& distances() const { return dist_; }

  double weight(Index i, double alpha) const;
  /// D_alpha(i,j) = D(i,j) + w_alpha(i) + w_alpha(j).
  double relaxed_distance(double alpha, Index i, Index j) const;

 private:
  Eigen::MatrixXd dist_;
  std::vector<double> time_;
  double epsilon_;
};

/// Projection onto a level: identity on the level, otherwise the level
/// vertex of minimal relaxed distance (smallest position on ties).
Index project(const Relaxation& relax, double alpha, Index p, const std::vector<Index>& level);

/// inf { alpha >= 0 : D_alpha(i,j) <= alpha }, ignoring deletion times.
/// f(alpha) = D_alpha(i,j) - alpha is piecewise linear and non-increasing, so
/// the root is found by walking the breakpoints.
double edge_root(const Relaxation& relax, Index i, Index j);

/// The edge's insertion scale in the sparse complex: edge_root(i,j) when it
/// falls strictly before both endpoints are deleted, nullopt otherwise.
std::optional<double> edge_critical_value(const Relaxation& relax, Index i, Index j);

struct CriticalEvent {
  enum class Kind { EdgeInsertion, VertexDeletion };

  double alpha = 0.0;
  Kind kind = Kind::VertexDeletion;
  Index i = 0;   // deleted vertex, or the larger edge endpoint
  Index j = -1;  // smaller edge endpoint; -1 for deletions

  friend bool operator==(const CriticalEvent&, const CriticalEvent&) = default;
};

/// All vertex deletions (positions >= 1) and admissible edge insertions,
/// sorted by alpha; at equal alpha insertions precede deletions, then
/// (i, j) ascending.
std::vector<CriticalEvent> critical_events(const Relaxation& relax);

/// E(p_i): positions j < i with D_alpha(i,j) < alpha at alpha = time(i).
std::vector<Index> neighbor_set(const Relaxation& relax, Index i);

}  // namespace sparsevr
