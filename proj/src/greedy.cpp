#include "sparsevr/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparsevr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double GreedyPermutation::covering_radius() const {
  return distance_to_prefix.size() == 0 ? 0.0 : distance_to_prefix.maxCoeff();
}

GreedyPermutation farthest_first(const FiniteMetricSpace& space, Index k, Index start) {
  const Index n = space.size();
  if (k < 1 || k > n) {
    throw std::out_of_range("k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  if (start < 0 || start >= n) {
    throw std::out_of_range("start index " + std::to_string(start) + " out of range");
  }
  GreedyPermutation perm;
  perm.order.push_back(start);
  perm.rad.push_back(kInf);
  perm.distance_to_prefix.resize(n);
  space.distances_from(start, perm.distance_to_prefix);
  extend(space, perm, k);
  return perm;
}

void extend(const FiniteMetricSpace& space, GreedyPermutation& perm, Index k) {
  const Index n = space.size();
  if (k < perm.size() || k > n) {
    throw std::out_of_range("cannot extend traversal of " + std::to_string(perm.size()) +
                            " points to " + std::to_string(k));
  }
  Eigen::VectorXd row(n);
  perm.order.reserve(static_cast<std::size_t>(k));
  perm.rad.reserve(static_cast<std::size_t>(k));
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  for (Index p : perm.order) chosen[static_cast<std::size_t>(p)] = 1;
  while (perm.size() < k) {
    // Strict comparison keeps the smallest index on ties. Chosen points are
    // skipped explicitly so duplicates (residual 0) cannot be picked twice.
    Index next = -1;
    double r = -1.0;
    for (Index q = 0; q < n; ++q) {
      if (!chosen[static_cast<std::size_t>(q)] && perm.distance_to_prefix(q) > r) {
        r = perm.distance_to_prefix(q);
        next = q;
      }
    }
    chosen[static_cast<std::size_t>(next)] = 1;
    perm.order.push_back(next);
    perm.rad.push_back(r);
    space.distances_from(next, row);
    perm.distance_to_prefix = perm.distance_to_prefix.cwiseMin(row);
    perm.distance_to_prefix(next) = 0.0;
  }
}

GreedyPermutation resume(const FiniteMetricSpace& space, const std::vector<Index>& order,
                         Index k) {
  if (order.empty()) throw std::invalid_argument("cannot resume an empty traversal");
  const Index n = space.size();
  GreedyPermutation perm;
  perm.distance_to_prefix = Eigen::VectorXd::Constant(n, kInf);
  Eigen::VectorXd row(n);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index p : order) {
    if (p < 0 || p >= n) throw std::out_of_range("traversal index out of range");
    if (seen[static_cast<std::size_t>(p)]) throw std::invalid_argument("repeated traversal index");
    seen[static_cast<std::size_t>(p)] = 1;
    perm.rad.push_back(perm.order.empty() ? kInf : perm.distance_to_prefix(p));
    perm.order.push_back(p);
    space.distances_from(p, row);
    perm.distance_to_prefix = perm.distance_to_prefix.cwiseMin(row);
    perm.distance_to_prefix(p) = 0.0;
  }
  extend(space, perm, k);
  return perm;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1/3), got " + std::to_string(epsilon));
  }
}

DeletionSchedule schedule(const GreedyPermutation& perm, double epsilon) {
  check_epsilon(epsilon);
  DeletionSchedule s;
  s.epsilon = epsilon;
  const double scale = epsilon * (1.0 - 2.0 * epsilon);
  s.time.reserve(perm.rad.size());
  for (std::size_t i = 0; i < perm.rad.size(); ++i) {
    s.time.push_back(i == 0 ? kInf : perm.rad[i] / scale);
  }
  return s;
}

std::vector<Index> level(const DeletionSchedule& sched, double alpha) {
  std::vector<Index> out;
  for (Index i = 0; i < sched.size(); ++i) {
    if (sched.time[static_cast<std::size_t>(i)] > alpha) out.push_back(i);
  }
  return out;
}

double optimal_kcenter(const FiniteMetricSpace& space, Index k, Index cap) {
  const Index n = space.size();
  if (n > cap) {
    throw std::invalid_argument("optimal_kcenter: n = " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
  }
  if (k < 1 || k > n) throw std::out_of_range("k out of range");
  Eigen::MatrixXd d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) = space(i, j);

  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  double best = kInf;
  // prev_permutation over a 1..10..0 mask enumerates every k-subset once.
  do {
    double cost = 0.0;
    for (Index p = 0; p < n && cost < best; ++p) {
      double nearest = kInf;
      for (Index c = 0; c < n; ++c) {
        if (pick[static_cast<std::size_t>(c)]) nearest = std::min(nearest, d(p, c));
      }
      cost = std::max(cost, nearest);
    }
    best = std::min(best, cost);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace sparsevr
