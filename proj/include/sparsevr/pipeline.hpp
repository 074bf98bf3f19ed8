#pragma once

#include "sparsevr/complex.hpp"
#include "sparsevr/greedy.hpp"
#include "sparsevr/metric.hpp"
#include "sparsevr/persistence.hpp"
#include "sparsevr/sparse.hpp"

#include <cstddef>
#include <vector>

namespace sparsevr {

inline constexpr double kAutoExponent = 0.727;

/// ceil(n^exponent), clamped to [1, n].
Index auto_k(Index n, double exponent = kAutoExponent);

struct StageTimes {
  double greedy_ms = 0.0;
  double events_ms = 0.0;
  double persistence_ms = 0.0;
  double total() const { return greedy_ms + events_ms + persistence_ms; }
};

struct SparseResult {
  GreedyPermutation perm;
  DeletionSchedule sched;
  std::vector<CriticalEvent> critical;
  ZigzagEventStream stream;
  PersistenceDiagram diagram;
  std::size_t max_neighbors = 0;  // max_i |E(p_i)|
  StageTimes times;

  /// 2 rad(p_k) / (1 - 2 eps); informational only.
  double predicted_error() const;
};

/// Traversal, sparse zigzag up to simplices of dimension max_dim + 1, and
/// zigzag persistence in dimensions 0..max_dim.
SparseResult sparse_pipeline(const FiniteMetricSpace& space, Index k, double epsilon, int max_dim,
                             Index start = 0, bool with_persistence = true);

/// Brute-force Vietoris-Rips diagram in dimensions 0..max_dim.
PersistenceDiagram exact_diagram(const FiniteMetricSpace& space, int max_dim, Index cap = 25);

/// Diagram of the ascending relaxed Vietoris-Rips filtration on M_k.
PersistenceDiagram relaxed_diagram(const Relaxation& relax, int max_dim);

}  // namespace sparsevr
