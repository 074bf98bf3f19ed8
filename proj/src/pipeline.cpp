#include "sparsevr/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sparsevr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

Index auto_k(Index n, double exponent) {
  const auto k = static_cast<Index>(std::ceil(std::pow(static_cast<double>(n), exponent)));
  return std::clamp<Index>(k, 1, n);
}

double SparseResult::predicted_error() const {
  return 2.0 * perm.rad.back() / (1.0 - 2.0 * sched.epsilon);
}

SparseResult sparse_pipeline(const FiniteMetricSpace& space, Index k, double epsilon, int max_dim,
                             Index start, bool with_persistence) {
  check_epsilon(epsilon);
  SparseResult r;
  auto t0 = Clock::now();
  r.perm = farthest_first(space, k, start);
  r.sched = schedule(r.perm, epsilon);
  r.times.greedy_ms = ms_since(t0);

  t0 = Clock::now();
  const Relaxation relax(space, r.perm, r.sched);
  r.critical = critical_events(relax);
  r.stream = sparse_zigzag_events(k, r.critical, max_dim + 1);
  r.times.events_ms = ms_since(t0);

  std::vector<std::size_t> degree(static_cast<std::size_t>(k), 0);
  for (const auto& e : r.critical) {
    // Edges with critical value below time(p_i) are exactly those alive
    // just below the deletion of their larger endpoint.
    if (e.kind == CriticalEvent::Kind::EdgeInsertion) ++degree[static_cast<std::size_t>(e.i)];
  }
  r.max_neighbors = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

  if (with_persistence) {
    t0 = Clock::now();
    r.diagram = zigzag_persistence(r.stream, max_dim);
    r.times.persistence_ms = ms_since(t0);
  }
  return r;
}

PersistenceDiagram exact_diagram(const FiniteMetricSpace& space, int max_dim, Index cap) {
  return reduce_standard(vr_filtration_events(space, max_dim + 1, cap), max_dim);
}

PersistenceDiagram relaxed_diagram(const Relaxation& relax, int max_dim) {
  return reduce_standard(rvr_filtration_events(relax, max_dim + 1), max_dim);
}

}  // namespace sparsevr
