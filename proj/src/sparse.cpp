#include "sparsevr/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace sparsevr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double weight(double alpha, double epsilon, double time) {
  if (std::isinf(time)) return 0.0;
  const double ramp = (1.0 - 2.0 * epsilon) * time;
  if (alpha <= ramp) return 0.0;
  if (alpha <= time) return (alpha - ramp) / 2.0;
  return epsilon * alpha;
}

double weight_slope(double alpha, double epsilon, double time) {
  if (std::isinf(time)) return 0.0;
  if (alpha < (1.0 - 2.0 * epsilon) * time) return 0.0;
  if (alpha < time) return 0.5;
  return epsilon;
}

Relaxation::Relaxation(const FiniteMetricSpace& space, const GreedyPermutation& perm,
                       const DeletionSchedule& sched)
    : dist_(space.submatrix(perm.order)), time_(sched.time), epsilon_(sched.epsilon) {
  if (sched.size() != perm.size()) {
    throw std::invalid_argument("schedule and traversal sizes differ");
  }
}

Relaxation::Relaxation(Eigen::MatrixXd dist, std::vector<double> time, double epsilon)
    : dist_(std::move(dist)), time_(std::move(time)), epsilon_(epsilon) {
  check_epsilon(epsilon_);
  if (dist_.rows() != dist_.cols() || dist_.rows() != static_cast<Index>(time_.size())) {
    throw std::invalid_argument("distance table and times disagree in size");
  }
}

double Relaxation::weight(Index i, double alpha) const {
  return sparsevr::weight(alpha, epsilon_, time(i));
}

double Relaxation::relaxed_distance(double alpha, Index i, Index j) const {
  return dist_(i, j) + weight(i, alpha) + weight(j, alpha);
}

Index project(const Relaxation& relax, double alpha, Index p, const std::vector<Index>& level) {
  if (level.empty()) throw std::invalid_argument("projection onto an empty level");
  if (std::find(level.begin(), level.end(), p) != level.end()) return p;
  Index best = -1;
  double best_d = kInf;
  for (Index q : level) {
    const double d = relax.relaxed_distance(alpha, p, q);
    if (d < best_d || (d == best_d && q < best)) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

double edge_root(const Relaxation& relax, Index i, Index j) {
  const double eps = relax.epsilon();
  const double d = relax.distance(i, j);
  if (d <= 0.0) return 0.0;
  const double ti = relax.time(i);
  const double tj = relax.time(j);
  auto f = [&](double a) { return d + relax.weight(i, a) + relax.weight(j, a) - a; };

  std::vector<double> breaks{0.0};
  for (double t : {ti, tj}) {
    if (std::isfinite(t)) {
      breaks.push_back((1.0 - 2.0 * eps) * t);
      breaks.push_back(t);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  for (std::size_t m = 0; m < breaks.size(); ++m) {
    const double a = breaks[m];
    const double b = m + 1 < breaks.size() ? breaks[m + 1] : kInf;
    const double fa = f(a);
    if (fa <= 0.0) return a;
    const double slope =
        -1.0 + weight_slope(a, eps, ti) + weight_slope(a, eps, tj);
    if (slope < 0.0) {
      const double root = a + fa / -slope;
      if (root <= b) return root;
    }
  }
  // The last piece has slope -1 + (0 or eps) + (0 or eps) < 0, so the loop
  // always returns.
  return kInf;
}

std::optional<double> edge_critical_value(const Relaxation& relax, Index i, Index j) {
  const double root = edge_root(relax, i, j);
  if (root < std::min(relax.time(i), relax.time(j))) return root;
  return std::nullopt;
}

std::vector<CriticalEvent> critical_events(const Relaxation& relax) {
  using Kind = CriticalEvent::Kind;
  std::vector<CriticalEvent> events;
  const Index k = relax.size();
  for (Index i = 1; i < k; ++i) {
    events.push_back({relax.time(i), Kind::VertexDeletion, i, -1});
    for (Index j = 0; j < i; ++j) {
      if (auto a = edge_critical_value(relax, i, j)) {
        events.push_back({*a, Kind::EdgeInsertion, i, j});
      }
    }
  }
  std::sort(events.begin(), events.end(), [](const CriticalEvent& x, const CriticalEvent& y) {
    const int kx = x.kind == Kind::EdgeInsertion ? 0 : 1;
    const int ky = y.kind == Kind::EdgeInsertion ? 0 : 1;
    return std::tie(x.alpha, kx, x.i, x.j) < std::tie(y.alpha, ky, y.i, y.j);
  });
  return events;
}

std::vector<Index> neighbor_set(const Relaxation& relax, Index i) {
  if (i < 1 || i >= relax.size()) throw std::out_of_range("neighbor_set needs 1 <= i < k");
  const double alpha = relax.time(i);
  std::vector<Index> out;
  for (Index j = 0; j < i; ++j) {
    if (relax.relaxed_distance(alpha, i, j) < alpha) out.push_back(j);
  }
  return out;
}

}  // namespace sparsevr
