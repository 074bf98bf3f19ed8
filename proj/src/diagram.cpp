#include "sparsevr/diagram.hpp"

#include "sparsevr/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace sparsevr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Split {
  std::vector<std::size_t> finite;
  std::vector<std::size_t> essential;
};

Split split(const std::vector<DiagramPoint>& pts) {
  Split s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    (std::isinf(pts[i].death) ? s.essential : s.finite).push_back(i);
  }
  return s;
}

std::set<int> dims_of(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  std::set<int> dims;
  for (const auto& p : a.points) dims.insert(p.dim);
  for (const auto& p : b.points) dims.insert(p.dim);
  return dims;
}

/// Kuhn's augmenting-path matching. Returns match_of_left (right index or -1)
/// when every left vertex can be matched, or an empty vector otherwise.
std::vector<long> perfect_matching(std::size_t left, std::size_t right,
                                   const std::function<bool(std::size_t, std::size_t)>& edge) {
  std::vector<std::vector<std::size_t>> adj(left);
  for (std::size_t u = 0; u < left; ++u)
    for (std::size_t v = 0; v < right; ++v)
      if (edge(u, v)) adj[u].push_back(v);
  std::vector<long> match_right(right, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < left; ++u) {
    seen.assign(right, 0);
    if (!augment(u)) return {};
  }
  std::vector<long> match_left(left, -1);
  for (std::size_t v = 0; v < right; ++v)
    if (match_right[v] >= 0) match_left[static_cast<std::size_t>(match_right[v])] = static_cast<long>(v);
  return match_left;
}

/// Matching of finite points with the diagonal as a sink on both sides.
/// Left = a-points then one diagonal slot per b-point; right = b-points then
/// one diagonal slot per a-point.
std::vector<long> diagonal_matching(
    const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
    const std::function<bool(const DiagramPoint&, const DiagramPoint&)>& pair_ok,
    const std::function<bool(const DiagramPoint&)>& a_to_diag,
    const std::function<bool(const DiagramPoint&)>& b_to_diag) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  return perfect_matching(na + nb, nb + na, [&](std::size_t u, std::size_t v) {
    if (u < na && v < nb) return pair_ok(a[u], b[v]);
    if (u < na) return v - nb == u && a_to_diag(a[u]);
    if (v < nb) return u - na == v && b_to_diag(b[v]);
    return true;
  });
}

double linf(const DiagramPoint& p, const DiagramPoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double bottleneck_in_dim(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.essential.size() != sb.essential.size()) return kInf;
  std::vector<double> ea;
  std::vector<double> eb;
  for (auto i : sa.essential) ea.push_back(a[i].birth);
  for (auto i : sb.essential) eb.push_back(b[i].birth);
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<DiagramPoint> fa;
  std::vector<DiagramPoint> fb;
  for (auto i : sa.finite) fa.push_back(a[i]);
  for (auto i : sb.finite) fb.push_back(b[i]);
  std::vector<double> cand{0.0};
  for (const auto& p : fa) cand.push_back(p.persistence() / 2.0);
  for (const auto& q : fb) cand.push_back(q.persistence() / 2.0);
  for (const auto& p : fa)
    for (const auto& q : fb) cand.push_back(linf(p, q));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto feasible = [&](double r) {
    if (fa.empty() && fb.empty()) return true;
    return !diagonal_matching(
                fa, fb, [r](const DiagramPoint& p, const DiagramPoint& q) { return linf(p, q) <= r; },
                [r](const DiagramPoint& p) { return p.persistence() / 2.0 <= r; },
                [r](const DiagramPoint& q) { return q.persistence() / 2.0 <= r; })
                .empty();
  };
  std::size_t lo = 0;
  std::size_t hi = cand.size() - 1;  // matching everything to the diagonal always works
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(essential, cand[lo]);
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double l1_offset_radius(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  double worst = 0.0;
  for (const auto& p : a.points) {
    double best = kInf;
    if (std::isinf(p.death)) {
      for (const auto& q : b.points)
        if (q.dim == p.dim && std::isinf(q.death)) best = std::min(best, std::abs(p.birth - q.birth));
    } else {
      best = p.death - p.birth;
      for (const auto& q : b.points) {
        if (q.dim == p.dim && !std::isinf(q.death)) {
          best = std::min(best, std::abs(p.birth - q.birth) + std::abs(p.death - q.death));
        }
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

bool l1_offset_contained(const PersistenceDiagram& a, const PersistenceDiagram& b, double r) {
  return l1_offset_radius(a, b) <= r + tolerance::kCompare;
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  double worst = 0.0;
  for (int d : dims_of(a, b)) worst = std::max(worst, bottleneck_in_dim(a.in_dimension(d), b.in_dimension(d)));
  return worst;
}

bool additive_band_check(const PersistenceDiagram& subsample, const PersistenceDiagram& full,
                         double r) {
  return l1_offset_contained(subsample, full, r) && l1_offset_contained(full, subsample, r);
}

BandResult multiplicative_band(const PersistenceDiagram& relaxed, const PersistenceDiagram& exact,
                               double epsilon) {
  const double c = 1.0 - 2.0 * epsilon;
  const double tol = tolerance::kCompare;
  auto in_band = [&](double x, double y) {  // y in [c x, x]
    return y >= c * x - tol && y <= x + tol;
  };
  BandResult result;
  result.pass = true;
  for (int d : dims_of(relaxed, exact)) {
    std::vector<std::size_t> ri;
    std::vector<std::size_t> ei;
    for (std::size_t i = 0; i < relaxed.points.size(); ++i)
      if (relaxed.points[i].dim == d) ri.push_back(i);
    for (std::size_t i = 0; i < exact.points.size(); ++i)
      if (exact.points[i].dim == d) ei.push_back(i);
    std::vector<DiagramPoint> rp;
    std::vector<DiagramPoint> ep;
    for (auto i : ri) rp.push_back(relaxed.points[i]);
    for (auto i : ei) ep.push_back(exact.points[i]);

    const auto match = diagonal_matching(
        rp, ep,
        [&](const DiagramPoint& s, const DiagramPoint& v) {
          if (std::isinf(s.death) != std::isinf(v.death)) return false;
          if (!in_band(s.birth, v.birth)) return false;
          return std::isinf(s.death) || in_band(s.death, v.death);
        },
        [&](const DiagramPoint& s) { return !std::isinf(s.death) && c * s.death <= s.birth + tol; },
        [&](const DiagramPoint& v) { return !std::isinf(v.death) && c * v.death <= v.birth + tol; });
    if (match.empty() && !(rp.empty() && ep.empty())) {
      result.pass = false;
      continue;
    }
    std::vector<char> exact_used(ep.size(), 0);
    for (std::size_t u = 0; u < rp.size(); ++u) {
      const long v = match[u];
      if (v >= 0 && static_cast<std::size_t>(v) < ep.size()) {
        exact_used[static_cast<std::size_t>(v)] = 1;
        result.matching.push_back({static_cast<long>(ri[u]), static_cast<long>(ei[static_cast<std::size_t>(v)])});
      } else {
        result.matching.push_back({static_cast<long>(ri[u]), -1});
      }
    }
    for (std::size_t v = 0; v < ep.size(); ++v)
      if (!exact_used[v]) result.matching.push_back({-1, static_cast<long>(ei[v])});
  }
  if (!result.pass) result.matching.clear();
  return result;
}

bool multiplicative_band_check(const PersistenceDiagram& relaxed, const PersistenceDiagram& exact,
                               double epsilon) {
  return multiplicative_band(relaxed, exact, epsilon).pass;
}

bool ComparisonReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.pass; });
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  out << "offset radius A in B: " << fmt(offset_a_in_b) << '\n';
  out << "offset radius B in A: " << fmt(offset_b_in_a) << '\n';
  out << "bottleneck distance:  " << fmt(bottleneck) << '\n';
  for (const auto& r : rows) {
    out << r.check << " (" << r.param << "): " << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  if (!band_witness.empty()) {
    out << "band matching (A index -> B index, -1 = diagonal):\n";
    for (const auto& m : band_witness) out << "  " << m.first << " -> " << m.second << '\n';
  }
  out << "\ncheck,param,value,pass\n";
  for (const auto& r : rows) {
    out << r.check << ',' << r.param << ',' << fmt(r.value) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace sparsevr
