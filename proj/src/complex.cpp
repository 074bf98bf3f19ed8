#include "sparsevr/complex.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace sparsevr {

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::initializer_list<Vertex> vs)
    : Simplex(std::span<const Vertex>(vs.begin(), vs.size())) {}

Simplex::Simplex(std::span<const Vertex> vs) {
  if (vs.empty()) throw std::invalid_argument("empty simplex");
  if (vs.size() > kMaxVertices) throw std::invalid_argument("simplex dimension above supported maximum");
  std::copy(vs.begin(), vs.end(), v_.begin());
  size_ = static_cast<std::uint8_t>(vs.size());
  std::sort(v_.begin(), v_.begin() + size_);
  if (std::adjacent_find(v_.begin(), v_.begin() + size_) != v_.begin() + size_) {
    throw std::invalid_argument("simplex with repeated vertex");
  }
  if (v_[0] < 0) throw std::invalid_argument("negative vertex index");
}

bool Simplex::contains(Vertex x) const { return std::binary_search(begin(), end(), x); }

Simplex Simplex::facet(int pos) const {
  Simplex f;
  for (int i = 0; i < size_; ++i) {
    if (i != pos) f.v_[f.size_++] = v_[static_cast<std::size_t>(i)];
  }
  return f;
}

Simplex Simplex::with(Vertex x) const {
  if (size_ >= kMaxVertices) throw std::invalid_argument("simplex dimension above supported maximum");
  Simplex s;
  int i = 0;
  while (i < size_ && v_[static_cast<std::size_t>(i)] < x) s.v_[s.size_++] = v_[static_cast<std::size_t>(i++)];
  if (i < size_ && v_[static_cast<std::size_t>(i)] == x) throw std::invalid_argument("vertex already in simplex");
  s.v_[s.size_++] = x;
  while (i < size_) s.v_[s.size_++] = v_[static_cast<std::size_t>(i++)];
  return s;
}

std::string Simplex::to_string() const {
  std::string out;
  for (int i = 0; i < size_; ++i) {
    if (i) out += '-';
    out += std::to_string(v_[static_cast<std::size_t>(i)]);
  }
  return out;
}

// ------------------------------------------------------ SimplicialComplex

SimplicialComplex::SimplicialComplex(std::vector<Simplex> simplices)
    : simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end());
  simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());
}

std::size_t SimplicialComplex::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(
      simplices_.begin(), simplices_.end(), [dim](const Simplex& s) { return s.dimension() == dim; }));
}

int SimplicialComplex::dimension() const {
  return simplices_.empty() ? -1 : simplices_.back().dimension();
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s);
}

std::vector<Vertex> SimplicialComplex::vertices() const {
  std::vector<Vertex> out;
  for (const auto& s : simplices_) {
    if (s.dimension() != 0) break;
    out.push_back(s[0]);
  }
  return out;
}

bool SimplicialComplex::is_closed() const {
  for (const auto& s : simplices_) {
    if (s.dimension() == 0) continue;
    for (int p = 0; p < s.size(); ++p) {
      if (!contains(s.facet(p))) return false;
    }
  }
  return true;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  return std::includes(other.simplices_.begin(), other.simplices_.end(), simplices_.begin(),
                       simplices_.end());
}

std::vector<Simplex> SimplicialComplex::lower_maximal_simplices(Vertex v) const {
  std::unordered_set<Simplex, SimplexHash> has_coface;
  for (const auto& s : simplices_) {
    if (s.dimension() == 0) continue;
    for (int p = 0; p < s.size(); ++p) has_coface.insert(s.facet(p));
  }
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    if (s.dimension() == 0 || !s.contains(v) || has_coface.count(s)) continue;
    if (s.back() != v) continue;
    out.push_back(s.facet(s.size() - 1));
  }
  return out;
}

// ------------------------------------------------------- clique machinery

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

std::vector<Vertex> intersect(std::span<const Vertex> a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Emits base ∪ c for every nonempty clique c drawn from cand (sorted) with
/// |base ∪ c| <= max_size.
template <typename Emit>
void extend_cliques(const Simplex& base, std::span<const Vertex> cand, const Adjacency& adj,
                    int max_size, Emit&& emit) {
  if (base.size() >= max_size) return;
  for (std::size_t idx = 0; idx < cand.size(); ++idx) {
    const Vertex v = cand[idx];
    const Simplex next = base.with(v);
    emit(next);
    if (next.size() < max_size && idx + 1 < cand.size()) {
      const auto sub = intersect(cand.subspan(idx + 1), adj[static_cast<std::size_t>(v)]);
      if (!sub.empty()) extend_cliques(next, sub, adj, max_size, emit);
    }
  }
}

void check_dim(int max_simplex_dim) {
  if (max_simplex_dim < 0 || max_simplex_dim >= Simplex::kMaxVertices) {
    throw std::invalid_argument("max simplex dimension must lie in [0, " +
                                std::to_string(Simplex::kMaxVertices - 1) + "]");
  }
}

void insert_sorted(std::vector<Vertex>& v, Vertex x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void erase_sorted(std::vector<Vertex>& v, Vertex x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

SimplicialComplex flag_complex(Index k, const std::vector<Vertex>& vertices,
                               const std::function<bool(Vertex, Vertex)>& adjacent,
                               int max_simplex_dim) {
  check_dim(max_simplex_dim);
  Adjacency adj(static_cast<std::size_t>(k));
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      const Vertex u = vertices[a];
      const Vertex w = vertices[b];
      if (adjacent(u, w)) {
        adj[static_cast<std::size_t>(u)].push_back(w);
        adj[static_cast<std::size_t>(w)].push_back(u);
      }
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Simplex> out;
  for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
    const Simplex vtx{sorted[idx]};
    out.push_back(vtx);
    const auto& nb = adj[static_cast<std::size_t>(sorted[idx])];
    std::vector<Vertex> higher(std::upper_bound(nb.begin(), nb.end(), sorted[idx]), nb.end());
    extend_cliques(vtx, higher, adj, max_simplex_dim + 1,
                   [&](const Simplex& s) { out.push_back(s); });
  }
  return SimplicialComplex(std::move(out));
}

SimplicialComplex build_vr(const FiniteMetricSpace& space, double alpha, int max_simplex_dim) {
  std::vector<Vertex> vs(static_cast<std::size_t>(space.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
  return flag_complex(space.size(), vs,
                      [&](Vertex a, Vertex b) { return space(a, b) <= alpha; },
                      max_simplex_dim);
}

SimplicialComplex build_rvr(const Relaxation& relax, double alpha, int max_simplex_dim) {
  std::vector<Vertex> vs(static_cast<std::size_t>(relax.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
  return flag_complex(relax.size(), vs,
                      [&](Vertex a, Vertex b) { return relax.relaxed_distance(alpha, a, b) <= alpha; },
                      max_simplex_dim);
}

SimplicialComplex build_svr(const Relaxation& relax, double alpha, int max_simplex_dim) {
  std::vector<Vertex> vs;
  for (Index i = 0; i < relax.size(); ++i) {
    if (relax.time(i) > alpha) vs.push_back(static_cast<Vertex>(i));
  }
  return flag_complex(relax.size(), vs,
                      [&](Vertex a, Vertex b) { return relax.relaxed_distance(alpha, a, b) <= alpha; },
                      max_simplex_dim);
}

// ---------------------------------------------------------- event streams

bool ZigzagEventStream::ascending() const {
  return std::all_of(events.begin(), events.end(),
                     [](const ZigzagEvent& e) { return e.op == ZigzagOp::Add; });
}

void validate(const ZigzagEventStream& stream) {
  std::unordered_map<Simplex, int, SimplexHash> cofacets;
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < stream.events.size(); ++t) {
    const auto& e = stream.events[t];
    const std::string where = "event " + std::to_string(t) + " (" + e.simplex.to_string() + ")";
    if (e.alpha < last) throw std::invalid_argument(where + ": alpha decreases");
    last = e.alpha;
    if (e.simplex.empty()) throw std::invalid_argument(where + ": empty simplex");
    if (e.op == ZigzagOp::Add) {
      if (cofacets.count(e.simplex)) throw std::invalid_argument(where + ": added twice");
      if (e.simplex.dimension() > 0) {
        for (int p = 0; p < e.simplex.size(); ++p) {
          auto it = cofacets.find(e.simplex.facet(p));
          if (it == cofacets.end()) throw std::invalid_argument(where + ": facet missing");
          ++it->second;
        }
      }
      cofacets.emplace(e.simplex, 0);
    } else {
      auto it = cofacets.find(e.simplex);
      if (it == cofacets.end()) throw std::invalid_argument(where + ": removed while absent");
      if (it->second != 0) throw std::invalid_argument(where + ": removed while a coface is present");
      cofacets.erase(it);
      if (e.simplex.dimension() > 0) {
        for (int p = 0; p < e.simplex.size(); ++p) --cofacets[e.simplex.facet(p)];
      }
    }
  }
}

SimplicialComplex snapshot_prefix(const ZigzagEventStream& stream, std::size_t count) {
  std::unordered_set<Simplex, SimplexHash> present;
  count = std::min(count, stream.events.size());
  for (std::size_t t = 0; t < count; ++t) {
    const auto& e = stream.events[t];
    if (e.op == ZigzagOp::Add) {
      present.insert(e.simplex);
    } else {
      present.erase(e.simplex);
    }
  }
  return SimplicialComplex(std::vector<Simplex>(present.begin(), present.end()));
}

SimplicialComplex snapshot(const ZigzagEventStream& stream, double alpha) {
  std::size_t count = 0;
  while (count < stream.events.size() && stream.events[count].alpha <= alpha) ++count;
  return snapshot_prefix(stream, count);
}

ZigzagEventStream sparse_zigzag_events(Index k, const std::vector<CriticalEvent>& events,
                                       int max_simplex_dim) {
  check_dim(max_simplex_dim);
  if (k < 1) throw std::invalid_argument("sparse zigzag needs at least one vertex");
  const int max_size = max_simplex_dim + 1;
  ZigzagEventStream out;
  for (Index v = 0; v < k; ++v) {
    out.events.push_back({0.0, ZigzagOp::Add, Simplex{static_cast<Vertex>(v)}});
  }
  Adjacency adj(static_cast<std::size_t>(k));
  std::vector<char> alive(static_cast<std::size_t>(k), 1);
  std::vector<Simplex> batch;
  for (const auto& ev : events) {
    const auto i = static_cast<Vertex>(ev.i);
    if (ev.i < 0 || ev.i >= k) throw std::out_of_range("critical event vertex out of range");
    if (!alive[static_cast<std::size_t>(i)]) throw std::invalid_argument("event on a deleted vertex");
    batch.clear();
    if (ev.kind == CriticalEvent::Kind::EdgeInsertion) {
      const auto j = static_cast<Vertex>(ev.j);
      if (ev.j < 0 || ev.j >= k || j == i) throw std::out_of_range("bad edge endpoint");
      if (!alive[static_cast<std::size_t>(j)]) throw std::invalid_argument("edge on a deleted vertex");
      if (max_size < 2) continue;
      auto& ni = adj[static_cast<std::size_t>(i)];
      auto& nj = adj[static_cast<std::size_t>(j)];
      if (std::binary_search(ni.begin(), ni.end(), j)) continue;
      const Simplex edge{i, j};
      batch.push_back(edge);
      const auto common = intersect(ni, nj);
      extend_cliques(edge, common, adj, max_size, [&](const Simplex& s) { batch.push_back(s); });
      insert_sorted(ni, j);
      insert_sorted(nj, i);
      std::sort(batch.begin(), batch.end());
      for (const auto& s : batch) out.events.push_back({ev.alpha, ZigzagOp::Add, s});
    } else {
      const Simplex vtx{i};
      batch.push_back(vtx);
      auto& ni = adj[static_cast<std::size_t>(i)];
      extend_cliques(vtx, ni, adj, max_size, [&](const Simplex& s) { batch.push_back(s); });
      std::sort(batch.begin(), batch.end(), [](const Simplex& a, const Simplex& b) {
        if (a.dimension() != b.dimension()) return a.dimension() > b.dimension();
        return a < b;
      });
      for (const auto& s : batch) out.events.push_back({ev.alpha, ZigzagOp::Remove, s});
      for (Vertex w : ni) erase_sorted(adj[static_cast<std::size_t>(w)], i);
      ni.clear();
      alive[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

ZigzagEventStream sparse_zigzag_events(const Relaxation& relax, int max_simplex_dim) {
  return sparse_zigzag_events(relax.size(), critical_events(relax), max_simplex_dim);
}

ZigzagEventStream flag_filtration(const Eigen::MatrixXd& edge_value, int max_simplex_dim) {
  check_dim(max_simplex_dim);
  const Index k = edge_value.rows();
  Adjacency adj(static_cast<std::size_t>(k));
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      if (a != b) adj[static_cast<std::size_t>(a)].push_back(static_cast<Vertex>(b));
    }
  }
  std::vector<std::pair<double, Simplex>> items;
  for (Index v = 0; v < k; ++v) {
    const Simplex vtx{static_cast<Vertex>(v)};
    items.emplace_back(0.0, vtx);
    std::vector<Vertex> higher;
    for (Index w = v + 1; w < k; ++w) higher.push_back(static_cast<Vertex>(w));
    extend_cliques(vtx, higher, adj, max_simplex_dim + 1, [&](const Simplex& s) {
      double value = 0.0;
      for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < a; ++b) value = std::max(value, edge_value(s[a], s[b]));
      items.emplace_back(value, s);
    });
  }
  std::sort(items.begin(), items.end());
  ZigzagEventStream out;
  out.events.reserve(items.size());
  for (const auto& [value, s] : items) out.events.push_back({value, ZigzagOp::Add, s});
  return out;
}

ZigzagEventStream vr_filtration_events(const FiniteMetricSpace& space, int max_simplex_dim,
                                       Index cap) {
  if (space.size() > cap) {
    throw std::invalid_argument("exact Vietoris-Rips filtration refused: n = " +
                                std::to_string(space.size()) + " exceeds cap " +
                                std::to_string(cap));
  }
  const Index n = space.size();
  Eigen::MatrixXd d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) = space(i, j);
  return flag_filtration(d, max_simplex_dim);
}

ZigzagEventStream rvr_filtration_events(const Relaxation& relax, int max_simplex_dim) {
  const Index k = relax.size();
  Eigen::MatrixXd value = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < i; ++j) {
      value(i, j) = edge_root(relax, i, j);
      value(j, i) = value(i, j);
    }
  }
  return flag_filtration(value, max_simplex_dim);
}

}  // namespace sparsevr
