#include "sparsevr/persistence.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

namespace sparsevr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Row = std::uint32_t;
constexpr std::int64_t kNone = -1;

/// Sparse Z/2 boundary matrix in compressed column form. Row indices of a
/// column are sorted ascending; the pivot is the last one.
struct BoundaryMatrix {
  std::vector<int> dim;
  std::vector<std::size_t> start{0};
  std::vector<Row> rows;

  std::size_t cols() const { return dim.size(); }

  void push(int d, std::vector<Row>& col) {
    std::sort(col.begin(), col.end());
    dim.push_back(d);
    rows.insert(rows.end(), col.begin(), col.end());
    start.push_back(rows.size());
  }
};

struct Pairing {
  /// partner[j]: the column paired with j (creator <-> destroyer), or kNone.
  std::vector<std::int64_t> partner;
  std::vector<char> destroyer;
};

void add_into(std::vector<Row>& col, const std::vector<Row>& other, std::vector<Row>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  col.swap(scratch);
}

/// Standard reduction with clearing: dimensions are processed from the top
/// down, and a column known to be a pivot row is skipped since it must
/// reduce to zero.
Pairing reduce(const BoundaryMatrix& m) {
  const std::size_t n = m.cols();
  Pairing out;
  out.partner.assign(n, kNone);
  out.destroyer.assign(n, 0);
  std::vector<std::int64_t> owner(n, kNone);
  std::vector<std::vector<Row>> reduced(n);
  int top = 0;
  for (int d : m.dim) top = std::max(top, d);
  std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(top) + 1);
  for (std::size_t j = 0; j < n; ++j) by_dim[static_cast<std::size_t>(m.dim[j])].push_back(j);

  std::vector<Row> col;
  std::vector<Row> scratch;
  for (int d = top; d >= 1; --d) {
    for (std::size_t j : by_dim[static_cast<std::size_t>(d)]) {
      if (out.partner[j] != kNone) continue;  // cleared
      col.assign(m.rows.begin() + static_cast<std::ptrdiff_t>(m.start[j]),
                 m.rows.begin() + static_cast<std::ptrdiff_t>(m.start[j + 1]));
      while (!col.empty()) {
        const std::int64_t o = owner[col.back()];
        if (o == kNone) break;
        add_into(col, reduced[static_cast<std::size_t>(o)], scratch);
      }
      if (col.empty()) continue;
      const Row low = col.back();
      owner[low] = static_cast<std::int64_t>(j);
      out.partner[low] = static_cast<std::int64_t>(j);
      out.partner[j] = low;
      out.destroyer[j] = 1;
      reduced[j] = col;
    }
  }
  return out;
}

/// Pairing of an ascending filtration by reducing the coboundary matrix,
/// dimensions from the bottom up with clearing. Only creators of dimension
/// up to top_dim are resolved; higher columns are left unpaired.
Pairing reduce_cohomology(const BoundaryMatrix& m, int top_dim) {
  const std::size_t n = m.cols();
  Pairing out;
  out.partner.assign(n, kNone);
  out.destroyer.assign(n, 0);

  std::vector<std::size_t> cstart(n + 1, 0);
  for (Row r : m.rows) ++cstart[r + 1];
  for (std::size_t j = 0; j < n; ++j) cstart[j + 1] += cstart[j];
  std::vector<Row> cof(m.rows.size());
  {
    std::vector<std::size_t> fill(cstart.begin(), cstart.end() - 1);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t e = m.start[j]; e < m.start[j + 1]; ++e) cof[fill[m.rows[e]]++] = static_cast<Row>(j);
  }

  std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(std::max(top_dim, 0)) + 1);
  for (std::size_t j = 0; j < n; ++j)
    if (m.dim[j] <= top_dim) by_dim[static_cast<std::size_t>(m.dim[j])].push_back(j);

  std::vector<std::int64_t> owner(n, kNone);
  std::vector<std::vector<Row>> reduced(n);
  std::vector<Row> col;
  std::vector<Row> scratch;
  for (int d = 0; d <= top_dim; ++d) {
    const auto& cols = by_dim[static_cast<std::size_t>(d)];
    for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
      const std::size_t j = *it;
      if (out.destroyer[j]) continue;  // cleared
      col.assign(cof.begin() + static_cast<std::ptrdiff_t>(cstart[j]),
                 cof.begin() + static_cast<std::ptrdiff_t>(cstart[j + 1]));
      while (!col.empty()) {
        const std::int64_t o = owner[col.front()];
        if (o == kNone) break;
        add_into(col, reduced[static_cast<std::size_t>(o)], scratch);
      }
      if (col.empty()) continue;
      const Row low = col.front();
      owner[low] = static_cast<std::int64_t>(j);
      out.partner[low] = static_cast<std::int64_t>(j);
      out.partner[j] = low;
      out.destroyer[low] = 1;
      reduced[j] = col;
    }
  }
  return out;
}

struct StreamSimplex {
  int dim = 0;
  std::size_t add_event = 0;
  std::size_t remove_event = 0;  // >= stream size: never removed
};

}  // namespace

void PersistenceDiagram::normalize() { std::sort(points.begin(), points.end()); }

std::vector<DiagramPoint> PersistenceDiagram::in_dimension(int dim) const {
  std::vector<DiagramPoint> out;
  for (const auto& p : points)
    if (p.dim == dim) out.push_back(p);
  return out;
}

PersistenceDiagram reduce_standard(const ZigzagEventStream& stream, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
  absl::flat_hash_map<Simplex, Row, SimplexHash> index;
  BoundaryMatrix m;
  std::vector<double> alpha;
  std::vector<Row> col;
  double last = -kInf;
  for (const auto& e : stream.events) {
    if (e.op != ZigzagOp::Add) throw std::invalid_argument("reduce_standard: stream contains a removal");
    if (e.alpha < last) throw std::invalid_argument("reduce_standard: alpha decreases");
    last = e.alpha;
    col.clear();
    if (e.simplex.dimension() > 0) {
      for (int p = 0; p < e.simplex.size(); ++p) {
        auto it = index.find(e.simplex.facet(p));
        if (it == index.end()) {
          throw std::invalid_argument("reduce_standard: facet of " + e.simplex.to_string() + " missing");
        }
        col.push_back(it->second);
      }
    }
    if (!index.emplace(e.simplex, static_cast<Row>(m.cols())).second) {
      throw std::invalid_argument("reduce_standard: " + e.simplex.to_string() + " added twice");
    }
    m.push(e.simplex.dimension(), col);
    alpha.push_back(e.alpha);
  }

  const Pairing pr = reduce_cohomology(m, max_dim);
  PersistenceDiagram pd;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (pr.destroyer[j] || m.dim[j] > max_dim) continue;
    const double birth = alpha[j];
    const double death =
        pr.partner[j] == kNone ? kInf : alpha[static_cast<std::size_t>(pr.partner[j])];
    if (birth == death) {
      ++pd.zero_length;
    } else {
      pd.points.push_back({m.dim[j], birth, death});
    }
  }
  pd.normalize();
  return pd;
}

// The zigzag is converted to the up-down sequence that performs every
// addition first and every removal afterwards (remaining simplices are
// removed at the end). Moving an addition of s ahead of a removal of t is a
// Mayer-Vietoris diamond: bars keep their birth and death events, except the
// bar born by removing t and killed by adding s, which becomes a bar one
// dimension up born by adding s and killed by removing t. The up-down
// sequence is then computed as ordinary persistence of the apex w, then K,
// then the cone w*K with simplices coned in reverse removal order. The apex
// comes first so that the filtration computes reduced homology of K + w,
// which equals the homology of K:
//   (add a, add b)       ordinary pair
//   (add a, cone t)      class of K dying when t is removed
//   (cone t, cone s)     class born by removing s, dying when t is removed
// and the apex is the only essential class.
static std::vector<IndexInterval> cone_intervals(const ZigzagEventStream& stream) {
  const std::size_t m_events = stream.events.size();
  absl::flat_hash_map<Simplex, std::size_t, SimplexHash> present;  // simplex -> instance
  std::vector<StreamSimplex> inst;
  std::vector<std::vector<Row>> facets;
  std::vector<int> cofacets;
  std::vector<std::size_t> removal_order;
  double last = -kInf;

  for (std::size_t t = 0; t < m_events; ++t) {
    const auto& e = stream.events[t];
    const std::string where = "event " + std::to_string(t) + " (" + e.simplex.to_string() + ")";
    if (e.alpha < last) throw std::invalid_argument(where + ": alpha decreases");
    last = e.alpha;
    if (e.op == ZigzagOp::Add) {
      if (present.count(e.simplex)) throw std::invalid_argument(where + ": added while present");
      std::vector<Row> f;
      if (e.simplex.dimension() > 0) {
        for (int p = 0; p < e.simplex.size(); ++p) {
          auto it = present.find(e.simplex.facet(p));
          if (it == present.end()) throw std::invalid_argument(where + ": facet missing");
          f.push_back(static_cast<Row>(it->second));
          ++cofacets[it->second];
        }
      }
      present.emplace(e.simplex, inst.size());
      inst.push_back({e.simplex.dimension(), t, m_events});
      facets.push_back(std::move(f));
      cofacets.push_back(0);
    } else {
      auto it = present.find(e.simplex);
      if (it == present.end()) throw std::invalid_argument(where + ": removed while absent");
      const std::size_t id = it->second;
      if (cofacets[id] != 0) throw std::invalid_argument(where + ": removed while a coface is present");
      for (Row f : facets[id]) --cofacets[f];
      inst[id].remove_event = t;
      removal_order.push_back(id);
      present.erase(it);
    }
  }
  {
    // Terminal removals: cofaces before faces.
    std::vector<std::size_t> rest;
    rest.reserve(present.size());
    for (const auto& kv : present) rest.push_back(kv.second);
    std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      if (inst[a].dim != inst[b].dim) return inst[a].dim > inst[b].dim;
      return a > b;
    });
    for (std::size_t id : rest) removal_order.push_back(id);
  }

  const std::size_t n = inst.size();
  if (n == 0) return {};
  std::vector<std::size_t> removal_pos(n);
  for (std::size_t r = 0; r < n; ++r) removal_pos[removal_order[r]] = r;
  // Column 0 is the apex, columns 1..n the instances, n+1..2n the cones.
  auto k_col = [](std::size_t id) { return static_cast<Row>(id + 1); };
  auto cone_col = [&](std::size_t id) { return static_cast<Row>(2 * n - removal_pos[id]); };
  auto owner_of_cone = [&](std::size_t c) { return removal_order[2 * n - c]; };

  BoundaryMatrix m;
  m.dim.reserve(2 * n + 1);
  m.start.reserve(2 * n + 2);
  std::vector<Row> col;
  m.push(0, col);
  for (std::size_t id = 0; id < n; ++id) {
    col.clear();
    for (Row f : facets[id]) col.push_back(k_col(f));
    m.push(inst[id].dim, col);
  }
  for (std::size_t c = n + 1; c <= 2 * n; ++c) {
    const std::size_t id = owner_of_cone(c);
    col.clear();
    col.push_back(k_col(id));
    if (inst[id].dim == 0) {
      col.push_back(0);
    } else {
      for (Row f : facets[id]) col.push_back(cone_col(f));
    }
    m.push(inst[id].dim + 1, col);
  }
  facets.clear();
  facets.shrink_to_fit();

  const Pairing pr = reduce(m);

  std::vector<IndexInterval> out;
  for (std::size_t j = 1; j < m.cols(); ++j) {
    if (pr.destroyer[j]) continue;
    const std::int64_t partner = pr.partner[j];
    if (partner == kNone) throw std::logic_error("zigzag: unpaired simplex in a contractible cone");
    const auto pj = static_cast<std::size_t>(partner);
    if (j <= n) {
      const std::size_t a = j - 1;
      if (pj <= n) {
        out.push_back({inst[a].dim, inst[a].add_event, inst[pj - 1].add_event});
        continue;
      }
      // up-down bar (add a, remove t); a diamond turns it into a bar one
      // dimension down when t was removed before a was added
      const std::size_t t = owner_of_cone(pj);
      const std::size_t add_ev = inst[a].add_event;
      const std::size_t rem_ev = std::min(inst[t].remove_event, m_events);
      if (rem_ev < add_ev) {
        out.push_back({inst[a].dim - 1, rem_ev, add_ev});
      } else {
        out.push_back({inst[a].dim, add_ev, rem_ev});
      }
    } else {
      const std::size_t born_by = owner_of_cone(pj);
      const std::size_t killed_by = owner_of_cone(j);
      const std::size_t b = std::min(inst[born_by].remove_event, m_events);
      const std::size_t d = std::min(inst[killed_by].remove_event, m_events);
      if (b < d) out.push_back({inst[killed_by].dim, b, d});
    }
  }
  return out;
}

// A removal run that deletes the whole star of a vertex v, never added
// again, where v is dominated by a present vertex w in the sense
//   sigma + w is present for every sigma in the star with dim <= D,
//   tau - v + w is present for every tau in the star with dim D + 1,
// leaves homology up to dimension D unchanged, and so does removing the
// stars in the same order from the union of all complexes seen so far. When
// every removal run is of this kind, the zigzag through dimension D is the
// ascending filtration of its additions plus the bars opened and closed
// inside each run. Returns nullopt otherwise.
static std::optional<std::vector<IndexInterval>> collapse_intervals(const ZigzagEventStream& stream,
                                                                    int max_dim) {
  const std::size_t m_events = stream.events.size();
  if (max_dim + 2 > Simplex::kMaxVertices) return std::nullopt;
  Vertex top_vertex = -1;
  std::size_t n_adds = 0;
  for (const auto& e : stream.events) {
    if (e.simplex.empty()) return std::nullopt;
    top_vertex = std::max(top_vertex, e.simplex.back());
    n_adds += e.op == ZigzagOp::Add;
  }
  if (top_vertex < 0) return std::nullopt;

  absl::flat_hash_map<Simplex, Row, SimplexHash> index;
  index.reserve(n_adds);
  std::vector<Simplex> simplex;
  std::vector<char> present;
  std::vector<int> cofacets;
  std::vector<std::size_t> add_event;
  std::vector<int> through(static_cast<std::size_t>(top_vertex) + 1, 0);
  BoundaryMatrix m;
  std::vector<Row> col;
  std::vector<Row> block;
  std::vector<std::int64_t> local_of;
  std::vector<IndexInterval> inner;
  std::vector<int> tri(static_cast<std::size_t>(top_vertex) + 1, 0);  // triangles of the star per vertex
  std::vector<Vertex> nbrs;
  double last = -kInf;

  auto is_present = [&](const Simplex& s) {
    auto it = index.find(s);
    return it != index.end() && present[it->second];
  };
  auto dominates = [&](Vertex v, Vertex w) {
    for (Row id : block) {
      const Simplex& s = simplex[id];
      if (s.contains(w)) continue;
      const int d = s.dimension();
      if (d <= max_dim) {
        if (!is_present(s.with(w))) return false;
      } else if (d == max_dim + 1) {
        const int pos = static_cast<int>(std::find(s.begin(), s.end(), v) - s.begin());
        if (!is_present(s.facet(pos).with(w))) return false;
      }
    }
    return true;
  };
  auto count_triangles = [&](Vertex v, int delta) {
    for (Row id : block)
      if (simplex[id].dimension() == 2)
        for (Vertex x : simplex[id])
          if (x != v) tri[static_cast<std::size_t>(x)] += delta;
  };
  auto collapsible = [&](Vertex v) {
    nbrs.clear();
    for (Row id : block) {
      const Simplex& s = simplex[id];
      if (!s.contains(v)) return false;
      if (s.dimension() == 1) nbrs.push_back(s[0] == v ? s[1] : s[0]);
    }
    if (through[static_cast<std::size_t>(v)] != static_cast<int>(block.size())) return false;
    count_triangles(v, 1);
    const int need = static_cast<int>(nbrs.size()) - 1;
    bool found = false;
    for (Vertex w : nbrs) {
      if (max_dim >= 1 && need > 0 && tri[static_cast<std::size_t>(w)] != need) continue;
      if ((found = dominates(v, w))) break;
    }
    count_triangles(v, -1);
    return found;
  };

  for (std::size_t t = 0; t < m_events; ++t) {
    const auto& e = stream.events[t];
    if (e.alpha < last) return std::nullopt;
    last = e.alpha;
    if (e.op == ZigzagOp::Add) {
      if (!block.empty()) return std::nullopt;
      col.clear();
      if (e.simplex.dimension() > 0) {
        for (int p = 0; p < e.simplex.size(); ++p) {
          auto it = index.find(e.simplex.facet(p));
          if (it == index.end() || !present[it->second]) return std::nullopt;
          col.push_back(it->second);
          ++cofacets[it->second];
        }
      }
      simplex.push_back(e.simplex);
      if (!index.emplace(e.simplex, static_cast<Row>(simplex.size() - 1)).second) return std::nullopt;
      for (Vertex x : e.simplex) ++through[static_cast<std::size_t>(x)];
      m.push(e.simplex.dimension(), col);
      present.push_back(1);
      cofacets.push_back(0);
      add_event.push_back(t);
      local_of.push_back(kNone);
      continue;
    }
    auto it = index.find(e.simplex);
    if (it == index.end() || !present[it->second]) return std::nullopt;
    block.push_back(it->second);
    if (e.simplex.dimension() != 0) continue;
    if (!collapsible(e.simplex[0])) return std::nullopt;
    // Bars living inside the run: the star put back in reverse order is
    // reduced relative to the rest, whose homology it leaves unchanged.
    BoundaryMatrix local;
    for (std::size_t q = 0; q < block.size(); ++q) local_of[block[block.size() - 1 - q]] = static_cast<std::int64_t>(q);
    for (std::size_t q = 0; q < block.size(); ++q) {
      const Row id = block[block.size() - 1 - q];
      col.clear();
      for (std::size_t r = m.start[id]; r < m.start[id + 1]; ++r)
        if (local_of[m.rows[r]] != kNone) col.push_back(static_cast<Row>(local_of[m.rows[r]]));
      local.push(m.dim[id], col);
    }
    const Pairing lp = reduce(local);
    for (std::size_t q = 0; q < block.size(); ++q) {
      if (lp.destroyer[q] || local.dim[q] > max_dim) continue;
      if (lp.partner[q] == kNone) return std::nullopt;
      inner.push_back({local.dim[q], t - static_cast<std::size_t>(lp.partner[q]), t - q});
    }
    for (Row id : block) local_of[id] = kNone;
    for (Row id : block) {
      if (cofacets[id] != 0 || !present[id]) return std::nullopt;
      for (std::size_t q = m.start[id]; q < m.start[id + 1]; ++q) --cofacets[m.rows[q]];
      for (Vertex x : simplex[id]) --through[static_cast<std::size_t>(x)];
      present[id] = 0;
    }
    block.clear();
  }
  if (!block.empty()) return std::nullopt;
  const Pairing pr = reduce_cohomology(m, max_dim);
  std::vector<IndexInterval> out = std::move(inner);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (pr.destroyer[j] || m.dim[j] > max_dim) continue;
    const std::size_t death =
        pr.partner[j] == kNone ? m_events : add_event[static_cast<std::size_t>(pr.partner[j])];
    out.push_back({m.dim[j], add_event[j], death});
  }
  return out;
}

std::vector<IndexInterval> zigzag_intervals(const ZigzagEventStream& stream) { return cone_intervals(stream); }

std::vector<IndexInterval> zigzag_intervals(const ZigzagEventStream& stream, int max_dim,
                                            ZigzagMethod method) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
  if (method != ZigzagMethod::Cone) {
    if (auto bars = collapse_intervals(stream, max_dim)) return std::move(*bars);
    if (method == ZigzagMethod::Collapse) {
      throw std::invalid_argument("zigzag: stream removes something other than a dominated vertex star");
    }
  }
  auto bars = cone_intervals(stream);
  std::erase_if(bars, [max_dim](const IndexInterval& b) { return b.dim < 0 || b.dim > max_dim; });
  return bars;
}

PersistenceDiagram zigzag_persistence(const ZigzagEventStream& stream, int max_dim, ZigzagMethod method) {
  const auto bars = zigzag_intervals(stream, max_dim, method);
  PersistenceDiagram pd;
  for (const auto& bar : bars) {
    const double birth = stream.events[bar.birth].alpha;
    const double death = bar.death >= stream.size() ? kInf : stream.events[bar.death].alpha;
    if (birth == death) {
      ++pd.zero_length;
    } else {
      pd.points.push_back({bar.dim, birth, death});
    }
  }
  pd.normalize();
  return pd;
}

std::size_t homology_rank(const SimplicialComplex& complex, int dim) {
  if (dim < 0) return 0;
  absl::flat_hash_map<Simplex, Row, SimplexHash> index;
  BoundaryMatrix m;
  std::vector<Row> col;
  for (const auto& s : complex.simplices()) {
    if (s.dimension() > dim + 1) break;
    col.clear();
    if (s.dimension() > 0) {
      for (int p = 0; p < s.size(); ++p) {
        auto it = index.find(s.facet(p));
        if (it == index.end()) throw std::invalid_argument("homology_rank: complex is not closed");
        col.push_back(it->second);
      }
    }
    index.emplace(s, static_cast<Row>(m.cols()));
    m.push(s.dimension(), col);
  }
  const Pairing pr = reduce(m);
  std::size_t cells = 0;
  std::size_t rank_out = 0;  // rank of the boundary leaving dimension `dim`
  std::size_t rank_in = 0;   // rank of the boundary arriving from dim + 1
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (m.dim[j] == dim) {
      ++cells;
      if (pr.destroyer[j]) ++rank_out;
    } else if (m.dim[j] == dim + 1 && pr.destroyer[j]) {
      ++rank_in;
    }
  }
  return cells - rank_out - rank_in;
}

}  // namespace sparsevr
