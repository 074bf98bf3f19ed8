#include "support.hpp"

#include <doctest.h>

#include <tuple>

using namespace sparsevr;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ZigzagEventStream adds(std::initializer_list<std::pair<double, Simplex>> items) {
  ZigzagEventStream s;
  for (const auto& [a, sx] : items) s.events.push_back({a, ZigzagOp::Add, sx});
  return s;
}

std::size_t alive(const PersistenceDiagram& pd, int dim, double alpha) {
  std::size_t c = 0;
  for (const auto& p : pd.points)
    if (p.dim == dim && p.birth <= alpha && alpha < p.death) ++c;
  return c;
}

/// Random valid zigzag on a few vertices: simplices of the full simplex on
/// `n` vertices are toggled, additions need their facets and removals need
/// every coface absent. Re-additions are allowed.
ZigzagEventStream random_zigzag(std::mt19937_64& gen, int n, int top, int steps) {
  std::vector<Simplex> all;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) vs.push_back(v);
    if (static_cast<int>(vs.size()) <= top + 1) all.push_back(Simplex(std::span<const Vertex>(vs)));
  }
  std::set<Simplex> present;
  ZigzagEventStream s;
  double alpha = 0.0;
  for (int step = 0; step < steps; ++step) {
    std::vector<std::pair<Simplex, ZigzagOp>> moves;
    for (const auto& sx : all) {
      if (present.count(sx)) {
        bool free = true;
        for (const auto& o : present)
          if (o.dimension() == sx.dimension() + 1 && std::includes(o.begin(), o.end(), sx.begin(), sx.end())) free = false;
        if (free) moves.push_back({sx, ZigzagOp::Remove});
      } else {
        bool ok = true;
        for (int p = 0; p < sx.size() && sx.dimension() > 0; ++p) ok = ok && present.count(sx.facet(p));
        if (ok) moves.push_back({sx, ZigzagOp::Add});
      }
    }
    // Bias toward additions so the complexes carry some homology.
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      pool.push_back(i);
      if (moves[i].second == ZigzagOp::Add) pool.push_back(i);
    }
    const auto& [sx, op] = moves[pool[gen() % pool.size()]];
    if (gen() % 3 == 0) alpha += 1.0;
    s.events.push_back({alpha, op, sx});
    if (op == ZigzagOp::Add) present.insert(sx);
    else present.erase(sx);
  }
  return s;
}

using Bar = std::tuple<int, std::size_t, std::size_t>;

std::vector<Bar> sorted_bars(const std::vector<IndexInterval>& bars) {
  std::vector<Bar> out;
  for (const auto& b : bars) out.emplace_back(b.dim, b.birth, b.death);
  std::sort(out.begin(), out.end());
  return out;
}

/// Flag complex grown over random points, with some vertices removed while
/// their closed neighbourhood lies inside that of another present vertex.
/// Removals delete the whole star, cofaces first; removed vertices stay gone.
ZigzagEventStream dominated_removals(std::mt19937_64& gen, int n, int top) {
  const auto space = support::random_planar(gen, n);
  std::vector<std::pair<double, std::pair<int, int>>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({space.distance(i, j), {i, j}});
  std::sort(edges.begin(), edges.end());
  std::vector<std::set<int>> nb(static_cast<std::size_t>(n));
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::set<Simplex> present;
  ZigzagEventStream s;
  for (int v = 0; v < n; ++v) {
    s.events.push_back({0.0, ZigzagOp::Add, Simplex{v}});
    present.insert(Simplex{v});
  }
  for (const auto& [d, e] : edges) {
    const auto [a, b] = e;
    if (!alive[static_cast<std::size_t>(a)] || !alive[static_cast<std::size_t>(b)]) continue;
    nb[static_cast<std::size_t>(a)].insert(b);
    nb[static_cast<std::size_t>(b)].insert(a);
    // every clique containing the new edge, by increasing size
    std::vector<int> common;
    for (int x : nb[static_cast<std::size_t>(a)])
      if (nb[static_cast<std::size_t>(b)].count(x)) common.push_back(x);
    std::vector<Simplex> fresh;
    for (int mask = 0; mask < (1 << common.size()) && common.size() < 12; ++mask) {
      std::vector<Vertex> rest;
      for (std::size_t i = 0; i < common.size(); ++i)
        if (mask >> i & 1) rest.push_back(common[i]);
      if (static_cast<int>(rest.size()) + 2 > top + 1) continue;
      auto make = [&](std::vector<Vertex> vs) {
        std::sort(vs.begin(), vs.end());
        return Simplex{std::span<const Vertex>(vs)};
      };
      auto with_a = rest;
      with_a.push_back(a);
      auto with_b = rest;
      with_b.push_back(b);
      if (rest.size() >= 2 && (!present.count(make(with_a)) || !present.count(make(with_b)))) continue;
      with_a.push_back(b);
      fresh.push_back(make(with_a));
    }
    std::sort(fresh.begin(), fresh.end());
    for (const auto& sx : fresh) {
      s.events.push_back({d, ZigzagOp::Add, sx});
      present.insert(sx);
    }
    if (gen() % 4 != 0) continue;
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<std::size_t>(v)] || nb[static_cast<std::size_t>(v)].empty()) continue;
      auto closed = nb[static_cast<std::size_t>(v)];
      closed.insert(v);
      int dominator = -1;
      for (int w : nb[static_cast<std::size_t>(v)]) {
        auto cw = nb[static_cast<std::size_t>(w)];
        cw.insert(w);
        if (std::includes(cw.begin(), cw.end(), closed.begin(), closed.end())) dominator = w;
      }
      if (dominator < 0) continue;
      std::vector<Simplex> star;
      for (const auto& sx : present)
        if (sx.contains(v)) star.push_back(sx);
      std::sort(star.rbegin(), star.rend());
      for (const auto& sx : star) {
        s.events.push_back({d, ZigzagOp::Remove, sx});
        present.erase(sx);
      }
      alive[static_cast<std::size_t>(v)] = 0;
      for (int w : nb[static_cast<std::size_t>(v)]) nb[static_cast<std::size_t>(w)].erase(v);
      nb[static_cast<std::size_t>(v)].clear();
      break;
    }
  }
  return s;
}


}  // namespace

TEST_SUITE("persistence") {

TEST_CASE("standard reduction on small filtrations") {
  const auto one = reduce_standard(adds({{0, Simplex{0}}}), 1);
  REQUIRE(one.size() == 1);
  CHECK(one.points[0] == DiagramPoint{0, 0, kInf});

  const auto two = reduce_standard(adds({{0, Simplex{0}}, {0, Simplex{1}}, {1, Simplex{0, 1}}}), 1);
  CHECK(two.points == std::vector<DiagramPoint>{{0, 0, 1}, {0, 0, kInf}});

  const auto sq = reduce_standard(vr_filtration_events(support::unit_square(), 2), 2);
  const auto h1 = sq.in_dimension(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == 1.0);
  CHECK(h1[0].death == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.in_dimension(0).size() == 4);
  // Without the tetrahedron the four triangles leave a sphere behind.
  CHECK(sq.in_dimension(2) == std::vector<DiagramPoint>{{2, std::sqrt(2.0), kInf}});
  // The second diagonal closes a zero-length H1 class.
  CHECK(sq.zero_length > 0);
}

TEST_CASE("standard reduction rejects invalid streams") {
  ZigzagEventStream s = adds({{0, Simplex{0}}});
  s.events.push_back({1, ZigzagOp::Remove, Simplex{0}});
  CHECK_THROWS_AS(reduce_standard(s, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_standard(adds({{0, Simplex{0, 1}}}), 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_standard(adds({{1, Simplex{0}}, {0, Simplex{1}}}), 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_standard(adds({{0, Simplex{0}}, {0, Simplex{0}}}), 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_standard(adds({{0, Simplex{0}}}), -1), std::invalid_argument);
}

TEST_CASE("standard reduction matches the rank oracle") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 6);
    oracle::Table t(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b) {
        // Few distinct values so ties are common.
        const double v = 1.0 + static_cast<double>(gen() % 5);
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = t[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = v;
        e(a, b) = e(b, a) = v;
      }
    const int top = 1 + trial % 2;
    const auto got = support::points_of(reduce_standard(flag_filtration(e, top + 1), top));
    const auto want = oracle::diagram(oracle::flag_filtration(t, top + 1), top);
    CHECK(support::same_points(got, want));
  }
}

TEST_CASE("zigzag on hand examples") {
  ZigzagEventStream s;
  s.events = {{1, ZigzagOp::Add, Simplex{0}}, {4, ZigzagOp::Remove, Simplex{0}}};
  const auto pd = zigzag_persistence(s, 1);
  CHECK(pd.points == std::vector<DiagramPoint>{{0, 1, 4}});

  const auto sq = vr_filtration_events(support::unit_square(), 2);
  const auto a = zigzag_persistence(sq, 2);
  const auto b = reduce_standard(sq, 2);
  CHECK(a.points == b.points);
  CHECK(a.zero_length == b.zero_length);

  ZigzagEventStream tri;
  tri.events = {{0, ZigzagOp::Add, Simplex{0}},    {0, ZigzagOp::Add, Simplex{1}},
                {0, ZigzagOp::Add, Simplex{2}},    {1, ZigzagOp::Add, Simplex{0, 1}},
                {2, ZigzagOp::Add, Simplex{1, 2}}, {3, ZigzagOp::Add, Simplex{0, 2}},
                {5, ZigzagOp::Remove, Simplex{1, 2}}};
  const auto tp = zigzag_persistence(tri, 1);
  CHECK(tp.in_dimension(1) == std::vector<DiagramPoint>{{1, 3, 5}});
  CHECK(tp.in_dimension(0) == std::vector<DiagramPoint>{{0, 0, 1}, {0, 0, 2}, {0, 0, kInf}});
}

TEST_CASE("zigzag rejects invalid streams") {
  ZigzagEventStream s;
  s.events = {{0, ZigzagOp::Remove, Simplex{0}}};
  CHECK_THROWS_AS(zigzag_persistence(s, 1), std::invalid_argument);
  s.events = {{0, ZigzagOp::Add, Simplex{0, 1}}};
  CHECK_THROWS_AS(zigzag_persistence(s, 1), std::invalid_argument);
  s.events = {{0, ZigzagOp::Add, Simplex{0}}, {0, ZigzagOp::Add, Simplex{1}},
              {0, ZigzagOp::Add, Simplex{0, 1}}, {1, ZigzagOp::Remove, Simplex{1}}};
  CHECK_THROWS_AS(zigzag_persistence(s, 1), std::invalid_argument);
  s.events = {{1, ZigzagOp::Add, Simplex{0}}, {0, ZigzagOp::Add, Simplex{1}}};
  CHECK_THROWS_AS(zigzag_persistence(s, 1), std::invalid_argument);
  CHECK(zigzag_persistence(ZigzagEventStream{}, 1).size() == 0);
}

TEST_CASE("zigzag agrees with standard reduction on ascending streams") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = support::random_planar(gen, 6 + trial % 6);
    const auto f = vr_filtration_events(s, 3);
    const auto a = zigzag_persistence(f, 2);
    const auto b = reduce_standard(f, 2);
    CHECK(a.points == b.points);
    CHECK(a.zero_length == b.zero_length);
  }
}

TEST_CASE("zigzag intervals count the homology of every prefix") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 3);
    const auto s = random_zigzag(gen, n, 2 + static_cast<int>(gen() % 2), 20 + static_cast<int>(gen() % 60));
    validate(s);
    const auto bars = zigzag_intervals(s);
    for (std::size_t t = 0; t < s.size(); ++t) {
      const auto snap = snapshot_prefix(s, t + 1);
      for (int d = 0; d <= 2; ++d) {
        std::size_t c = 0;
        for (const auto& b : bars)
          if (b.dim == d && b.birth <= t && t < b.death) ++c;
        CHECK(c == homology_rank(snap, d));
      }
    }
    // Every event opens or closes exactly one bar.
    std::vector<int> touched(s.size(), 0);
    for (const auto& b : bars) {
      ++touched[b.birth];
      if (b.death < s.size()) ++touched[b.death];
    }
    CHECK(std::all_of(touched.begin(), touched.end(), [](int x) { return x == 1; }));

    const auto pd = zigzag_persistence(s, 2);
    for (const auto& e : s.events)
      for (double delta : {0.0, 0.5})
        for (int d = 0; d <= 2; ++d)
          CHECK(alive(pd, d, e.alpha + delta) == homology_rank(snapshot(s, e.alpha + delta), d));
  }
}

TEST_CASE("homology ranks") {
  CHECK(homology_rank(SimplicialComplex({Simplex{0}, Simplex{4}, Simplex{7}}), 0) == 3);
  const SimplicialComplex hollow({Simplex{0}, Simplex{1}, Simplex{2}, Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
  CHECK(homology_rank(hollow, 0) == 1);
  CHECK(homology_rank(hollow, 1) == 1);
  std::vector<Simplex> tet;
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<Vertex> vs;
    for (int v = 0; v < 4; ++v)
      if (mask >> v & 1) vs.push_back(v);
    tet.push_back(Simplex(std::span<const Vertex>(vs)));
  }
  const SimplicialComplex sphere(tet);
  CHECK(homology_rank(sphere, 0) == 1);
  CHECK(homology_rank(sphere, 1) == 0);
  CHECK(homology_rank(sphere, 2) == 1);
  CHECK(homology_rank(sphere, -1) == 0);
  CHECK(homology_rank(SimplicialComplex{}, 0) == 0);
  CHECK_THROWS_AS(homology_rank(SimplicialComplex({Simplex{0, 1}}), 0), std::invalid_argument);
}

TEST_CASE("homology ranks match dense elimination and the Euler characteristic") {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> u(0.2, 0.7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = support::random_planar(gen, 5 + trial % 7);
    const auto c = build_vr(s, u(gen), 3);
    const auto cells = support::cells_of(c);
    const std::vector<oracle::Cell> list(cells.begin(), cells.end());
    long chi_h = 0;
    long chi_c = 0;
    for (int d = 0; d <= 3; ++d) {
      const auto h = homology_rank(c, d);
      CHECK(h == oracle::betti(list, d));
      chi_h += (d % 2 ? -1 : 1) * static_cast<long>(h);
      chi_c += (d % 2 ? -1 : 1) * static_cast<long>(c.count(d));
    }
    CHECK(chi_h == chi_c);
  }
}

TEST_CASE("circle of thirty points") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 30; ++i) {
    const double th = 2.0 * M_PI * i / 30.0;
    pts.push_back({std::cos(th), std::sin(th)});
  }
  const auto s = support::planar(pts);
  const auto pd = exact_diagram(s, 1, 64);
  const auto h1 = pd.in_dimension(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == doctest::Approx(2.0 * std::sin(M_PI / 30.0)).epsilon(1e-12));
  CHECK(h1[0].death == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(pd.in_dimension(0).size() == 30);
}

TEST_CASE("collapse and cone methods agree on sparse streams") {
  std::mt19937_64 gen(31);
  const double eps[] = {0.05, 0.1, 0.2, 0.3};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(gen() % 30);
    const auto space = support::random_planar(gen, n);
    const Index k = 2 + static_cast<Index>(gen() % static_cast<std::uint64_t>(n - 1));
    for (int max_dim : {0, 1}) {
      const auto r = sparse_pipeline(space, k, eps[trial % 4], max_dim, 0, false);
      const auto cone = sorted_bars(zigzag_intervals(r.stream, max_dim, ZigzagMethod::Cone));
      CHECK(sorted_bars(zigzag_intervals(r.stream, max_dim, ZigzagMethod::Collapse)) == cone);
      CHECK(sorted_bars(zigzag_intervals(r.stream, max_dim)) == cone);
    }
  }
}

TEST_CASE("collapse method on streams removing dominated vertices") {
  std::mt19937_64 gen(47);
  int removals = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int top = 1 + trial % 3;
    const auto s = dominated_removals(gen, 5 + trial % 12, top);
    validate(s);
    for (const auto& e : s.events) removals += e.op == ZigzagOp::Remove;
    const int max_dim = top - 1;
    const auto bars = zigzag_intervals(s, max_dim, ZigzagMethod::Collapse);
    CHECK(sorted_bars(bars) == sorted_bars(zigzag_intervals(s, max_dim, ZigzagMethod::Cone)));
    for (std::size_t t = 0; t < s.size(); ++t) {
      const auto snap = snapshot_prefix(s, t + 1);
      for (int d = 0; d <= max_dim; ++d) {
        std::size_t c = 0;
        for (const auto& b : bars)
          if (b.dim == d && b.birth <= t && t < b.death) ++c;
        CHECK(c == homology_rank(snap, d));
      }
    }
  }
  CHECK(removals > 0);
}

TEST_CASE("other streams fall back to the cone method") {
  std::mt19937_64 gen(53);
  int refused = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_zigzag(gen, 4, 2, 40);
    const auto cone = sorted_bars(zigzag_intervals(s, 1, ZigzagMethod::Cone));
    CHECK(sorted_bars(zigzag_intervals(s, 1)) == cone);
    std::vector<Bar> collapsed;
    try {
      collapsed = sorted_bars(zigzag_intervals(s, 1, ZigzagMethod::Collapse));
    } catch (const std::invalid_argument&) {
      ++refused;
      continue;
    }
    CHECK(collapsed == cone);
  }
  CHECK(refused > 0);
  // isolated vertex removal kills a component, it is not a collapse
  ZigzagEventStream iso;
  iso.events = {{0, ZigzagOp::Add, Simplex{0}}, {1, ZigzagOp::Add, Simplex{1}}, {2, ZigzagOp::Remove, Simplex{1}}};
  CHECK_THROWS_AS(zigzag_intervals(iso, 0, ZigzagMethod::Collapse), std::invalid_argument);
  CHECK(sorted_bars(zigzag_intervals(iso, 0)) == std::vector<Bar>{{0, 0, 3}, {0, 1, 2}});
  CHECK_THROWS_AS(zigzag_intervals(iso, -1), std::invalid_argument);
}

}  // TEST_SUITE
