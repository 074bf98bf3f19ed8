#pragma once

#include "sparsevr/metric.hpp"
#include "sparsevr/sparse.hpp"

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sparsevr {

using Vertex = std::int32_t;

/// Sorted set of distinct vertices stored inline. Ordered by dimension first,
/// then lexicographically.
class Simplex {
 public:
  static constexpr int kMaxVertices = 6;

  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vs);
  explicit Simplex(std::span<const Vertex> vs);

  int size() const { return size_; }
  int dimension() const { return size_ - 1; }
  bool empty() const { return size_ == 0; }
  Vertex operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const Vertex* begin() const { return v_.data(); }
  const Vertex* end() const { return v_.data() + size_; }
  Vertex back() const { return v_[static_cast<std::size_t>(size_ - 1)]; }

  bool contains(Vertex x) const;
  /// The face obtained by dropping the vertex at position pos.
  Simplex facet(int pos) const;
  /// Adds a vertex not already present.
  Simplex with(Vertex x) const;

  std::string to_string() const;  // "0-2-3"

  // Unused slots are always zero.
  friend bool operator==(const Simplex& a, const Simplex& b) { return a.size_ == b.size_ && a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.v_[i] != b.v_[i]) return a.v_[i] <=> b.v_[i];
    return std::strong_ordering::equal;
  }

 private:
  std::array<Vertex, kMaxVertices> v_{};
  std::uint8_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.size()) * 0x9E3779B97F4A7C15ull;
    for (Vertex v : s) h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDull;
    return h ^ (h >> 33);
  }
};

/// A finite simplicial complex kept as a sorted, duplicate-free simplex list.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(std::vector<Simplex> simplices);

  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  std::size_t count(int dim) const;
  int dimension() const;
  bool contains(const Simplex& s) const;
  std::vector<Vertex> vertices() const;

  /// Every face of every simplex is present.
  bool is_closed() const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;

  /// C(v): for each maximal simplex containing v whose other vertices are
  /// all smaller than v, the set of those other vertices.
  std::vector<Simplex> lower_maximal_simplices(Vertex v) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  std::vector<Simplex> simplices_;
};

/// Flag complex on vertices 0..k-1 of the graph given by the predicate,
/// truncated to simplices of dimension <= max_simplex_dim.
SimplicialComplex flag_complex(Index k, const std::vector<Vertex>& vertices,
                               const std::function<bool(Vertex, Vertex)>& adjacent,
                               int max_simplex_dim);

SimplicialComplex build_vr(const FiniteMetricSpace& space, double alpha, int max_simplex_dim);
/// rVR_alpha on all of M_k: edges where D_alpha <= alpha.
SimplicialComplex build_rvr(const Relaxation& relax, double alpha, int max_simplex_dim);
/// rVR restricted to the level L_alpha.
SimplicialComplex build_svr(const Relaxation& relax, double alpha, int max_simplex_dim);

enum class ZigzagOp { Add, Remove };

struct ZigzagEvent {
  double alpha = 0.0;
  ZigzagOp op = ZigzagOp::Add;
  Simplex simplex;

  friend bool operator==(const ZigzagEvent&, const ZigzagEvent&) = default;
};

struct ZigzagEventStream {
  std::vector<ZigzagEvent> events;

  std::size_t size() const { return events.size(); }
  bool ascending() const;
};

/// Throws std::invalid_argument describing the first violation: an Add with a
/// missing facet or of a present simplex, a Remove of an absent simplex or
/// one with a present coface, or decreasing alpha.
void validate(const ZigzagEventStream& stream);

/// The complex after replaying every event with alpha <= the given value.
SimplicialComplex snapshot(const ZigzagEventStream& stream, double alpha);
/// The complex after the first `count` events.
SimplicialComplex snapshot_prefix(const ZigzagEventStream& stream, std::size_t count);

/// Sparse zigzag from an already sorted critical-event list on k vertices.
/// All k vertices enter at alpha = 0; an edge insertion adds every new clique
/// through the edge (ascending dimension, then lexicographic), a vertex
/// deletion removes its star (descending dimension, then lexicographic).
ZigzagEventStream sparse_zigzag_events(Index k, const std::vector<CriticalEvent>& events,
                                       int max_simplex_dim);
ZigzagEventStream sparse_zigzag_events(const Relaxation& relax, int max_simplex_dim);

/// Ascending flag filtration: each simplex enters at the largest value of
/// its edges (0 for vertices). Ordered by value, then dimension, then
/// lexicographically.
ZigzagEventStream flag_filtration(const Eigen::MatrixXd& edge_value, int max_simplex_dim);

/// Exact Vietoris-Rips filtration; refuses spaces larger than cap.
ZigzagEventStream vr_filtration_events(const FiniteMetricSpace& space, int max_simplex_dim,
                                       Index cap = 25);
/// Ascending relaxed Vietoris-Rips filtration on M_k.
ZigzagEventStream rvr_filtration_events(const Relaxation& relax, int max_simplex_dim);

}  // namespace sparsevr
