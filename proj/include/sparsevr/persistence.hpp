#pragma once

#include "sparsevr/complex.hpp"

#include <cstddef>
#include <vector>

namespace sparsevr {

/// One bar [birth, death) of a persistence diagram; death may be +inf.
struct DiagramPoint {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;

  double persistence() const { return death - birth; }
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Multiset of off-diagonal points over the two-element field, kept sorted
/// by (dim, birth, death).
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
  /// Bars discarded because birth and death map to the same alpha.
  std::size_t zero_length = 0;

  void normalize();
  std::vector<DiagramPoint> in_dimension(int dim) const;
  std::size_t size() const { return points.size(); }
};

/// Bars indexed by stream position: the class is alive in the complexes
/// obtained after events birth .. death-1, i.e. born by event `birth` and
/// killed by event `death`. death == stream size means alive to the end.
struct IndexInterval {
  int dim = 0;
  std::size_t birth = 0;
  std::size_t death = 0;
};

/// Column reduction of an ascending (Add-only) stream. Reports dimensions
/// 0..max_dim; the stream should contain simplices up to max_dim + 1 for the
/// top dimension's deaths to be right.
PersistenceDiagram reduce_standard(const ZigzagEventStream& stream, int max_dim);

enum class ZigzagMethod {
  /// Collapse when every removal deletes the star of a dominated vertex,
  /// otherwise Cone.
  Auto,
  /// Collapse only; throws std::invalid_argument when a removal run is not
  /// such a star.
  Collapse,
  /// Up-down conversion and coning; handles every valid stream.
  Cone,
};

/// Interval decomposition of the zigzag module of a stream, all dimensions,
/// in stream positions.
std::vector<IndexInterval> zigzag_intervals(const ZigzagEventStream& stream);
/// The intervals of dimension <= max_dim.
std::vector<IndexInterval> zigzag_intervals(const ZigzagEventStream& stream, int max_dim,
                                            ZigzagMethod method = ZigzagMethod::Auto);

/// zigzag_intervals mapped to alpha and restricted to dimensions <= max_dim.
PersistenceDiagram zigzag_persistence(const ZigzagEventStream& stream, int max_dim,
                                      ZigzagMethod method = ZigzagMethod::Auto);

/// Betti number over the two-element field.
std::size_t homology_rank(const SimplicialComplex& complex, int dim);

}  // namespace sparsevr
