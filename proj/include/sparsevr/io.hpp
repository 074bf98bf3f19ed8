#pragma once

#include "sparsevr/complex.hpp"
#include "sparsevr/greedy.hpp"
#include "sparsevr/metric.hpp"
#include "sparsevr/persistence.hpp"
#include "sparsevr/sparse.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsevr::io {

/// Shortest round-trippable text: 17 significant digits, "inf" for +inf.
std::string format_double(double x);
/// Parses a decimal or inf/infinity token; throws std::invalid_argument.
double parse_double(const std::string& token);

/// One point per line, comma-separated coordinates; '#' starts a comment.
std::vector<std::vector<double>> read_point_rows(std::istream& in);

/// Full n x n table, or lower-triangular rows 1..n-1 holding 1..n-1 values.
/// A file whose rows are all as long as the row count is read as a full
/// table; otherwise row r must hold r values.
FiniteMetricSpace read_matrix(std::istream& in);

enum class InputFormat { Points, Matrix };
FiniteMetricSpace load_space(const std::string& path, InputFormat format, Norm norm = Norm::Euclidean);

/// `index,rad,time` with one row per traversal position.
void write_traversal(std::ostream& out, const GreedyPermutation& perm, const DeletionSchedule& sched);
/// Point indices in traversal order from a traversal CSV.
std::vector<Index> read_traversal(std::istream& in);

/// `alpha,kind,i[,j]` with kind DEL or EDGE.
void write_critical_events(std::ostream& out, const std::vector<CriticalEvent>& events);
std::vector<CriticalEvent> read_critical_events(std::istream& in);

/// `alpha,op,simplex` with op ADD or REMOVE and the simplex as "0-2-3".
void write_event_stream(std::ostream& out, const ZigzagEventStream& stream);
ZigzagEventStream read_event_stream(std::istream& in);

/// `dim,birth,death`, sorted, "inf" for essential classes.
void write_diagram(std::ostream& out, const PersistenceDiagram& pd);
PersistenceDiagram read_diagram(std::istream& in);

/// Persistence diagram scatter plot: one colour per dimension, the diagonal,
/// and essential classes on a band above the plotting area.
std::string render_svg(const PersistenceDiagram& pd);

}  // namespace sparsevr::io
