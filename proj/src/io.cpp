#include "sparsevr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sparsevr::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_number(const std::string& token) {
  try {
    parse_double(token);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

/// Data rows of a CSV stream: comments and blank lines dropped, and the first
/// row dropped when it is a header (its first field is not numeric).
std::vector<std::vector<std::string>> data_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (first) {
      first = false;
      if (!is_number(fields.front())) continue;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

Index parse_index(const std::string& token) {
  const double v = parse_double(token);
  if (v < 0 || v != std::floor(v) || v > 2e9) throw std::invalid_argument("bad index '" + token + "'");
  return static_cast<Index>(v);
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty numeric field");
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInf;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || std::isnan(v) || std::isinf(v)) {
    throw std::invalid_argument("not a number: '" + t + "'");
  }
  return v;
}

std::vector<std::vector<double>> read_point_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_csv(line)) {
      try {
        row.push_back(parse_double(f));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FiniteMetricSpace read_matrix(std::istream& in) {
  const auto rows = read_point_rows(in);
  if (rows.empty()) throw std::invalid_argument("empty matrix file");
  const std::size_t n = rows.size();
  const bool full = n > 1 && std::all_of(rows.begin(), rows.end(),
                                          [n](const auto& r) { return r.size() == n; });
  if (full) {
    Eigen::MatrixXd table(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return FiniteMetricSpace::from_matrix(table);
  }
  return FiniteMetricSpace::from_lower_triangular(rows);
}

FiniteMetricSpace load_space(const std::string& path, InputFormat format, Norm norm) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  if (format == InputFormat::Matrix) return read_matrix(in);
  return FiniteMetricSpace::from_points(make_point_cloud(read_point_rows(in), norm));
}

void write_traversal(std::ostream& out, const GreedyPermutation& perm, const DeletionSchedule& sched) {
  out << "index,rad,time\n";
  for (std::size_t i = 0; i < perm.order.size(); ++i) {
    out << perm.order[i] << ',' << format_double(perm.rad[i]) << ',' << format_double(sched.time[i]) << '\n';
  }
}

std::vector<Index> read_traversal(std::istream& in) {
  std::vector<Index> order;
  for (const auto& row : data_rows(in)) order.push_back(parse_index(row.at(0)));
  return order;
}

void write_critical_events(std::ostream& out, const std::vector<CriticalEvent>& events) {
  out << "alpha,kind,i,j\n";
  for (const auto& e : events) {
    out << format_double(e.alpha) << ',';
    if (e.kind == CriticalEvent::Kind::EdgeInsertion) {
      out << "EDGE," << e.i << ',' << e.j << '\n';
    } else {
      out << "DEL," << e.i << '\n';
    }
  }
}

std::vector<CriticalEvent> read_critical_events(std::istream& in) {
  std::vector<CriticalEvent> events;
  for (const auto& row : data_rows(in)) {
    if (row.size() < 3) throw std::invalid_argument("critical event row needs alpha,kind,i");
    CriticalEvent e;
    e.alpha = parse_double(row[0]);
    if (row[1] == "EDGE") {
      if (row.size() < 4) throw std::invalid_argument("EDGE row needs two vertices");
      e.kind = CriticalEvent::Kind::EdgeInsertion;
      e.i = parse_index(row[2]);
      e.j = parse_index(row[3]);
    } else if (row[1] == "DEL") {
      e.kind = CriticalEvent::Kind::VertexDeletion;
      e.i = parse_index(row[2]);
    } else {
      throw std::invalid_argument("unknown critical event kind '" + row[1] + "'");
    }
    events.push_back(e);
  }
  return events;
}

void write_event_stream(std::ostream& out, const ZigzagEventStream& stream) {
  out << "alpha,op,simplex\n";
  for (const auto& e : stream.events) {
    out << format_double(e.alpha) << ',' << (e.op == ZigzagOp::Add ? "ADD" : "REMOVE") << ','
        << e.simplex.to_string() << '\n';
  }
}

ZigzagEventStream read_event_stream(std::istream& in) {
  ZigzagEventStream stream;
  for (const auto& row : data_rows(in)) {
    if (row.size() != 3) throw std::invalid_argument("event row needs alpha,op,simplex");
    ZigzagEvent e;
    e.alpha = parse_double(row[0]);
    if (row[1] == "ADD") {
      e.op = ZigzagOp::Add;
    } else if (row[1] == "REMOVE") {
      e.op = ZigzagOp::Remove;
    } else {
      throw std::invalid_argument("unknown op '" + row[1] + "'");
    }
    std::vector<Vertex> vs;
    std::istringstream ss(row[2]);
    std::string tok;
    while (std::getline(ss, tok, '-')) vs.push_back(static_cast<Vertex>(parse_index(tok)));
    e.simplex = Simplex(std::span<const Vertex>(vs));
    stream.events.push_back(e);
  }
  return stream;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& pd) {
  PersistenceDiagram sorted = pd;
  sorted.normalize();
  out << "dim,birth,death\n";
  for (const auto& p : sorted.points) {
    out << p.dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
  }
}

PersistenceDiagram read_diagram(std::istream& in) {
  PersistenceDiagram pd;
  for (const auto& row : data_rows(in)) {
    if (row.size() != 3) throw std::invalid_argument("diagram row needs dim,birth,death");
    DiagramPoint p;
    p.dim = static_cast<int>(parse_index(row[0]));
    p.birth = parse_double(row[1]);
    p.death = parse_double(row[2]);
    if (std::isinf(p.birth)) throw std::invalid_argument("infinite birth");
    if (p.death < p.birth) throw std::invalid_argument("death before birth");
    pd.points.push_back(p);
  }
  pd.normalize();
  return pd;
}

std::string render_svg(const PersistenceDiagram& pd) {
  constexpr double size = 400.0;
  constexpr double margin = 40.0;
  constexpr double band = 20.0;  // essential classes live above the plot
  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double hi = 0.0;
  for (const auto& p : pd.points) {
    hi = std::max(hi, p.birth);
    if (!std::isinf(p.death)) hi = std::max(hi, p.death);
  }
  if (hi <= 0.0) hi = 1.0;
  hi *= 1.05;
  auto sx = [&](double v) { return margin + v / hi * size; };
  auto sy = [&](double v) { return margin + band + size - v / hi * size; };

  std::ostringstream svg;
  const double w = size + 2 * margin;
  const double h = size + 2 * margin + band;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\""
      << sy(0) << "\" stroke=\"black\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\""
      << margin << "\" stroke=\"black\"/>\n";
  svg << "<line class=\"diagonal\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi)
      << "\" y2=\"" << sy(hi) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  svg << "<line class=\"infinity\" x1=\"" << sx(0) << "\" y1=\"" << margin + band / 2 << "\" x2=\""
      << sx(hi) << "\" y2=\"" << margin + band / 2 << "\" stroke=\"lightgray\"/>\n";
  svg << "<text x=\"" << sx(0) - 30 << "\" y=\"" << margin + band / 2 + 4 << "\" font-size=\"10\">inf</text>\n";
  svg << "<text x=\"" << sx(hi) - 40 << "\" y=\"" << sy(0) + 20 << "\" font-size=\"10\">birth "
      << format_double(hi) << "</text>\n";
  for (const auto& p : pd.points) {
    const double cy = std::isinf(p.death) ? margin + band / 2 : sy(p.death);
    const char* colour = colours[static_cast<std::size_t>(p.dim) % 6];
    svg << "<circle class=\"" << (std::isinf(p.death) ? "essential" : "point") << "\" data-dim=\"" << p.dim
        << "\" cx=\"" << sx(p.birth) << "\" cy=\"" << cy << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sparsevr::io
