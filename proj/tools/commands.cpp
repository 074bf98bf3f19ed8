#include "commands.hpp"

#include "sparsevr/diagram.hpp"
#include "sparsevr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sparsevr::cli {

namespace {

int write_to(const std::string& path, std::ostream& fallback,
             const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return kSuccess;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot write '" + path + "'");
  body(file);
  return kSuccess;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return in;
}

FiniteMetricSpace load(const RunConfig& cfg) {
  if (cfg.input.empty()) throw std::invalid_argument("--input is required");
  return io::load_space(cfg.input, cfg.format, cfg.norm);
}

}  // namespace

Index resolve_k(const RunConfig& cfg, Index n) {
  if (cfg.k == "auto") return auto_k(n, cfg.k_exponent);
  std::size_t used = 0;
  long long k = 0;
  try {
    k = std::stoll(cfg.k, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cfg.k.size()) throw std::invalid_argument("--k must be a count or 'auto'");
  if (k < 1 || k > n) {
    throw std::invalid_argument("--k " + cfg.k + " outside [1, " + std::to_string(n) + "]");
  }
  return static_cast<Index>(k);
}

int cmd_greedy(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto space = load(cfg);
  const Index k = resolve_k(cfg, space.size());
  GreedyPermutation perm;
  if (!cfg.extend.empty()) {
    auto in = open_input(cfg.extend);
    const auto saved = io::read_traversal(in);
    if (static_cast<Index>(saved.size()) > k) {
      throw std::invalid_argument("--extend: saved traversal is longer than --k");
    }
    perm = resume(space, saved, k);
  } else {
    perm = farthest_first(space, k, cfg.start);
  }
  const auto sched = schedule(perm, cfg.epsilon);
  return write_to(cfg.out, out, [&](std::ostream& os) { io::write_traversal(os, perm, sched); });
}

int cmd_sparsify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto space = load(cfg);
  const Index k = resolve_k(cfg, space.size());
  const auto r = sparse_pipeline(space, k, cfg.epsilon, cfg.max_dim, cfg.start, false);
  write_to(cfg.out, out, [&](std::ostream& os) { io::write_event_stream(os, r.stream); });
  if (!cfg.critical_out.empty()) {
    write_to(cfg.critical_out, out, [&](std::ostream& os) { io::write_critical_events(os, r.critical); });
  }
  std::ostream& summary = cfg.out.empty() ? err : out;
  summary << "n," << space.size() << '\n'
          << "k," << k << '\n'
          << "epsilon," << io::format_double(cfg.epsilon) << '\n'
          << "max_dim," << cfg.max_dim << '\n'
          << "u," << r.stream.size() << '\n'
          << "critical_values," << r.critical.size() << '\n'
          << "max_neighbors," << r.max_neighbors << '\n'
          << "rad_k," << io::format_double(r.perm.rad.back()) << '\n'
          << "predicted_error," << io::format_double(r.predicted_error()) << '\n';
  return kSuccess;
}

int cmd_persist(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  PersistenceDiagram pd;
  if (!cfg.events_in.empty()) {
    auto in = open_input(cfg.events_in);
    pd = zigzag_persistence(io::read_event_stream(in), cfg.max_dim);
  } else {
    const auto space = load(cfg);
    if (cfg.exact) {
      pd = exact_diagram(space, cfg.max_dim, cfg.exact_cap);
    } else {
      pd = sparse_pipeline(space, resolve_k(cfg, space.size()), cfg.epsilon, cfg.max_dim, cfg.start)
               .diagram;
    }
  }
  write_to(cfg.out, out, [&](std::ostream& os) { io::write_diagram(os, pd); });
  if (!cfg.plot_out.empty()) {
    write_to(cfg.plot_out, out, [&](std::ostream& os) { os << io::render_svg(pd); });
  }
  return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!cfg.additive && !cfg.multiplicative && !cfg.bottleneck) {
    throw std::invalid_argument("compare needs --additive, --multiplicative or --bottleneck");
  }
  auto in_a = open_input(cfg.diagram_a);
  auto in_b = open_input(cfg.diagram_b);
  const auto a = io::read_diagram(in_a);
  const auto b = io::read_diagram(in_b);

  ComparisonReport report;
  report.offset_a_in_b = l1_offset_radius(a, b);
  report.offset_b_in_a = l1_offset_radius(b, a);
  report.bottleneck = sparsevr::bottleneck(a, b);
  if (cfg.additive) {
    const double r = *cfg.additive;
    report.rows.push_back({"additive", "r=" + io::format_double(r),
                           std::max(report.offset_a_in_b, report.offset_b_in_a),
                           additive_band_check(a, b, r)});
  }
  if (cfg.multiplicative) {
    const double eps = *cfg.multiplicative;
    check_epsilon(eps);
    const auto band = multiplicative_band(a, b, eps);
    report.rows.push_back({"multiplicative", "epsilon=" + io::format_double(eps), 1.0 / (1.0 - 2.0 * eps),
                           band.pass});
    report.band_witness = band.matching;
  }
  if (cfg.bottleneck) {
    const double limit = cfg.bottleneck_threshold.value_or(std::numeric_limits<double>::infinity());
    report.rows.push_back({"bottleneck", "threshold=" + io::format_double(limit), report.bottleneck,
                           report.bottleneck <= limit + tolerance::kCompare});
  }
  write_to(cfg.out, out, [&](std::ostream& os) { os << report.to_text(); });
  return report.pass() ? kSuccess : kCheckFailed;
}

std::vector<std::vector<double>> uniform_square(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    // Explicit 53-bit mantissa draw keeps the data identical across
    // standard library implementations.
    const double x = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double y = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    p = {x, y};
  }
  return pts;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.sizes.empty()) throw std::invalid_argument("--sizes is empty");
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end())) {
    throw std::invalid_argument("--sizes must be ascending");
  }
  if (cfg.repetitions < 1) throw std::invalid_argument("--repetitions must be positive");
  std::vector<double> ns;
  std::vector<double> totals;
  std::vector<double> ratios;
  std::ostringstream table;
  table << "n,k,u,u_over_k,max_neighbors,greedy_ms,events_ms,persistence_ms,total_ms\n";
  for (Index n : cfg.sizes) {
    const Index k = auto_k(n, cfg.k_exponent);
    StageTimes best;
    double best_total = std::numeric_limits<double>::infinity();
    std::size_t u = 0;
    std::size_t max_nb = 0;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const auto space = FiniteMetricSpace::from_points(
          make_point_cloud(uniform_square(n, cfg.seed + 1000003ull * static_cast<std::uint64_t>(n)), cfg.norm));
      const auto r = sparse_pipeline(space, k, cfg.epsilon, cfg.max_dim, 0);
      if (r.times.total() < best_total) {
        best_total = r.times.total();
        best = r.times;
      }
      u = r.stream.size();
      max_nb = r.max_neighbors;
    }
    const double ratio = static_cast<double>(u) / static_cast<double>(k);
    table << n << ',' << k << ',' << u << ',' << io::format_double(ratio) << ',' << max_nb << ','
          << io::format_double(best.greedy_ms) << ',' << io::format_double(best.events_ms) << ','
          << io::format_double(best.persistence_ms) << ',' << io::format_double(best_total) << '\n';
    err << "bench n=" << n << " k=" << k << " u=" << u << " total_ms=" << best_total << '\n';
    ns.push_back(static_cast<double>(n));
    totals.push_back(std::max(best_total, 1e-6));
    ratios.push_back(ratio);
  }
  const auto slope = loglog_slope(ns, totals);
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  table << "# slope," << (slope ? io::format_double(*slope) : std::string("n/a")) << '\n';
  table << "# u_over_k_spread," << io::format_double(*hi / *lo) << '\n';
  return write_to(cfg.out, out, [&](std::ostream& os) { os << table.str(); });
}

int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto in = open_input(cfg.input);
  const auto pd = io::read_diagram(in);
  return write_to(cfg.out, out, [&](std::ostream& os) { os << io::render_svg(pd); });
}

}  // namespace sparsevr::cli
