#pragma once

#include "sparsevr/io.hpp"
#include "sparsevr/metric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparsevr::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

struct RunConfig {
  std::string input;
  io::InputFormat format = io::InputFormat::Points;
  Norm norm = Norm::Euclidean;
  double epsilon = 0.1;
  std::string k = "auto";  // count or "auto"
  double k_exponent = 0.727;
  int max_dim = 1;
  Index start = 0;
  std::uint64_t seed = 1;
  std::string out;  // empty: standard output

  // greedy
  std::string extend;
  // sparsify
  std::string critical_out;
  // persist
  bool exact = false;
  Index exact_cap = 64;
  std::string events_in;
  std::string plot_out;
  // compare
  std::string diagram_a;
  std::string diagram_b;
  std::optional<double> additive;
  std::optional<double> multiplicative;
  bool bottleneck = false;
  std::optional<double> bottleneck_threshold;
  // bench
  std::vector<Index> sizes{256, 512, 1024, 2048};
  int repetitions = 1;
};

/// Resolves RunConfig::k against the point count; throws on k > n.
Index resolve_k(const RunConfig& cfg, Index n);

int cmd_greedy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sparsify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_persist(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Least-squares slope of log(y) against log(x); nullopt for fewer than two
/// distinct x values.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Uniform points in the unit square from a seeded generator.
std::vector<std::vector<double>> uniform_square(Index n, std::uint64_t seed);

}  // namespace sparsevr::cli
