#include "commands.hpp"

#include <CLI11.hpp>

#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using sparsevr::cli::RunConfig;

std::vector<sparsevr::Index> parse_sizes(const std::string& text) {
  std::vector<sparsevr::Index> sizes;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument("bad size '" + tok + "'");
    sizes.push_back(static_cast<sparsevr::Index>(v));
  }
  return sizes;
}

void add_input(CLI::App* cmd, RunConfig& cfg) {
  static const std::map<std::string, sparsevr::io::InputFormat> formats{
      {"points", sparsevr::io::InputFormat::Points}, {"matrix", sparsevr::io::InputFormat::Matrix}};
  static const std::map<std::string, sparsevr::Norm> norms{{"euclidean", sparsevr::Norm::Euclidean},
                                                           {"manhattan", sparsevr::Norm::Manhattan},
                                                           {"chebyshev", sparsevr::Norm::Chebyshev}};
  cmd->add_option("--input,-i", cfg.input, "point rows or distance matrix (CSV)");
  cmd->add_option("--format", cfg.format, "points | matrix")->transform(CLI::CheckedTransformer(formats));
  cmd->add_option("--norm", cfg.norm, "euclidean | manhattan | chebyshev")
      ->transform(CLI::CheckedTransformer(norms));
}

void add_sparse(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--epsilon,-e", cfg.epsilon, "approximation parameter in (0, 1/3)");
  cmd->add_option("--k", cfg.k, "number of traversal points, or 'auto'");
  cmd->add_option("--k-exponent", cfg.k_exponent, "exponent used by --k auto");
  cmd->add_option("--max-dim", cfg.max_dim, "top homology dimension")->check(CLI::NonNegativeNumber);
  cmd->add_option("--start", cfg.start, "first traversal point")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = sparsevr::cli;
  RunConfig cfg;
  std::string sizes = "256,512,1024,2048";
  std::function<int(const RunConfig&, std::ostream&, std::ostream&)> run;

  CLI::App app{"Sparse zigzag Vietoris-Rips persistence"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "seed for generated data");

  auto* greedy = app.add_subcommand("greedy", "farthest-first traversal");
  add_input(greedy, cfg);
  add_sparse(greedy, cfg);
  greedy->add_option("--extend", cfg.extend, "saved traversal CSV to continue");
  greedy->add_option("--out,-o", cfg.out, "output file");
  greedy->callback([&] { run = cli::cmd_greedy; });

  auto* sparsify = app.add_subcommand("sparsify", "sparse zigzag event stream");
  add_input(sparsify, cfg);
  add_sparse(sparsify, cfg);
  sparsify->add_option("--out,-o", cfg.out, "event stream file");
  sparsify->add_option("--critical", cfg.critical_out, "critical event file");
  sparsify->callback([&] { run = cli::cmd_sparsify; });

  auto* persist = app.add_subcommand("persist", "persistence diagram");
  add_input(persist, cfg);
  add_sparse(persist, cfg);
  persist->add_flag("--exact", cfg.exact, "brute-force Vietoris-Rips instead of the sparse zigzag");
  persist->add_option("--exact-cap", cfg.exact_cap, "largest n accepted by --exact");
  persist->add_option("--events", cfg.events_in, "read an event stream instead of a metric");
  persist->add_option("--plot", cfg.plot_out, "also write an SVG plot");
  persist->add_option("--out,-o", cfg.out, "diagram file");
  persist->callback([&] { run = cli::cmd_persist; });

  auto* compare = app.add_subcommand("compare", "compare two diagrams");
  compare->add_option("a", cfg.diagram_a, "first diagram")->required();
  compare->add_option("b", cfg.diagram_b, "second diagram")->required();
  compare->add_option("--additive", cfg.additive, "L1 offset radius r");
  compare->add_option("--multiplicative", cfg.multiplicative, "band parameter epsilon");
  compare->add_flag("--bottleneck", cfg.bottleneck, "report the bottleneck distance");
  compare->add_option("--threshold", cfg.bottleneck_threshold, "fail when bottleneck exceeds this");
  compare->add_option("--out,-o", cfg.out, "report file");
  compare->callback([&] { run = cli::cmd_compare; });

  auto* bench = app.add_subcommand("bench", "scaling benchmark on uniform planar points");
  add_sparse(bench, cfg);
  bench->add_option("--sizes", sizes, "ascending comma-separated sizes");
  bench->add_option("--repetitions", cfg.repetitions, "runs per size; fastest is kept");
  bench->add_option("--seed", cfg.seed, "seed for generated data");
  bench->add_option("--out,-o", cfg.out, "CSV file");
  bench->callback([&] { run = cli::cmd_bench; });

  auto* plot = app.add_subcommand("plot", "SVG plot of a diagram");
  plot->add_option("--input,-i", cfg.input, "diagram CSV")->required();
  plot->add_option("--out,-o", cfg.out, "SVG file");
  plot->callback([&] { run = cli::cmd_plot; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsageError;
  }

  try {
    if (bench->parsed()) cfg.sizes = parse_sizes(sizes);
    return run(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageError;
  }
}
