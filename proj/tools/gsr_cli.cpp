// Command-line front end: experiment runs, partitioning and graph summaries.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gsr/experiments.hpp"
#include "gsr/graph.hpp"
#include "gsr/local_sets.hpp"
#include "gsr/spectral.hpp"

namespace {

gsr::Graph load_graph(const std::string& path, int index_base, bool dedup) {
  gsr::EdgeListOptions opts;
  opts.index_base = index_base;
  if (dedup) opts.duplicates = gsr::DuplicatePolicy::kDeduplicate;
  return gsr::load_edge_list_file(path, opts);
}

int run_command(const std::string& config_path) {
  const auto cfg = gsr::load_experiment_config(config_path);
  const auto report = gsr::run_experiment(cfg);
  const auto csv = gsr::save_report(report);
  std::cout << "graph: " << report.n_vertices << " vertices, " << report.n_edges << " edges\n"
            << "local sets: " << report.num_sets << ", C_max = " << report.c_max
            << ", omega = " << report.omega << " (in-band dimension " << report.in_band_dimension
            << "), gamma = " << report.gamma << '\n';
  if (report.gamma_warning) {
    std::cout << "warning: gamma >= 1, convergence is not guaranteed\n";
  }
  for (const auto& s : report.schemes) {
    std::cout << "  " << gsr::to_string(s.scheme) << ": steady-state relative error "
              << s.steady_mean << " +/- " << s.steady_std << '\n';
  }
  std::cout << "wrote " << csv.string() << '\n';
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local measurement sampling and reconstruction of bandlimited graph signals"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a Monte-Carlo experiment from a config file");
  run->add_option("--config", config_path, "key = value experiment config")->required();

  std::string graph_path, out_path;
  std::size_t n_max = 0;
  int index_base = 0;
  bool dedup = false;
  auto* partition = app.add_subcommand("partition", "Greedy partition into local sets");
  partition->add_option("--graph", graph_path, "edge list")->required();
  partition->add_option("--nmax", n_max, "maximal set cardinality")->required()->check(CLI::PositiveNumber);
  partition->add_option("--out", out_path, "output partition file (default: stdout)");

  auto* info = app.add_subcommand("info", "Print N, M, lambda_2 and lambda_N of a graph");
  info->add_option("--graph", graph_path, "edge list")->required();

  for (auto* sub : {partition, info}) {
    sub->add_option("--index-base", index_base, "0 or 1")->check(CLI::IsMember({0, 1}));
    sub->add_flag("--dedup", dedup, "drop duplicate edges and self-loops instead of failing");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path);

    const auto g = load_graph(graph_path, index_base, dedup);
    if (*partition) {
      const auto p = gsr::greedy_partition(g, n_max);
      const auto metrics = gsr::partition_metrics(g, p);
      if (out_path.empty()) {
        gsr::write_partition(std::cout, p);
      } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        gsr::write_partition(out, p);
      }
      std::cerr << p.size() << " local sets, C_max = " << metrics.c_max << '\n';
      return EXIT_SUCCESS;
    }
    if (*info) {
      const auto basis = gsr::eigendecompose(gsr::build_laplacian(g));
      std::cout << "N = " << g.num_vertices() << '\n' << "M = " << g.num_edges() << '\n';
      if (basis.size() >= 2) std::cout << "lambda_2 = " << basis.eigenvalue(1) << '\n';
      std::cout << "lambda_N = " << basis.max_eigenvalue() << '\n';
      std::cout << "connected = " << (gsr::is_connected(g) ? "yes" : "no") << '\n';
      return EXIT_SUCCESS;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
