#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsr/graph.hpp"
#include "gsr/random.hpp"
#include "gsr/sampling.hpp"

namespace gsr {

// Synthetic graphs ----------------------------------------------------------

Graph path_graph(std::size_t n);
/// 4-neighbor lattice, vertex (r, c) has index r * cols + c.
Graph grid_graph(std::size_t rows, std::size_t cols);
/// Points uniform in the unit square joined when closer than `radius`.
/// Redraws until the graph is connected; throws after `max_attempts`.
Graph random_geometric_graph(std::size_t n, double radius, Rng& rng,
                             std::size_t max_attempts = 1000);

// Configuration -------------------------------------------------------------

struct GraphSource {
  enum class Kind { kPath, kGrid, kRandomGeometric, kFile };
  Kind kind = Kind::kGrid;
  std::size_t n = 0;      ///< path length or RGG size
  std::size_t rows = 20;  ///< grid
  std::size_t cols = 20;
  double radius = 0.0;    ///< RGG
  std::filesystem::path file;
  int index_base = 0;
};

struct NoiseSpec {
  enum class Kind { kNone, kIid, kGrouped };
  Kind kind = Kind::kNone;
  std::vector<double> sigmas;     ///< one value for iid
  std::vector<double> fractions;  ///< grouped only; defaults to equal groups
};

/// Resolved experiment description. Exactly one of `omega`/`bandwidth`
/// selects the band; when neither is set, omega is chosen so that
/// C_max sqrt(omega) equals `gamma_target`.
struct ExperimentConfig {
  std::string name = "experiment";
  GraphSource graph;
  std::optional<double> omega;
  std::optional<std::size_t> bandwidth;
  double gamma_target = 0.5;
  std::optional<std::size_t> n_max = 8;  ///< nullopt: suggest_nmax(omega)
  std::vector<WeightScheme> schemes{WeightScheme::kUniform};
  NoiseSpec noise;
  std::optional<double> offband_energy;
  std::size_t trials = 10;
  std::size_t max_iterations = 200;
  double stop_tolerance = 0.0;  ///< 0 runs every iteration so curves align
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
};

/// Parses `key = value` lines; `#` starts a comment. Relative file paths
/// resolve against `base_dir`. Throws ParseError or std::invalid_argument.
ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::filesystem::path& base_dir = ".");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical `key = value` text for the resolved config.
std::string describe(const ExperimentConfig& cfg);

Graph build_graph(const GraphSource& source, std::uint64_t seed);

// Running -------------------------------------------------------------------

struct SchemeResult {
  WeightScheme scheme;
  std::vector<double> mean_rel_error;  ///< per iteration 0..max_iterations
  std::vector<double> std_rel_error;
  std::vector<double> final_errors;    ///< per trial, at the last iteration
  double steady_mean = 0.0;
  double steady_std = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t num_sets = 0;
  double c_max = 0.0;
  double omega = 0.0;
  std::size_t in_band_dimension = 0;
  double gamma = 0.0;
  bool gamma_warning = false;
  std::vector<SchemeResult> schemes;
};

/// ||estimate - truth|| / ||truth||; throws std::domain_error for a zero truth.
double relative_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth);

/// Runs every trial sequentially; output depends only on the config.
ExperimentReport run_experiment(const ExperimentConfig& cfg);
/// Same, with an already built graph (the config's graph source is ignored).
ExperimentReport run_experiment(const ExperimentConfig& cfg, const Graph& g);

/// `scheme,iteration,mean_rel_error,std_rel_error` rows.
void write_csv(std::ostream& out, const ExperimentReport& report);
/// Config echo plus gamma, C_max, |I| and a timestamp.
void write_sidecar(std::ostream& out, const ExperimentReport& report);

/// Writes `<dir>/<name>.csv` and `<dir>/<name>.meta.txt`; `dir` is the
/// config's output_dir unless GSR_OUTPUT_DIR is set. Returns the CSV path.
std::filesystem::path save_report(const ExperimentReport& report);

// Statistics ----------------------------------------------------------------

struct BootstrapInterval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Percentile bootstrap interval for the mean of paired differences a - b.
BootstrapInterval bootstrap_mean_difference(const std::vector<double>& a,
                                            const std::vector<double>& b, double confidence,
                                            std::size_t resamples, Rng& rng);

}  // namespace gsr
