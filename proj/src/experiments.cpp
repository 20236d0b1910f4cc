#include "gsr/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gsr/local_sets.hpp"
#include "gsr/noise_analysis.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/spectral.hpp"

namespace gsr {

// Stream indices derived from the seed.
namespace stream {
constexpr std::uint64_t kGraph = 0;
constexpr std::uint64_t kNoiseGroups = 1;
constexpr std::uint64_t kFirstTrial = 2;
}  // namespace stream

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return Graph(n, std::move(edges));
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph random_geometric_graph(std::size_t n, double radius, Rng& rng, std::size_t max_attempts) {
  if (!(radius > 0.0)) throw std::invalid_argument("random geometric graph needs radius > 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r2 = radius * radius;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = unit(rng);
      y[i] = unit(rng);
    }
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        const double dx = x[i] - x[j], dy = y[i] - y[j];
        if (dx * dx + dy * dy < r2) edges.push_back({i, j});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("random geometric graph: no connected draw in " +
                           std::to_string(max_attempts) + " attempts");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::string normalized = value;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, "expected a number, got '" + s + "'");
}

std::size_t to_count(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    if (!s.empty() && s[0] != '-') {
      auto v = std::stoull(s, &used);
      if (used == s.size()) return static_cast<std::size_t>(v);
    }
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, "expected a nonnegative integer, got '" + s + "'");
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return out.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t line = 0;
  bool omega_auto = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const auto items = split_list(value);
    if (items.empty()) throw ParseError(line, "missing value for '" + key + "'");

    if (key == "name") {
      cfg.name = value;
    } else if (key == "graph") {
      const auto& kind = items[0];
      auto& g = cfg.graph;
      if (kind == "path" && items.size() == 2) {
        g.kind = GraphSource::Kind::kPath;
        g.n = to_count(items[1], line);
      } else if (kind == "grid" && items.size() == 3) {
        g.kind = GraphSource::Kind::kGrid;
        g.rows = to_count(items[1], line);
        g.cols = to_count(items[2], line);
      } else if (kind == "rgg" && items.size() == 3) {
        g.kind = GraphSource::Kind::kRandomGeometric;
        g.n = to_count(items[1], line);
        g.radius = to_double(items[2], line);
      } else if (kind == "file" && items.size() == 2) {
        g.kind = GraphSource::Kind::kFile;
        std::filesystem::path p = items[1];
        g.file = p.is_absolute() ? p : base_dir / p;
      } else {
        throw ParseError(line, "graph must be 'path N', 'grid R C', 'rgg N RADIUS' or 'file PATH'");
      }
    } else if (key == "index_base") {
      cfg.graph.index_base = static_cast<int>(to_count(value, line));
    } else if (key == "omega") {
      if (value == "auto") {
        cfg.omega.reset();
        omega_auto = true;
      } else {
        cfg.omega = to_double(value, line);
      }
    } else if (key == "bandwidth") {
      cfg.bandwidth = to_count(value, line);
    } else if (key == "gamma_target") {
      cfg.gamma_target = to_double(value, line);
    } else if (key == "n_max") {
      cfg.n_max = value == "auto" ? std::nullopt : std::optional(to_count(value, line));
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& s : items) {
        try {
          cfg.schemes.push_back(parse_weight_scheme(s));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line, e.what());
        }
      }
    } else if (key == "noise") {
      if (items[0] == "none" && items.size() == 1) {
        cfg.noise.kind = NoiseSpec::Kind::kNone;
        cfg.noise.sigmas.clear();
      } else if (items[0] == "iid" && items.size() == 2) {
        cfg.noise.kind = NoiseSpec::Kind::kIid;
        cfg.noise.sigmas = {to_double(items[1], line)};
      } else if (items[0] == "grouped" && items.size() >= 2) {
        cfg.noise.kind = NoiseSpec::Kind::kGrouped;
        cfg.noise.sigmas.clear();
        for (std::size_t i = 1; i < items.size(); ++i) {
          cfg.noise.sigmas.push_back(to_double(items[i], line));
        }
      } else {
        throw ParseError(line, "noise must be 'none', 'iid SIGMA' or 'grouped S1 S2 ...'");
      }
    } else if (key == "noise_fractions") {
      cfg.noise.fractions.clear();
      for (const auto& s : items) cfg.noise.fractions.push_back(to_double(s, line));
    } else if (key == "offband_energy") {
      if (value == "none") {
        cfg.offband_energy.reset();
      } else {
        cfg.offband_energy = to_double(value, line);
      }
    } else if (key == "trials") {
      cfg.trials = to_count(value, line);
    } else if (key == "max_iterations") {
      cfg.max_iterations = to_count(value, line);
    } else if (key == "stop_tolerance") {
      cfg.stop_tolerance = to_double(value, line);
    } else if (key == "seed") {
      cfg.seed = to_count(value, line);
    } else if (key == "output_dir") {
      std::filesystem::path p = value;
      cfg.output_dir = p.is_absolute() ? p : base_dir / p;
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (cfg.schemes.empty()) throw std::invalid_argument("schemes must not be empty");
  if (cfg.omega && cfg.bandwidth) throw std::invalid_argument("set either omega or bandwidth");
  if (omega_auto && cfg.bandwidth) throw std::invalid_argument("omega = auto conflicts with bandwidth");
  if (!cfg.n_max && !cfg.omega) throw std::invalid_argument("n_max = auto needs a numeric omega");
  if (cfg.graph.index_base != 0 && cfg.graph.index_base != 1) {
    throw std::invalid_argument("index_base must be 0 or 1");
  }
  if (cfg.noise.kind == NoiseSpec::Kind::kGrouped) {
    if (cfg.noise.fractions.empty()) {
      cfg.noise.fractions.assign(cfg.noise.sigmas.size(), 1.0 / cfg.noise.sigmas.size());
    }
    if (cfg.noise.fractions.size() != cfg.noise.sigmas.size()) {
      throw std::invalid_argument("noise_fractions needs one entry per sigma");
    }
    const double total = std::accumulate(cfg.noise.fractions.begin(), cfg.noise.fractions.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("noise_fractions must sum to 1");
  } else if (!cfg.noise.fractions.empty()) {
    throw std::invalid_argument("noise_fractions only applies to grouped noise");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  return parse_experiment_config(in, path.parent_path());
}

std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "name = " << cfg.name << '\n';
  const auto& g = cfg.graph;
  switch (g.kind) {
    case GraphSource::Kind::kPath: out << "graph = path " << g.n << '\n'; break;
    case GraphSource::Kind::kGrid: out << "graph = grid " << g.rows << ' ' << g.cols << '\n'; break;
    case GraphSource::Kind::kRandomGeometric:
      out << "graph = rgg " << g.n << ' ' << format_double(g.radius) << '\n';
      break;
    case GraphSource::Kind::kFile:
      out << "graph = file " << g.file.string() << '\n' << "index_base = " << g.index_base << '\n';
      break;
  }
  if (cfg.omega) {
    out << "omega = " << format_double(*cfg.omega) << '\n';
  } else if (cfg.bandwidth) {
    out << "bandwidth = " << *cfg.bandwidth << '\n';
  } else {
    out << "omega = auto\n" << "gamma_target = " << format_double(cfg.gamma_target) << '\n';
  }
  out << "n_max = " << (cfg.n_max ? std::to_string(*cfg.n_max) : std::string("auto")) << '\n';
  out << "schemes =";
  for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
    out << (i ? ", " : " ") << to_string(cfg.schemes[i]);
  }
  out << '\n';
  switch (cfg.noise.kind) {
    case NoiseSpec::Kind::kNone: out << "noise = none\n"; break;
    case NoiseSpec::Kind::kIid: out << "noise = iid " << format_double(cfg.noise.sigmas[0]) << '\n'; break;
    case NoiseSpec::Kind::kGrouped:
      out << "noise = grouped";
      for (double s : cfg.noise.sigmas) out << ' ' << format_double(s);
      out << "\nnoise_fractions =";
      for (double f : cfg.noise.fractions) out << ' ' << format_double(f);
      out << '\n';
      break;
  }
  out << "offband_energy = "
      << (cfg.offband_energy ? format_double(*cfg.offband_energy) : std::string("none")) << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "max_iterations = " << cfg.max_iterations << '\n';
  out << "stop_tolerance = " << format_double(cfg.stop_tolerance) << '\n';
  out << "seed = " << cfg.seed << '\n';
  return out.str();
}

Graph build_graph(const GraphSource& source, std::uint64_t seed) {
  switch (source.kind) {
    case GraphSource::Kind::kPath: return path_graph(source.n);
    case GraphSource::Kind::kGrid: return grid_graph(source.rows, source.cols);
    case GraphSource::Kind::kRandomGeometric: {
      Rng rng = make_stream(seed, stream::kGraph);
      return random_geometric_graph(source.n, source.radius, rng);
    }
    case GraphSource::Kind::kFile: {
      EdgeListOptions opts;
      opts.index_base = source.index_base;
      return load_edge_list_file(source.file, opts);
    }
  }
  throw std::logic_error("unhandled graph source");
}

double relative_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  if (estimate.size() != truth.size()) {
    throw std::invalid_argument("relative_error: length mismatch");
  }
  const double scale = truth.norm();
  if (!(scale > 0.0)) throw std::domain_error("relative_error: truth has zero norm");
  return (estimate - truth).norm() / scale;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, build_graph(cfg.graph, cfg.seed));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.schemes.empty()) throw std::invalid_argument("schemes must not be empty");

  ExperimentReport report;
  report.config = cfg;
  report.n_vertices = g.num_vertices();
  report.n_edges = g.num_edges();

  const SpectralBasis basis = eigendecompose(build_laplacian(g));

  double omega = 0.0;
  if (cfg.omega) {
    omega = *cfg.omega;
  } else if (cfg.bandwidth) {
    if (*cfg.bandwidth < 1 || *cfg.bandwidth > basis.size()) {
      throw std::invalid_argument("bandwidth must lie in [1, N]");
    }
    omega = basis.eigenvalue(*cfg.bandwidth - 1);
  }
  const std::size_t n_max = cfg.n_max ? *cfg.n_max : suggest_nmax(omega);
  const Partition partition = greedy_partition(g, n_max);
  const PartitionMetrics metrics = partition_metrics(g, partition);
  if (!cfg.omega && !cfg.bandwidth) {
    omega = metrics.c_max > 0.0 ? std::pow(cfg.gamma_target / metrics.c_max, 2)
                                : basis.max_eigenvalue();
  }

  report.num_sets = partition.size();
  report.c_max = metrics.c_max;
  report.omega = omega;
  report.in_band_dimension = basis.in_band_count(omega);
  report.gamma = metrics.c_max * std::sqrt(omega);
  report.gamma_warning = report.gamma >= 1.0;

  std::optional<NoiseModel> noise;
  switch (cfg.noise.kind) {
    case NoiseSpec::Kind::kNone: break;
    case NoiseSpec::Kind::kIid: noise = NoiseModel::iid(g.num_vertices(), cfg.noise.sigmas.at(0)); break;
    case NoiseSpec::Kind::kGrouped: {
      Rng rng = make_stream(cfg.seed, stream::kNoiseGroups);
      noise = NoiseModel::grouped(g.num_vertices(), cfg.noise.sigmas, cfg.noise.fractions, rng);
      break;
    }
  }
  const NoiseModel* noise_ptr = noise ? &*noise : nullptr;

  const std::size_t points = cfg.max_iterations + 1;
  // errors[s][t][k]
  std::vector<std::vector<std::vector<double>>> errors(
      cfg.schemes.size(), std::vector<std::vector<double>>(cfg.trials));

  ReconstructionConfig rcfg;
  rcfg.omega = omega;
  rcfg.max_iterations = cfg.max_iterations;
  rcfg.stop_tolerance = cfg.stop_tolerance;

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = make_stream(cfg.seed, stream::kFirstTrial + t);
    const Eigen::VectorXd f = random_bandlimited(basis, omega, rng, 1.0, cfg.offband_energy);
    Eigen::VectorXd observed = f;
    if (noise) observed += sample_noise(*noise, rng);
    rcfg.truth = f;
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
      const LocalWeights w = make_weights(cfg.schemes[s], partition, noise_ptr, &rng);
      const auto run = ilmr(g, basis, partition, w, measure(observed, w), rcfg);
      auto& curve = errors[s][t];
      curve.reserve(points);
      for (const auto& rec : run.trace) curve.push_back(*rec.error_norm / f.norm());
      curve.resize(points, curve.back());
    }
  }

  for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
    SchemeResult res;
    res.scheme = cfg.schemes[s];
    res.mean_rel_error.assign(points, 0.0);
    res.std_rel_error.assign(points, 0.0);
    const double trials = static_cast<double>(cfg.trials);
    for (std::size_t k = 0; k < points; ++k) {
      double sum = 0.0;
      for (std::size_t t = 0; t < cfg.trials; ++t) sum += errors[s][t][k];
      const double mean = sum / trials;
      double sq = 0.0;
      for (std::size_t t = 0; t < cfg.trials; ++t) sq += std::pow(errors[s][t][k] - mean, 2);
      res.mean_rel_error[k] = mean;
      res.std_rel_error[k] = cfg.trials > 1 ? std::sqrt(sq / (trials - 1.0)) : 0.0;
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) res.final_errors.push_back(errors[s][t].back());
    res.steady_mean = res.mean_rel_error.back();
    res.steady_std = res.std_rel_error.back();
    report.schemes.push_back(std::move(res));
  }
  return report;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "scheme,iteration,mean_rel_error,std_rel_error\n";
  for (const auto& s : report.schemes) {
    for (std::size_t k = 0; k < s.mean_rel_error.size(); ++k) {
      out << to_string(s.scheme) << ',' << k << ',' << format_double(s.mean_rel_error[k]) << ','
          << format_double(s.std_rel_error[k]) << '\n';
    }
  }
}

void write_sidecar(std::ostream& out, const ExperimentReport& report) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  out << describe(report.config);
  out << "# resolved\n";
  out << "n_vertices = " << report.n_vertices << '\n';
  out << "n_edges = " << report.n_edges << '\n';
  out << "num_sets = " << report.num_sets << '\n';
  out << "c_max = " << format_double(report.c_max) << '\n';
  out << "omega_used = " << format_double(report.omega) << '\n';
  out << "in_band_dimension = " << report.in_band_dimension << '\n';
  out << "gamma = " << format_double(report.gamma) << '\n';
  out << "gamma_warning = " << (report.gamma_warning ? "true" : "false") << '\n';
  for (const auto& s : report.schemes) {
    out << "steady_mean." << to_string(s.scheme) << " = " << format_double(s.steady_mean) << '\n';
    out << "steady_std." << to_string(s.scheme) << " = " << format_double(s.steady_std) << '\n';
  }
  out << "generated_utc = " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

std::filesystem::path save_report(const ExperimentReport& report) {
  std::filesystem::path dir = report.config.output_dir;
  if (const char* env = std::getenv("GSR_OUTPUT_DIR"); env != nullptr && *env != '\0') dir = env;
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (report.config.name + ".csv");
  const auto meta_path = dir / (report.config.name + ".meta.txt");
  {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
    write_csv(csv, report);
  }
  std::ofstream meta(meta_path);
  if (!meta) throw std::runtime_error("cannot write '" + meta_path.string() + "'");
  write_sidecar(meta, report);
  return csv_path;
}

BootstrapInterval bootstrap_mean_difference(const std::vector<double>& a,
                                            const std::vector<double>& b, double confidence,
                                            std::size_t resamples, Rng& rng) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("bootstrap needs two equally long, nonempty samples");
  }
  if (!(confidence > 0.0 && confidence < 1.0) || resamples < 1) {
    throw std::invalid_argument("bootstrap: bad confidence or resample count");
  }
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

  BootstrapInterval out;
  out.mean = std::accumulate(diff.begin(), diff.end(), 0.0) / static_cast<double>(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += diff[pick(rng)];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - confidence) / 2.0;
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1)));
    return means[std::min(idx, resamples - 1)];
  };
  out.lower = at(alpha);
  out.upper = at(1.0 - alpha);
  return out;
}

}  // namespace gsr
