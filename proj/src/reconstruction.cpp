#include "gsr/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gsr {

namespace {

/// Spreads per-set residuals onto the propagation sets and projects.
class Propagator {
 public:
  Propagator(const SpectralBasis& basis, double omega, const std::vector<std::vector<Vertex>>& sets)
      : sets_(sets),
        band_(basis.eigenvectors().leftCols(static_cast<Eigen::Index>(basis.in_band_count(omega)))),
        n_(static_cast<Eigen::Index>(basis.size())) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (Vertex v : sets_[i]) {
        if (v >= basis.size()) {
          throw std::out_of_range("vertex " + std::to_string(v) + " of set " + std::to_string(i) +
                                  " outside the graph");
        }
      }
    }
  }

  Eigen::VectorXd operator()(const Eigen::VectorXd& per_set) const {
    Eigen::VectorXd spread = Eigen::VectorXd::Zero(n_);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      const double value = per_set(static_cast<Eigen::Index>(i));
      for (Vertex v : sets_[i]) spread(static_cast<Eigen::Index>(v)) += value;
    }
    return band_ * (band_.transpose() * spread);
  }

 private:
  const std::vector<std::vector<Vertex>>& sets_;
  Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic, true> band_;
  Eigen::Index n_;
};

ReconstructionRun iterate(const SpectralBasis& basis, const std::vector<std::vector<Vertex>>& sets,
                          const MeasurementOracle& probe, const Eigen::VectorXd& measurements,
                          const ReconstructionConfig& cfg) {
  if (static_cast<std::size_t>(measurements.size()) != sets.size()) {
    throw std::invalid_argument("reconstruction: " + std::to_string(measurements.size()) +
                                " measurements for " + std::to_string(sets.size()) + " sets");
  }
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (cfg.stop_tolerance < 0.0) throw std::invalid_argument("stop_tolerance must be nonnegative");
  if (cfg.truth && static_cast<std::size_t>(cfg.truth->size()) != basis.size()) {
    throw std::invalid_argument("reconstruction: truth length does not match the graph");
  }

  const Propagator propagate(basis, cfg.omega, sets);
  auto record = [&](ReconstructionRun& run, double increment) {
    IterationRecord rec{increment, std::nullopt};
    if (cfg.truth) rec.error_norm = (run.estimate - *cfg.truth).norm();
    run.trace.push_back(rec);
  };

  ReconstructionRun run;
  run.estimate = propagate(measurements);
  record(run, run.estimate.norm());

  constexpr double kTiny = std::numeric_limits<double>::min();
  while (true) {
    const Eigen::VectorXd residual = measurements - probe(run.estimate);
    const Eigen::VectorXd increment = propagate(residual);
    const double step = increment.norm();
    if (step / std::max(run.estimate.norm(), kTiny) < cfg.stop_tolerance) {
      run.stop_reason = StopReason::kConverged;
      break;
    }
    if (run.iterations_used == cfg.max_iterations) {
      run.stop_reason = StopReason::kMaxIterations;
      break;
    }
    run.estimate += increment;
    ++run.iterations_used;
    record(run, step);
  }
  return run;
}

void set_gamma(ReconstructionRun& run, double factor, double omega) {
  run.gamma = factor * std::sqrt(omega);
  run.gamma_warning = run.gamma >= 1.0;
}

}  // namespace

Eigen::VectorXd apply_G(const SpectralBasis& basis, double omega, const Partition& p,
                        const LocalWeights& w, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != basis.size()) {
    throw std::invalid_argument("apply_G: signal length does not match the graph");
  }
  require_compatible(p, w);
  return Propagator(basis, omega, p.sets)(measure(f, w));
}

ReconstructionRun ilmr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                       const LocalWeights& w, const Eigen::VectorXd& measurements,
                       const ReconstructionConfig& cfg) {
  require_compatible(p, w);
  MeasurementOracle probe = [&w](const Eigen::VectorXd& f) { return measure(f, w); };
  return ilmr(g, basis, p, probe, measurements, cfg);
}

ReconstructionRun ilmr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                       const MeasurementOracle& oracle, const Eigen::VectorXd& measurements,
                       const ReconstructionConfig& cfg) {
  if (g.num_vertices() != basis.size()) {
    throw std::invalid_argument("ilmr: spectral basis does not match the graph");
  }
  const auto metrics = partition_metrics(g, p);
  auto run = iterate(basis, p.sets, oracle, measurements, cfg);
  set_gamma(run, metrics.c_max, cfg.omega);
  return run;
}

ReconstructionRun ilsr(const SpectralBasis& basis, std::span<const Vertex> sampled,
                       const Eigen::VectorXd& samples, const ReconstructionConfig& cfg) {
  if (sampled.empty()) throw std::domain_error("ilsr: empty sampling set");
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(sampled.size());
  for (Vertex u : sampled) {
    if (u >= basis.size()) throw std::out_of_range("ilsr: sampled vertex out of range");
    sets.push_back({u});
  }
  MeasurementOracle probe = [sampled](const Eigen::VectorXd& f) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(sampled.size()));
    for (std::size_t i = 0; i < sampled.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = f(static_cast<Eigen::Index>(sampled[i]));
    }
    return out;
  };
  auto run = iterate(basis, sets, probe, samples, cfg);
  run.gamma = std::numeric_limits<double>::quiet_NaN();
  run.gamma_warning = false;
  return run;
}

ReconstructionRun ipr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                      const Eigen::VectorXd& center_samples, const ReconstructionConfig& cfg) {
  if (!p.has_centers()) throw std::domain_error("ipr: partition has no centers");
  if (g.num_vertices() != basis.size()) {
    throw std::invalid_argument("ipr: spectral basis does not match the graph");
  }
  const auto metrics = partition_metrics(g, p);
  MeasurementOracle probe = [&p](const Eigen::VectorXd& f) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(p.centers.size()));
    for (std::size_t i = 0; i < p.centers.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = f(static_cast<Eigen::Index>(p.centers[i]));
    }
    return out;
  };
  auto run = iterate(basis, p.sets, probe, center_samples, cfg);
  set_gamma(run, *metrics.q_max, cfg.omega);
  return run;
}

ContractionEstimate contraction_ratio(const Graph& g, const SpectralBasis& basis, double omega,
                                      const Partition& p, const LocalWeights& w,
                                      std::size_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("contraction_ratio: trials must be at least 1");
  ContractionEstimate out;
  out.bound = partition_metrics(g, p).c_max * std::sqrt(omega);
  require_compatible(p, w);
  const Propagator propagate(basis, omega, p.sets);
  for (std::size_t t = 0; t < trials; ++t) {
    const Eigen::VectorXd f = random_bandlimited(basis, omega, rng, 1.0);
    const double ratio = (f - propagate(measure(f, w))).norm() / f.norm();
    out.empirical_max = std::max(out.empirical_max, ratio);
  }
  return out;
}

bool uniqueness_check(const SpectralBasis& basis, double omega, const LocalWeights& w) {
  const auto k = static_cast<Eigen::Index>(basis.in_band_count(omega));
  if (k == 0) return true;
  const auto rows = static_cast<Eigen::Index>(w.size());
  if (rows < k) return false;

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, k);
  const auto band = basis.eigenvectors().leftCols(k);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (const auto& e : w[static_cast<std::size_t>(i)]) {
      m.row(i) += e.weight * band.row(static_cast<Eigen::Index>(e.vertex));
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double tol = static_cast<double>(k) * std::numeric_limits<double>::epsilon() * sv(0);
  return (sv.array() > tol).count() == k;
}

}  // namespace gsr
