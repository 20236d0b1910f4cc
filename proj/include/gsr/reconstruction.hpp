#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gsr/graph.hpp"
#include "gsr/local_sets.hpp"
#include "gsr/random.hpp"
#include "gsr/sampling.hpp"
#include "gsr/spectral.hpp"

namespace gsr {

struct ReconstructionConfig {
  double omega = 0.0;
  std::size_t max_iterations = 500;
  /// Stop once ||f(k+1) - f(k)|| / ||f(k)|| falls below this.
  double stop_tolerance = 1e-10;
  /// Reference signal used only to log errors; the iteration never reads it.
  std::optional<Eigen::VectorXd> truth;
};

enum class StopReason { kConverged, kMaxIterations };

struct IterationRecord {
  double increment_norm = 0.0;        ///< ||f(k) - f(k-1)||, with f(-1) = 0
  std::optional<double> error_norm;   ///< ||f(k) - truth|| when truth is given
};

struct ReconstructionRun {
  Eigen::VectorXd estimate;
  std::size_t iterations_used = 0;
  std::vector<IterationRecord> trace;  ///< entry k describes f(k); size iterations_used + 1
  /// Sufficient-condition contraction factor: C_max sqrt(omega) for ILMR,
  /// Q_max sqrt(omega) for IPR, NaN for ILSR (no bound).
  double gamma = 0.0;
  bool gamma_warning = false;  ///< gamma >= 1, convergence not guaranteed
  StopReason stop_reason = StopReason::kMaxIterations;
};

/// Black-box local measurement: candidate signal -> one value per local set.
/// Must be linear in its argument.
using MeasurementOracle = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// G f = P_omega( sum_i <f, phi_i> delta_{N_i} ).
Eigen::VectorXd apply_G(const SpectralBasis& basis, double omega, const Partition& p,
                        const LocalWeights& w, const Eigen::VectorXd& f);

/// Iterative local measurement reconstruction.
///
///   f(0)   = P_omega( sum_i y_i delta_{N_i} )
///   f(k+1) = f(k) + P_omega( sum_i (y_i - <f(k), phi_i>) delta_{N_i} )
///
/// The run stops before applying an increment whose relative size is below
/// `cfg.stop_tolerance`, or after `cfg.max_iterations` updates.
ReconstructionRun ilmr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                       const LocalWeights& w, const Eigen::VectorXd& measurements,
                       const ReconstructionConfig& cfg);

/// Same iteration with unknown weights: <f(k), phi_i> is obtained by probing
/// `oracle`.
ReconstructionRun ilmr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                       const MeasurementOracle& oracle, const Eigen::VectorXd& measurements,
                       const ReconstructionConfig& cfg);

/// Reconstruction from samples on `sampled` with Dirac propagation only.
ReconstructionRun ilsr(const SpectralBasis& basis, std::span<const Vertex> sampled,
                       const Eigen::VectorXd& samples, const ReconstructionConfig& cfg);

/// Reconstruction from samples at the partition's centers, propagated over
/// each local set. `center_samples[i]` is f(u_i).
ReconstructionRun ipr(const Graph& g, const SpectralBasis& basis, const Partition& p,
                      const Eigen::VectorXd& center_samples, const ReconstructionConfig& cfg);

struct ContractionEstimate {
  double bound = 0.0;          ///< C_max sqrt(omega)
  double empirical_max = 0.0;  ///< max over trials of ||f - Gf|| / ||f||
};

/// Probes ||f - G f|| / ||f|| over `trials` random unit-norm f in PW_omega.
ContractionEstimate contraction_ratio(const Graph& g, const SpectralBasis& basis, double omega,
                                      const Partition& p, const LocalWeights& w,
                                      std::size_t trials, Rng& rng);

/// True iff the |I| x K matrix M[i][k] = <phi_i, u_k> over in-band k has
/// full column rank K, i.e. the measurements determine every f in PW_omega.
/// Rank tolerance: K * machine epsilon * largest singular value.
bool uniqueness_check(const SpectralBasis& basis, double omega, const LocalWeights& w);

}  // namespace gsr
