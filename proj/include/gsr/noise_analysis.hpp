#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gsr/local_sets.hpp"
#include "gsr/random.hpp"
#include "gsr/sampling.hpp"

namespace gsr {

/// Independent zero-mean Gaussian draw with standard deviation sigma(v) per vertex.
Eigen::VectorXd sample_noise(const NoiseModel& noise, Rng& rng);

/// n_tilde = sum_i sqrt(|N_i|) |n_i| for equivalent noises n_i = <n, phi_i>.
double weighted_equivalent_noise(const Partition& p, const Eigen::VectorXd& equivalent_noises);

/// Error bound for ILMR run on measurements of f + n:
///   n_tilde / (1 - gamma) + gamma^(k+1) (||f|| + ||n||).
/// Throws std::domain_error when gamma >= 1 (the bound is vacuous).
double realized_bound(double gamma, const Partition& p, const Eigen::VectorXd& equivalent_noises,
                      double norm_f, double norm_n, std::size_t k);

/// Leading and decaying parts of the expected error bound under Gaussian
/// noise. The decaying part is the explicit envelope
/// gamma^(k+1) (||f|| + sqrt(sum_v sigma^2(v))).
struct ExpectedBound {
  double leading = 0.0;
  double envelope = 0.0;
  double total() const noexcept { return leading + envelope; }
};

/// General form: leading = sqrt(2/pi) / (1 - gamma) * sum_i sqrt(|N_i|) sigma_i.
/// With `iid_shortcut`, the weights must be uniform and the noise i.i.d., and
/// leading = |I| sigma sqrt(2/pi) / (1 - gamma). Throws std::domain_error for
/// gamma >= 1 or when the shortcut's assumptions do not hold.
ExpectedBound expected_bound(double gamma, const Partition& p, const LocalWeights& w,
                             const NoiseModel& noise, double norm_f, std::size_t k,
                             bool iid_shortcut = false);

enum class BoundVariant { kRealizedNoise, kPerVertexGaussian, kIidGaussian };

struct ErrorBoundReport {
  double gamma = 0.0;
  double n_tilde = 0.0;  ///< realized, or its expectation for the Gaussian variants
  std::vector<double> bound_at_k;
  double asymptotic_bound = 0.0;  ///< n_tilde / (1 - gamma)
  BoundVariant variant = BoundVariant::kRealizedNoise;
};

ErrorBoundReport realized_bound_report(double gamma, const Partition& p,
                                       const Eigen::VectorXd& equivalent_noises, double norm_f,
                                       double norm_n, std::size_t k_max);

ErrorBoundReport expected_bound_report(double gamma, const Partition& p, const LocalWeights& w,
                                       const NoiseModel& noise, double norm_f, std::size_t k_max,
                                       bool iid_shortcut = false);

}  // namespace gsr
