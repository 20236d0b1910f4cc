#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "gsr/random.hpp"

namespace gsr {

/// Orthonormal eigenbasis of a graph Laplacian, eigenvalues ascending.
///
/// Column k of `eigenvectors()` pairs with `eigenvalues()[k]`. Inside a
/// repeated eigenvalue the basis is whatever the solver returned, so callers
/// should compare projector actions rather than individual eigenvectors.
class SpectralBasis {
 public:
  SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }
  double max_eigenvalue() const { return eigenvalues_.size() ? eigenvalues_(eigenvalues_.size() - 1) : 0.0; }

  /// Slack added to the cutoff so that eigenvalues sitting on the band edge
  /// count as in band: 1e-9 * lambda_max.
  double cutoff_slack() const noexcept { return 1e-9 * max_eigenvalue(); }

  /// Number of eigenvalues with lambda_k <= omega (+ slack); the dimension of PW_omega.
  std::size_t in_band_count(double omega) const;

  /// Eigenvalue of rank k (0-based), convenient for picking omega from a bandwidth.
  double eigenvalue(std::size_t k) const { return eigenvalues_(static_cast<Eigen::Index>(k)); }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Full dense eigendecomposition of a symmetric matrix.
/// Throws std::domain_error if `laplacian` is not square and symmetric and
/// std::runtime_error if the solver does not converge.
SpectralBasis eigendecompose(const Eigen::MatrixXd& laplacian);

/// Graph Fourier transform: coefficient k is <f, u_k>.
Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& f);

/// Synthesis sum_k spectrum(k) u_k.
Eigen::VectorXd inverse_gft(const SpectralBasis& basis, const Eigen::VectorXd& spectrum);

/// Orthogonal projection onto PW_omega = span{u_k : lambda_k <= omega}.
Eigen::VectorXd project_bandlimited(const SpectralBasis& basis, double omega,
                                    const Eigen::VectorXd& f);

/// Random signal with i.i.d. standard normal coefficients on the in-band
/// eigenvectors, scaled to 2-norm `norm`.
///
/// With `offband_energy = e`, an independent out-of-band component is added
/// so that the in-band part carries energy (1 - e) * norm^2 and the
/// out-of-band part e * norm^2.
Eigen::VectorXd random_bandlimited(const SpectralBasis& basis, double omega, Rng& rng,
                                   double norm = 1.0,
                                   std::optional<double> offband_energy = std::nullopt);

}  // namespace gsr
