#include "gsr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef GSR_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace gsr {

SpectralBasis::SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
  if (eigenvectors_.rows() != eigenvalues_.size() || eigenvectors_.cols() != eigenvalues_.size()) {
    throw std::invalid_argument("SpectralBasis: eigenvector matrix must be N x N");
  }
  for (Eigen::Index k = 1; k < eigenvalues_.size(); ++k) {
    if (eigenvalues_(k) < eigenvalues_(k - 1)) {
      throw std::invalid_argument("SpectralBasis: eigenvalues must be ascending");
    }
  }
}

std::size_t SpectralBasis::in_band_count(double omega) const {
  if (omega < 0.0) throw std::domain_error("cutoff frequency must be nonnegative");
  const double edge = omega + cutoff_slack();
  const auto* begin = eigenvalues_.data();
  const auto* end = begin + eigenvalues_.size();
  return static_cast<std::size_t>(std::upper_bound(begin, end, edge) - begin);
}

SpectralBasis eigendecompose(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols()) {
    throw std::domain_error("eigendecompose: matrix is not square");
  }
  if (laplacian.size() == 0) return SpectralBasis(Eigen::VectorXd(), Eigen::MatrixXd());
  const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
  if ((laplacian - laplacian.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::domain_error("eigendecompose: matrix is not symmetric");
  }

#ifdef GSR_HAVE_LAPACKE
  // Divide-and-conquer driver; eigenvalues come back ascending.
  Eigen::MatrixXd vectors = laplacian;
  Eigen::VectorXd values(laplacian.rows());
  const auto n = static_cast<lapack_int>(laplacian.rows());
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors.data(), n, values.data());
  if (info != 0) {
    throw std::runtime_error("eigendecompose: dsyevd failed with info " + std::to_string(info));
  }
  // Some optimized BLAS kernels return wrong eigenvectors; verify and fall
  // back to Eigen when the residual is off.
  const double residual =
      (laplacian * vectors - vectors * values.asDiagonal()).cwiseAbs().maxCoeff();
  const double drift =
      (vectors.transpose() * vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual <= 1e-8 * scale && drift <= 1e-8) {
    return SpectralBasis(std::move(values), std::move(vectors));
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecompose: symmetric eigensolver did not converge");
  }
  // Eigen returns eigenvalues in increasing order.
  return SpectralBasis(solver.eigenvalues(), solver.eigenvectors());
}

namespace {

void check_length(const SpectralBasis& basis, const Eigen::VectorXd& f, const char* who) {
  if (static_cast<std::size_t>(f.size()) != basis.size()) {
    throw std::invalid_argument(std::string(who) + ": signal length " + std::to_string(f.size()) +
                                " does not match basis size " + std::to_string(basis.size()));
  }
}

}  // namespace

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& f) {
  check_length(basis, f, "gft");
  return basis.eigenvectors().transpose() * f;
}

Eigen::VectorXd inverse_gft(const SpectralBasis& basis, const Eigen::VectorXd& spectrum) {
  check_length(basis, spectrum, "inverse_gft");
  return basis.eigenvectors() * spectrum;
}

Eigen::VectorXd project_bandlimited(const SpectralBasis& basis, double omega,
                                    const Eigen::VectorXd& f) {
  check_length(basis, f, "project_bandlimited");
  const auto k = static_cast<Eigen::Index>(basis.in_band_count(omega));
  const auto u = basis.eigenvectors().leftCols(k);
  return u * (u.transpose() * f);
}

Eigen::VectorXd random_bandlimited(const SpectralBasis& basis, double omega, Rng& rng, double norm,
                                   std::optional<double> offband_energy) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto k = static_cast<Eigen::Index>(basis.in_band_count(omega));
  if (k == 0) throw std::domain_error("random_bandlimited: no eigenvalue inside the band");
  if (norm < 0.0) throw std::domain_error("random_bandlimited: norm must be nonnegative");
  if (offband_energy && (*offband_energy < 0.0 || *offband_energy >= 1.0)) {
    throw std::domain_error("random_bandlimited: offband_energy must lie in [0, 1)");
  }

  std::normal_distribution<double> normal;
  Eigen::VectorXd coeffs(k);
  for (Eigen::Index i = 0; i < k; ++i) coeffs(i) = normal(rng);
  Eigen::VectorXd in_band = basis.eigenvectors().leftCols(k) * coeffs;

  if (!offband_energy) return in_band * (norm / in_band.norm());

  const Eigen::Index m = n - k;
  if (m == 0 && *offband_energy > 0.0) {
    throw std::domain_error("random_bandlimited: no out-of-band eigenvectors");
  }
  Eigen::VectorXd out_coeffs(m);
  for (Eigen::Index i = 0; i < m; ++i) out_coeffs(i) = normal(rng);
  Eigen::VectorXd result = in_band * (norm * std::sqrt(1.0 - *offband_energy) / in_band.norm());
  if (m > 0) {
    Eigen::VectorXd out_band = basis.eigenvectors().rightCols(m) * out_coeffs;
    result += out_band * (norm * std::sqrt(*offband_energy) / out_band.norm());
  }
  return result;
}

}  // namespace gsr
