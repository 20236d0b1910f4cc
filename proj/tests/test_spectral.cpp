#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsr/experiments.hpp"
#include "gsr/spectral.hpp"
#include "support.hpp"

using namespace gsr;
using test::vec;

TEST_CASE("P2 eigenpairs") {
  const auto b = test::basis_of(path_graph(2));
  CHECK(b.eigenvalue(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.eigenvalue(1) == doctest::Approx(2.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b.eigenvectors()(0, 0)) == doctest::Approx(r));
  CHECK(b.eigenvectors()(0, 0) == doctest::Approx(b.eigenvectors()(1, 0)));
  CHECK(b.eigenvectors()(0, 1) == doctest::Approx(-b.eigenvectors()(1, 1)));
}

TEST_CASE("path eigenvalues follow 2 - 2cos(k pi / n)") {
  for (std::size_t n : {3u, 7u, 12u}) {
    const auto b = test::basis_of(path_graph(n));
    for (std::size_t k = 0; k < n; ++k) {
      const double closed = 2.0 - 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / n);
      CHECK(b.eigenvalue(k) == doctest::Approx(closed).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("zero matrix and invalid inputs") {
  const auto b = eigendecompose(Eigen::MatrixXd::Zero(3, 3));
  CHECK(b.eigenvalues().isZero());
  CHECK(b.in_band_count(0.0) == 3);

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(eigendecompose(asym), std::domain_error);
  CHECK_THROWS_AS(eigendecompose(Eigen::MatrixXd::Zero(2, 3)), std::domain_error);
  CHECK_THROWS_AS(b.in_band_count(-1.0), std::domain_error);
}

TEST_CASE("basis invariants on a grid") {
  const Graph g = grid_graph(6, 7);
  const Eigen::MatrixXd l = build_laplacian(g);
  const auto b = eigendecompose(l);
  const auto& u = b.eigenvectors();
  CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(42, 42)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((l * u - u * b.eigenvalues().asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(b.eigenvalue(0)) < 1e-10);
  CHECK(b.eigenvalue(1) > 1e-6);
  for (std::size_t k = 1; k < b.size(); ++k) CHECK(b.eigenvalue(k - 1) <= b.eigenvalue(k));
}

TEST_CASE("larger random geometric graph stays orthonormal") {
  Rng rng(3);
  const Graph g = random_geometric_graph(300, 0.1, rng);
  const Eigen::MatrixXd l = build_laplacian(g);
  const auto b = eigendecompose(l);
  const auto& u = b.eigenvectors();
  CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(300, 300)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((l * u - u * b.eigenvalues().asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("graph Fourier transform") {
  const auto b = test::basis_of(path_graph(2));
  const Eigen::VectorXd s = gft(b, vec({1, 1}));
  CHECK(std::abs(s(0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(s(1)) < 1e-12);
  CHECK(gft(b, Eigen::VectorXd::Zero(2)).isZero());
  CHECK_THROWS_AS(gft(b, vec({1, 2, 3})), std::invalid_argument);

  const auto g = test::basis_of(grid_graph(4, 4));
  for (std::size_t k = 0; k < 16; ++k) {
    const Eigen::VectorXd c = gft(g, g.eigenvectors().col(static_cast<Eigen::Index>(k)));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(16);
    e(static_cast<Eigen::Index>(k)) = 1.0;
    CHECK((c.cwiseAbs() - e).cwiseAbs().maxCoeff() < 1e-12);
  }
  Rng rng(5);
  const Eigen::VectorXd f = test::gaussian(16, rng);
  const Eigen::VectorXd spec = gft(g, f);
  CHECK(spec.norm() == doctest::Approx(f.norm()).epsilon(1e-12));
  CHECK((inverse_gft(g, spec) - f).norm() < 1e-12);
}

TEST_CASE("band-limited projection examples") {
  const auto p2 = test::basis_of(path_graph(2));
  CHECK((project_bandlimited(p2, 1.0, vec({2, 0})) - vec({1, 1})).norm() < 1e-12);
  CHECK((project_bandlimited(p2, 2.0, vec({2, 0})) - vec({2, 0})).norm() < 1e-12);

  const auto g = test::basis_of(grid_graph(5, 5));
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(25, 3.5);
  for (double omega : {0.0, 0.3, 2.0}) CHECK((project_bandlimited(g, omega, c) - c).norm() < 1e-12);

  Rng rng(1);
  const Eigen::VectorXd f = test::gaussian(25, rng);
  CHECK((project_bandlimited(g, g.max_eigenvalue(), f) - f).norm() < 1e-12);
}

TEST_CASE("band edge is inclusive") {
  const auto b = test::basis_of(path_graph(3));
  CHECK(b.in_band_count(1.0) == 2);
  CHECK(b.in_band_count(b.eigenvalue(1)) == 2);
  CHECK(b.in_band_count(0.999) == 1);
}

TEST_CASE("projection properties") {
  Rng rng(11);
  const Graph graph = random_geometric_graph(80, 0.2, rng);
  const auto b = test::basis_of(graph);
  for (double omega : {0.05, 0.3, 1.0, 3.0}) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd f = test::gaussian(80, rng);
      const Eigen::VectorXd pf = project_bandlimited(b, omega, f);
      CHECK((project_bandlimited(b, omega, pf) - pf).norm() < 1e-10);
      CHECK(pf.norm() <= f.norm() + 1e-12);
      CHECK(std::abs(pf.dot(f - pf)) < 1e-10 * f.squaredNorm());
      CHECK(edge_energy(graph, pf) <= omega * pf.squaredNorm() + 1e-10);
      const Eigen::VectorXd spec = gft(b, pf);
      for (std::size_t k = b.in_band_count(omega); k < b.size(); ++k) {
        CHECK(std::abs(spec(static_cast<Eigen::Index>(k))) < 1e-10);
      }
    }
  }
}

TEST_CASE("random band-limited signals") {
  const auto b = test::basis_of(grid_graph(6, 6));
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd f = random_bandlimited(b, 0.5, rng);
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((project_bandlimited(b, 0.5, f) - f).norm() < 1e-12);

    const Eigen::VectorXd g = random_bandlimited(b, 0.5, rng, 3.0);
    CHECK(g.norm() == doctest::Approx(3.0).epsilon(1e-12));
  }
  for (double e : {1e-2, 1e-4}) {
    const Eigen::VectorXd f = random_bandlimited(b, 0.5, rng, 1.0, e);
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs((f - project_bandlimited(b, 0.5, f)).squaredNorm() - e) < 1e-10);
  }
  CHECK_THROWS_AS(random_bandlimited(b, 0.5, rng, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(random_bandlimited(b, b.max_eigenvalue(), rng, 1.0, 0.1), std::domain_error);

  Rng a(9), c(9);
  CHECK(random_bandlimited(b, 0.5, a) == random_bandlimited(b, 0.5, c));
}
