#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gsr/experiments.hpp"
#include "gsr/graph.hpp"
#include "gsr/random.hpp"
#include "gsr/spectral.hpp"

namespace gsr::test {

inline SpectralBasis basis_of(const Graph& g) { return eigendecompose(build_laplacian(g)); }

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Eigen::VectorXd gaussian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  return v;
}

/// Erdos-Renyi graph, redrawn until connected.
inline Graph random_connected_graph(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  while (true) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) edges.push_back({u, v});
    Graph g(n, edges);
    if (is_connected(g)) return g;
  }
}

}  // namespace gsr::test
