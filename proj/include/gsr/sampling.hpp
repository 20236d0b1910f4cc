#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsr/local_sets.hpp"
#include "gsr/random.hpp"

namespace gsr {

struct WeightEntry {
  Vertex vertex;
  double weight;
};

/// One nonnegative weight vector per local set, supported inside the set
/// and summing to one. Construction renormalizes each set and rejects
/// negative or non-finite weights and all-zero sets.
class LocalWeights {
 public:
  LocalWeights() = default;
  explicit LocalWeights(std::vector<std::vector<WeightEntry>> sets);

  std::size_t size() const noexcept { return sets_.size(); }
  std::span<const WeightEntry> operator[](std::size_t i) const { return sets_.at(i); }
  const std::vector<std::vector<WeightEntry>>& sets() const noexcept { return sets_; }

  /// Dense N-vector form of phi_i.
  Eigen::VectorXd dense(std::size_t i, std::size_t n_vertices) const;

 private:
  std::vector<std::vector<WeightEntry>> sets_;
};

/// Throws std::domain_error unless every phi_i is supported inside N_i.
void require_compatible(const Partition& p, const LocalWeights& w);

/// Independent per-vertex Gaussian noise levels sigma(v) >= 0.
class NoiseModel {
 public:
  explicit NoiseModel(Eigen::VectorXd sigma);

  static NoiseModel iid(std::size_t n_vertices, double sigma);

  /// Vertices are shuffled with `rng` and split into consecutive groups
  /// sized by `fractions` (which must sum to 1); group g gets sigmas[g].
  static NoiseModel grouped(std::size_t n_vertices, std::span<const double> sigmas,
                            std::span<const double> fractions, Rng& rng);

  std::size_t size() const noexcept { return static_cast<std::size_t>(sigma_.size()); }
  const Eigen::VectorXd& sigma() const noexcept { return sigma_; }
  double variance(Vertex v) const {
    const double s = sigma_(static_cast<Eigen::Index>(v));
    return s * s;
  }

 private:
  Eigen::VectorXd sigma_;
};

enum class WeightScheme { kUniform, kRandom, kDirac, kOptimal, kOptimalDirac };

std::string_view to_string(WeightScheme scheme);
/// Accepts uniform, random, dirac, optimal, optimal_dirac.
WeightScheme parse_weight_scheme(std::string_view name);

/// Builds local weights for `p`.
///
///  - uniform:       1/|N_i| on every vertex of the set
///  - random:        i.i.d. U(0,1) draws normalized per set (needs rng)
///  - dirac:         all mass on one uniformly chosen vertex (needs rng)
///  - optimal:       inverse-variance weights sigma^-2(v) / sum sigma^-2 (needs noise, sigma > 0)
///  - optimal_dirac: all mass on the lowest-variance vertex, lowest index on ties (needs noise)
///
/// Missing inputs and zero variances under `optimal` raise std::domain_error.
LocalWeights make_weights(WeightScheme scheme, const Partition& p, const NoiseModel* noise = nullptr,
                          Rng* rng = nullptr);

/// Dirac weights placed on the partition's centers.
LocalWeights dirac_at_centers(const Partition& p);

/// Local measurements <f, phi_i>, one per set.
Eigen::VectorXd measure(const Eigen::VectorXd& f, const LocalWeights& w);

struct EquivalentNoise {
  Eigen::VectorXd sigma;         ///< sigma_i = sqrt(sum sigma^2(v) phi_i^2(v))
  Eigen::VectorXd expected_abs;  ///< E|n_i| = sigma_i sqrt(2/pi)
};

EquivalentNoise equivalent_noise_sigma(const LocalWeights& w, const NoiseModel& noise);

/// Text form: one line per set, `i v1:w1 v2:w2 ...`. Weights are written with
/// round-trip precision.
void write_weights(std::ostream& out, const LocalWeights& w);
LocalWeights read_weights(std::istream& in);

}  // namespace gsr
