#include "gsr/noise_analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsr {

namespace {

void require_contraction(double gamma) {
  if (!(gamma < 1.0)) throw std::domain_error("error bound needs gamma < 1");
  if (gamma < 0.0) throw std::domain_error("gamma must be nonnegative");
}

const double kHalfNormalMean = std::sqrt(2.0 / std::numbers::pi);

}  // namespace

Eigen::VectorXd sample_noise(const NoiseModel& noise, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd n(static_cast<Eigen::Index>(noise.size()));
  for (Eigen::Index v = 0; v < n.size(); ++v) n(v) = noise.sigma()(v) * normal(rng);
  return n;
}

double weighted_equivalent_noise(const Partition& p, const Eigen::VectorXd& equivalent_noises) {
  if (static_cast<std::size_t>(equivalent_noises.size()) != p.size()) {
    throw std::invalid_argument("one equivalent noise per local set expected");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::sqrt(static_cast<double>(p.sets[i].size())) *
           std::abs(equivalent_noises(static_cast<Eigen::Index>(i)));
  }
  return sum;
}

double realized_bound(double gamma, const Partition& p, const Eigen::VectorXd& equivalent_noises,
                      double norm_f, double norm_n, std::size_t k) {
  require_contraction(gamma);
  const double n_tilde = weighted_equivalent_noise(p, equivalent_noises);
  return n_tilde / (1.0 - gamma) +
         std::pow(gamma, static_cast<double>(k + 1)) * (norm_f + norm_n);
}

ExpectedBound expected_bound(double gamma, const Partition& p, const LocalWeights& w,
                             const NoiseModel& noise, double norm_f, std::size_t k,
                             bool iid_shortcut) {
  require_contraction(gamma);
  if (p.size() != w.size()) throw std::invalid_argument("one weight vector per local set expected");

  ExpectedBound out;
  const double decay = std::pow(gamma, static_cast<double>(k + 1));
  out.envelope = decay * (norm_f + noise.sigma().norm());

  if (iid_shortcut) {
    const double sigma = noise.size() ? noise.sigma()(0) : 0.0;
    if ((noise.sigma().array() != sigma).any()) {
      throw std::domain_error("iid shortcut needs the same sigma on every vertex");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double expected = 1.0 / static_cast<double>(p.sets[i].size());
      if (w[i].size() != p.sets[i].size()) throw std::domain_error("iid shortcut needs uniform weights");
      for (const auto& e : w[i]) {
        if (std::abs(e.weight - expected) > 1e-12) {
          throw std::domain_error("iid shortcut needs uniform weights");
        }
      }
    }
    out.leading = static_cast<double>(p.size()) * sigma * kHalfNormalMean / (1.0 - gamma);
    return out;
  }

  const auto eq = equivalent_noise_sigma(w, noise);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::sqrt(static_cast<double>(p.sets[i].size())) * eq.sigma(static_cast<Eigen::Index>(i));
  }
  out.leading = kHalfNormalMean * sum / (1.0 - gamma);
  return out;
}

ErrorBoundReport realized_bound_report(double gamma, const Partition& p,
                                       const Eigen::VectorXd& equivalent_noises, double norm_f,
                                       double norm_n, std::size_t k_max) {
  require_contraction(gamma);
  ErrorBoundReport r;
  r.gamma = gamma;
  r.variant = BoundVariant::kRealizedNoise;
  r.n_tilde = weighted_equivalent_noise(p, equivalent_noises);
  r.asymptotic_bound = r.n_tilde / (1.0 - gamma);
  for (std::size_t k = 0; k <= k_max; ++k) {
    r.bound_at_k.push_back(realized_bound(gamma, p, equivalent_noises, norm_f, norm_n, k));
  }
  return r;
}

ErrorBoundReport expected_bound_report(double gamma, const Partition& p, const LocalWeights& w,
                                       const NoiseModel& noise, double norm_f, std::size_t k_max,
                                       bool iid_shortcut) {
  ErrorBoundReport r;
  r.gamma = gamma;
  r.variant = iid_shortcut ? BoundVariant::kIidGaussian : BoundVariant::kPerVertexGaussian;
  for (std::size_t k = 0; k <= k_max; ++k) {
    auto b = expected_bound(gamma, p, w, noise, norm_f, k, iid_shortcut);
    r.bound_at_k.push_back(b.total());
    r.asymptotic_bound = b.leading;
  }
  r.n_tilde = r.asymptotic_bound * (1.0 - gamma);
  return r;
}

}  // namespace gsr
