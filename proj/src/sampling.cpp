#include "gsr/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gsr {

LocalWeights::LocalWeights(std::vector<std::vector<WeightEntry>> sets) : sets_(std::move(sets)) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& set = sets_[i];
    double sum = 0.0;
    for (const auto& e : set) {
      if (!std::isfinite(e.weight) || e.weight < 0.0) {
        throw std::domain_error("local weight of vertex " + std::to_string(e.vertex) + " in set " +
                                std::to_string(i) + " is negative or not finite");
      }
      sum += e.weight;
    }
    if (!(sum > 0.0)) {
      throw std::domain_error("local weights of set " + std::to_string(i) + " sum to zero");
    }
    std::sort(set.begin(), set.end(),
              [](const WeightEntry& a, const WeightEntry& b) { return a.vertex < b.vertex; });
    for (std::size_t j = 1; j < set.size(); ++j) {
      if (set[j].vertex == set[j - 1].vertex) {
        throw std::domain_error("vertex " + std::to_string(set[j].vertex) +
                                " repeated in weights of set " + std::to_string(i));
      }
    }
    // Sums already within the tolerance are kept so that weights round-trip exactly.
    if (std::abs(sum - 1.0) > 1e-12) {
      for (auto& e : set) e.weight /= sum;
    }
  }
}

Eigen::VectorXd LocalWeights::dense(std::size_t i, std::size_t n_vertices) const {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_vertices));
  for (const auto& e : sets_.at(i)) phi(static_cast<Eigen::Index>(e.vertex)) = e.weight;
  return phi;
}

void require_compatible(const Partition& p, const LocalWeights& w) {
  if (p.size() != w.size()) {
    throw std::domain_error(std::to_string(w.size()) + " weight vectors for " +
                            std::to_string(p.size()) + " local sets");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& set = p.sets[i];
    for (const auto& e : w[i]) {
      if (e.weight != 0.0 && std::find(set.begin(), set.end(), e.vertex) == set.end()) {
        throw std::domain_error("weight on vertex " + std::to_string(e.vertex) +
                                " lies outside local set " + std::to_string(i));
      }
    }
  }
}

NoiseModel::NoiseModel(Eigen::VectorXd sigma) : sigma_(std::move(sigma)) {
  for (Eigen::Index v = 0; v < sigma_.size(); ++v) {
    if (!std::isfinite(sigma_(v)) || sigma_(v) < 0.0) {
      throw std::domain_error("noise standard deviation must be finite and nonnegative");
    }
  }
}

NoiseModel NoiseModel::iid(std::size_t n_vertices, double sigma) {
  return NoiseModel(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_vertices), sigma));
}

NoiseModel NoiseModel::grouped(std::size_t n_vertices, std::span<const double> sigmas,
                               std::span<const double> fractions, Rng& rng) {
  if (sigmas.empty() || sigmas.size() != fractions.size()) {
    throw std::domain_error("grouped noise needs one fraction per sigma");
  }
  const double total = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9 ||
      std::any_of(fractions.begin(), fractions.end(), [](double f) { return f < 0.0; })) {
    throw std::domain_error("group fractions must be nonnegative and sum to 1");
  }

  std::vector<Vertex> order(n_vertices);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::VectorXd sigma(static_cast<Eigen::Index>(n_vertices));
  std::size_t begin = 0;
  double cumulative = 0.0;
  for (std::size_t g = 0; g < sigmas.size(); ++g) {
    cumulative += fractions[g];
    std::size_t end = g + 1 == sigmas.size()
                          ? n_vertices
                          : static_cast<std::size_t>(std::llround(cumulative * n_vertices));
    end = std::clamp(end, begin, n_vertices);
    for (std::size_t j = begin; j < end; ++j) sigma(static_cast<Eigen::Index>(order[j])) = sigmas[g];
    begin = end;
  }
  return NoiseModel(std::move(sigma));
}

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::kUniform: return "uniform";
    case WeightScheme::kRandom: return "random";
    case WeightScheme::kDirac: return "dirac";
    case WeightScheme::kOptimal: return "optimal";
    case WeightScheme::kOptimalDirac: return "optimal_dirac";
  }
  return "unknown";
}

WeightScheme parse_weight_scheme(std::string_view name) {
  for (auto s : {WeightScheme::kUniform, WeightScheme::kRandom, WeightScheme::kDirac,
                 WeightScheme::kOptimal, WeightScheme::kOptimalDirac}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown weight scheme '" + std::string(name) + "'");
}

LocalWeights make_weights(WeightScheme scheme, const Partition& p, const NoiseModel* noise,
                          Rng* rng) {
  const bool needs_rng = scheme == WeightScheme::kRandom || scheme == WeightScheme::kDirac;
  const bool needs_noise =
      scheme == WeightScheme::kOptimal || scheme == WeightScheme::kOptimalDirac;
  if (needs_rng && rng == nullptr) {
    throw std::domain_error(std::string(to_string(scheme)) + " weights need a random source");
  }
  if (needs_noise && noise == nullptr) {
    throw std::domain_error(std::string(to_string(scheme)) + " weights need a noise model");
  }

  std::vector<std::vector<WeightEntry>> sets;
  sets.reserve(p.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& set = p.sets[i];
    if (set.empty()) throw std::domain_error("local set " + std::to_string(i) + " is empty");
    if (needs_noise) {
      for (Vertex v : set) {
        if (v >= noise->size()) throw std::domain_error("noise model shorter than partition");
      }
    }
    std::vector<WeightEntry> entries;
    switch (scheme) {
      case WeightScheme::kUniform: {
        const double w = 1.0 / static_cast<double>(set.size());
        for (Vertex v : set) entries.push_back({v, w});
        break;
      }
      case WeightScheme::kRandom: {
        double sum = 0.0;
        while (!(sum > std::numeric_limits<double>::min())) {
          entries.clear();
          sum = 0.0;
          for (Vertex v : set) {
            entries.push_back({v, unit(*rng)});
            sum += entries.back().weight;
          }
        }
        break;
      }
      case WeightScheme::kDirac: {
        std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
        entries.push_back({set[pick(*rng)], 1.0});
        break;
      }
      case WeightScheme::kOptimal: {
        for (Vertex v : set) {
          const double var = noise->variance(v);
          if (!(var > 0.0)) {
            throw std::domain_error("optimal weights need positive noise variance, vertex " +
                                    std::to_string(v) + " has zero");
          }
          entries.push_back({v, 1.0 / var});
        }
        break;
      }
      case WeightScheme::kOptimalDirac: {
        Vertex best = set.front();
        for (Vertex v : set) {
          const double var = noise->variance(v), best_var = noise->variance(best);
          if (var < best_var || (var == best_var && v < best)) best = v;
        }
        entries.push_back({best, 1.0});
        break;
      }
    }
    sets.push_back(std::move(entries));
  }
  return LocalWeights(std::move(sets));
}

LocalWeights dirac_at_centers(const Partition& p) {
  if (!p.has_centers() || p.centers.size() != p.size()) {
    throw std::domain_error("dirac_at_centers: partition has no centers");
  }
  std::vector<std::vector<WeightEntry>> sets;
  sets.reserve(p.size());
  for (Vertex c : p.centers) sets.push_back({{c, 1.0}});
  return LocalWeights(std::move(sets));
}

Eigen::VectorXd measure(const Eigen::VectorXd& f, const LocalWeights& w) {
  const auto n = static_cast<std::size_t>(f.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    double acc = 0.0;
    for (const auto& e : w[i]) {
      if (e.vertex >= n) throw std::invalid_argument("measure: weight vertex outside signal");
      acc += f(static_cast<Eigen::Index>(e.vertex)) * e.weight;
    }
    out(static_cast<Eigen::Index>(i)) = acc;
  }
  return out;
}

EquivalentNoise equivalent_noise_sigma(const LocalWeights& w, const NoiseModel& noise) {
  EquivalentNoise out;
  const auto count = static_cast<Eigen::Index>(w.size());
  out.sigma.resize(count);
  for (std::size_t i = 0; i < w.size(); ++i) {
    double var = 0.0;
    for (const auto& e : w[i]) {
      if (e.vertex >= noise.size()) throw std::invalid_argument("noise model shorter than weights");
      var += noise.variance(e.vertex) * e.weight * e.weight;
    }
    out.sigma(static_cast<Eigen::Index>(i)) = std::sqrt(var);
  }
  out.expected_abs = out.sigma * std::sqrt(2.0 / std::numbers::pi);
  return out;
}

void write_weights(std::ostream& out, const LocalWeights& w) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << i;
    for (const auto& e : w[i]) out << ' ' << e.vertex << ':' << e.weight;
    out << '\n';
  }
  out.precision(old_precision);
}

LocalWeights read_weights(std::istream& in) {
  std::vector<std::vector<WeightEntry>> sets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::size_t index = 0;
    if (!(tokens >> index) || index != sets.size()) {
      throw ParseError(line_no, "expected set index " + std::to_string(sets.size()));
    }
    std::vector<WeightEntry> entries;
    std::string tok;
    while (tokens >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "expected v:w, got '" + tok + "'");
      WeightEntry e{};
      auto [p1, ec1] = std::from_chars(tok.data(), tok.data() + colon, e.vertex);
      if (ec1 != std::errc{} || p1 != tok.data() + colon) {
        throw ParseError(line_no, "bad vertex in '" + tok + "'");
      }
      try {
        std::size_t used = 0;
        e.weight = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "bad weight in '" + tok + "'");
      }
      entries.push_back(e);
    }
    sets.push_back(std::move(entries));
  }
  return LocalWeights(std::move(sets));
}

}  // namespace gsr
