#include "gsr/local_sets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gsr {

std::vector<std::size_t> Partition::membership(std::size_t n_vertices) const {
  std::vector<std::size_t> owner(n_vertices, kUnreachable);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Vertex v : sets[i]) {
      if (v >= n_vertices) throw std::domain_error("partition vertex out of range");
      if (owner[v] != kUnreachable) throw std::domain_error("partition sets overlap");
      owner[v] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), kUnreachable) != owner.end()) {
    throw std::domain_error("partition does not cover every vertex");
  }
  return owner;
}

Partition Partition::singletons(std::size_t n_vertices) {
  Partition p;
  p.sets.reserve(n_vertices);
  p.centers.reserve(n_vertices);
  for (Vertex v = 0; v < n_vertices; ++v) {
    p.sets.push_back({v});
    p.centers.push_back(v);
  }
  return p;
}

std::vector<PartitionViolation> validate_partition(const Graph& g, const Partition& p) {
  using Kind = PartitionViolation::Kind;
  std::vector<PartitionViolation> out;
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> owner(n, kUnreachable);

  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    const auto& set = p.sets[i];
    if (set.empty()) {
      out.push_back({Kind::kEmptySet, i, 0, "set " + std::to_string(i) + " is empty"});
      continue;
    }
    std::vector<Vertex> valid;
    for (Vertex v : set) {
      if (v >= n) {
        out.push_back({Kind::kOutOfRange, i, v,
                       "set " + std::to_string(i) + " holds out-of-range vertex " +
                           std::to_string(v)});
        continue;
      }
      if (owner[v] != kUnreachable) {
        out.push_back({Kind::kOverlap, i, v,
                       "vertex " + std::to_string(v) + " appears in sets " +
                           std::to_string(owner[v]) + " and " + std::to_string(i)});
        continue;
      }
      owner[v] = i;
      valid.push_back(v);
    }
    if (!valid.empty() && !induced_subgraph(g, valid).connected) {
      out.push_back({Kind::kDisconnected, i, valid.front(),
                     "set " + std::to_string(i) + " does not induce a connected subgraph"});
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] == kUnreachable) {
      out.push_back({Kind::kUncovered, 0, v, "vertex " + std::to_string(v) + " is in no set"});
    }
  }

  if (p.has_centers()) {
    if (p.centers.size() != p.sets.size()) {
      out.push_back({Kind::kCenterCount, 0, 0,
                     std::to_string(p.centers.size()) + " centers for " +
                         std::to_string(p.sets.size()) + " sets"});
    } else {
      for (std::size_t i = 0; i < p.sets.size(); ++i) {
        const auto& set = p.sets[i];
        if (std::find(set.begin(), set.end(), p.centers[i]) == set.end()) {
          out.push_back({Kind::kCenterNotMember, i, p.centers[i],
                         "center " + std::to_string(p.centers[i]) + " is not in set " +
                             std::to_string(i)});
        }
      }
    }
  }
  return out;
}

void require_valid_partition(const Graph& g, const Partition& p) {
  auto violations = validate_partition(g, p);
  if (!violations.empty()) {
    throw std::domain_error("invalid partition: " + violations.front().message);
  }
}

Partition greedy_partition(const Graph& g, std::size_t n_max) {
  if (n_max < 1) throw std::domain_error("greedy_partition: n_max must be at least 1");
  const std::size_t n = g.num_vertices();

  std::vector<std::size_t> degree(n);
  for (Vertex v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<bool> removed(n, false);
  std::vector<bool> in_set(n, false);
  std::vector<bool> in_frontier(n, false);

  Partition p;
  std::size_t remaining = n;
  while (remaining > 0) {
    Vertex seed = kUnreachable;
    for (Vertex v = 0; v < n; ++v) {
      if (!removed[v] && (seed == kUnreachable || degree[v] < degree[seed])) seed = v;
    }

    std::vector<Vertex> set{seed};
    std::vector<Vertex> frontier;
    in_set[seed] = true;
    auto absorb_neighbors = [&](Vertex v) {
      for (Vertex w : g.neighbors(v)) {
        if (!removed[w] && !in_set[w] && !in_frontier[w]) {
          in_frontier[w] = true;
          frontier.push_back(w);
        }
      }
    };
    absorb_neighbors(seed);

    while (set.size() < n_max && !frontier.empty()) {
      auto best = frontier.begin();
      for (auto it = frontier.begin(); it != frontier.end(); ++it) {
        if (degree[*it] < degree[*best] || (degree[*it] == degree[*best] && *it < *best)) best = it;
      }
      Vertex u = *best;
      frontier.erase(best);
      in_frontier[u] = false;
      in_set[u] = true;
      set.push_back(u);
      absorb_neighbors(u);
    }
    for (Vertex w : frontier) in_frontier[w] = false;

    for (Vertex v : set) {
      removed[v] = true;
      in_set[v] = false;
    }
    for (Vertex v : set) {
      for (Vertex w : g.neighbors(v)) {
        if (!removed[w]) --degree[w];
      }
    }
    remaining -= set.size();
    std::sort(set.begin(), set.end());
    p.sets.push_back(std::move(set));
  }
  return p;
}

namespace {

struct SetGeometry {
  std::size_t diameter = 0;
  std::size_t radius = 0;
  std::size_t max_multiple = 0;
};

SetGeometry measure_set(const Graph& g, const std::vector<Vertex>& set,
                        std::optional<Vertex> center) {
  auto sub = induced_subgraph(g, set);
  const Graph& h = sub.graph;
  SetGeometry geo;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    auto dist = bfs_distances(h, v);
    geo.diameter = std::max(geo.diameter, *std::max_element(dist.begin(), dist.end()));
  }
  if (!center) return geo;

  auto pos = std::lower_bound(sub.vertices.begin(), sub.vertices.end(), *center);
  const Vertex root = static_cast<Vertex>(pos - sub.vertices.begin());
  auto dist = bfs_distances(h, root);
  geo.radius = *std::max_element(dist.begin(), dist.end());

  // Shortest-path tree: each vertex attaches to its lowest-index neighbor one
  // level closer to the root. Accumulate subtree sizes from the deepest level up.
  std::vector<Vertex> order(h.num_vertices());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return dist[a] > dist[b]; });
  std::vector<std::size_t> subtree(h.num_vertices(), 1);
  for (Vertex v : order) {
    if (v == root) continue;
    for (Vertex w : h.neighbors(v)) {
      if (dist[w] + 1 == dist[v]) {
        if (w == root) {
          geo.max_multiple = std::max(geo.max_multiple, subtree[v]);
        } else {
          subtree[w] += subtree[v];
        }
        break;
      }
    }
  }
  return geo;
}

Vertex parse_vertex(std::string_view tok, std::size_t line_no) {
  Vertex v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "bad vertex '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

PartitionMetrics partition_metrics(const Graph& g, const Partition& p) {
  require_valid_partition(g, p);
  PartitionMetrics m;
  const std::size_t count = p.sets.size();
  m.cardinality.resize(count);
  m.diameter.resize(count);
  if (p.has_centers()) {
    m.radius.resize(count);
    m.max_multiple.resize(count);
    m.q_max = 0.0;
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::optional<Vertex> center;
    if (p.has_centers()) center = p.centers[i];
    auto geo = measure_set(g, p.sets[i], center);
    m.cardinality[i] = p.sets[i].size();
    m.diameter[i] = geo.diameter;
    m.c_max = std::max(m.c_max, std::sqrt(static_cast<double>(m.cardinality[i] * geo.diameter)));
    if (center) {
      m.radius[i] = geo.radius;
      m.max_multiple[i] = geo.max_multiple;
      m.q_max = std::max(*m.q_max, std::sqrt(static_cast<double>(geo.max_multiple * geo.radius)));
    }
  }
  return m;
}

std::size_t suggest_nmax(double omega) {
  if (!(omega > 0.0)) throw std::domain_error("suggest_nmax: omega must be positive");
  const double raw = std::round(1.0 / (2.0 * std::sqrt(omega)));
  return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    const auto& set = p.sets[i];
    for (std::size_t j = 0; j < set.size(); ++j) out << (j ? " " : "") << set[j];
    if (p.has_centers()) out << " center=" << p.centers.at(i);
    out << '\n';
  }
}

Partition read_partition(std::istream& in) {
  Partition p;
  std::string line;
  std::size_t line_no = 0;
  std::size_t with_center = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::vector<Vertex> set;
    std::optional<Vertex> center;
    std::string tok;
    while (tokens >> tok) {
      if (tok.rfind("center=", 0) == 0) {
        if (center) throw ParseError(line_no, "repeated center");
        center = parse_vertex(std::string_view(tok).substr(7), line_no);
      } else {
        if (center) throw ParseError(line_no, "center must be the last token");
        set.push_back(parse_vertex(tok, line_no));
      }
    }
    if (set.empty()) throw ParseError(line_no, "set without vertices");
    p.sets.push_back(std::move(set));
    if (center) {
      ++with_center;
      p.centers.push_back(*center);
    }
  }
  if (with_center != 0 && with_center != p.sets.size()) {
    throw ParseError(line_no, "centers must be given for all sets or for none");
  }
  return p;
}

}  // namespace gsr
