#include "gsr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

namespace gsr {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(n_vertices) {
  for (auto& e : edges_) {
    if (e.u >= n_vertices || e.v >= n_vertices) {
      throw std::out_of_range("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") outside vertex range [0, " + std::to_string(n_vertices) + ")");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) + ", " +
                                std::to_string(dup->v) + ")");
  }
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

namespace {

struct DataLine {
  std::size_t line_no;
  long long a;
  long long b;
};

long long parse_integer(std::string_view token, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  if (options.index_base != 0 && options.index_base != 1) {
    throw std::invalid_argument("index_base must be 0 or 1");
  }

  std::vector<DataLine> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;

    std::istringstream tokens(raw);
    std::string t1, t2, extra;
    if (!(tokens >> t1 >> t2)) throw ParseError(line_no, "expected two integers");
    if (tokens >> extra) throw ParseError(line_no, "unexpected token '" + extra + "'");
    lines.push_back({line_no, parse_integer(t1, line_no), parse_integer(t2, line_no)});
  }

  std::optional<std::size_t> declared_n;
  std::size_t begin = 0;
  if (!lines.empty() && options.header != HeaderMode::kAbsent) {
    const auto& h = lines.front();
    bool as_header = options.header == HeaderMode::kPresent;
    if (options.header == HeaderMode::kAuto && h.a >= 0 && h.b >= 0 &&
        static_cast<std::size_t>(h.b) == lines.size() - 1) {
      as_header = std::all_of(lines.begin() + 1, lines.end(), [&](const DataLine& l) {
        return l.a - options.index_base < h.a && l.b - options.index_base < h.a;
      });
    }
    if (as_header) {
      if (h.a < 0 || h.b < 0) throw ParseError(h.line_no, "negative count in header");
      declared_n = static_cast<std::size_t>(h.a);
      begin = 1;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(lines.size() - begin);
  std::size_t max_index = 0;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    const auto& l = lines[i];
    long long a = l.a - options.index_base;
    long long b = l.b - options.index_base;
    if (a < 0 || b < 0) {
      throw std::out_of_range("line " + std::to_string(l.line_no) +
                              ": vertex index below index base " +
                              std::to_string(options.index_base));
    }
    auto u = static_cast<Vertex>(a), v = static_cast<Vertex>(b);
    if (declared_n && (u >= *declared_n || v >= *declared_n)) {
      throw std::out_of_range("line " + std::to_string(l.line_no) +
                              ": vertex index outside declared range [0, " +
                              std::to_string(*declared_n) + ")");
    }
    if (u == v) {
      if (options.duplicates == DuplicatePolicy::kDeduplicate) continue;
      throw ParseError(l.line_no, "self-loop at vertex " + std::to_string(u));
    }
    max_index = std::max({max_index, u, v});
    edges.push_back({std::min(u, v), std::max(u, v)});
  }

  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    if (options.duplicates == DuplicatePolicy::kReject) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) + ", " +
                                  std::to_string(dup->v) + ")");
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::size_t n = declared_n.value_or(edges.empty() ? 0 : max_index + 1);
  return Graph(n, std::move(edges));
}

Graph load_edge_list_file(const std::filesystem::path& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path.string() + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Eigen::MatrixXd build_laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, v) = -1.0;
    lap(v, u) = -1.0;
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
  }
  return lap;
}

double edge_energy(const Graph& g, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != g.num_vertices()) {
    throw std::invalid_argument("edge_energy: signal length does not match graph");
  }
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    double d = f(static_cast<Eigen::Index>(e.u)) - f(static_cast<Eigen::Index>(e.v));
    sum += d * d;
  }
  return sum;
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.num_vertices()) throw std::out_of_range("bfs source out of range");
  std::vector<std::size_t> dist(g.num_vertices(), kUnreachable);
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> bfs_distance(const Graph& g, Vertex u, Vertex v) {
  if (v >= g.num_vertices()) throw std::out_of_range("bfs target out of range");
  auto d = bfs_distances(g, u)[v];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::domain_error("induced_subgraph: empty vertex set");

  InducedSubgraph result;
  result.vertices.assign(s.begin(), s.end());
  std::sort(result.vertices.begin(), result.vertices.end());
  if (result.vertices.back() >= g.num_vertices()) {
    throw std::out_of_range("induced_subgraph: vertex " + std::to_string(result.vertices.back()) +
                            " out of range");
  }
  if (std::adjacent_find(result.vertices.begin(), result.vertices.end()) !=
      result.vertices.end()) {
    throw std::invalid_argument("induced_subgraph: repeated vertex");
  }

  std::vector<std::size_t> local(g.num_vertices(), kUnreachable);
  for (std::size_t i = 0; i < result.vertices.size(); ++i) local[result.vertices[i]] = i;

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < result.vertices.size(); ++i) {
    for (Vertex w : g.neighbors(result.vertices[i])) {
      if (local[w] != kUnreachable && local[w] > i) edges.push_back({i, local[w]});
    }
  }
  result.graph = Graph(result.vertices.size(), std::move(edges));
  result.connected = is_connected(result.graph);
  return result;
}

}  // namespace gsr
