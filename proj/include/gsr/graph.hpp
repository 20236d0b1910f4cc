#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gsr {

using Vertex = std::size_t;

/// Undirected edge stored with `u < v`.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Thrown when a line of an edge list cannot be interpreted.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Undirected simple graph over vertices 0..n-1.
///
/// Construction validates the edge set: self-loops, duplicates and
/// out-of-range endpoints throw. Neighbor lists are sorted ascending, which
/// fixes the visiting order of every traversal built on top of them.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Edges sorted lexicographically, each with u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

enum class DuplicatePolicy {
  kReject,       ///< duplicate edges and self-loops are errors
  kDeduplicate,  ///< duplicates collapse to one edge, self-loops are dropped
};

enum class HeaderMode {
  kAuto,     ///< first data line is an `N M` header iff it is consistent as one
  kPresent,  ///< first data line is always `N M`
  kAbsent,   ///< every data line is an edge
};

struct EdgeListOptions {
  int index_base = 0;  ///< 0 or 1
  DuplicatePolicy duplicates = DuplicatePolicy::kReject;
  HeaderMode header = HeaderMode::kAuto;
};

/// Parses a whitespace-separated edge list. Lines starting with `#` are
/// comments. Without a header the vertex count is max index + 1.
///
/// In `kAuto` mode the first data line is read as a header `N M` only when
/// exactly M edge lines follow and every index lies below N.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::filesystem::path& path,
                          const EdgeListOptions& options = {});

/// Writes `N M` followed by one 0-based edge per line.
void write_edge_list(std::ostream& out, const Graph& g);

/// Dense combinatorial Laplacian L = D - A.
Eigen::MatrixXd build_laplacian(const Graph& g);

/// Sum over edges of (f(p) - f(q))^2, which equals f^T L f.
double edge_energy(const Graph& g, const Eigen::VectorXd& f);

/// Hop distance, or nullopt when `u` and `v` lie in different components.
std::optional<std::size_t> bfs_distance(const Graph& g, Vertex u, Vertex v);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances from `source` to every vertex (kUnreachable when none).
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph graph;                   ///< local indices 0..|s|-1
  std::vector<Vertex> vertices;  ///< local index -> original vertex (sorted)
  bool connected = false;
};

/// Subgraph of `g` on vertex set `s` with every edge of `g` whose endpoints
/// both lie in `s`. Throws std::domain_error when `s` is empty and
/// std::out_of_range for invalid vertices, std::invalid_argument for repeats.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s);

}  // namespace gsr
