#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsr/graph.hpp"

namespace gsr {

/// Division of the vertex set into disjoint, connected, covering local sets.
///
/// `centers` is either empty (centerless sets) or holds one vertex per set.
struct Partition {
  std::vector<std::vector<Vertex>> sets;
  std::vector<Vertex> centers;

  std::size_t size() const noexcept { return sets.size(); }
  bool has_centers() const noexcept { return !centers.empty(); }

  /// Owning set index per vertex; throws if the partition does not cover
  /// 0..n_vertices-1 exactly once.
  std::vector<std::size_t> membership(std::size_t n_vertices) const;

  /// Every vertex in its own set, centered at itself.
  static Partition singletons(std::size_t n_vertices);
};

struct PartitionViolation {
  enum class Kind {
    kEmptySet,
    kOutOfRange,
    kOverlap,       ///< vertex appears in more than one set
    kUncovered,     ///< vertex appears in no set
    kDisconnected,  ///< induced subgraph of a set is not connected
    kCenterCount,   ///< centers present but not one per set
    kCenterNotMember,
  };

  Kind kind;
  std::size_t set_index = 0;
  Vertex vertex = 0;
  std::string message;
};

std::vector<PartitionViolation> validate_partition(const Graph& g, const Partition& p);

/// Throws std::domain_error carrying the first violation, if any.
void require_valid_partition(const Graph& g, const Partition& p);

/// Greedy partition with maximal set cardinality `n_max`.
///
/// Each round seeds a set with the minimum-degree vertex of the remaining
/// graph, then repeatedly absorbs the minimum-degree vertex adjacent to the
/// set until the set holds `n_max` vertices or has no remaining neighbors.
/// The set and its incident edges are then removed. Degrees are those of the
/// remaining graph at the start of the round; ties go to the lowest index.
Partition greedy_partition(const Graph& g, std::size_t n_max);

struct PartitionMetrics {
  std::vector<std::size_t> cardinality;  ///< |N_i|
  std::vector<std::size_t> diameter;     ///< D_i, measured inside G_{N_i}
  double c_max = 0.0;                    ///< max_i sqrt(|N_i| D_i)

  // Filled only when the partition has centers.
  std::vector<std::size_t> radius;        ///< R(u_i)
  std::vector<std::size_t> max_multiple;  ///< K(u_i)
  std::optional<double> q_max;            ///< max_i sqrt(K(u_i) R(u_i))
};

/// Geometry of each local set. K(u) uses the BFS shortest-path tree of
/// G_{N(u)} rooted at u in which every vertex hangs off its lowest-index
/// parent on the previous level. Throws std::domain_error on an invalid
/// partition.
PartitionMetrics partition_metrics(const Graph& g, const Partition& p);

/// N_max = round(1 / (2 sqrt(omega))), at least 1. Throws for omega <= 0.
std::size_t suggest_nmax(double omega);

/// One set per line as space-separated vertices, with an optional
/// trailing `center=<v>`.
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);

}  // namespace gsr
