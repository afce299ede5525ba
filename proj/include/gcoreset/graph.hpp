#pragma once

// Weighted undirected graphs, point sets over their vertices, and the
// shortest-path primitives every other module is built on.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcoreset {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised for malformed graph or point-set input. The message names the
/// offending line when one exists.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  VertexId to;
  double weight;
};

struct Edge {
  VertexId u;
  VertexId v;
  double weight;
};

/// Immutable undirected graph in CSR form. Construction symmetrizes the
/// input, keeps the minimum weight among parallel edges and drops self-loops.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on a negative/non-finite weight or an
  /// endpoint >= vertex_count.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Number of undirected edges.
  [[nodiscard]] std::size_t edge_count() const noexcept { return arcs_.size() / 2; }

  [[nodiscard]] std::span<const Arc> neighbors(VertexId u) const noexcept {
    return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
  }

  /// Each undirected edge once, with u < v, ordered by (u, v).
  [[nodiscard]] std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

enum class GraphFormat { kEdgeList, kDimacs };

GraphFormat parse_graph_format(const std::string& name);

Graph parse_graph(std::istream& in, GraphFormat format);
/// Throws ParseError (including when the file cannot be opened).
Graph load_graph(const std::filesystem::path& path, GraphFormat format);

/// Edge-list output readable by parse_graph. A "# vertices: n" line is
/// emitted first so isolated trailing vertices survive a round trip.
void write_edge_list(std::ostream& out, const Graph& g);

/// Vertex ids with positive weights. Entries are kept sorted by vertex id.
class WeightedPointSet {
 public:
  WeightedPointSet() = default;
  /// Throws std::invalid_argument on duplicate ids, sizes that differ, or a
  /// weight that is not strictly positive and finite.
  WeightedPointSet(std::vector<VertexId> ids, std::vector<double> weights);

  static WeightedPointSet unit(std::vector<VertexId> ids);

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
  [[nodiscard]] std::span<const VertexId> ids() const noexcept { return ids_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] double total_weight() const noexcept { return total_; }
  [[nodiscard]] VertexId id(std::size_t i) const noexcept { return ids_[i]; }
  [[nodiscard]] double weight(std::size_t i) const noexcept { return weights_[i]; }

  /// Throws std::invalid_argument if any id is outside the graph.
  void check_within(const Graph& g) const;

  friend bool operator==(const WeightedPointSet&, const WeightedPointSet&) = default;

 private:
  std::vector<VertexId> ids_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// A set of distinct center vertices, kept sorted.
class CenterSet {
 public:
  CenterSet() = default;
  /// Throws std::invalid_argument on duplicates.
  explicit CenterSet(std::vector<VertexId> ids);

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
  [[nodiscard]] std::span<const VertexId> ids() const noexcept { return ids_; }
  [[nodiscard]] bool contains(VertexId v) const noexcept;

  void check_within(const Graph& g) const;

  friend bool operator==(const CenterSet&, const CenterSet&) = default;

 private:
  std::vector<VertexId> ids_;
};

struct DijkstraSource {
  VertexId vertex;
  double offset = 0.0;
};

/// Result of a multi-source run: per vertex, the smallest offset-plus-path
/// length over all sources and the source attaining it. Unreachable
/// vertices carry kInfinity and kNoVertex.
struct DistanceField {
  std::vector<double> distance;
  std::vector<VertexId> owner;
};

/// Ties between sources are resolved toward the smaller source vertex id.
/// A vertex listed twice keeps its smaller offset.
DistanceField multi_source_dijkstra(const Graph& g, std::span<const DijkstraSource> sources);

/// Adds sources to a field produced by multi_source_dijkstra. The result
/// equals a fresh run over the old and new sources together, but only
/// vertices whose label improves are visited.
void extend_distance_field(const Graph& g, DistanceField& field, std::span<const DijkstraSource> sources);

std::vector<double> single_source_distances(const Graph& g, VertexId source);

/// d(source, t) for each target, in target order (kInfinity if unreachable).
/// The search stops once every target is settled.
std::vector<double> distances_to(const Graph& g, VertexId source, std::span<const VertexId> targets);

/// Distances from the nearest center to every vertex.
DistanceField center_distances(const Graph& g, const CenterSet& c);

/// d(x, c) for every entry of x, read out of a distance array over V.
std::vector<double> gather(std::span<const double> by_vertex, std::span<const VertexId> ids);

/// Sum of weight * d(x, C). Returns kInfinity when a point is unreachable
/// from every center. Throws std::invalid_argument for an empty C.
double cost(const Graph& g, const WeightedPointSet& x, const CenterSet& c);

/// Cost of x against a precomputed distance array.
double cost_from_distances(const WeightedPointSet& x, std::span<const double> by_vertex);

struct ClusteringStats {
  /// Per entry of x (same order).
  std::vector<VertexId> center;
  std::vector<std::size_t> center_index;
  std::vector<double> distance;
  /// Per center, in CenterSet order. Unreachable points count toward no
  /// cluster.
  std::vector<double> cluster_weight;
  double cost = 0.0;
};

ClusteringStats assign(const Graph& g, const WeightedPointSet& x, const CenterSet& c);

std::vector<VertexId> all_vertices(const Graph& g);

}  // namespace gcoreset
