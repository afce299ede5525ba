#pragma once

// Hard instances for coreset lower bounds and an exhaustive counter for
// the sets cut out of a probe set by weighted metric balls.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcoreset/graph.hpp"

namespace gcoreset {

enum class VertexRole { kRoot, kLeft, kRight, kShadow };

/// Groups and L indices are 1-based. For kRight, `index` is a bit mask over
/// [t] (bit j-1 set iff j is in the subset). Shadows carry their anchor.
struct VertexLabel {
  VertexRole role = VertexRole::kRoot;
  std::uint32_t group = 0;
  std::uint32_t index = 0;
  VertexId anchor = kNoVertex;
};

/// Root u0, then per group i the t vertices l(i, j) and the 2^t vertices
/// r(i, J), then the shadow leaves grouped by anchor.
struct LowerBoundInstance {
  Graph graph;
  std::vector<VertexLabel> labels;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::size_t t = 0;
  /// ceil(k / epsilon)
  std::size_t groups = 0;
  /// ceil(groups / k * 2^t); each L vertex gets copies - 1 shadows.
  std::size_t copies = 0;
};

inline constexpr std::size_t kMaxLowerBoundT = 15;
inline constexpr std::size_t kMaxGeneratedVertices = 20'000'000;

/// 1 + groups * (t * copies + 2^t)
std::size_t lowerbound_vertex_count(std::size_t k, double epsilon, std::size_t t);

/// Throws std::invalid_argument for k == 0, t == 0, epsilon outside (0, 1),
/// t > kMaxLowerBoundT or more than kMaxGeneratedVertices vertices.
LowerBoundInstance gen_lowerbound_instance(std::size_t k, double epsilon, std::size_t t);

/// Star with ceil(100 k / epsilon) unit leaves; epsilon must lie in (0, 1/3).
Graph gen_star_instance(std::size_t k, double epsilon);

/// e.g. "u0", "L(1,2)", "R(1,{1,2})", "shadow(1,2)".
std::string role_name(const VertexLabel& label);

/// CSV "vertex_id,role".
void write_labels(std::ostream& out, const LowerBoundInstance& inst);

/// Checks every pairwise distance against the closed form: 1 from u0, 1
/// between l(i, j) and r(i, J) when j is in J, 2 between any other pair of
/// non-shadow vertices, and 1 + the anchor's distance from a shadow.
bool verify_lowerbound_distances(const LowerBoundInstance& inst);

/// Probe set H with a weight for each of its vertices.
struct WeightedBallQuery {
  std::vector<VertexId> probe;
  std::vector<double> weight;
};

inline constexpr std::size_t kMaxBallVertices = 1000;
inline constexpr std::size_t kMaxProbeSize = 20;

/// Number of distinct sets H ∩ {y : weight(y) * d(x, y) <= r} over all
/// centers x in V and radii r >= 0, the empty set included. Requires
/// |V| <= 1000 and 2 <= |H| <= 20 with distinct probe vertices.
std::size_t count_ball_intersections(const Graph& g, const WeightedBallQuery& q);

/// The distinct intersections themselves, as bit masks over q.probe.
std::vector<std::uint32_t> ball_intersections(const Graph& g, const WeightedBallQuery& q);

}  // namespace gcoreset
