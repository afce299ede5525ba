#include "gcoreset/generators.hpp"

#include <stdexcept>

#include "gcoreset/random.hpp"

namespace gcoreset {
namespace {

double draw_weight(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

void check_range(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo)) throw std::invalid_argument("weight range must satisfy 0 <= min <= max");
}

}  // namespace

Graph path_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), weight});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves, double weight) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<VertexId>(i), weight});
  return Graph::from_edges(leaves + 1, edges);
}

Graph grid_graph(std::size_t rows, std::size_t cols, std::uint64_t seed, double min_weight, double max_weight) {
  check_range(min_weight, max_weight);
  Rng rng(seed);
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), draw_weight(rng, min_weight, max_weight)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), draw_weight(rng, min_weight, max_weight)});
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

std::vector<VertexId> grid_block(std::size_t cols, std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                                 std::size_t col_end) {
  std::vector<VertexId> out;
  for (std::size_t r = row_begin; r < row_end; ++r) {
    for (std::size_t c = col_begin; c < col_end; ++c) out.push_back(static_cast<VertexId>(r * cols + c));
  }
  return out;
}

Graph random_connected_graph(std::size_t vertices, std::size_t edges, std::uint64_t seed, double min_weight,
                             double max_weight) {
  check_range(min_weight, max_weight);
  if (vertices == 0) throw std::invalid_argument("random graph needs at least one vertex");
  if (edges + 1 < vertices) throw std::invalid_argument("random graph: too few edges to connect all vertices");
  Rng rng(seed);
  std::vector<Edge> out;
  out.reserve(edges);
  for (std::size_t v = 1; v < vertices; ++v) {
    const auto parent = static_cast<VertexId>(uniform_below(rng, v));
    out.push_back({parent, static_cast<VertexId>(v), draw_weight(rng, min_weight, max_weight)});
  }
  while (out.size() < edges && vertices > 1) {
    const auto u = static_cast<VertexId>(uniform_below(rng, vertices));
    const auto v = static_cast<VertexId>(uniform_below(rng, vertices));
    if (u == v) continue;
    out.push_back({u, v, draw_weight(rng, min_weight, max_weight)});
  }
  return Graph::from_edges(vertices, out);
}

}  // namespace gcoreset
