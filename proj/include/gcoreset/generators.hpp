#pragma once

// Synthetic graphs for tests, benchmarks and the CLI.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gcoreset/graph.hpp"

namespace gcoreset {

Graph path_graph(std::size_t n, double weight = 1.0);

/// Root 0 with leaves 1..leaves.
Graph star_graph(std::size_t leaves, double weight = 1.0);

/// rows x cols lattice, vertex id r * cols + c, 4-neighbour edges with
/// weights uniform in [min_weight, max_weight). Stands in for a road
/// network: planar, sparse, low treewidth.
Graph grid_graph(std::size_t rows, std::size_t cols, std::uint64_t seed, double min_weight = 1.0,
                 double max_weight = 2.0);

/// Vertices of the block [row_begin, row_end) x [col_begin, col_end) of a
/// grid with `cols` columns.
std::vector<VertexId> grid_block(std::size_t cols, std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                                 std::size_t col_end);

/// Random spanning tree plus random extra edges, `edges` draws in total
/// (parallel draws collapse, so edge_count() may be slightly lower).
/// Requires edges >= vertices - 1.
Graph random_connected_graph(std::size_t vertices, std::size_t edges, std::uint64_t seed, double min_weight = 1.0,
                             double max_weight = 10.0);

}  // namespace gcoreset
