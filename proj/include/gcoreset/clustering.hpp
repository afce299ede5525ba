#pragma once

// k-Median solvers over the shortest-path metric: single-swap local search,
// plus exhaustive oracles that serve as ground truth on small instances.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gcoreset/graph.hpp"

namespace gcoreset {

/// Raised when an exhaustive oracle would enumerate too many subsets.
class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LocalSearchConfig {
  /// A swap is taken only if it lowers the cost below (1 - tau / k) * cost.
  double tau = 1e-3;
  std::size_t max_iterations = 10000;

  void validate() const;
};

struct LocalSearchResult {
  CenterSet centers;
  double cost = 0.0;
  /// Cost after initialization and after each accepted swap.
  std::vector<double> history;
  std::size_t iterations = 0;
  /// False when max_iterations stopped the search early.
  bool converged = false;
};

/// Best-improvement single-swap local search. The initial centers are k
/// distinct pool vertices drawn uniformly under `seed`. Throws
/// std::invalid_argument when k == 0 or the pool has fewer than k distinct
/// vertices.
LocalSearchResult local_search(const Graph& g, const WeightedPointSet& x, std::size_t k,
                               std::span<const VertexId> pool, const LocalSearchConfig& cfg, std::uint64_t seed);

inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

struct KMedianSolution {
  CenterSet centers;
  double cost = 0.0;
};

/// Exact optimum over all k-subsets of V; the lexicographically first
/// optimum wins ties. Throws EnumerationLimitError above kEnumerationLimit
/// subsets.
KMedianSolution brute_force_kmedian(const Graph& g, const WeightedPointSet& x, std::size_t k);

/// max over k-subsets C with 0 < cost(X, C) < inf of d(p, C) / cost(X, C).
/// Returns 1 when no subset qualifies.
double brute_force_sensitivity(const Graph& g, const WeightedPointSet& x, std::size_t k, VertexId p);

}  // namespace gcoreset
