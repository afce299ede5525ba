#pragma once

// Sensitivity-sampling coresets for graph k-Median.
//
// Pipeline: an iterated oversampling bicriteria solution F, local search on
// F for an O(1)-approximate center set C*, per-point sensitivity bounds
// from C*, and N i.i.d. draws proportional to sensitivity, each reweighted
// so the coreset cost is an unbiased estimate of the full cost.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "gcoreset/clustering.hpp"
#include "gcoreset/graph.hpp"

namespace gcoreset {

/// Raised when a data point is unreachable from every chosen center.
class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BicriteriaConfig {
  /// Outer projection iterations.
  std::size_t iterations = 3;
  /// Sampler repetitions per iteration; the cheapest run is kept.
  std::size_t repetitions = 5;
  /// Oversampling rounds per run; 0 means ceil(log2 |support|).
  std::size_t rounds = 0;
  /// Points drawn per round; 0 means k.
  std::size_t per_round = 0;

  void validate() const;
};

/// Distance-proportional oversampler: round one draws `per_round` points by
/// weight, each later round draws `per_round` points by weight times the
/// distance to everything picked so far. Repeated draws are ignored. The
/// result carries unit weights and is a subset of x's support.
WeightedPointSet tho_sample(const Graph& g, const WeightedPointSet& x, std::size_t rounds, std::size_t per_round,
                            std::uint64_t seed);

/// Runs tho_sample `repetitions` times (trial j seeded with
/// derive_seed(seed, j)) and keeps the cheapest result, earliest on ties.
/// rounds/per_round of 0 are resolved against x and k as in
/// BicriteriaConfig.
WeightedPointSet tho_sample_best(const Graph& g, const WeightedPointSet& x, std::size_t k, std::size_t repetitions,
                                 const BicriteriaConfig& cfg, std::uint64_t seed);

struct IteratedSamplingTrace {
  /// Support size of F_i after each iteration.
  std::vector<std::size_t> support_sizes;
};

/// Repeats tho_sample_best on the previous iterate, each time re-weighting
/// the new F by the mass of the original x projected onto its nearest F
/// point (smaller vertex id on ties). Returns the last iterate; its total
/// weight equals x's.
WeightedPointSet iterated_thorup(const Graph& g, const WeightedPointSet& x, std::size_t k, const BicriteriaConfig& cfg,
                                 std::uint64_t seed, IteratedSamplingTrace* trace = nullptr);

struct SensitivityVector {
  /// Per entry of x: the sensitivity bound for one unit of mass at x.
  std::vector<double> sigma;
  /// Sampling probability of each entry, proportional to weight * sigma.
  std::vector<double> probability;
  /// Total sensitivity, sum of weight * sigma.
  double total = 0.0;
  /// Clusters of C* that received positive mass.
  std::size_t nonempty_clusters = 0;
  double rho = 1.0;
  /// cost(x, C*).
  double solution_cost = 0.0;
};

/// sigma_x = rho * (d(x, C*) / cost(X, C*) + 1 / weight(cluster of x)).
/// With cost(X, C*) == 0 the first term is taken as 0. Throws
/// DisconnectedError if a point cannot reach C*, std::invalid_argument if
/// rho < 1.
SensitivityVector sensitivities(const Graph& g, const WeightedPointSet& x, const CenterSet& cstar, double rho);

struct CoresetMetadata {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t k = 0;
  double rho = 0.0;
  double sigma_total = 0.0;

  friend bool operator==(const CoresetMetadata&, const CoresetMetadata&) = default;
};

struct Coreset {
  WeightedPointSet points;
  CoresetMetadata meta;
};

struct CoresetBuildConfig {
  BicriteriaConfig bicriteria;
  LocalSearchConfig local_search;
  /// Approximation factor assumed for C*.
  double rho = 5.0;
};

/// Everything needed to draw samples: the approximate solution and the
/// resulting sensitivities.
struct SamplingPlan {
  CenterSet approximate_centers;
  SensitivityVector sensitivity;
  std::size_t bicriteria_size = 0;
};

/// Bicriteria sampling, local search on its support and sensitivities.
SamplingPlan plan_sampling(const Graph& g, const WeightedPointSet& x, std::size_t k, const CoresetBuildConfig& cfg,
                           std::uint64_t seed);

/// N i.i.d. draws from the plan's distribution; a point drawn c times gets
/// weight c * weight_X(x) / (N * p_x).
WeightedPointSet draw_coreset(const WeightedPointSet& x, const SensitivityVector& s, std::size_t samples,
                              std::uint64_t seed);

Coreset build_coreset(const Graph& g, const WeightedPointSet& x, std::size_t k, std::size_t samples,
                      const CoresetBuildConfig& cfg, std::uint64_t seed);

struct SizeBoundParams {
  double epsilon = 0.1;
  double delta = 0.1;
  std::size_t k = 1;
  std::size_t sdim_max = 1;
  double sigma_total = 1.0;
  double constant = 1.0;
};

/// ceil(C0 * (sigma_X / eps)^2 * (k * sdim_max + ln(1 / delta))).
std::size_t coreset_size_bound(const SizeBoundParams& p);
/// The same quantity before rounding up.
double coreset_size_bound_real(const SizeBoundParams& p);

// CSV with header "vertex_id,weight"; weights in %.17g.
void write_point_csv(std::ostream& out, const WeightedPointSet& points);
/// Accepts the CSV above, or bare "vertex_id" lines meaning weight 1.
/// Throws ParseError naming the line.
WeightedPointSet read_point_csv(std::istream& in);
WeightedPointSet load_point_csv(const std::filesystem::path& path);

/// key=value lines: seed, N, k, rho, sigma_X.
void write_metadata(std::ostream& out, const CoresetMetadata& meta);
CoresetMetadata read_metadata(std::istream& in);

}  // namespace gcoreset
