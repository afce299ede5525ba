#pragma once

// Accuracy benchmark for coresets: empirical error against random center
// sets, a uniform-sampling baseline, dataset scenarios and report output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcoreset/coreset.hpp"
#include "gcoreset/graph.hpp"

namespace gcoreset {

/// Raised when cost(X, C) == 0 makes the relative error undefined.
class UndefinedErrorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |cost(D, C) / cost(X, C) - 1|
double empirical_error(const Graph& g, const WeightedPointSet& x, const WeightedPointSet& d, const CenterSet& c);

struct ErrorTrialConfig {
  std::size_t center_sets = 2000;
  /// Size of each random center set.
  std::size_t k = 1;
  /// Constructions averaged per benchmark cell.
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// `count` center sets of k distinct vertices drawn uniformly from V, one
/// engine in sequence, so a shorter stream is a prefix of a longer one.
std::vector<CenterSet> center_set_stream(const Graph& g, std::size_t k, std::size_t count, std::uint64_t seed);

/// Maximum empirical error of each coreset over the stream.
std::vector<double> max_errors(const Graph& g, const WeightedPointSet& x, std::span<const WeightedPointSet> coresets,
                               std::span<const CenterSet> stream);

/// Maximum empirical error over cfg.center_sets random center sets.
double max_error_trial(const Graph& g, const WeightedPointSet& x, const WeightedPointSet& d,
                       const ErrorTrialConfig& cfg);

/// `size` points drawn by weight, without replacement while the support
/// allows, each weighted total_weight(X) / size. Draws that repeat a point
/// are merged.
WeightedPointSet uniform_baseline(const WeightedPointSet& x, std::size_t size, std::uint64_t seed);

enum class Method { kSensitivity, kUniform, kIdentity };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct BenchmarkConfig {
  ErrorTrialConfig trials;
  CoresetBuildConfig build;
  std::vector<Method> methods = {Method::kSensitivity, Method::kUniform};
};

struct BenchmarkRow {
  Method method = Method::kSensitivity;
  std::size_t size = 0;
  double mean_max_error = 0.0;
  std::vector<double> max_errors;
  /// Distinct points per repetition.
  std::vector<std::size_t> support_sizes;
  /// Mean wall time of one construction / one evaluation pass.
  double construct_ms = 0.0;
  double eval_ms = 0.0;
};

struct BenchmarkReport {
  std::size_t build_k = 0;
  std::size_t eval_k = 0;
  std::size_t center_sets = 0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
  /// Size-major, methods in configured order.
  std::vector<BenchmarkRow> rows;

  [[nodiscard]] const BenchmarkRow& row(Method m, std::size_t size) const;
};

/// For each size and method: cfg.trials.repetitions constructions, each
/// scored by its maximum error over one shared center-set stream. Coresets
/// are built for `k` centers; center sets have cfg.trials.k centers.
BenchmarkReport run_benchmark(const Graph& g, const WeightedPointSet& x, std::span<const std::size_t> sizes,
                              std::size_t k, const BenchmarkConfig& cfg);

/// Columns: method,size,mean_max_err,t_construct_ms,t_eval_ms. Timing
/// columns are written as 0 unless include_timings, keeping reports
/// byte-reproducible by default.
void write_report_csv(std::ostream& out, const BenchmarkReport& r, bool include_timings);
void write_report_json(std::ostream& out, const BenchmarkReport& r, bool include_timings);

struct Scenario {
  enum class Kind { kUniform, kConcentrated };
  Kind kind = Kind::kUniform;
  /// Concentrated only.
  std::vector<VertexId> region;
  double fraction = 0.9;
};

/// Dataset of `count` points. Uniform: distinct vertices, unit weights.
/// Concentrated: round(fraction * count) points from the region and the
/// rest from outside it, distinct while a side has enough vertices and
/// otherwise drawn with replacement and merged into integer weights.
WeightedPointSet gen_dataset(const Graph& g, const Scenario& scenario, std::size_t count, std::uint64_t seed);

}  // namespace gcoreset
