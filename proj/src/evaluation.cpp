#include "gcoreset/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "gcoreset/kernels.hpp"
#include "gcoreset/parallel.hpp"
#include "gcoreset/random.hpp"

namespace gcoreset {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Stream tags for derive_seed.
constexpr std::uint64_t kStreamCenters = 0x43454e54;
constexpr std::uint64_t kStreamBuild = 0x4255494c;

}  // namespace

double empirical_error(const Graph& g, const WeightedPointSet& x, const WeightedPointSet& d, const CenterSet& c) {
  d.check_within(g);
  x.check_within(g);
  const DistanceField f = center_distances(g, c);
  const double full = cost_from_distances(x, f.distance);
  if (!(full > 0.0)) throw UndefinedErrorError("empirical error undefined: cost(X, C) is zero");
  return std::abs(cost_from_distances(d, f.distance) / full - 1.0);
}

void ErrorTrialConfig::validate() const {
  if (center_sets < 1 || k < 1 || repetitions < 1) {
    throw std::invalid_argument("error trial: center_sets, k and repetitions must be >= 1");
  }
}

std::vector<CenterSet> center_set_stream(const Graph& g, std::size_t k, std::size_t count, std::uint64_t seed) {
  if (k < 1 || k > g.vertex_count()) throw std::invalid_argument("center sets need 1 <= k <= |V|");
  Rng rng(seed);
  std::vector<CenterSet> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto picks = random_subset(rng, g.vertex_count(), k);
    out.emplace_back(std::vector<VertexId>(picks.begin(), picks.end()));
  }
  return out;
}

std::vector<double> max_errors(const Graph& g, const WeightedPointSet& x, std::span<const WeightedPointSet> coresets,
                               std::span<const CenterSet> stream) {
  x.check_within(g);
  for (const auto& d : coresets) d.check_within(g);
  const std::size_t sets = stream.size();
  std::vector<double> full(sets);
  // estimates[c * sets + j] = cost(coreset c, center set j)
  std::vector<double> estimates(coresets.size() * sets);
  parallel_for(sets, [&](std::size_t j) {
    const DistanceField f = center_distances(g, stream[j]);
    full[j] = cost_from_distances(x, f.distance);
    for (std::size_t c = 0; c < coresets.size(); ++c) estimates[c * sets + j] = cost_from_distances(coresets[c], f.distance);
  });
  for (std::size_t j = 0; j < sets; ++j) {
    if (!(full[j] > 0.0)) throw UndefinedErrorError("empirical error undefined: cost(X, C) is zero");
  }
  std::vector<double> out(coresets.size());
  for (std::size_t c = 0; c < coresets.size(); ++c) {
    out[c] = kernels::max_relative_error(std::span(estimates).subspan(c * sets, sets), full);
  }
  return out;
}

double max_error_trial(const Graph& g, const WeightedPointSet& x, const WeightedPointSet& d,
                       const ErrorTrialConfig& cfg) {
  cfg.validate();
  const auto stream = center_set_stream(g, cfg.k, cfg.center_sets, cfg.seed);
  return max_errors(g, x, std::span(&d, 1), stream).front();
}

WeightedPointSet uniform_baseline(const WeightedPointSet& x, std::size_t size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("uniform baseline: size must be >= 1");
  if (x.empty()) throw std::invalid_argument("uniform baseline: empty data set");
  Rng rng(seed);
  const double each = x.total_weight() / static_cast<double>(size);
  std::vector<std::size_t> counts(x.size(), 0);
  if (size <= x.size()) {
    for (std::size_t i : sample_without_replacement(rng, x.weights(), size)) counts[i] = 1;
  } else {
    const DiscreteSampler sampler(x.weights());
    for (std::size_t t = 0; t < size; ++t) ++counts[sampler(rng)];
  }
  std::vector<VertexId> ids;
  std::vector<double> weights;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (counts[i] == 0) continue;
    ids.push_back(x.id(i));
    weights.push_back(static_cast<double>(counts[i]) * each);
  }
  return {std::move(ids), std::move(weights)};
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kSensitivity:
      return "coreset";
    case Method::kUniform:
      return "uniform";
    case Method::kIdentity:
      return "identity";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "coreset" || name == "sensitivity") return Method::kSensitivity;
  if (name == "uniform") return Method::kUniform;
  if (name == "identity") return Method::kIdentity;
  throw std::invalid_argument("unknown method '" + name + "'");
}

const BenchmarkRow& BenchmarkReport::row(Method m, std::size_t size) const {
  for (const auto& r : rows) {
    if (r.method == m && r.size == size) return r;
  }
  throw std::out_of_range("no benchmark row for " + method_name(m) + " at size " + std::to_string(size));
}

BenchmarkReport run_benchmark(const Graph& g, const WeightedPointSet& x, std::span<const std::size_t> sizes,
                              std::size_t k, const BenchmarkConfig& cfg) {
  cfg.trials.validate();
  if (sizes.empty()) throw std::invalid_argument("benchmark: empty size grid");
  if (cfg.methods.empty()) throw std::invalid_argument("benchmark: no methods");
  for (std::size_t s : sizes) {
    if (s < 1) throw std::invalid_argument("benchmark: sizes must be >= 1");
  }
  if (k < 1) throw std::invalid_argument("benchmark: k must be >= 1");

  BenchmarkReport report;
  report.build_k = k;
  report.eval_k = cfg.trials.k;
  report.center_sets = cfg.trials.center_sets;
  report.repetitions = cfg.trials.repetitions;
  report.seed = cfg.trials.seed;

  const auto stream =
      center_set_stream(g, cfg.trials.k, cfg.trials.center_sets, derive_seed(cfg.trials.seed, kStreamCenters));
  const std::size_t reps = cfg.trials.repetitions;

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (Method method : cfg.methods) {
      BenchmarkRow row;
      row.method = method;
      row.size = sizes[si];
      std::vector<WeightedPointSet> built(reps);
      const auto t0 = Clock::now();
      for (std::size_t r = 0; r < reps; ++r) {
        const std::uint64_t seed =
            derive_seed(derive_seed(cfg.trials.seed, kStreamBuild), static_cast<std::uint64_t>(method), si * reps + r);
        switch (method) {
          case Method::kSensitivity:
            built[r] = build_coreset(g, x, k, sizes[si], cfg.build, seed).points;
            break;
          case Method::kUniform:
            built[r] = uniform_baseline(x, sizes[si], seed);
            break;
          case Method::kIdentity:
            built[r] = x;
            break;
        }
        row.support_sizes.push_back(built[r].size());
      }
      row.construct_ms = elapsed_ms(t0) / static_cast<double>(reps);

      const auto t1 = Clock::now();
      row.max_errors = max_errors(g, x, built, stream);
      row.eval_ms = elapsed_ms(t1) / static_cast<double>(reps);
      double sum = 0.0;
      for (double e : row.max_errors) sum += e;
      row.mean_max_error = sum / static_cast<double>(reps);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const BenchmarkReport& r, bool include_timings) {
  out << "method,size,mean_max_err,t_construct_ms,t_eval_ms\n";
  for (const auto& row : r.rows) {
    out << method_name(row.method) << ',' << row.size << ',' << format_double(row.mean_max_error) << ','
        << (include_timings ? format_double(row.construct_ms) : "0") << ','
        << (include_timings ? format_double(row.eval_ms) : "0") << '\n';
  }
}

void write_report_json(std::ostream& out, const BenchmarkReport& r, bool include_timings) {
  // ordered_json keeps insertion order so output is stable field by field.
  nlohmann::ordered_json doc;
  doc["build_k"] = r.build_k;
  doc["eval_k"] = r.eval_k;
  doc["center_sets"] = r.center_sets;
  doc["repetitions"] = r.repetitions;
  doc["seed"] = r.seed;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json j;
    j["method"] = method_name(row.method);
    j["size"] = row.size;
    j["mean_max_err"] = row.mean_max_error;
    j["max_errors"] = row.max_errors;
    j["support_sizes"] = row.support_sizes;
    j["t_construct_ms"] = include_timings ? row.construct_ms : 0.0;
    j["t_eval_ms"] = include_timings ? row.eval_ms : 0.0;
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

WeightedPointSet gen_dataset(const Graph& g, const Scenario& scenario, std::size_t count, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  Rng rng(seed);
  if (scenario.kind == Scenario::Kind::kUniform) {
    if (count > n) throw std::invalid_argument("dataset: count exceeds |V|");
    const auto picks = random_subset(rng, n, count);
    return WeightedPointSet::unit(std::vector<VertexId>(picks.begin(), picks.end()));
  }

  std::vector<VertexId> region = scenario.region;
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  if (region.empty()) throw std::invalid_argument("dataset: concentrated scenario needs a nonempty region");
  if (region.back() >= n) throw std::invalid_argument("dataset: region vertex not in graph");
  if (!(scenario.fraction >= 0.0 && scenario.fraction <= 1.0)) {
    throw std::invalid_argument("dataset: fraction must lie in [0, 1]");
  }
  std::vector<VertexId> outside;
  outside.reserve(n - region.size());
  for (VertexId v = 0, ri = 0; v < n; ++v) {
    if (ri < region.size() && region[ri] == v) {
      ++ri;
    } else {
      outside.push_back(v);
    }
  }
  const auto inside_count = static_cast<std::size_t>(std::llround(scenario.fraction * static_cast<double>(count)));
  const std::size_t outside_count = count - inside_count;
  if ((inside_count > 0 && region.empty()) || (outside_count > 0 && outside.empty())) {
    throw std::invalid_argument("dataset: region or its complement is empty");
  }
  // Distinct vertices while the pool is large enough; beyond that points
  // share vertices and coalesce into integer weights.
  std::vector<std::pair<VertexId, double>> points;
  auto pick = [&](const std::vector<VertexId>& pool, std::size_t m) {
    if (m <= pool.size()) {
      for (std::uint64_t i : random_subset(rng, pool.size(), m)) points.emplace_back(pool[i], 1.0);
      return;
    }
    std::vector<double> hits(pool.size(), 0.0);
    for (std::size_t j = 0; j < m; ++j) hits[uniform_below(rng, pool.size())] += 1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (hits[i] > 0.0) points.emplace_back(pool[i], hits[i]);
    }
  };
  pick(region, inside_count);
  pick(outside, outside_count);
  std::sort(points.begin(), points.end());
  std::vector<VertexId> ids;
  std::vector<double> weights;
  for (const auto& [v, w] : points) {
    ids.push_back(v);
    weights.push_back(w);
  }
  return WeightedPointSet(std::move(ids), std::move(weights));
}

}  // namespace gcoreset
