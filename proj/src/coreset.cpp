#include "gcoreset/coreset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gcoreset/kernels.hpp"
#include "gcoreset/parallel.hpp"
#include "gcoreset/random.hpp"

namespace gcoreset {
namespace {

std::size_t default_rounds(std::size_t support) {
  if (support <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(support - 1));  // ceil(log2 support)
}

std::vector<VertexId> to_vector(std::span<const VertexId> ids) { return {ids.begin(), ids.end()}; }

}  // namespace

void BicriteriaConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("bicriteria: iterations must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("bicriteria: repetitions must be >= 1");
}

namespace {

struct SampleRun {
  std::vector<VertexId> chosen;
  double cost = 0.0;
};

// One oversampling run. Each round only adds sources, so the distance field
// is extended in place rather than recomputed; the final extension also
// yields cost(x, F) for free.
SampleRun run_sampler(const Graph& g, const WeightedPointSet& x, std::size_t rounds, std::size_t per_round,
                      std::uint64_t seed) {
  const std::size_t n = x.size();
  Rng rng(seed);
  std::vector<char> picked(n, 0);
  SampleRun run;
  auto draw = [&](std::span<const double> mass) {
    const DiscreteSampler sampler(mass);
    for (std::size_t s = 0; s < per_round; ++s) {
      const std::size_t i = sampler(rng);
      if (!picked[i]) {
        picked[i] = 1;
        run.chosen.push_back(x.id(i));
      }
    }
  };

  DistanceField field{std::vector<double>(g.vertex_count(), kInfinity),
                      std::vector<VertexId>(g.vertex_count(), kNoVertex)};
  std::size_t applied = 0;
  std::vector<DijkstraSource> sources;
  auto sync = [&] {
    sources.clear();
    for (; applied < run.chosen.size(); ++applied) sources.push_back({run.chosen[applied], 0.0});
    extend_distance_field(g, field, sources);
  };

  draw(x.weights());
  std::vector<double> mass(n);
  for (std::size_t r = 1; r < rounds; ++r) {
    sync();
    bool unreachable = false;
    for (std::size_t i = 0; i < n; ++i) unreachable |= std::isinf(field.distance[x.id(i)]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = field.distance[x.id(i)];
      // Points no sample can reach dominate everything else.
      mass[i] = unreachable ? (std::isinf(d) ? x.weight(i) : 0.0) : x.weight(i) * d;
      total += mass[i];
    }
    if (!(total > 0.0)) break;
    draw(mass);
  }
  sync();
  run.cost = cost_from_distances(x, field.distance);
  return run;
}

}  // namespace

WeightedPointSet tho_sample(const Graph& g, const WeightedPointSet& x, std::size_t rounds, std::size_t per_round,
                            std::uint64_t seed) {
  if (x.empty()) throw std::invalid_argument("tho_sample: empty data set");
  if (rounds < 1 || per_round < 1) throw std::invalid_argument("tho_sample: rounds and per_round must be >= 1");
  x.check_within(g);
  if (x.size() <= per_round) return WeightedPointSet::unit(to_vector(x.ids()));
  return WeightedPointSet::unit(run_sampler(g, x, rounds, per_round, seed).chosen);
}

WeightedPointSet tho_sample_best(const Graph& g, const WeightedPointSet& x, std::size_t k, std::size_t repetitions,
                                 const BicriteriaConfig& cfg, std::uint64_t seed) {
  if (repetitions < 1) throw std::invalid_argument("tho_sample_best: repetitions must be >= 1");
  if (k < 1) throw std::invalid_argument("tho_sample_best: k must be >= 1");
  if (x.empty()) throw std::invalid_argument("tho_sample: empty data set");
  x.check_within(g);
  const std::size_t rounds = cfg.rounds != 0 ? cfg.rounds : default_rounds(x.size());
  const std::size_t per_round = cfg.per_round != 0 ? cfg.per_round : k;
  if (x.size() <= per_round) return WeightedPointSet::unit(to_vector(x.ids()));

  std::vector<SampleRun> trials(repetitions);
  parallel_for(repetitions,
               [&](std::size_t j) { trials[j] = run_sampler(g, x, rounds, per_round, derive_seed(seed, j)); });
  std::size_t best = 0;
  for (std::size_t j = 1; j < repetitions; ++j) {
    if (trials[j].cost < trials[best].cost) best = j;
  }
  return WeightedPointSet::unit(std::move(trials[best].chosen));
}

WeightedPointSet iterated_thorup(const Graph& g, const WeightedPointSet& x, std::size_t k, const BicriteriaConfig& cfg,
                                 std::uint64_t seed, IteratedSamplingTrace* trace) {
  cfg.validate();
  WeightedPointSet current = x;
  for (std::size_t i = 1; i <= cfg.iterations; ++i) {
    const WeightedPointSet f = tho_sample_best(g, current, k, cfg.repetitions, cfg, derive_seed(seed, i));
    const CenterSet centers(to_vector(f.ids()));
    const ClusteringStats stats = assign(g, x, centers);
    if (std::isinf(stats.cost)) throw DisconnectedError("data point unreachable from the bicriteria solution");
    std::vector<VertexId> ids;
    std::vector<double> weights;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (stats.cluster_weight[c] > 0.0) {
        ids.push_back(centers.ids()[c]);
        weights.push_back(stats.cluster_weight[c]);
      }
    }
    current = WeightedPointSet(std::move(ids), std::move(weights));
    if (trace != nullptr) trace->support_sizes.push_back(current.size());
  }
  return current;
}

SensitivityVector sensitivities(const Graph& g, const WeightedPointSet& x, const CenterSet& cstar, double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("sensitivities: rho must be >= 1");
  const ClusteringStats stats = assign(g, x, cstar);
  if (std::isinf(stats.cost)) throw DisconnectedError("data point unreachable from the approximate solution");

  SensitivityVector s;
  s.rho = rho;
  s.solution_cost = stats.cost;
  s.sigma.resize(x.size());
  s.probability.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double share = stats.cost > 0.0 ? stats.distance[i] / stats.cost : 0.0;
    s.sigma[i] = rho * (share + 1.0 / stats.cluster_weight[stats.center_index[i]]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) s.probability[i] = x.weight(i) * s.sigma[i];
  s.total = kernels::scalar::weighted_sum(x.weights(), s.sigma);
  for (double& p : s.probability) p /= s.total;
  s.nonempty_clusters = static_cast<std::size_t>(
      std::count_if(stats.cluster_weight.begin(), stats.cluster_weight.end(), [](double w) { return w > 0.0; }));
  return s;
}

SamplingPlan plan_sampling(const Graph& g, const WeightedPointSet& x, std::size_t k, const CoresetBuildConfig& cfg,
                           std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("coreset: k must be >= 1");
  if (x.empty()) throw std::invalid_argument("coreset: empty data set");
  const WeightedPointSet f = iterated_thorup(g, x, k, cfg.bicriteria, derive_seed(seed, 1));
  const std::size_t centers = std::min(k, f.size());
  LocalSearchResult ls = local_search(g, f, centers, f.ids(), cfg.local_search, derive_seed(seed, 2));
  SamplingPlan plan;
  plan.bicriteria_size = f.size();
  plan.sensitivity = sensitivities(g, x, ls.centers, cfg.rho);
  plan.approximate_centers = std::move(ls.centers);
  return plan;
}

WeightedPointSet draw_coreset(const WeightedPointSet& x, const SensitivityVector& s, std::size_t samples,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("coreset: sample count must be >= 1");
  if (s.probability.size() != x.size()) throw std::invalid_argument("coreset: sensitivities do not match data set");
  Rng rng(seed);
  const DiscreteSampler sampler(s.probability);
  std::vector<std::size_t> counts(x.size(), 0);
  for (std::size_t t = 0; t < samples; ++t) ++counts[sampler(rng)];

  std::vector<VertexId> ids;
  std::vector<double> weights;
  const double n = static_cast<double>(samples);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (counts[i] == 0) continue;
    ids.push_back(x.id(i));
    weights.push_back(x.weight(i) * (static_cast<double>(counts[i]) / n) / s.probability[i]);
  }
  return {std::move(ids), std::move(weights)};
}

Coreset build_coreset(const Graph& g, const WeightedPointSet& x, std::size_t k, std::size_t samples,
                      const CoresetBuildConfig& cfg, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("coreset: sample count must be >= 1");
  const SamplingPlan plan = plan_sampling(g, x, k, cfg, derive_seed(seed, 1));
  Coreset out;
  out.points = draw_coreset(x, plan.sensitivity, samples, derive_seed(seed, 2));
  out.meta = {seed, samples, k, cfg.rho, plan.sensitivity.total};
  return out;
}

double coreset_size_bound_real(const SizeBoundParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw std::invalid_argument("size bound: epsilon must lie in (0, 1)");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("size bound: delta must lie in (0, 1)");
  if (p.k < 1 || p.sdim_max < 1) throw std::invalid_argument("size bound: k and sdim_max must be >= 1");
  if (!(p.sigma_total > 0.0) || !(p.constant > 0.0)) {
    throw std::invalid_argument("size bound: sigma_X and C0 must be positive");
  }
  const double ratio = p.sigma_total / p.epsilon;
  return p.constant * ratio * ratio * (static_cast<double>(p.k * p.sdim_max) - std::log(p.delta));
}

std::size_t coreset_size_bound(const SizeBoundParams& p) {
  const double real = coreset_size_bound_real(p);
  // Absorb representation error in the inputs (e.g. delta = 1/e) before
  // rounding up.
  return static_cast<std::size_t>(std::ceil(real * (1.0 - 1e-12)));
}

}  // namespace gcoreset
