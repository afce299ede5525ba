#include "gcoreset/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "gcoreset/kernels.hpp"
#include "gcoreset/parallel.hpp"
#include "gcoreset/random.hpp"

namespace gcoreset {
namespace {

// Above this many cached distances (pool size x data size) rows are
// recomputed on demand instead of stored.
constexpr std::size_t kRowCacheEntries = std::size_t{1} << 24;

std::vector<double> distance_row(const Graph& g, VertexId from, const WeightedPointSet& x) {
  return distances_to(g, from, x.ids());
}

// Distances from a fixed list of vertices to the points of x, optionally
// memoized. Fill with prefetch() before reading from several threads.
class DistanceRows {
 public:
  DistanceRows(const Graph& g, const WeightedPointSet& x, std::span<const VertexId> from)
      : g_(g), x_(x), from_(from), cached_(from.size() * std::max<std::size_t>(x.size(), 1) <= kRowCacheEntries) {
    if (cached_) rows_.resize(from.size());
  }

  [[nodiscard]] bool cached() const noexcept { return cached_; }

  void prefetch() {
    if (!cached_) return;
    parallel_for(from_.size(), [&](std::size_t i) {
      if (!rows_[i]) rows_[i] = distance_row(g_, from_[i], x_);
    });
  }

  /// With caching on, only valid after prefetch().
  std::vector<double> get(std::size_t i) const {
    if (cached_) return *rows_[i];
    return distance_row(g_, from_[i], x_);
  }

  const std::vector<double>& ref(std::size_t i) const { return *rows_[i]; }

 private:
  const Graph& g_;
  const WeightedPointSet& x_;
  std::span<const VertexId> from_;
  bool cached_;
  std::vector<std::optional<std::vector<double>>> rows_;
};

struct SwapCandidate {
  double cost = kInfinity;
  std::size_t added = std::numeric_limits<std::size_t>::max();    // pool index
  std::size_t removed = std::numeric_limits<std::size_t>::max();  // position in current centers
  bool valid = false;
};

bool precedes(const SwapCandidate& a, const SwapCandidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.added != b.added) return a.added < b.added;
  return a.removed < b.removed;
}

}  // namespace

void LocalSearchConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("local search: tau must lie in (0, 1)");
  if (max_iterations < 1) throw std::invalid_argument("local search: max_iterations must be >= 1");
}

LocalSearchResult local_search(const Graph& g, const WeightedPointSet& x, std::size_t k,
                               std::span<const VertexId> pool_in, const LocalSearchConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (k == 0) throw std::invalid_argument("local search: k must be >= 1");
  x.check_within(g);
  std::vector<VertexId> pool(pool_in.begin(), pool_in.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (!pool.empty() && pool.back() >= g.vertex_count()) throw std::invalid_argument("local search: pool vertex not in graph");
  if (pool.size() < k) {
    throw std::invalid_argument("local search: pool has " + std::to_string(pool.size()) + " vertices, fewer than k = " +
                                std::to_string(k));
  }

  Rng rng(seed);
  std::vector<std::size_t> current;  // pool indices, ascending
  for (std::uint64_t i : random_subset(rng, pool.size(), k)) current.push_back(static_cast<std::size_t>(i));

  DistanceRows rows(g, x, pool);
  rows.prefetch();

  const std::size_t m = x.size();
  const auto w = x.weights();
  LocalSearchResult result;
  std::vector<std::vector<double>> excl(k, std::vector<double>(m));
  std::vector<double> best1(m), best2(m);
  std::vector<std::size_t> arg1(m);
  std::vector<char> in_current(pool.size(), 0);

  for (;;) {
    std::fill(best1.begin(), best1.end(), kInfinity);
    std::fill(best2.begin(), best2.end(), kInfinity);
    std::fill(arg1.begin(), arg1.end(), k);
    std::fill(in_current.begin(), in_current.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      in_current[current[i]] = 1;
      const std::vector<double> row = rows.get(current[i]);
      for (std::size_t j = 0; j < m; ++j) {
        if (row[j] < best1[j]) {
          best2[j] = best1[j];
          best1[j] = row[j];
          arg1[j] = i;
        } else if (row[j] < best2[j]) {
          best2[j] = row[j];
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < m; ++j) excl[i][j] = arg1[j] == i ? best2[j] : best1[j];
    }
    const double current_cost = kernels::weighted_sum(w, best1);
    result.history.push_back(current_cost);
    if (result.iterations >= cfg.max_iterations) break;

    std::vector<SwapCandidate> per_candidate(pool.size());
    parallel_for(pool.size(), [&](std::size_t p) {
      if (in_current[p]) return;
      std::vector<double> owned;
      const std::vector<double>* row = nullptr;
      if (rows.cached()) {
        row = &rows.ref(p);
      } else {
        owned = rows.get(p);
        row = &owned;
      }
      SwapCandidate best;
      for (std::size_t i = 0; i < k; ++i) {
        SwapCandidate c{kernels::weighted_min_sum(w, excl[i], *row), p, i, true};
        if (precedes(c, best)) best = c;
      }
      per_candidate[p] = best;
    });
    SwapCandidate best;
    for (const SwapCandidate& c : per_candidate) {
      if (precedes(c, best)) best = c;
    }

    const double threshold = (1.0 - cfg.tau / static_cast<double>(k)) * current_cost;
    if (!best.valid || !(best.cost < threshold)) {
      result.converged = true;
      break;
    }
    current[best.removed] = best.added;
    std::sort(current.begin(), current.end());
    ++result.iterations;
  }

  std::vector<VertexId> ids;
  for (std::size_t i : current) ids.push_back(pool[i]);
  result.centers = CenterSet(std::move(ids));
  result.cost = x.empty() ? 0.0 : cost(g, x, result.centers);
  return result;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    r = r * num / i;
  }
  return r;
}

namespace {

// Visits every k-subset of V in lexicographic order with the per-point
// distance to its nearest member.
void for_each_subset(const Graph& g, const WeightedPointSet& x, std::size_t k,
                     const std::function<void(std::span<const VertexId>, std::span<const double>)>& visit) {
  const std::size_t n = g.vertex_count();
  if (k == 0 || k > n) throw std::invalid_argument("enumeration: need 1 <= k <= |V|");
  const std::uint64_t subsets = binomial(n, k);
  if (subsets > kEnumerationLimit) {
    throw EnumerationLimitError("enumeration of C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                                (subsets == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                                      : std::to_string(subsets)) +
                                " subsets exceeds the limit of " + std::to_string(kEnumerationLimit));
  }
  x.check_within(g);
  const std::vector<VertexId> vertices = all_vertices(g);
  DistanceRows rows(g, x, vertices);
  rows.prefetch();

  const std::size_t m = x.size();
  std::vector<std::vector<double>> prefix(k + 1, std::vector<double>(m, kInfinity));
  std::vector<VertexId> chosen(k);

  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t depth, std::size_t start) {
    if (depth == k) {
      visit(chosen, prefix[k]);
      return;
    }
    for (std::size_t v = start; v + (k - depth) <= n; ++v) {
      chosen[depth] = static_cast<VertexId>(v);
      prefix[depth + 1] = prefix[depth];
      if (rows.cached()) {
        kernels::min_inplace(prefix[depth + 1], rows.ref(v));
      } else {
        kernels::min_inplace(prefix[depth + 1], rows.get(v));
      }
      dfs(depth + 1, v + 1);
    }
  };
  dfs(0, 0);
}

}  // namespace

KMedianSolution brute_force_kmedian(const Graph& g, const WeightedPointSet& x, std::size_t k) {
  std::vector<VertexId> best_ids;
  double best_cost = kInfinity;
  bool found = false;
  for_each_subset(g, x, k, [&](std::span<const VertexId> subset, std::span<const double> dist) {
    const double c = kernels::weighted_sum(x.weights(), dist);
    if (!found || c < best_cost) {
      best_cost = c;
      best_ids.assign(subset.begin(), subset.end());
      found = true;
    }
  });
  return {CenterSet(std::move(best_ids)), best_cost};
}

double brute_force_sensitivity(const Graph& g, const WeightedPointSet& x, std::size_t k, VertexId p) {
  const auto ids = x.ids();
  const auto it = std::lower_bound(ids.begin(), ids.end(), p);
  if (it == ids.end() || *it != p) throw std::invalid_argument("sensitivity: point not in the data set");
  const auto index = static_cast<std::size_t>(it - ids.begin());
  double best = 0.0;
  bool any = false;
  for_each_subset(g, x, k, [&](std::span<const VertexId>, std::span<const double> dist) {
    const double c = kernels::weighted_sum(x.weights(), dist);
    if (!(c > 0.0) || !std::isfinite(c)) return;
    best = std::max(best, dist[index] / c);
    any = true;
  });
  return any ? best : 1.0;
}

}  // namespace gcoreset
