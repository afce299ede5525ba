#include "gcoreset/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace gcoreset {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) noexcept {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

std::vector<std::uint64_t> random_subset(Rng& rng, std::uint64_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("random_subset: k exceeds population");
  std::vector<std::uint64_t> out;
  out.reserve(k);
  if (k * 4 >= n) {
    // Dense: partial Fisher-Yates over the whole range.
    std::vector<std::uint64_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + uniform_below(rng, n - i)]);
      out.push_back(pool[i]);
    }
  } else {
    // Sparse: Floyd's algorithm.
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = n - k; j < n; ++j) {
      const std::uint64_t t = uniform_below(rng, j + 1);
      const std::uint64_t pick = chosen.insert(t).second ? t : j;
      if (pick == j) chosen.insert(j);
      out.push_back(pick);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
  cumulative_.reserve(weights.size());
  double acc = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("DiscreteSampler: invalid weight");
    acc += w;
    cumulative_.push_back(acc);
  }
  if (cumulative_.empty() || !(acc > 0.0)) throw std::invalid_argument("DiscreteSampler: no positive weight");
}

std::size_t DiscreteSampler::operator()(Rng& rng) const {
  const double target = uniform01(rng) * cumulative_.back();
  // upper_bound never lands on a zero-weight entry.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<std::size_t> sample_without_replacement(Rng& rng, std::span<const double> weights, std::size_t count) {
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // Draw unconditionally so the stream position does not depend on weights.
    const double u = uniform01(rng);
    if (weights[i] > 0.0) keys.emplace_back(-std::log1p(-u) / weights[i], i);
  }
  count = std::min(count, keys.size());
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(count), keys.end());
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(keys[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gcoreset
