#include "gcoreset/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace gcoreset::kernels::scalar {

double weighted_sum(std::span<const double> w, std::span<const double> d) {
  assert(w.size() == d.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * d[i];
  return sum;
}

double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  assert(w.size() == a.size() && w.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::min(a[i], b[i]);
  return sum;
}

double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table) {
  assert(w.size() == idx.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * table[idx[i]];
  return sum;
}

void min_inplace(std::span<double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::min(a[i], b[i]);
}

double max_relative_error(std::span<const double> est, std::span<const double> ref) {
  assert(est.size() == ref.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) worst = std::max(worst, std::abs(est[i] / ref[i] - 1.0));
  return worst;
}

}  // namespace gcoreset::kernels::scalar
