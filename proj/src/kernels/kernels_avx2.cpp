// Compiled with -mavx2. Nothing here may run before the dispatcher has
// confirmed AVX2 support.

#include "gcoreset/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace gcoreset::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

}  // namespace

double weighted_sum(std::span<const double> w, std::span<const double> d) {
  assert(w.size() == d.size());
  const std::size_t n = w.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&d[i])));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&d[i + 4])));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&d[i])));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += w[i] * d[i];
  return sum;
}

double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  assert(w.size() == a.size() && w.size() == b.size());
  const std::size_t n = w.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d m0 = _mm256_min_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    __m256d m1 = _mm256_min_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), m0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), m1));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d m0 = _mm256_min_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), m0));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += w[i] * std::min(a[i], b[i]);
  return sum;
}

double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table) {
  assert(w.size() == idx.size());
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  // Indices are read as signed 32-bit; vertex ids stay below 2^31.
  for (; i + 4 <= n; i += 4) {
    __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&idx[i]));
    __m256d g = _mm256_i32gather_pd(table.data(), vi, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), g));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += w[i] * table[idx[i]];
  return sum;
}

void min_inplace(std::span<double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // min_pd(b, a) returns a when the lanes compare equal, matching std::min.
    _mm256_storeu_pd(&a[i], _mm256_min_pd(_mm256_loadu_pd(&b[i]), _mm256_loadu_pd(&a[i])));
  }
  for (; i < n; ++i) a[i] = std::min(a[i], b[i]);
}

double max_relative_error(std::span<const double> est, std::span<const double> ref) {
  assert(est.size() == ref.size());
  const std::size_t n = est.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_sub_pd(_mm256_div_pd(_mm256_loadu_pd(&est[i]), _mm256_loadu_pd(&ref[i])), one);
    worst = _mm256_max_pd(worst, _mm256_andnot_pd(sign, r));
  }
  double result = hmax(worst);
  for (; i < n; ++i) result = std::max(result, std::abs(est[i] / ref[i] - 1.0));
  return result;
}

}  // namespace gcoreset::kernels::avx2
