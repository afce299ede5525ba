#include "gcoreset/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gcoreset::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(GCORESET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  const char* env = std::getenv("GCORESET_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  return detect_isa();
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa detect_isa() noexcept { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) noexcept {
  if (isa == Isa::kAvx2 && !cpu_has_avx2()) isa = Isa::kScalar;
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

#if defined(GCORESET_HAVE_AVX2)
#define GCORESET_DISPATCH(fn, ...) \
  (active_isa() == Isa::kAvx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define GCORESET_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double weighted_sum(std::span<const double> w, std::span<const double> d) {
  return GCORESET_DISPATCH(weighted_sum, w, d);
}

double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return GCORESET_DISPATCH(weighted_min_sum, w, a, b);
}

double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table) {
  return GCORESET_DISPATCH(gather_weighted_sum, w, idx, table);
}

void min_inplace(std::span<double> a, std::span<const double> b) { GCORESET_DISPATCH(min_inplace, a, b); }

double max_relative_error(std::span<const double> est, std::span<const double> ref) {
  return GCORESET_DISPATCH(max_relative_error, est, ref);
}

#undef GCORESET_DISPATCH

}  // namespace gcoreset::kernels
