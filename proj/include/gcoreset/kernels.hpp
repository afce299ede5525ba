#pragma once

// Data-parallel inner loops used by cost evaluation, local search and the
// benchmark. Each kernel has a portable scalar reference and, on x86-64, an
// AVX2 variant; the active implementation is chosen once at runtime.
//
// All spans passed to one call must have equal length (checked by assert).
// Sums may differ from the scalar reference in the last bits because the
// vector variants accumulate in lanes; min/max kernels are exact.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gcoreset::kernels {

enum class Isa { kScalar, kAvx2 };

/// Best ISA supported by this CPU and build.
Isa detect_isa() noexcept;
/// Currently dispatched ISA. Defaults to detect_isa() unless the
/// GCORESET_ISA environment variable is "scalar".
Isa active_isa() noexcept;
/// Forces an ISA; requests the CPU cannot execute fall back to scalar.
void set_active_isa(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// sum_i w[i] * d[i]
double weighted_sum(std::span<const double> w, std::span<const double> d);
/// sum_i w[i] * min(a[i], b[i])
double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b);
/// sum_i w[i] * table[idx[i]]
double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table);
/// a[i] = min(a[i], b[i])
void min_inplace(std::span<double> a, std::span<const double> b);
/// max_i |est[i] / ref[i] - 1|; callers guarantee ref[i] > 0.
double max_relative_error(std::span<const double> est, std::span<const double> ref);

namespace scalar {
double weighted_sum(std::span<const double> w, std::span<const double> d);
double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table);
void min_inplace(std::span<double> a, std::span<const double> b);
double max_relative_error(std::span<const double> est, std::span<const double> ref);
}  // namespace scalar

#if defined(GCORESET_HAVE_AVX2)
namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> d);
double weighted_min_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double gather_weighted_sum(std::span<const double> w, std::span<const std::uint32_t> idx,
                           std::span<const double> table);
void min_inplace(std::span<double> a, std::span<const double> b);
double max_relative_error(std::span<const double> est, std::span<const double> ref);
}  // namespace avx2
#endif

}  // namespace gcoreset::kernels
