#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and an AVX2 variant; the active backend is chosen once at startup from CPUID
// and may be overridden for equivalence testing.

#include <span>

namespace indefsl::kernels {

enum class Backend { scalar, avx2 };

[[nodiscard]] const char* to_string(Backend b);
[[nodiscard]] bool avx2_available() noexcept;
[[nodiscard]] Backend active_backend() noexcept;
/// Throws ConfigError when the requested backend is not supported on this CPU.
void set_backend(Backend b);

/// out[i] = sum_k weight[k] / (shift[k] + eps_sq[i]).
/// Sum over k runs in index order in every backend.
void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out);

/// max_i |a[i] - b[i]|; NaN propagates.
[[nodiscard]] double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// max_i |a[i]|; NaN propagates.
[[nodiscard]] double max_abs(std::span<const double> a);

namespace scalar {
void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
}  // namespace scalar

namespace avx2 {
void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
}  // namespace avx2

}  // namespace indefsl::kernels
