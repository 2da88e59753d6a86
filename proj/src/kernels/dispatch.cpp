#include <atomic>
#include <stdexcept>

#include "indefsl/error.hpp"
#include "indefsl/kernels.hpp"

namespace indefsl::kernels {

namespace {

Backend detect() noexcept { return avx2_available() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if defined(INDEFSL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) throw ConfigError("avx2 backend requested but not available");
  current().store(b, std::memory_order_relaxed);
}

void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out) {
  if (shift.size() != weight.size() || eps_sq.size() != out.size())
    throw std::invalid_argument("stieltjes_sum: span size mismatch");
#if defined(INDEFSL_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::stieltjes_sum(eps_sq, shift, weight, out);
#endif
  scalar::stieltjes_sum(eps_sq, shift, weight, out);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: span size mismatch");
#if defined(INDEFSL_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::max_abs_diff(a, b);
#endif
  return scalar::max_abs_diff(a, b);
}

double max_abs(std::span<const double> a) {
#if defined(INDEFSL_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::max_abs(a);
#endif
  return scalar::max_abs(a);
}

}  // namespace indefsl::kernels
