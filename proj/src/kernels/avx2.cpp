// Compiled with -mavx2 only; callers must check avx2_available() first.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "indefsl/kernels.hpp"

namespace indefsl::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
}

}  // namespace

void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out) {
  const std::size_t n = eps_sq.size();
  const std::size_t m = shift.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_loadu_pd(eps_sq.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < m; ++k) {
      const __m256d den = _mm256_add_pd(_mm256_set1_pd(shift[k]), e);
      acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_set1_pd(weight[k]), den));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += weight[k] / (shift[k] + eps_sq[i]);
    out[i] = acc;
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    best = _mm256_max_pd(best, d);
  }
  if (_mm256_movemask_pd(nan_seen) != 0) return std::numeric_limits<double>::quiet_NaN();
  double result = hmax(best);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d > result) result = d;
  }
  return result;
}

double max_abs(std::span<const double> a) {
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_loadu_pd(a.data() + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    best = _mm256_max_pd(best, d);
  }
  if (_mm256_movemask_pd(nan_seen) != 0) return std::numeric_limits<double>::quiet_NaN();
  double result = hmax(best);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d > result) result = d;
  }
  return result;
}

}  // namespace indefsl::kernels::avx2
