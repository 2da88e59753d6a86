#include <cmath>
#include <limits>

#include "indefsl/kernels.hpp"

namespace indefsl::kernels::scalar {

void stieltjes_sum(std::span<const double> eps_sq, std::span<const double> shift, std::span<const double> weight,
                   std::span<double> out) {
  const std::size_t n = eps_sq.size();
  const std::size_t m = shift.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += weight[k] / (shift[k] + eps_sq[i]);
    out[i] = acc;
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d > best) best = d;
  }
  return best;
}

double max_abs(std::span<const double> a) {
  double best = 0.0;
  for (double v : a) {
    const double d = std::fabs(v);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d > best) best = d;
  }
  return best;
}

}  // namespace indefsl::kernels::scalar
