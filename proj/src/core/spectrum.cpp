#include "indefsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "indefsl/error.hpp"

namespace indefsl::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

/// Memoised D over exact sample coordinates, so that shared edges of
/// neighbouring rectangles are evaluated once.
class DispersionCache {
 public:
  DispersionCache(const Potential& q, double tol, const weyl::Options& opt) : q_(q), tol_(tol), opt_(opt) {}

  Complex operator()(Complex z) {
    const auto key = std::make_pair(z.real(), z.imag());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Complex d = dispersion(q_, z, tol_, opt_);
    memo_.emplace(key, d);
    return d;
  }

 private:
  const Potential& q_;
  double tol_;
  weyl::Options opt_;
  std::map<std::pair<double, double>, Complex> memo_;
};

std::string rect_text(const Rect& r) {
  return fmt::format("[{:.6g},{:.6g}]x[{:.6g},{:.6g}]", r.re_lo, r.re_hi, r.im_lo, r.im_hi);
}

void validate_rect(const Rect& r, const ContourOptions& opt) {
  if (!(r.re_lo < r.re_hi) || !(r.im_lo < r.im_hi)) throw ConfigError("degenerate rectangle " + rect_text(r));
  const bool upper = r.im_lo >= opt.min_distance_from_axis;
  const bool lower = r.im_hi <= -opt.min_distance_from_axis;
  if (!upper && !lower)
    throw ConfigError(fmt::format("rectangle {} must keep a distance of at least {} from the real axis", rect_text(r),
                                  opt.min_distance_from_axis));
}

class ContourCounter {
 public:
  ContourCounter(DispersionCache& d, const ContourOptions& opt) : d_(d), opt_(opt) {}

  int winding(const Rect& r) {
    const Complex p00{r.re_lo, r.im_lo}, p10{r.re_hi, r.im_lo}, p11{r.re_hi, r.im_hi}, p01{r.re_lo, r.im_hi};
    // Edges are always sampled in a canonical direction (increasing coordinate)
    // and reversed by sign, so that shared edges reuse cached samples.
    const double total = edge_phase(p00, p10) + edge_phase(p10, p11) - edge_phase(p01, p11) - edge_phase(p00, p01);
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::fabs(turns - rounded) > 0.25)
      throw NumericalError(fmt::format("argument principle did not close on {} (winding {:.4f})", rect_text(r), turns));
    return static_cast<int>(rounded);
  }

 private:
  Complex sample(Complex z, const Complex& a, const Complex& b) {
    const Complex v = d_(z);
    if (std::abs(v) < opt_.boundary_floor)
      throw NumericalError(fmt::format("|D| = {:.3g} at {}+{}i on the edge from {}+{}i to {}+{}i; shift boundary",
                                       std::abs(v), z.real(), z.imag(), a.real(), a.imag(), b.real(), b.imag()));
    return v;
  }

  double edge_phase(Complex a, Complex b) {
    const int n = opt_.samples_per_edge;
    double phase = 0.0;
    Complex prev_z = a;
    Complex prev = sample(a, a, b);
    for (int i = 1; i <= n; ++i) {
      const Complex z = i == n ? b : a + (b - a) * (static_cast<double>(i) / n);
      const Complex v = sample(z, a, b);
      phase += segment(prev_z, z, prev, v, 0, a, b);
      prev_z = z;
      prev = v;
    }
    return phase;
  }

  double segment(Complex za, Complex zb, Complex da, Complex db, int depth, Complex a, Complex b) {
    const double step = std::arg(db / da);
    if (std::fabs(step) < 0.5 * kPi) return step;
    if (depth > 40 || std::abs(zb - za) < 1e-12 * (1.0 + std::abs(za)))
      throw NumericalError(fmt::format("phase of D not resolved near {}+{}i; shift boundary", za.real(), za.imag()));
    const Complex zm = 0.5 * (za + zb);
    const Complex dm = sample(zm, a, b);
    return segment(za, zm, da, dm, depth + 1, a, b) + segment(zm, zb, dm, db, depth + 1, a, b);
  }

  DispersionCache& d_;
  const ContourOptions& opt_;
};

struct Locator {
  DispersionCache& d;
  ContourCounter& counter;
  double tol;
  std::vector<Eigenvalue>& out;

  Complex derivative(Complex z) {
    const double h = 1e-6 * (1.0 + std::abs(z));
    return (d(z + h) - d(z - h)) / (2.0 * h);
  }

  /// Newton from the centre; nullopt when it leaves the rectangle or stalls.
  std::optional<Eigenvalue> newton(const Rect& r) {
    Complex z{0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)};
    const double margin = 0.25 * std::max(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
    Complex f = d(z);
    double prev_abs = std::abs(f);
    for (int it = 0; it < 60; ++it) {
      if (std::abs(f) <= tol) return Eigenvalue{z, std::abs(f), 1};
      const Complex df = derivative(z);
      if (df == Complex{0.0}) return std::nullopt;
      const Complex step = f / df;
      z -= step;
      if (!r.contains(z, margin)) return std::nullopt;
      f = d(z);
      const double a = std::abs(f);
      // Quadratic convergence has broken down once |D| stops shrinking.
      if (it > 3 && a > 0.5 * prev_abs && a > tol) return std::nullopt;
      prev_abs = a;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    if (std::abs(f) <= tol) return Eigenvalue{z, std::abs(f), 1};
    return std::nullopt;
  }

  /// Quadrisection by winding number down to a tiny box.
  Eigenvalue shrink(Rect r, int n) {
    for (int it = 0; it < 60; ++it) {
      const double w = r.re_hi - r.re_lo, h = r.im_hi - r.im_lo;
      if (std::max(w, h) < 1e-12 * (1.0 + std::abs(Complex{r.re_lo, r.im_lo}))) break;
      bool moved = false;
      for (const Rect& sub : split4(r)) {
        int k = 0;
        try {
          k = counter.winding(sub);
        } catch (const NumericalError&) {
          continue;  // zero on this sub-boundary; another quadrant will hold it
        }
        if (k >= 1) {
          r = sub;
          n = k;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const Complex z{0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)};
    const double res = std::abs(d(z));
    if (res > tol)
      throw NumericalError(fmt::format("eigenvalue refinement did not converge; bracketing rectangle {} (|D| = {:.3g})",
                                       rect_text(r), res));
    return Eigenvalue{z, res, n};
  }

  static std::array<Rect, 4> split4(const Rect& r) {
    const double xm = 0.5 * (r.re_lo + r.re_hi), ym = 0.5 * (r.im_lo + r.im_hi);
    return {Rect{r.re_lo, xm, r.im_lo, ym}, Rect{xm, r.re_hi, r.im_lo, ym}, Rect{r.re_lo, xm, ym, r.im_hi},
            Rect{xm, r.re_hi, ym, r.im_hi}};
  }

  /// Two halves along the longer side; the cut is nudged off zeros lying on it.
  std::pair<std::pair<Rect, int>, std::pair<Rect, int>> bisect(const Rect& r) {
    const bool vertical_cut = (r.re_hi - r.re_lo) >= (r.im_hi - r.im_lo);
    for (double frac : {0.5, 0.47, 0.53, 0.41, 0.59, 0.35, 0.65}) {
      Rect a = r, b = r;
      if (vertical_cut) {
        a.re_hi = b.re_lo = r.re_lo + frac * (r.re_hi - r.re_lo);
      } else {
        a.im_hi = b.im_lo = r.im_lo + frac * (r.im_hi - r.im_lo);
      }
      try {
        const int na = counter.winding(a);
        const int nb = counter.winding(b);
        return {{a, na}, {b, nb}};
      } catch (const NumericalError&) {
        continue;
      }
    }
    throw NumericalError("could not place a zero-free cut through " + rect_text(r));
  }

  void process(const Rect& r, int n, int depth) {
    if (n <= 0) return;
    const double size = std::max(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
    if (n == 1) {
      if (auto e = newton(r)) {
        out.push_back(*e);
        return;
      }
    }
    if (depth > 30 || size < 1e-6 * (1.0 + std::abs(Complex{r.re_lo, r.im_lo}))) {
      if (n == 1) {
        out.push_back(shrink(r, n));
      } else {
        // A cluster no cut can separate: report with winding multiplicity.
        Eigenvalue e = shrink(r, n);
        e.multiplicity = n;
        out.push_back(e);
      }
      return;
    }
    const auto [a, b] = bisect(r);
    if (a.second + b.second != n)
      throw NumericalError(fmt::format("winding numbers of halves of {} do not add up", rect_text(r)));
    process(a.first, a.second, depth + 1);
    process(b.first, b.second, depth + 1);
  }
};

}  // namespace

bool Rect::contains(Complex z, double margin) const {
  return z.real() >= re_lo - margin && z.real() <= re_hi + margin && z.imag() >= im_lo - margin &&
         z.imag() <= im_hi + margin;
}

const char* to_string(Method m) { return m == Method::contour ? "contour" : "axis_scan"; }

Complex dispersion(const Potential& q, Complex lambda, double tol, const weyl::Options& opt) {
  const auto plus = weyl::big_M(q, Side::plus, lambda, tol, opt);
  const auto minus = weyl::big_M(q, Side::minus, lambda, tol, opt);
  return plus.value - minus.value;
}

int count_nonreal(const Potential& q, const Rect& rect, double tol, const ContourOptions& opt) {
  validate_rect(rect, opt);
  DispersionCache d(q, tol, opt.weyl);
  ContourCounter counter(d, opt);
  return counter.winding(rect);
}

EigenvalueSet locate_nonreal(const Potential& q, const Rect& rect, double tol, const ContourOptions& opt) {
  validate_rect(rect, opt);
  // |D - D_exact| <= 2 m_tol; keep that well under the residual target.
  DispersionCache d(q, 0.2 * tol, opt.weyl);
  ContourCounter counter(d, opt);
  EigenvalueSet set;
  set.region = rect;
  set.method = Method::contour;
  Locator loc{d, counter, tol, set.points};
  loc.process(rect, counter.winding(rect), 0);
  std::sort(set.points.begin(), set.points.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    return a.value.imag() != b.value.imag() ? a.value.imag() < b.value.imag() : a.value.real() < b.value.real();
  });
  const std::size_t n = set.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    Eigenvalue c = set.points[i];
    c.value = std::conj(c.value);
    set.points.push_back(c);
  }
  return set;
}

std::vector<double> axis_scan(const Potential& q, double eps_lo, double eps_hi, int n_grid, double tol,
                              const weyl::Options& opt) {
  if (!(eps_lo > 0.0) || !(eps_lo < eps_hi)) throw ConfigError("axis scan needs 0 < eps_lo < eps_hi");
  if (n_grid < 2) throw ConfigError("axis scan needs at least two grid points");
  if (!is_even(q)) throw ConfigError("axis scan requires an even potential; '" + q.description() + "' is not");
  auto re_m = [&](double eps) { return weyl::big_M(q, Side::plus, Complex{0.0, eps}, tol, opt).value.real(); };

  std::vector<double> roots;
  const double ratio = std::pow(eps_hi / eps_lo, 1.0 / (n_grid - 1));
  double e_prev = eps_lo;
  double f_prev = re_m(e_prev);
  for (int i = 1; i < n_grid; ++i) {
    const double e = i == n_grid - 1 ? eps_hi : eps_lo * std::pow(ratio, i);
    const double f = re_m(e);
    if (f_prev == 0.0) {
      roots.push_back(e_prev);
    } else if ((f_prev < 0.0) != (f < 0.0) && f != 0.0) {
      double lo = e_prev, hi = e, flo = f_prev;
      while (hi - lo > 1e-8 * std::min(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = re_m(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    e_prev = e;
    f_prev = f;
  }
  if (f_prev == 0.0) roots.push_back(e_prev);
  // Descending, matching the natural indexing of construction zero sequences.
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

bool closed_under_conjugation(const EigenvalueSet& set, double tol) {
  for (const auto& p : set.points) {
    const Complex target = std::conj(p.value);
    const bool found = std::any_of(set.points.begin(), set.points.end(), [&](const Eigenvalue& o) {
      return std::abs(o.value - target) <= tol * (1.0 + std::abs(target)) && o.multiplicity == p.multiplicity;
    });
    if (!found) return false;
  }
  return true;
}

}  // namespace indefsl::spectrum
