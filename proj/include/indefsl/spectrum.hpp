#pragma once

// Non-real eigenvalues of A = sgn(x)(-d²/dx² + q) as zeros of the dispersion
// function D(λ) = M_+(λ) - M_-(λ).

#include <complex>
#include <string>
#include <vector>

#include "indefsl/potential.hpp"
#include "indefsl/weyl.hpp"

namespace indefsl::spectrum {

using Complex = std::complex<double>;

/// Closed rectangle [re_lo, re_hi] x [im_lo, im_hi] lying strictly in one open half plane.
struct Rect {
  double re_lo = -1.0;
  double re_hi = 1.0;
  double im_lo = 0.1;
  double im_hi = 1.0;

  [[nodiscard]] Rect conjugate() const { return {re_lo, re_hi, -im_hi, -im_lo}; }
  [[nodiscard]] bool contains(Complex z, double margin = 0.0) const;
};

enum class Method { contour, axis_scan };
[[nodiscard]] const char* to_string(Method m);

struct Eigenvalue {
  Complex value;
  double residual = 0.0;  // |D(value)|
  int multiplicity = 1;   // winding multiplicity of the isolating rectangle
};

struct EigenvalueSet {
  std::vector<Eigenvalue> points;
  Rect region;
  Method method = Method::contour;
};

struct ContourOptions {
  int samples_per_edge = 24;
  /// |D| below this on the boundary means the boundary passes too close to a zero.
  double boundary_floor = 1e-7;
  /// Minimum distance of rectangles from the real axis.
  double min_distance_from_axis = 1e-3;
  weyl::Options weyl;
};

/// D(λ) = M_+(λ) - M_-(λ); each M is resolved to tol, so |error| <= 2 tol.
[[nodiscard]] Complex dispersion(const Potential& q, Complex lambda, double tol, const weyl::Options& opt = {});

/// Winding number of D around the rectangle boundary (counter-clockwise).
[[nodiscard]] int count_nonreal(const Potential& q, const Rect& rect, double tol, const ContourOptions& opt = {});

/// All zeros in rect, refined to |D| <= tol, with the conjugate zeros of the mirror rectangle appended.
[[nodiscard]] EigenvalueSet locate_nonreal(const Potential& q, const Rect& rect, double tol,
                                           const ContourOptions& opt = {});

/// For even q: roots of ε -> Re M_+(iε) on a geometric grid over [eps_lo, eps_hi],
/// bisected to 1e-8. Each root ε gives the eigenvalue pair ±iε.
[[nodiscard]] std::vector<double> axis_scan(const Potential& q, double eps_lo, double eps_hi, int n_grid,
                                            double tol = 1e-10, const weyl::Options& opt = {});

/// Helper for the conjugation invariant of EigenvalueSet.
[[nodiscard]] bool closed_under_conjugation(const EigenvalueSet& set, double tol);

}  // namespace indefsl::spectrum
