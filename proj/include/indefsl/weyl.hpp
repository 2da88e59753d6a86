#pragma once

// Titchmarsh–Weyl coefficients.
//
//   m_+(λ): s_λ - m_+ c_λ is square integrable on (0, +inf)
//   m_-(λ): s_λ + m_- c_λ is square integrable on (-inf, 0)
//   M_±(λ) = ± m_±(±λ)
//
// The limit point is bracketed by the Weyl disk of the problem truncated at X:
// the image of all real boundary conditions at X under the transfer matrix.

#include <complex>

#include "indefsl/ode.hpp"
#include "indefsl/potential.hpp"

namespace indefsl::weyl {

using Complex = std::complex<double>;

enum class Kind { little_m, big_M };
[[nodiscard]] const char* to_string(Kind k);

struct WeylDisk {
  Complex center;
  double radius = 0.0;
  double X = 0.0;
};

struct MValue {
  Complex lambda;
  Complex value;
  double error_bound = 0.0;  // radius of the terminating disk
  Side side = Side::plus;
  Kind kind = Kind::little_m;
  double X = 0.0;  // truncation length at termination
};

struct Options {
  double integrator_tol = ode::default_tol;
  double X_start = 8.0;
  double X_max = 16384.0;  // 2^14
};

/// Disk for the half-line problem (plus orientation) from a propagated state.
[[nodiscard]] WeylDisk disk_from_propagator(const ode::FundamentalPropagator& prop);

[[nodiscard]] WeylDisk weyl_disk(const Potential& q, Side side, Complex lambda, double X,
                                 double integrator_tol = ode::default_tol);

/// X-doubling from X_start until the disk radius is at most tol.
[[nodiscard]] MValue m_coefficient(const Potential& q, Side side, Complex lambda, double tol, const Options& opt = {});

[[nodiscard]] MValue big_M(const Potential& q, Side side, Complex lambda, double tol, const Options& opt = {});

/// Relative deviation between the L2 norm of the Weyl solution psi_λ^± (by
/// quadrature along the integration) and Im M_±(λ) / Im λ.
[[nodiscard]] double weyl_solution_norm_check(const Potential& q, Side side, Complex lambda, double tol,
                                              const Options& opt = {});

}  // namespace indefsl::weyl
