#pragma once

// Definitizability of A = sgn(x)(-d²/dx² + q) from the spectra of the
// half-line operators A0+ (on R+) and A0- (on R-, carrying the minus sign),
// both with a Neumann condition at 0.

#include <optional>
#include <string>
#include <vector>

#include "indefsl/potential.hpp"
#include "indefsl/sets.hpp"

namespace indefsl::classify {

/// Number of discrete eigenvalues beyond the essential edge.
struct BoundStateCount {
  bool infinite = false;
  int count = 0;  // meaningful when !infinite
  std::string rule;
};

enum class Bound { below, above, none };

struct Semibound {
  Bound kind = Bound::none;
  double value = 0.0;  // eta_0 for below, -eta_0 for above
};

struct HalfLineSpectrumModel {
  Side side = Side::plus;
  /// sigma(A0±) as symbolic set. For the minus side this is already negated.
  sets::SpectralSet spectrum;
  std::vector<sets::Interval> essential;
  std::string provenance;  // class rule used
  std::vector<double> discrete;
  BoundStateCount n_bound;
  Semibound semibounded;
  std::vector<std::string> notes;
};

struct ModelOptions {
  double tol = 1e-10;
  int max_eigenvalues = 10;
  int count_cap = 64;
  double move_tol = 1e-6;
  double X_start = 16.0;
  double X_max = 2048.0;
};

[[nodiscard]] HalfLineSpectrumModel half_line_model(const Potential& q, Side side, const ModelOptions& opt = {});

enum class Verdict { definitizable, definitizable_over, nowhere_definitizable };
[[nodiscard]] const char* to_string(Verdict v);

struct DefinitizabilityReport {
  Verdict verdict = Verdict::definitizable;
  sets::ExtendedRealSet S_A;
  /// Omega_A intersected with R-bar; Omega_A itself is C-bar minus S_A.
  sets::ExtendedRealSet omega_real;
  std::string omega_description;
  sets::ExtendedRealSet critical_point_candidates;
  bool decomposition_available = false;
  bool semibounded_below = false;  // L = -d²/dx² + q
  sets::Separation separation;
  HalfLineSpectrumModel plus;
  HalfLineSpectrumModel minus;
  std::optional<std::string> summable_case;  // "i", "ii", "iii"
  std::vector<std::string> notes;
};

/// S_A from the definition via sigma-left / sigma-right of both half-line spectra.
[[nodiscard]] sets::ExtendedRealSet compute_SA(const sets::SpectralSet& plus, const sets::SpectralSet& minus);

/// "ℂ̄", "ℂ", "ℂ̄ \ {0}", ...
[[nodiscard]] std::string describe_omega(const sets::ExtendedRealSet& S_A);

/// Report from two already-built spectra. Throws InvariantError if the
/// separation check and S_A disagree.
[[nodiscard]] DefinitizabilityReport assemble(HalfLineSpectrumModel plus, HalfLineSpectrumModel minus);

[[nodiscard]] DefinitizabilityReport classify(const Potential& q, const ModelOptions& opt = {});

}  // namespace indefsl::classify
