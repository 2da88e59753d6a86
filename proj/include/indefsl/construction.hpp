#pragma once

// Greedy construction of a spectral measure
//
//   dΣ(t) = 1/(π√t) dt on (1, inf)  +  Σ_k h_k δ(t - s_k),  h_k = 2^(1-k)/π,
//
// whose transform r(ε) = ∫ t/(t² + ε²) dΣ(t) changes sign between
// consecutive atom magnitudes, so that it has zeros ε_k -> 0.

#include <span>
#include <string>
#include <vector>

#include "indefsl/classify.hpp"
#include "indefsl/sets.hpp"

namespace indefsl::construction {

struct Atom {
  double s = 0.0;
  double h = 0.0;
};

struct StepRecord {
  int k = 0;
  double sup_sampled = 0.0;  // max |r_{k-1}| over the grid
  double sup_bound = 0.0;    // rigorous upper bound for sup |r_{k-1}|
  double margin = 0.0;       // |r_k(|s_k|)|
  double b = 0.0;            // later atoms lie in (-b, b)
};

struct StepDensityMeasure {
  std::vector<Atom> atoms;
  std::vector<StepRecord> aux;
  /// Mass sum_{k>K} h_k of the atoms not built; they lie in (-b_K, b_K).
  double tail_mass = 2.0 / 3.141592653589793238462643383279502884;

  [[nodiscard]] std::size_t size() const noexcept { return atoms.size(); }
  [[nodiscard]] double b_last() const { return aux.empty() ? 1.0 : aux.back().b; }
  /// First n atoms, with tail_mass and aux adjusted.
  [[nodiscard]] StepDensityMeasure prefix(std::size_t n) const;
};

/// h_k = 2^(1-k)/π.
[[nodiscard]] double atom_weight(int k);
/// sum_{j>k} h_j.
[[nodiscard]] double tail_weight(int k);

/// (1/π) ∫_1^inf √t/(t²+ε²) dt, closed form (series for small ε).
[[nodiscard]] double r_cont(double eps);
/// Same integral by adaptive quadrature; used for cross-checks.
[[nodiscard]] double r_cont_quadrature(double eps, double tol = 1e-12);

/// r(ε) for the atoms present in the measure. eps >= 0.
[[nodiscard]] double r_eval(const StepDensityMeasure& m, double eps);
/// Vectorised r over many ε values.
void r_eval(const StepDensityMeasure& m, std::span<const double> eps, std::span<double> out);

struct SupGrid {
  int uniform_cells = 50000;  // on [0, E_max]
  int log_cells = 50000;      // log-spaced near the smallest atom
  double E_max = 10.0;
};

struct SupEstimate {
  double sampled = 0.0;  // max over grid; grows with refinement
  double bound = 0.0;    // >= true sup over [0, inf)
  std::size_t points = 0;
};

[[nodiscard]] SupEstimate sup_estimate(const StepDensityMeasure& prefix, const SupGrid& grid = {});

struct AtomChoice {
  Atom atom;
  double margin = 0.0;
  double b = 0.0;
};

/// Picks s_k (midpoint of the admissible interval) and b_k. `k` = prefix.size() + 1.
[[nodiscard]] AtomChoice choose_next_atom(const StepDensityMeasure& prefix, double sup_prev, double b_prev);

struct SignCheck {
  int k = 0;
  double eps = 0.0;                 // |s_k|
  double value = 0.0;               // r_K(|s_k|) with all built atoms
  double tail_bound = 0.0;          // bound on the unbuilt atoms' contribution
  bool ok = false;
};

/// Sign of r(|s_k|) must be (-1)^k, robust to the unbuilt tail.
[[nodiscard]] std::vector<SignCheck> verify_sign_pattern(const StepDensityMeasure& m);

/// Returns a measure with K atoms. Throws InvariantError if the sign pattern fails.
[[nodiscard]] StepDensityMeasure build_measure(int K, const SupGrid& grid = {});

/// Σ-mass of (-inf, s), including the unbuilt tail when s >= b_K.
[[nodiscard]] double cumulative_mass(const StepDensityMeasure& m, double s);

struct ZeroSequence {
  std::vector<double> eps;
  std::vector<double> residual;
  std::vector<std::pair<double, double>> brackets;  // (|s_k|, |s_{k-1}|)
};

/// One zero of r per bracket (|s_k|, |s_{k-1}|), k = 2..K.
[[nodiscard]] ZeroSequence find_zero_sequence(const StepDensityMeasure& m);

struct Clause {
  std::string id;  // "a".."d"
  bool passed = false;
  std::string statement;
  std::string detail;
};

struct Certificate {
  bool valid = false;
  std::vector<Clause> clauses;
  sets::ExtendedRealSet S_A;
  std::string omega_description;
};

/// Half-line model spectra ±({s_k} ∪ [1, inf)) with symbolic accumulation at 0.
[[nodiscard]] sets::SpectralSet model_spectrum(const StepDensityMeasure& m);

[[nodiscard]] Certificate certify_theorem(const StepDensityMeasure& m, const ZeroSequence& z);

}  // namespace indefsl::construction
