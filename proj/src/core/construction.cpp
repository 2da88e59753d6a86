#include "indefsl/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "indefsl/error.hpp"
#include "indefsl/kernels.hpp"

namespace indefsl::construction {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAtoms = 20;

int expected_sign(int k) { return k % 2 == 1 ? -1 : 1; }

int sign(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

/// Antiderivative of v²/(v⁴+1) vanishing at 0.
double G(double v) {
  const double r2 = std::numbers::sqrt2;
  const double log_part = 0.5 * std::log((v * v - r2 * v + 1.0) / (v * v + r2 * v + 1.0));
  return (log_part + std::atan(r2 * v + 1.0) + std::atan(r2 * v - 1.0)) / (2.0 * r2);
}

void split_atoms(const StepDensityMeasure& m, std::vector<double>& pos_shift, std::vector<double>& pos_w,
                 std::vector<double>& neg_shift, std::vector<double>& neg_w) {
  for (const auto& a : m.atoms) {
    if (a.s > 0.0) {
      pos_shift.push_back(a.s * a.s);
      pos_w.push_back(a.s * a.h);
    } else {
      neg_shift.push_back(a.s * a.s);
      neg_w.push_back(-a.s * a.h);
    }
  }
}

std::vector<double> sup_grid_points(const StepDensityMeasure& m, const SupGrid& g) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(g.uniform_cells + g.log_cells + 2));
  for (int i = 0; i <= g.uniform_cells; ++i) pts.push_back(g.E_max * i / g.uniform_cells);
  double smallest = 1.0;
  for (const auto& a : m.atoms) smallest = std::min(smallest, std::fabs(a.s));
  const double lo = std::log10(1e-3 * smallest), hi = 0.0;
  for (int j = 0; j <= g.log_cells; ++j) pts.push_back(std::pow(10.0, lo + (hi - lo) * j / g.log_cells));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

StepDensityMeasure StepDensityMeasure::prefix(std::size_t n) const {
  if (n > atoms.size()) throw std::out_of_range("prefix longer than measure");
  StepDensityMeasure p;
  p.atoms.assign(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(n));
  p.aux.assign(aux.begin(), aux.begin() + static_cast<std::ptrdiff_t>(std::min(n, aux.size())));
  p.tail_mass = tail_weight(static_cast<int>(n));
  return p;
}

double atom_weight(int k) { return std::ldexp(1.0, 1 - k) / kPi; }

double tail_weight(int k) { return std::ldexp(1.0, 1 - k) / kPi; }

double r_cont(double eps) {
  if (!(eps >= 0.0)) throw ConfigError("r(ε) needs ε >= 0");
  if (eps < 0.5) {
    // ∫_1^inf u²/(u⁴+ε²) du = Σ (-ε²)^n / (4n+1)
    const double e2 = eps * eps;
    double sum = 0.0, pw = 1.0;
    for (int n = 0; n < 200; ++n) {
      const double term = pw / (4.0 * n + 1.0);
      sum += term;
      if (std::fabs(term) < 1e-18) break;
      pw *= -e2;
    }
    return 2.0 / kPi * sum;
  }
  const double a = std::sqrt(eps);
  const double g_inf = kPi / (2.0 * std::numbers::sqrt2);
  return 2.0 / kPi * (g_inf - G(1.0 / a)) / a;
}

double r_cont_quadrature(double eps, double tol) {
  if (!(eps >= 0.0)) throw ConfigError("r(ε) needs ε >= 0");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double e2 = eps * eps;
  auto f = [e2](double u) { return u * u / (u * u * u * u + e2); };
  const double v = integrator.integrate(f, 1.0, std::numeric_limits<double>::infinity(), tol);
  return 2.0 / kPi * v;
}

void r_eval(const StepDensityMeasure& m, std::span<const double> eps, std::span<double> out) {
  if (eps.size() != out.size()) throw std::invalid_argument("r_eval: size mismatch");
  std::vector<double> eps_sq(eps.size()), shift, weight;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] >= 0.0)) throw ConfigError("r(ε) needs ε >= 0");
    eps_sq[i] = eps[i] * eps[i];
  }
  for (const auto& a : m.atoms) {
    shift.push_back(a.s * a.s);
    weight.push_back(a.s * a.h);
  }
  kernels::stieltjes_sum(eps_sq, shift, weight, out);
  for (std::size_t i = 0; i < eps.size(); ++i) out[i] += r_cont(eps[i]);
}

double r_eval(const StepDensityMeasure& m, double eps) {
  double out = 0.0;
  r_eval(m, std::span<const double>(&eps, 1), std::span<double>(&out, 1));
  return out;
}

SupEstimate sup_estimate(const StepDensityMeasure& prefix, const SupGrid& grid) {
  if (grid.uniform_cells < 1 || grid.log_cells < 1 || !(grid.E_max > 1.0))
    throw ConfigError("SUP grid needs at least one cell and E_max > 1");
  for (const auto& a : prefix.atoms)
    if (a.s == 0.0) throw ConfigError("atoms at 0 are not allowed");
  const auto pts = sup_grid_points(prefix, grid);
  std::vector<double> eps_sq(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) eps_sq[i] = pts[i] * pts[i];

  // r = P - N with P, N >= 0 both nonincreasing in ε.
  std::vector<double> ps, pw, ns, nw;
  split_atoms(prefix, ps, pw, ns, nw);
  std::vector<double> P(pts.size()), N(pts.size());
  kernels::stieltjes_sum(eps_sq, ps, pw, P);
  kernels::stieltjes_sum(eps_sq, ns, nw, N);
  for (std::size_t i = 0; i < pts.size(); ++i) P[i] += r_cont(pts[i]);

  SupEstimate est;
  est.points = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) est.sampled = std::max(est.sampled, std::fabs(P[i] - N[i]));
  double bound = std::max(P.back(), N.back());  // tail beyond E_max
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    bound = std::max({bound, std::fabs(P[i + 1] - N[i]), std::fabs(P[i] - N[i + 1])});
  est.bound = bound;
  return est;
}

AtomChoice choose_next_atom(const StepDensityMeasure& prefix, double sup_prev, double b_prev) {
  const int k = static_cast<int>(prefix.size()) + 1;
  if (!(sup_prev >= 0.0) || !(b_prev > 0.0)) throw ConfigError("choose_next_atom: need SUP >= 0 and b > 0");
  AtomChoice c;
  c.atom.h = atom_weight(k);
  // Admissible magnitudes: (0, min(b_{k-1}, h_k / (2 (SUP_{k-1} + 1)))); take the midpoint.
  const double mag = 0.5 * std::min(b_prev, c.atom.h / (2.0 * (sup_prev + 1.0)));
  c.atom.s = expected_sign(k) * mag;
  StepDensityMeasure with = prefix;
  with.atoms.push_back(c.atom);
  const double r = r_eval(with, mag);
  if (sign(r) != expected_sign(k) || !(std::fabs(r) > 1.0))
    throw InvariantError(fmt::format("atom {} gives r(|s_k|) = {:.6g}; expected sign {} with magnitude > 1", k, r,
                                     expected_sign(k)));
  c.margin = std::fabs(r);
  // All later atoms together move r(|s_k|) by at most b_k H_k / s_k².
  c.b = 0.5 * std::min(0.5 * mag, c.margin * mag * mag / tail_weight(k));
  return c;
}

std::vector<SignCheck> verify_sign_pattern(const StepDensityMeasure& m) {
  std::vector<SignCheck> out;
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    SignCheck c;
    c.k = static_cast<int>(i) + 1;
    c.eps = std::fabs(m.atoms[i].s);
    c.value = r_eval(m, c.eps);
    c.tail_bound = m.tail_mass * m.b_last() / (c.eps * c.eps);
    c.ok = sign(c.value) == expected_sign(c.k) && std::fabs(c.value) > c.tail_bound;
    out.push_back(c);
  }
  return out;
}

StepDensityMeasure build_measure(int K, const SupGrid& grid) {
  if (K < 1 || K > kMaxAtoms)
    throw ConfigError(fmt::format("number of atoms must be in [1, {}]; beyond that the atoms underflow", kMaxAtoms));
  StepDensityMeasure m;
  m.tail_mass = tail_weight(0);
  double b_prev = 1.0;
  for (int k = 1; k <= K; ++k) {
    const SupEstimate est = sup_estimate(m, grid);
    const AtomChoice c = choose_next_atom(m, est.bound, b_prev);
    m.atoms.push_back(c.atom);
    m.aux.push_back({k, est.sampled, est.bound, c.margin, c.b});
    m.tail_mass = tail_weight(k);
    b_prev = c.b;
  }
  for (const auto& c : verify_sign_pattern(m)) {
    if (!c.ok)
      throw InvariantError(fmt::format("sign pattern fails at k = {}: r = {:.6g}, tail bound {:.3g}", c.k, c.value,
                                       c.tail_bound));
  }
  return m;
}

double cumulative_mass(const StepDensityMeasure& m, double s) {
  const double b = m.b_last();
  if (s > -b && s < b && m.tail_mass > 0.0)
    throw ConfigError(fmt::format("mass of (-inf, {}) depends on atoms not yet built (they lie in (-{}, {}))", s, b, b));
  double mass = 0.0;
  if (s > 1.0) {
    auto density = [](double t) { return 1.0 / (kPi * std::sqrt(t)); };
    mass += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 1.0, s, 15, 1e-14);
  }
  for (const auto& a : m.atoms)
    if (a.s < s) mass += a.h;
  if (s >= b) mass += m.tail_mass;
  return mass;
}

ZeroSequence find_zero_sequence(const StepDensityMeasure& m) {
  if (m.size() < 2) throw ConfigError("a zero sequence needs at least two atoms");
  ZeroSequence z;
  for (std::size_t i = 1; i < m.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    double lo = std::fabs(m.atoms[i].s), hi = std::fabs(m.atoms[i - 1].s);
    z.brackets.emplace_back(lo, hi);
    const int s_lo = sign(r_eval(m, lo)), s_hi = sign(r_eval(m, hi));
    if (s_lo != expected_sign(k) || s_hi != expected_sign(k - 1))
      throw InvariantError(fmt::format("no sign change of r on ({:.6g}, {:.6g})", lo, hi));

    // Exactly one sign change on a fine log grid inside the bracket.
    const int n = 400;
    std::vector<double> e(n + 1), v(n + 1);
    for (int j = 0; j <= n; ++j) e[j] = lo * std::pow(hi / lo, static_cast<double>(j) / n);
    e.front() = lo;
    e.back() = hi;
    r_eval(m, e, v);
    int changes = 0;
    for (int j = 0; j < n; ++j)
      if (sign(v[j]) != sign(v[j + 1])) ++changes;
    if (changes != 1)
      throw InvariantError(fmt::format("bracket ({:.6g}, {:.6g}) holds {} sign changes of r", lo, hi, changes));

    double a = lo, b = hi, fa = r_eval(m, a), fb = r_eval(m, b);
    for (;;) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = r_eval(m, mid);
      if (fm == 0.0) {
        a = b = mid;
        fa = fb = 0.0;
        break;
      }
      if (sign(fm) == sign(fa)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
        fb = fm;
      }
    }
    const bool take_a = std::fabs(fa) <= std::fabs(fb);
    z.eps.push_back(take_a ? a : b);
    z.residual.push_back(std::fabs(take_a ? fa : fb));
  }
  return z;
}

sets::SpectralSet model_spectrum(const StepDensityMeasure& m) {
  sets::SpectralSet s;
  s.intervals.push_back(sets::closed(1.0, sets::inf));
  for (const auto& a : m.atoms) s.points.push_back(a.s);
  // Odd atoms increase to 0 from below, even atoms decrease to 0 from above.
  s.clusters.push_back({0.0, sets::Approach::from_below});
  s.clusters.push_back({0.0, sets::Approach::from_above});
  return s;
}

Certificate certify_theorem(const StepDensityMeasure& m, const ZeroSequence& z) {
  Certificate cert;
  const std::size_t K = m.size();

  {
    Clause c{"a", true, "supp dΣ = {s_k} ∪ [1, ∞); no mass below -1; mass of (-∞, s) is (2/π)√s for s > 1", ""};
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < K; ++i) {
      const auto& a = m.atoms[i];
      const int k = static_cast<int>(i) + 1;
      if (!(std::fabs(a.s) > 0.0 && std::fabs(a.s) < 1.0)) bad.push_back(fmt::format("s_{} = {} outside (-1,1)\\{{0}}", k, a.s));
      if (a.h != atom_weight(k)) bad.push_back(fmt::format("h_{} = {} is not 2^(1-k)/π", k, a.h));
      if (sign(a.s) != expected_sign(k)) bad.push_back(fmt::format("s_{} has the wrong sign", k));
      if (i > 0 && !(std::fabs(a.s) < 0.5 * std::fabs(m.atoms[i - 1].s)))
        bad.push_back(fmt::format("|s_{}| is not below |s_{}|/2", k, k - 1));
    }
    double worst = 0.0;
    for (double s : {2.0, 4.0, 9.0}) worst = std::max(worst, std::fabs(cumulative_mass(m, s) - 2.0 / kPi * std::sqrt(s)));
    if (worst > 1e-8) bad.push_back(fmt::format("cumulative mass off by {:.3g}", worst));
    if (cumulative_mass(m, -1.0) != 0.0) bad.emplace_back("mass below -1 is not zero");
    c.passed = bad.empty();
    c.detail = c.passed ? fmt::format("{} atoms; max cumulative-mass error {:.3g}", K, worst) : fmt::format("{}", fmt::join(bad, "; "));
    cert.clauses.push_back(c);
  }
  {
    Clause c{"b", true,
             "r(ε_k) = 0 with the inverse-problem hypotheses T1 = -1, T2 = 1, so iε_k are eigenvalues of the "
             "reconstructed even operator",
             ""};
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < z.eps.size(); ++i) {
      const double e = z.eps[i];
      const double d = std::min(1e-9, 1e-2 * e);
      if (!(z.residual[i] <= 1e-10)) bad.push_back(fmt::format("|r(ε_{})| = {:.3g}", i + 2, z.residual[i]));
      if (sign(r_eval(m, e - d)) * sign(r_eval(m, e + d)) >= 0) bad.push_back(fmt::format("no sign change at ε_{}", i + 2));
    }
    if (z.eps.size() + 1 != K) bad.emplace_back("root count is not K - 1");
    c.passed = bad.empty();
    c.detail = c.passed ? fmt::format("{} roots certified by sign change", z.eps.size()) : fmt::format("{}", fmt::join(bad, "; "));
    cert.clauses.push_back(c);
  }
  {
    Clause c{"c", true, "ε_k decreases to 0: ε_K < |s_(K-1)| < |s_1| / 2^(K-2)", ""};
    bool ok = !z.eps.empty();
    for (std::size_t i = 1; i < z.eps.size(); ++i) ok = ok && z.eps[i] < z.eps[i - 1];
    if (ok && K >= 2) {
      const double s_km1 = std::fabs(m.atoms[K - 2].s), s1 = std::fabs(m.atoms[0].s);
      ok = z.eps.back() < s_km1 && (K == 2 ? s_km1 <= s1 : s_km1 < s1 / std::ldexp(1.0, static_cast<int>(K) - 2));
      c.detail = fmt::format("ε_last = {:.6g}, |s_(K-1)| = {:.6g}, |s_1|/2^(K-2) = {:.6g}", z.eps.back(), s_km1,
                             s1 / std::ldexp(1.0, static_cast<int>(K) - 2));
    }
    c.passed = ok;
    cert.clauses.push_back(c);
  }
  {
    Clause c{"d", true, "min σ_ess = 0 on both half lines, so S_A = {0} and the operator is definitizable over ℂ̄ \\ {0}", ""};
    classify::HalfLineSpectrumModel plus, minus;
    plus.side = Side::plus;
    plus.spectrum = model_spectrum(m);
    plus.provenance = "spectral measure support";
    plus.semibounded = {classify::Bound::below, *plus.spectrum.infimum()};
    plus.n_bound = {true, 0, "atoms accumulate at 0"};
    minus.side = Side::minus;
    minus.spectrum = plus.spectrum.negated();
    minus.provenance = "mirror of the plus side (even potential)";
    minus.semibounded = {classify::Bound::above, *minus.spectrum.supremum()};
    minus.n_bound = plus.n_bound;
    plus.essential = plus.spectrum.intervals;
    minus.essential = minus.spectrum.intervals;
    try {
      const auto rep = classify::assemble(plus, minus);
      cert.S_A = rep.S_A;
      cert.omega_description = rep.omega_description;
      const auto ess_plus = plus.spectrum.essential(), ess_minus = minus.spectrum.essential();
      const bool min_zero = ess_plus.parts().front().lo == 0.0 && ess_minus.parts().back().hi == 0.0;
      c.passed = rep.S_A == sets::ExtendedRealSet({sets::point(0.0)}, false) && min_zero;
      c.detail = fmt::format("S_A = {}, Ω_A = {}", rep.S_A.to_string(), rep.omega_description);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    cert.clauses.push_back(c);
  }
  cert.valid = std::all_of(cert.clauses.begin(), cert.clauses.end(), [](const Clause& c) { return c.passed; });
  return cert;
}

}  // namespace indefsl::construction
