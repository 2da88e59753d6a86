#include "indefsl/classify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "indefsl/error.hpp"
#include "indefsl/ode.hpp"

namespace indefsl::classify {

namespace {

using sets::inf;

constexpr double kQuarter = 0.25;
constexpr double kThresholdMargin = 1e-3;

/// Sampled x²(q - c) far out on the half line (plus orientation).
BoundStateCount count_from_samples(const Potential& h, double c) {
  double lo = inf, hi = -inf;
  for (double x : {1e3, 3e3, 1e4, 3e4, 1e5}) {
    const double v = x * x * (h(x) - c);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  BoundStateCount n;
  if (lo > -kQuarter + kThresholdMargin) {
    n.rule = fmt::format("sampled x²(q-c) >= {:.4g} > -1/4: finitely many", lo);
  } else if (hi < -kQuarter - kThresholdMargin) {
    n.infinite = true;
    n.rule = fmt::format("sampled x²(q-c) <= {:.4g} < -1/4: infinitely many", hi);
  } else {
    throw ConfigError(fmt::format(
        "sampled x²(q-c) in [{:.4g}, {:.4g}] is too close to -1/4 to decide; tag the tail as power_decay", lo, hi));
  }
  return n;
}

BoundStateCount count_from_power(const tail::PowerDecay& t) {
  BoundStateCount n;
  if (t.alpha < 2.0) {
    n.infinite = t.coefficient < 0.0;
    n.rule = fmt::format("|x|^-{} tail with coefficient {}: {}", t.alpha, t.coefficient,
                         n.infinite ? "infinitely many" : "finitely many");
  } else if (t.alpha > 2.0) {
    n.rule = fmt::format("|x|^-{} tail decays faster than x^-2: finitely many", t.alpha);
  } else if (t.coefficient > -kQuarter) {
    n.rule = fmt::format("x²q -> {} > -1/4: finitely many", t.coefficient);
  } else if (t.coefficient < -kQuarter) {
    n.infinite = true;
    n.rule = fmt::format("x²q -> {} < -1/4: infinitely many", t.coefficient);
  } else {
    throw ConfigError("x²q -> -1/4 exactly is the borderline case; the count is not decided by the tail");
  }
  return n;
}

/// Lowest Neumann eigenvalues of -d²/dx² + h on [0, X] below `top`, by
/// bisection on the oscillation count.
std::vector<double> truncated_eigenvalues(const Potential& h, double floor, double top, double X, int take,
                                          double tol, int& total) {
  auto count = [&](double lam) { return ode::oscillation_count(h, Side::plus, lam, X, tol); };
  total = count(top);
  const int n = std::min(total, take);
  std::vector<double> ev;
  double lo = floor;
  for (int j = 0; j < n; ++j) {
    double a = lo, b = top;
    while (b - a > 1e-9 * std::max(1.0, std::fabs(b))) {
      const double mid = 0.5 * (a + b);
      if (count(mid) >= j + 1)
        b = mid;
      else
        a = mid;
    }
    ev.push_back(0.5 * (a + b));
    lo = a;
  }
  return ev;
}

double sampled_min(const Potential& h, double X) {
  double m = inf;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) m = std::min(m, h(X * i / n));
  return m;
}

struct Discrete {
  std::vector<double> values;
  int total = 0;
  bool converged = false;
  double X = 0.0;
};

/// X-doubling until the lowest eigenvalues settle. `top` is the essential
/// edge (or nullopt for purely discrete spectrum).
Discrete discrete_spectrum(const Potential& h, std::optional<double> edge, const ModelOptions& opt) {
  Discrete prev;
  bool have_prev = false;
  for (double X = opt.X_start; X <= opt.X_max; X *= 2.0) {
    const double floor = sampled_min(h, X) - 1.0;
    double top;
    if (edge) {
      top = *edge - 1e-9 * std::max(1.0, std::fabs(*edge));
      if (floor >= top) return {{}, 0, true, X};
    } else {
      // Raise the ceiling until enough eigenvalues sit below it.
      top = floor + 2.0;
      for (int it = 0; it < 60 && ode::oscillation_count(h, Side::plus, top, X, opt.tol) < opt.max_eigenvalues; ++it)
        top = floor + 2.0 * (top - floor);
    }
    Discrete cur;
    cur.X = X;
    cur.values = truncated_eigenvalues(h, floor, top, X, opt.max_eigenvalues, opt.tol, cur.total);
    cur.total = std::min(cur.total, opt.count_cap);
    if (have_prev) {
      const std::size_t k = std::min(prev.values.size(), cur.values.size());
      double move = 0.0;
      for (std::size_t i = 0; i < k; ++i) move = std::max(move, std::fabs(prev.values[i] - cur.values[i]));
      const bool same_size = prev.values.size() == cur.values.size();
      if (move < opt.move_tol && same_size) {
        cur.converged = true;
        return cur;
      }
    }
    prev = cur;
    have_prev = true;
  }
  return prev;
}

const char* tag_name(const TailClass& t) {
  switch (t.index()) {
    case 1: return "constant_limit";
    case 2: return "decaying_summable";
    case 3: return "power_decay";
    case 4: return "molchanov_growth";
    case 5: return "titchmarsh_decline";
    default: return "none";
  }
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::definitizable: return "definitizable";
    case Verdict::definitizable_over: return "definitizable_over";
    case Verdict::nowhere_definitizable: return "nowhere_definitizable";
  }
  return "?";
}

HalfLineSpectrumModel half_line_model(const Potential& q, Side side, const ModelOptions& opt) {
  const TailClass& tag = q.tail_class(side);
  if (!has_tag(tag))
    throw ConfigError(fmt::format("class annotation required for the {} tail of '{}'",
                                  side == Side::plus ? "+inf" : "-inf", q.description()));
  if (auto why = tail_consistency(q, side); !why.empty())
    throw ConfigError(fmt::format("tail tag {} on the {} side is inconsistent with samples: {}", indefsl::to_string(tag),
                                  indefsl::to_string(side), why));

  // Work with L0 = -d²/dx² + h on (0, inf) and negate at the end for A0-.
  const Potential h = side == Side::plus ? q : q.reflected();
  HalfLineSpectrumModel m;
  m.side = side;
  sets::SpectralSet s;
  std::optional<double> edge;
  BoundStateCount n;
  bool discrete_only = false;

  if (const auto* c = std::get_if<tail::ConstantLimit>(&tag)) {
    edge = c->c;
    n = count_from_samples(h, c->c);
    m.provenance = fmt::format("constant_limit: essential spectrum [{}, ∞)", c->c);
  } else if (std::holds_alternative<tail::DecayingSummable>(tag)) {
    edge = 0.0;
    n = count_from_samples(h, 0.0);
    m.provenance = "decaying_summable: essential spectrum [0, ∞)";
  } else if (const auto* p = std::get_if<tail::PowerDecay>(&tag)) {
    edge = 0.0;
    n = count_from_power(*p);
    m.provenance = "power_decay: essential spectrum [0, ∞)";
  } else if (std::holds_alternative<tail::MolchanovGrowth>(tag)) {
    discrete_only = true;
    m.provenance = "molchanov_growth: discrete spectrum, bounded below";
  } else {
    s.intervals.push_back(sets::closed(-inf, inf));
    m.provenance = "titchmarsh_decline: spectrum is all of R";
    n.rule = "not applicable: essential spectrum is R";
  }

  if (edge || discrete_only) {
    const Discrete d = discrete_spectrum(h, edge, opt);
    if (!d.converged)
      m.notes.push_back(fmt::format("lowest eigenvalues not settled to {} at X = {}", opt.move_tol, d.X));
    m.discrete = d.values;
    s.points = d.values;
    if (edge) {
      s.intervals.push_back(sets::closed(*edge, inf));
      if (n.infinite) {
        s.clusters.push_back({*edge, sets::Approach::from_below});
      } else {
        n.count = d.total;
        if (d.total >= opt.count_cap) m.notes.push_back("bound-state count reached the cap");
      }
      m.semibounded = {Bound::below, d.values.empty() ? *edge : d.values.front()};
    } else {
      s.clusters.push_back({inf, sets::Approach::from_below});
      n.rule = "discrete spectrum accumulating at +∞";
      n.count = static_cast<int>(std::count_if(d.values.begin(), d.values.end(), [](double v) { return v < 0.0; }));
      if (d.values.empty()) throw NumericalError("no eigenvalues found for a purely discrete spectrum");
      m.semibounded = {Bound::below, d.values.front()};
    }
  }
  m.n_bound = n;

  if (side == Side::minus) {
    s = s.negated();
    for (auto& v : m.discrete) v = -v;
    if (m.semibounded.kind == Bound::below) m.semibounded = {Bound::above, -m.semibounded.value};
  }
  s.validate();
  m.spectrum = s;
  m.essential = s.intervals;
  return m;
}

sets::ExtendedRealSet compute_SA(const sets::SpectralSet& plus, const sets::SpectralSet& minus) {
  const auto left = sets::sigma_left(plus).intersect(sets::sigma_left(minus));
  const auto right = sets::sigma_right(plus).intersect(sets::sigma_right(minus));
  return left.unite(right);
}

std::string describe_omega(const sets::ExtendedRealSet& S_A) {
  if (S_A.empty()) return "ℂ̄";
  const sets::ExtendedRealSet finite(S_A.parts(), false);
  if (S_A.has_infinity()) return finite.empty() ? "ℂ" : "ℂ \\ (" + finite.to_string() + ")";
  if (finite.parts().size() == 1) return "ℂ̄ \\ " + finite.to_string();
  return "ℂ̄ \\ (" + finite.to_string() + ")";
}

DefinitizabilityReport assemble(HalfLineSpectrumModel plus, HalfLineSpectrumModel minus) {
  DefinitizabilityReport r;
  r.S_A = compute_SA(plus.spectrum, minus.spectrum);
  r.omega_real = r.S_A.complement();
  r.omega_description = describe_omega(r.S_A);
  r.separation = sets::separation_check(plus.spectrum, minus.spectrum);
  if (r.separation.separable != r.S_A.empty())
    throw InvariantError(fmt::format("separation check ({}) disagrees with S_A = {}",
                                     r.separation.separable ? "separable" : "not separable", r.S_A.to_string()));
  if (r.separation.separable)
    r.verdict = Verdict::definitizable;
  else if (r.omega_real.empty())
    r.verdict = Verdict::nowhere_definitizable;
  else
    r.verdict = Verdict::definitizable_over;

  r.semibounded_below = plus.semibounded.kind == Bound::below && minus.semibounded.kind == Bound::above;
  if (r.semibounded_below == r.S_A.has_infinity())
    throw InvariantError(fmt::format("L is {}semibounded below but S_A = {}", r.semibounded_below ? "" : "not ",
                                     r.S_A.to_string()));
  r.decomposition_available = r.semibounded_below;

  const sets::ExtendedRealSet common(plus.spectrum.closure().intersect(minus.spectrum.closure()).parts(), false);
  r.critical_point_candidates = common.unite({{}, !r.S_A.has_infinity()}).minus(r.S_A);

  if (!r.S_A.empty()) {
    r.notes.push_back(fmt::format("not definitizable; greatest domain of definitizability is {}", r.omega_description));
    if (r.separation.witness_at_infinity)
      r.notes.push_back("separation fails at ∞: " + r.separation.witness);
    else if (r.separation.witness_point)
      r.notes.push_back(fmt::format("separation fails at {}: {}", *r.separation.witness_point, r.separation.witness));
  }
  if (r.verdict == Verdict::nowhere_definitizable)
    r.notes.emplace_back("both essential spectra are R: no domain meeting the extended real line");
  if (r.S_A.has_infinity())
    r.notes.emplace_back("L is not semibounded below: ∞ is excluded from every domain of definitizability");
  else
    r.notes.emplace_back("L is semibounded below: A admits the decomposition into a part near ∞ and a bounded part");
  r.plus = std::move(plus);
  r.minus = std::move(minus);
  return r;
}

DefinitizabilityReport classify(const Potential& q, const ModelOptions& opt) {
  auto plus = half_line_model(q, Side::plus, opt);
  auto minus = half_line_model(q, Side::minus, opt);
  // Summable-type tails on both sides: the three-way case split applies.
  auto summable = [](const TailClass& t) {
    if (const auto* c = std::get_if<tail::ConstantLimit>(&t)) return c->c >= 0.0;
    return std::holds_alternative<tail::DecayingSummable>(t) || std::holds_alternative<tail::PowerDecay>(t);
  };
  const bool both_summable = summable(q.right_class()) && summable(q.left_class());
  std::optional<std::string> which;
  if (both_summable) {
    const double min_plus = plus.spectrum.intervals.front().lo;
    const double max_minus = minus.spectrum.intervals.front().hi;
    const bool infinite = plus.n_bound.infinite || minus.n_bound.infinite;
    if (min_plus > 0.0 || max_minus < 0.0)
      which = "i";
    else
      which = infinite ? "iii" : "ii";
  }
  auto r = assemble(std::move(plus), std::move(minus));
  r.notes.insert(r.notes.begin(), fmt::format("tails: -inf {} / +inf {}", tag_name(q.left_class()),
                                              tag_name(q.right_class())));
  if (which) {
    r.summable_case = which;
    const bool expect_def = *which != "iii";
    if (expect_def != (r.verdict == Verdict::definitizable))
      throw InvariantError("summable-class case " + *which + " contradicts the separation verdict");
    if (*which == "i")
      r.notes.emplace_back("summable case (i): definitizable, ∞ is a critical point");
    else if (*which == "ii")
      r.notes.emplace_back("summable case (ii): definitizable, 0 and ∞ are critical points");
    else
      r.notes.emplace_back("summable case (iii): infinitely many bound states; 0 is the only possible accumulation "
                           "point of non-real spectrum");
  }
  return r;
}

}  // namespace indefsl::classify
