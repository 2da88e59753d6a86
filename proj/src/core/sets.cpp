#include "indefsl/sets.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "indefsl/error.hpp"

namespace indefsl::sets {

namespace {

Interval canonical(Interval i) {
  if (i.lo == -inf) i.lo_closed = false;
  if (i.hi == inf) i.hi_closed = false;
  return i;
}

std::string number(double x) {
  if (x == inf) return "∞";
  if (x == -inf) return "-∞";
  return fmt::format("{}", x);
}

}  // namespace

bool Interval::empty() const {
  if (std::isnan(lo) || std::isnan(hi)) return true;
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed) || std::isinf(lo);
  return false;
}

bool Interval::contains(double x) const {
  if (!std::isfinite(x) || empty()) return false;
  const bool above = x > lo || (x == lo && lo_closed);
  const bool below = x < hi || (x == hi && hi_closed);
  return above && below;
}

Interval closed(double lo, double hi) { return canonical({lo, hi, true, true}); }
Interval open(double lo, double hi) { return canonical({lo, hi, false, false}); }
Interval point(double x) { return {x, x, true, true}; }

ExtendedRealSet::ExtendedRealSet(std::vector<Interval> parts, bool infinity)
    : parts_(std::move(parts)), infinity_(infinity) {
  normalize();
}

ExtendedRealSet ExtendedRealSet::everything() { return {{open(-inf, inf)}, true}; }
ExtendedRealSet ExtendedRealSet::infinity_only() { return {{}, true}; }

void ExtendedRealSet::normalize() {
  std::vector<Interval> v;
  for (auto p : parts_) {
    p = canonical(p);
    if (!p.empty()) v.push_back(p);
  }
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const auto& p : v) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool touch = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
      if (touch) {
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  parts_ = std::move(out);
}

bool ExtendedRealSet::contains(double x) const {
  if (std::isinf(x)) return infinity_;
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return p.contains(x); });
}

std::vector<double> ExtendedRealSet::points() const {
  std::vector<double> r;
  for (const auto& p : parts_)
    if (p.is_point()) r.push_back(p.lo);
  return r;
}

ExtendedRealSet ExtendedRealSet::unite(const ExtendedRealSet& o) const {
  auto v = parts_;
  v.insert(v.end(), o.parts_.begin(), o.parts_.end());
  return {std::move(v), infinity_ || o.infinity_};
}

ExtendedRealSet ExtendedRealSet::intersect(const ExtendedRealSet& o) const {
  std::vector<Interval> v;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) {
      Interval r;
      if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
      } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
      } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
      }
      v.push_back(r);
    }
  }
  return {std::move(v), infinity_ && o.infinity_};
}

ExtendedRealSet ExtendedRealSet::complement() const {
  std::vector<Interval> v;
  double lo = -inf;
  bool lo_closed = false;
  for (const auto& p : parts_) {
    v.push_back({lo, p.lo, lo_closed, !p.lo_closed});
    lo = p.hi;
    lo_closed = !p.hi_closed;
  }
  v.push_back({lo, inf, lo_closed, false});
  return {std::move(v), !infinity_};
}

ExtendedRealSet ExtendedRealSet::negated() const {
  std::vector<Interval> v;
  for (const auto& p : parts_) v.push_back({-p.hi, -p.lo, p.hi_closed, p.lo_closed});
  return {std::move(v), infinity_};
}

std::string ExtendedRealSet::to_string() const {
  if (empty()) return "∅";
  std::vector<std::string> items;
  for (const auto& p : parts_) {
    if (p.is_point()) {
      items.push_back("{" + number(p.lo) + "}");
    } else {
      items.push_back(fmt::format("{}{}, {}{}", p.lo_closed ? '[' : '(', number(p.lo), number(p.hi),
                                  p.hi_closed ? ']' : ')'));
    }
  }
  if (infinity_) items.emplace_back("{∞}");
  return fmt::format("{}", fmt::join(items, " ∪ "));
}

void SpectralSet::validate() const {
  for (const auto& i : intervals) {
    if (std::isnan(i.lo) || std::isnan(i.hi) || !(i.lo < i.hi))
      throw ConfigError(fmt::format("spectral interval [{}, {}] must satisfy lo < hi", i.lo, i.hi));
  }
  for (double p : points)
    if (!std::isfinite(p)) throw ConfigError("isolated spectral points must be finite");
  for (const auto& c : clusters) {
    if (std::isnan(c.limit)) throw ConfigError("cluster limit is NaN");
    if (c.limit == inf && c.from != Approach::from_below)
      throw ConfigError("a sequence tending to +inf must approach from below");
    if (c.limit == -inf && c.from != Approach::from_above)
      throw ConfigError("a sequence tending to -inf must approach from above");
  }
}

SpectralSet SpectralSet::negated() const {
  SpectralSet r;
  for (const auto& i : intervals) r.intervals.push_back(closed(-i.hi, -i.lo));
  for (double p : points) r.points.push_back(-p);
  for (const auto& c : clusters)
    r.clusters.push_back({-c.limit, c.from == Approach::from_below ? Approach::from_above : Approach::from_below});
  return r;
}

bool SpectralSet::bounded_below() const {
  return std::none_of(intervals.begin(), intervals.end(), [](const Interval& i) { return i.lo == -inf; }) &&
         std::none_of(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.limit == -inf; });
}

bool SpectralSet::bounded_above() const {
  return std::none_of(intervals.begin(), intervals.end(), [](const Interval& i) { return i.hi == inf; }) &&
         std::none_of(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.limit == inf; });
}

std::optional<double> SpectralSet::infimum() const {
  if (!bounded_below()) return std::nullopt;
  std::optional<double> r;
  auto take = [&r](double x) { r = r ? std::min(*r, x) : x; };
  for (const auto& i : intervals) take(i.lo);
  for (double p : points) take(p);
  for (const auto& c : clusters)
    if (std::isfinite(c.limit)) take(c.limit);
  return r;
}

std::optional<double> SpectralSet::supremum() const {
  if (!bounded_above()) return std::nullopt;
  std::optional<double> r;
  auto take = [&r](double x) { r = r ? std::max(*r, x) : x; };
  for (const auto& i : intervals) take(i.hi);
  for (double p : points) take(p);
  for (const auto& c : clusters)
    if (std::isfinite(c.limit)) take(c.limit);
  return r;
}

ExtendedRealSet SpectralSet::essential() const {
  std::vector<Interval> v;
  for (const auto& i : intervals) v.push_back(closed(i.lo, i.hi));
  for (const auto& c : clusters)
    if (std::isfinite(c.limit)) v.push_back(point(c.limit));
  return {std::move(v), false};
}

ExtendedRealSet SpectralSet::closure() const {
  auto e = essential();
  std::vector<Interval> v;
  for (double p : points) v.push_back(point(p));
  return e.unite({std::move(v), !bounded_below() || !bounded_above()});
}

ExtendedRealSet sigma_left(const SpectralSet& s) {
  std::vector<Interval> v;
  bool infinity = false;
  for (const auto& i : s.intervals) {
    v.push_back(canonical({i.lo, i.hi, false, true}));
    if (i.hi == inf) infinity = true;
  }
  for (const auto& c : s.clusters) {
    if (c.from != Approach::from_below) continue;
    if (c.limit == inf)
      infinity = true;
    else
      v.push_back(point(c.limit));
  }
  return {std::move(v), infinity};
}

ExtendedRealSet sigma_right(const SpectralSet& s) {
  std::vector<Interval> v;
  bool infinity = false;
  for (const auto& i : s.intervals) {
    v.push_back(canonical({i.lo, i.hi, true, false}));
    if (i.lo == -inf) infinity = true;
  }
  for (const auto& c : s.clusters) {
    if (c.from != Approach::from_above) continue;
    if (c.limit == -inf)
      infinity = true;
    else
      v.push_back(point(c.limit));
  }
  return {std::move(v), infinity};
}

namespace {

struct GapState {
  bool full = false;
  bool cluster_lo = false;  // accumulation at the left end of the gap
  bool cluster_hi = false;  // accumulation at the right end
};

GapState gap_state(const SpectralSet& s, double lo, double hi) {
  GapState g;
  for (const auto& i : s.intervals)
    if (i.lo <= lo && i.hi >= hi) g.full = true;
  for (const auto& c : s.clusters) {
    if (c.from == Approach::from_above && c.limit == lo) g.cluster_lo = true;
    if (c.from == Approach::from_below && c.limit == hi) g.cluster_hi = true;
  }
  return g;
}

bool point_in(const SpectralSet& s, double p) {
  if (std::any_of(s.intervals.begin(), s.intervals.end(), [p](const Interval& i) { return i.lo <= p && p <= i.hi; }))
    return true;
  if (std::find(s.points.begin(), s.points.end(), p) != s.points.end()) return true;
  return std::any_of(s.clusters.begin(), s.clusters.end(), [p](const Cluster& c) { return c.limit == p; });
}

double representative(double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) return 0.0;
  if (std::isinf(lo)) return hi - 1.0;
  if (std::isinf(hi)) return lo + 1.0;
  return 0.5 * (lo + hi);
}

enum Label { none = 0, one = 1, two = 2, both = 3 };

struct Token {
  Label label;
  double pos;
};

}  // namespace

Separation separation_check(const SpectralSet& s1, const SpectralSet& s2) {
  s1.validate();
  s2.validate();
  std::vector<double> crit;
  for (const SpectralSet* s : {&s1, &s2}) {
    for (const auto& i : s->intervals) {
      if (std::isfinite(i.lo)) crit.push_back(i.lo);
      if (std::isfinite(i.hi)) crit.push_back(i.hi);
    }
    crit.insert(crit.end(), s->points.begin(), s->points.end());
    for (const auto& c : s->clusters)
      if (std::isfinite(c.limit)) crit.push_back(c.limit);
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  Separation out;
  auto fail = [&out](std::string why, double lo, double hi, std::optional<double> at) {
    out.separable = false;
    out.witness = std::move(why);
    if (at && std::isinf(*at)) at.reset();
    out.witness_point = at;
    out.witness_at_infinity = !at && (std::isinf(lo) || std::isinf(hi));
    if (!at && !out.witness_at_infinity) out.witness_point = representative(lo, hi);
    return out;
  };

  std::vector<Token> tokens;
  const std::size_t n = crit.size();
  for (std::size_t g = 0; g <= n; ++g) {
    const double lo = g == 0 ? -inf : crit[g - 1];
    const double hi = g == n ? inf : crit[g];
    const GapState a = gap_state(s1, lo, hi);
    const GapState b = gap_state(s2, lo, hi);
    const std::string where = fmt::format("({}, {})", number(lo), number(hi));
    if (a.full && b.full) return fail("both spectra contain " + where, lo, hi, std::nullopt);
    if (a.full && (b.cluster_lo || b.cluster_hi))
      return fail("second spectrum accumulates inside the interval " + where + " of the first", lo, hi,
                  b.cluster_lo ? lo : hi);
    if (b.full && (a.cluster_lo || a.cluster_hi))
      return fail("first spectrum accumulates inside the interval " + where + " of the second", lo, hi,
                  a.cluster_lo ? lo : hi);
    if (a.cluster_lo && b.cluster_lo)
      return fail("both spectra accumulate at " + number(lo) + " from above", lo, hi, lo);
    if (a.cluster_hi && b.cluster_hi)
      return fail("both spectra accumulate at " + number(hi) + " from below", lo, hi, hi);

    if (a.full) {
      tokens.push_back({one, lo});
    } else if (b.full) {
      tokens.push_back({two, lo});
    } else {
      const Label left = a.cluster_lo ? one : b.cluster_lo ? two : none;
      const Label right = a.cluster_hi ? one : b.cluster_hi ? two : none;
      if (left != none) tokens.push_back({left, lo});
      if (right != none && right != left) tokens.push_back({right, representative(lo, hi)});
    }
    if (g < n) {
      const double p = crit[g];
      const bool in1 = point_in(s1, p), in2 = point_in(s2, p);
      const Label l = in1 && in2 ? both : in1 ? one : in2 ? two : none;
      if (l != none) tokens.push_back({l, p});
    }
  }

  out.separable = true;
  int cur = none;
  for (const auto& t : tokens) {
    if (t.label == both) {
      if (cur == none) {
        cur = one;
        out.first_even = 1;
      }
      out.alphas.push_back(t.pos);
      cur = cur == one ? two : one;
    } else if (cur == none) {
      cur = t.label;
      out.first_even = t.label;
    } else if (t.label != cur) {
      out.alphas.push_back(t.pos);
      cur = t.label;
    }
  }
  // The definition asks for N >= 1; a doubled point changes nothing.
  if (out.alphas.empty()) out.alphas = {0.0, 0.0};
  return out;
}

const char* to_string(PointType t) {
  switch (t) {
    case PointType::resolvent: return "resolvent";
    case PointType::positive: return "positive";
    case PointType::negative: return "negative";
    case PointType::both: return "both";
  }
  return "?";
}

PointType point_type(const SpectralSet& plus, const SpectralSet& minus, double x) {
  const bool p = plus.contains(x), m = minus.contains(x);
  if (p && m) return PointType::both;
  if (p) return PointType::positive;
  if (m) return PointType::negative;
  return PointType::resolvent;
}

}  // namespace indefsl::sets
