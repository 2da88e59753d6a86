#pragma once

// Subsets of the extended real line and symbolic half-line spectra.
//
// ExtendedRealSet is a finite union of intervals of R (closed, open or
// half-open, endpoints may be +-inf) plus the point at infinity.
// SpectralSet describes sigma(T) for a self-adjoint T: closed intervals,
// isolated points and accumulating sequences given only by their limit.

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace indefsl::sets {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;  // ignored when lo is -inf
  bool hi_closed = true;  // ignored when hi is +inf

  [[nodiscard]] bool empty() const;
  [[nodiscard]] bool contains(double x) const;
  [[nodiscard]] bool is_point() const { return lo == hi && lo_closed && hi_closed; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

[[nodiscard]] Interval closed(double lo, double hi);
[[nodiscard]] Interval open(double lo, double hi);
[[nodiscard]] Interval point(double x);

class ExtendedRealSet {
 public:
  ExtendedRealSet() = default;
  ExtendedRealSet(std::vector<Interval> parts, bool infinity);

  [[nodiscard]] static ExtendedRealSet empty_set() { return {}; }
  /// All of R-bar.
  [[nodiscard]] static ExtendedRealSet everything();
  [[nodiscard]] static ExtendedRealSet infinity_only();

  [[nodiscard]] const std::vector<Interval>& parts() const noexcept { return parts_; }
  [[nodiscard]] bool has_infinity() const noexcept { return infinity_; }
  [[nodiscard]] bool empty() const noexcept { return parts_.empty() && !infinity_; }
  [[nodiscard]] bool contains(double x) const;
  /// Isolated points among the parts.
  [[nodiscard]] std::vector<double> points() const;

  [[nodiscard]] ExtendedRealSet unite(const ExtendedRealSet& o) const;
  [[nodiscard]] ExtendedRealSet intersect(const ExtendedRealSet& o) const;
  /// Complement in R-bar.
  [[nodiscard]] ExtendedRealSet complement() const;
  [[nodiscard]] ExtendedRealSet minus(const ExtendedRealSet& o) const { return intersect(o.complement()); }
  [[nodiscard]] ExtendedRealSet negated() const;

  /// e.g. "[-1, 1] ∪ {3} ∪ {∞}", "∅".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ExtendedRealSet&, const ExtendedRealSet&) = default;

 private:
  void normalize();
  std::vector<Interval> parts_;
  bool infinity_ = false;
};

enum class Approach { from_below, from_above };

/// Infinitely many isolated spectral points converging monotonically to `limit`.
/// limit = +inf requires from_below, -inf requires from_above.
struct Cluster {
  double limit = 0.0;
  Approach from = Approach::from_below;
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct SpectralSet {
  std::vector<Interval> intervals;  // closed, lo < hi
  std::vector<double> points;       // isolated points
  std::vector<Cluster> clusters;

  /// Throws ConfigError on malformed parts.
  void validate() const;
  [[nodiscard]] SpectralSet negated() const;
  [[nodiscard]] bool bounded_below() const;
  [[nodiscard]] bool bounded_above() const;
  /// Finite infimum; nullopt when unbounded or empty.
  [[nodiscard]] std::optional<double> infimum() const;
  [[nodiscard]] std::optional<double> supremum() const;
  /// Closure in R-bar.
  [[nodiscard]] ExtendedRealSet closure() const;
  /// The essential part: intervals plus cluster limits.
  [[nodiscard]] ExtendedRealSet essential() const;
  /// Membership of a finite point in the closure.
  [[nodiscard]] bool contains(double x) const { return closure().contains(x); }
};

/// Limits of strictly increasing sequences in the set (with infinity for sequences to +inf).
[[nodiscard]] ExtendedRealSet sigma_left(const SpectralSet& s);
/// Limits of strictly decreasing sequences (infinity for sequences to -inf).
[[nodiscard]] ExtendedRealSet sigma_right(const SpectralSet& s);

struct Separation {
  bool separable = false;
  /// alpha_1 <= ... <= alpha_N; the set `first_even` lies in the closed
  /// intervals [alpha_k, alpha_{k+1}] with k even (alpha_0 = -inf).
  std::vector<double> alphas;
  int first_even = 1;  // 1 or 2
  std::string witness;
  std::optional<double> witness_point;  // finite point, or nullopt with witness_at_infinity
  bool witness_at_infinity = false;
};

/// Whether two spectra can be separated by finitely many points.
[[nodiscard]] Separation separation_check(const SpectralSet& s1, const SpectralSet& s2);

/// For a real point: which of the two spectra it belongs to.
enum class PointType { resolvent, positive, negative, both };
[[nodiscard]] const char* to_string(PointType t);
[[nodiscard]] PointType point_type(const SpectralSet& plus, const SpectralSet& minus, double x);

}  // namespace indefsl::sets
