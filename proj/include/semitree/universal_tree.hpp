#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "semitree/group.hpp"
#include "semitree/rational.hpp"

namespace semitree {

/// One constant piece of a step function: the value on (next breakpoint, breakpoint].
struct Jump {
  Rational breakpoint;
  GroupElem value = 0;
  friend bool operator==(const Jump&, const Jump&) = default;
};

/// A left piecewise-constant, eventually-zero function on (start, +inf) with
/// finitely many jumps.
///
/// Segments are listed from the top down: with breakpoints b1 > b2 > ... > bk > start,
/// the function is 0 above b1, v_i on (b_{i+1}, b_i], and v_k on (start, b_k].
/// Canonical form (v1 != 0, adjacent values distinct) is enforced by the
/// constructor, so structural equality is functional equality.
class StepFunction {
 public:
  StepFunction() = default;
  /// Throws InvariantError unless `segments` is already canonical over `start`.
  StepFunction(Rational start, std::vector<Jump> segments);

  /// Builds the canonical form of an arbitrary top-down segment list.
  /// Breakpoints must be strictly decreasing; segments at or below `start` are dropped.
  static StepFunction canonical(Rational start, const std::vector<Jump>& segments);

  const Rational& start() const { return start_; }
  const std::vector<Jump>& segments() const { return segments_; }
  bool is_zero() const { return segments_.empty(); }
  /// Smallest b with f == 0 on (b, +inf).
  const Rational& top() const { return segments_.empty() ? start_ : segments_.front().breakpoint; }

  /// Requires x > start.
  GroupElem evaluate(const Rational& x) const;
  /// f restricted to (h, +inf); requires h >= start.
  StepFunction restrict(const Rational& h) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  Rational start_;
  std::vector<Jump> segments_;
};

/// A point (f, a) of the universal tree: height a > 0 and a step function on (a, +inf).
class UPoint {
 public:
  UPoint() : f_(Rational(1), {}) {}
  UPoint(Rational a, std::vector<Jump> segments);
  explicit UPoint(StepFunction f);

  const Rational& a() const { return f_.start(); }
  const std::vector<Jump>& segments() const { return f_.segments(); }
  const StepFunction& function() const { return f_; }
  const Rational& top() const { return f_.top(); }

  /// Checks every value lies in the group's representative range.
  bool valid_in(const GroupSpec& group) const;
  /// Like "<1; [(2,1)]>".
  std::string str() const;

  friend bool operator==(const UPoint&, const UPoint&) = default;
  friend std::ostream& operator<<(std::ostream& os, const UPoint& p) { return os << p.str(); }

 private:
  StepFunction f_;
};

GroupElem evaluate(const UPoint& p, const Rational& x);
UPoint restrict(const UPoint& p, const Rational& h);
/// The natural order: p.a <= q.a and p restricted to q.a equals q.
bool model_leq(const UPoint& p, const UPoint& q);
/// Height of the least upper bound of p and q.
Rational join_height(const UPoint& p, const UPoint& q);
UPoint join(const UPoint& p, const UPoint& q);
Rational dist(const UPoint& p, const UPoint& q);
/// The point of [pq] at distance t from p; requires 0 <= t <= dist(p, q).
UPoint segment_point(const UPoint& p, const UPoint& q, const Rational& t);
UPoint median(const UPoint& x, const UPoint& y, const UPoint& z);

/// Label of a connected component of X \ {center}: `A` (not strictly below the
/// center) or `B(alpha)` (strictly below, with value alpha at the center's height).
struct ComponentLabel {
  bool above = true;
  GroupElem branch = 0;
  std::string str() const;
  friend bool operator==(const ComponentLabel&, const ComponentLabel&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ComponentLabel& c) { return os << c.str(); }
};

ComponentLabel classify_component(const UPoint& center, const UPoint& p);

/// Tag for the single upward end of the universal tree.
struct UpwardEnd {
  friend bool operator==(UpwardEnd, UpwardEnd) { return true; }
};

/// The universal tree over a fixed group, with a base point that normalizes
/// Busemann functions toward the upward end.
class UniversalTree {
 public:
  using Point = UPoint;
  using End = UpwardEnd;

  explicit UniversalTree(GroupSpec group, UPoint base = UPoint());

  const GroupSpec& group() const { return group_; }
  const UPoint& base() const { return base_; }

  bool contains(const UPoint& p) const { return p.valid_in(group_); }
  /// Points are stored canonically already.
  const UPoint& canonical(const UPoint& p) const { return p; }
  std::string label(const UPoint& p) const { return p.str(); }
  /// Throws ArgumentError for points with values outside the group.
  UPoint make_point(Rational a, std::vector<Jump> segments) const;

  std::vector<End> ends() const { return {UpwardEnd{}}; }
  bool valid_end(End) const { return true; }

  Rational dist(const UPoint& p, const UPoint& q) const { return semitree::dist(p, q); }
  UPoint median(const UPoint& x, const UPoint& y, const UPoint& z) const { return semitree::median(x, y, z); }
  UPoint segment_point(const UPoint& p, const UPoint& q, const Rational& t) const {
    return semitree::segment_point(p, q, t);
  }

  /// beta(y) = base.a - y.a.
  Rational busemann(End, const UPoint& y) const { return base_.a() - y.a(); }
  /// Point at distance s from y along the ray toward the end.
  UPoint ray_point(End, const UPoint& y, const Rational& s) const;
  /// Where the rays from x and y toward the end merge (their join).
  UPoint ray_merge(End, const UPoint& x, const UPoint& y) const { return join(x, y); }
  /// Nearest point to x of the horoball {z : beta(z) <= beta(y)}.
  UPoint horoball_projection(End, const UPoint& y, const UPoint& x) const;

 private:
  GroupSpec group_;
  UPoint base_;
};

}  // namespace semitree
