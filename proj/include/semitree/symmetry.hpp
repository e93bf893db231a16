#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "semitree/errors.hpp"
#include "semitree/group.hpp"
#include "semitree/rational.hpp"
#include "semitree/universal_tree.hpp"

namespace semitree {

/// Zero-extension of a point's function to (0, +inf): 0 at and below p.a.
StepFunction extension(const UPoint& p);
/// Pointwise sum of two step functions on their common domain above `start`.
StepFunction add(const GroupSpec& group, const StepFunction& f, const StepFunction& g, const Rational& start);
StepFunction negate(const GroupSpec& group, const StepFunction& f);
/// x -> f(x / lambda), on (lambda * start, +inf).
StepFunction rescale(const StepFunction& f, const Rational& lambda);

/// A similarity R_t o H_lambda of the universal tree.
///
/// H_lambda scales heights and breakpoints by lambda; R_t adds the translation
/// function t (defined on (0, +inf)) to a point's function. Every product of
/// these generators reduces to this normal form through
/// H_lambda o R_f = R_{f(./lambda)} o H_lambda, so equal maps have equal data.
class Similarity {
 public:
  static Similarity identity(const GroupSpec& group) { return Similarity(group, StepFunction(), Rational(1)); }
  static Similarity homothety(const GroupSpec& group, const Rational& lambda);
  /// R_f for a translation function on (0, +inf).
  static Similarity translation(const GroupSpec& group, const StepFunction& f);
  /// R_f for the point (f, a_f), i.e. translation by the zero-extension of f.
  static Similarity translation(const GroupSpec& group, const UPoint& p) { return translation(group, extension(p)); }
  /// R_g o H_lambda o R_f^{-1}.
  static Similarity from_parts(const GroupSpec& group, const StepFunction& g, const Rational& lambda,
                               const StepFunction& f);

  const GroupSpec& group() const { return group_; }
  const StepFunction& shift() const { return shift_; }
  const Rational& coefficient() const { return lambda_; }

  UPoint apply(const UPoint& p) const;
  /// (*this) o other.
  Similarity compose(const Similarity& other) const;
  Similarity inverse() const;

  friend bool operator==(const Similarity&, const Similarity&) = default;

 private:
  Similarity(GroupSpec group, StepFunction shift, Rational lambda);
  GroupSpec group_;
  StepFunction shift_;
  Rational lambda_;
};

inline UPoint apply(const Similarity& s, const UPoint& p) { return s.apply(p); }
inline Similarity compose(const Similarity& a, const Similarity& b) { return a.compose(b); }
inline Similarity inverse(const Similarity& s) { return s.inverse(); }
inline const Rational& coefficient(const Similarity& s) { return s.coefficient(); }

/// The similarity R_g o H_lambda o R_f^{-1} with lambda = q.a / p.a, taking p to q.
Similarity map_point_to_point(const GroupSpec& group, const UPoint& p, const UPoint& q);

/// Height of a point; a submetry onto the positive reals.
inline const Rational& submetry_height(const UPoint& p) { return p.a(); }
/// Supremum of radii of complete balls centred at p.
inline const Rational& completeness_radius(const UPoint& p) { return p.a(); }

struct FiberPoint {
  UPoint point;
  Rational distance;
  bool unique = true;
};

/// Nearest point of the fiber F_b = {(f, b)} to p. Below p the choice is not
/// unique; the zero-extension of p is returned and flagged.
FiberPoint fiber_nearest(const UPoint& p, const Rational& b);

/// T_(a,b): (f, a) -> (f(. + a - b), b), an isometry F_a -> F_b.
UPoint fiber_map(const Rational& a, const Rational& b, const UPoint& p);

/// Number of components of X minus a point: |G| + 1.
struct Valency {
  bool infinite = false;
  std::uint64_t count = 0;
  std::string str() const { return infinite ? "countably infinite" : std::to_string(count); }
};

Valency valency(const GroupSpec& group);

/// A sequence of points together with the limit of their heights.
struct CauchySequence {
  std::function<UPoint(std::size_t)> term;  // n >= 1
  Rational height_limit;
};

/// Refusal of the limit procedure. reason() is "escape" when the sequence runs
/// off toward height 0 or its jumps keep moving, "no-convergence" when heights
/// or distances do not settle.
class LimitRefused : public DomainError {
 public:
  LimitRefused(std::string reason, const std::string& message)
      : DomainError(message), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }
  const char* kind() const noexcept override { return "limit-refused"; }

 private:
  std::string reason_;
};

/// Limit of a Cauchy sequence inside the ball B(center, radius), radius < center.a.
///
/// Terms 1..horizon are inspected. Heights must approach the declared limit,
/// at least halving their gap across the tail [horizon/2, horizon]. Every tail
/// term agrees with the last term above their join height, and the last
/// term's jump list seen from those heights must be one fixed list: that list,
/// extended down to the limit height, is the limit. Distances to it must
/// shrink across the tail: the worst of its later half below the worst of its
/// earlier half, and the last term at most half as far as the first.
UPoint complete_limit(const UPoint& center, const Rational& radius, const CauchySequence& seq,
                      std::size_t horizon = 64);

}  // namespace semitree
