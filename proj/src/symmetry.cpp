#include "semitree/symmetry.hpp"

#include <algorithm>
#include <vector>

namespace semitree {

StepFunction extension(const UPoint& p) {
  std::vector<Jump> segments = p.segments();
  segments.push_back(Jump{p.a(), 0});
  return StepFunction::canonical(Rational(0), segments);
}

StepFunction add(const GroupSpec& group, const StepFunction& f, const StepFunction& g, const Rational& start) {
  if (start < f.start() || start < g.start()) throw DomainError("sum taken below a summand's domain");
  std::vector<Rational> cuts;
  for (const auto* h : {&f, &g}) {
    for (const Jump& j : h->segments()) {
      if (j.breakpoint > start) cuts.push_back(j.breakpoint);
    }
  }
  std::sort(cuts.begin(), cuts.end(), std::greater<>());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Jump> raw;
  raw.reserve(cuts.size());
  for (const Rational& c : cuts) raw.push_back(Jump{c, group.add(f.evaluate(c), g.evaluate(c))});
  return StepFunction::canonical(start, raw);
}

StepFunction negate(const GroupSpec& group, const StepFunction& f) {
  std::vector<Jump> raw = f.segments();
  for (Jump& j : raw) j.value = group.negate(j.value);
  return StepFunction(f.start(), std::move(raw));
}

StepFunction rescale(const StepFunction& f, const Rational& lambda) {
  if (lambda.sign() <= 0) throw ArgumentError("scale factor must be positive");
  std::vector<Jump> raw = f.segments();
  for (Jump& j : raw) j.breakpoint *= lambda;
  return StepFunction(f.start() * lambda, std::move(raw));
}

Similarity::Similarity(GroupSpec group, StepFunction shift, Rational lambda)
    : group_(group), shift_(std::move(shift)), lambda_(std::move(lambda)) {
  if (lambda_.sign() <= 0) throw ArgumentError("similarity coefficient must be positive");
  if (!shift_.start().is_zero()) throw InvariantError("translation functions live on (0, +inf)");
  for (const Jump& j : shift_.segments()) {
    if (!group_.contains(j.value)) throw ArgumentError("translation value outside " + group_.name());
  }
}

Similarity Similarity::homothety(const GroupSpec& group, const Rational& lambda) {
  return Similarity(group, StepFunction(), lambda);
}

Similarity Similarity::translation(const GroupSpec& group, const StepFunction& f) {
  return Similarity(group, f, Rational(1));
}

Similarity Similarity::from_parts(const GroupSpec& group, const StepFunction& g, const Rational& lambda,
                                  const StepFunction& f) {
  const Similarity post = translation(group, g);
  const Similarity pre = translation(group, f).inverse();
  return post.compose(homothety(group, lambda)).compose(pre);
}

UPoint Similarity::apply(const UPoint& p) const {
  const StepFunction scaled = rescale(p.function(), lambda_);
  return UPoint(add(group_, scaled, shift_, scaled.start()));
}

Similarity Similarity::compose(const Similarity& other) const {
  if (!(group_ == other.group_)) throw ArgumentError("similarities over different groups");
  // R_t1 H_l1 R_t2 H_l2 = R_{t1 + t2(./l1)} H_{l1 l2}
  return Similarity(group_, add(group_, shift_, rescale(other.shift_, lambda_), Rational(0)), lambda_ * other.lambda_);
}

Similarity Similarity::inverse() const {
  // (R_t H_l)^{-1} = H_{1/l} R_{-t} = R_{-t(l .)} H_{1/l}
  const Rational inv = Rational(1) / lambda_;
  return Similarity(group_, rescale(negate(group_, shift_), inv), inv);
}

Similarity map_point_to_point(const GroupSpec& group, const UPoint& p, const UPoint& q) {
  return Similarity::from_parts(group, extension(q), q.a() / p.a(), extension(p));
}

FiberPoint fiber_nearest(const UPoint& p, const Rational& b) {
  if (b.sign() <= 0) throw ArgumentError("fiber height must be positive");
  if (b >= p.a()) return FiberPoint{restrict(p, b), b - p.a(), true};
  return FiberPoint{UPoint(extension(p).restrict(b)), p.a() - b, false};
}

UPoint fiber_map(const Rational& a, const Rational& b, const UPoint& p) {
  if (p.a() != a) throw ArgumentError("point " + p.str() + " is not in the fiber at height " + a.str());
  if (b.sign() <= 0) throw ArgumentError("fiber height must be positive");
  std::vector<Jump> raw = p.segments();
  for (Jump& j : raw) j.breakpoint += b - a;
  return UPoint(b, std::move(raw));
}

Valency valency(const GroupSpec& group) {
  if (!group.is_finite()) return Valency{true, 0};
  return Valency{false, static_cast<std::uint64_t>(group.modulus()) + 1};
}

UPoint complete_limit(const UPoint& center, const Rational& radius, const CauchySequence& seq, std::size_t horizon) {
  if (radius.sign() <= 0 || radius >= center.a()) {
    throw ArgumentError("ball radius must lie in (0, " + center.a().str() + ")");
  }
  if (horizon < 4) throw ArgumentError("horizon must be at least 4");
  const Rational& limit_height = seq.height_limit;
  if (limit_height.sign() <= 0) {
    throw LimitRefused("escape", "heights tend to " + limit_height.str() + ": the sequence escapes toward height 0");
  }
  std::vector<UPoint> terms;
  terms.reserve(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) terms.push_back(seq.term(n));

  const std::size_t mid = horizon / 2 - 1;  // zero-based index of term horizon/2
  const std::vector<UPoint> tail(terms.begin() + static_cast<std::ptrdiff_t>(mid), terms.end());
  const Rational first_gap = abs(tail.front().a() - limit_height);
  const Rational last_gap = abs(tail.back().a() - limit_height);
  if (!last_gap.is_zero() && last_gap * Rational(2) > first_gap) {
    throw LimitRefused("no-convergence", "heights do not approach " + limit_height.str());
  }

  // Each tail term agrees with the last one above their join height; the last
  // function seen from there must not change across the tail. A list that
  // keeps gaining jumps means jumps pile up toward the limit height.
  const UPoint& last = tail.back();
  std::vector<StepFunction> seen;
  for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
    seen.push_back(last.function().restrict(join_height(tail[i], last)));
  }
  if (seen.empty()) seen.push_back(last.function());
  for (const StepFunction& f : seen) {
    if (f.segments() == seen.front().segments()) continue;
    bool growing = true;
    for (std::size_t i = 1; i < seen.size(); ++i) {
      growing = growing && seen[i].segments().size() >= seen[i - 1].segments().size();
    }
    if (growing) throw LimitRefused("escape", "new jumps keep appearing above height " + limit_height.str());
    throw LimitRefused("no-convergence", "jump lists do not settle above height " + limit_height.str());
  }
  UPoint limit(StepFunction::canonical(limit_height, seen.front().segments()));

  // The worst distance in the later half of the tail must drop below the
  // worst in the earlier half, and the last term must be twice as close as the first.
  Rational early(0), late(0);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    Rational& worst = 2 * i < tail.size() ? early : late;
    worst = std::max(worst, dist(tail[i], limit));
  }
  const Rational first_dist = dist(tail.front(), limit);
  const Rational last_dist = dist(tail.back(), limit);
  if ((!late.is_zero() && late >= early) || (!last_dist.is_zero() && last_dist * Rational(2) > first_dist)) {
    throw LimitRefused("no-convergence", "terms do not approach the candidate limit " + limit.str());
  }
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (dist(center, terms[n]) >= radius) {
      throw ArgumentError("term " + std::to_string(n + 1) + " lies outside the ball");
    }
  }
  return limit;
}

}  // namespace semitree
