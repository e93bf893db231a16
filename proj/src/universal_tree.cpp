#include "semitree/universal_tree.hpp"

#include <algorithm>
#include <sstream>

#include "semitree/errors.hpp"

namespace semitree {

StepFunction::StepFunction(Rational start, std::vector<Jump> segments)
    : start_(std::move(start)), segments_(std::move(segments)) {
  if (start_.sign() < 0) throw InvariantError("step function domain start must be >= 0");
  GroupElem above = 0;
  const Rational* previous = nullptr;
  for (const Jump& j : segments_) {
    if (j.breakpoint <= start_) {
      throw InvariantError("breakpoint " + j.breakpoint.str() + " not above domain start " + start_.str());
    }
    if (previous != nullptr && !(j.breakpoint < *previous)) {
      throw InvariantError("breakpoints must be strictly decreasing");
    }
    if (j.value == above) {
      throw InvariantError(previous == nullptr ? "first segment value must be nonzero"
                                               : "adjacent segment values must differ");
    }
    above = j.value;
    previous = &j.breakpoint;
  }
}

StepFunction StepFunction::canonical(Rational start, const std::vector<Jump>& segments) {
  std::vector<Jump> out;
  GroupElem above = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0 && !(segments[i].breakpoint < segments[i - 1].breakpoint)) {
      throw InvariantError("breakpoints must be strictly decreasing");
    }
    if (segments[i].breakpoint <= start) break;
    if (segments[i].value == above) continue;
    out.push_back(segments[i]);
    above = segments[i].value;
  }
  return StepFunction(std::move(start), std::move(out));
}

GroupElem StepFunction::evaluate(const Rational& x) const {
  if (x <= start_) throw DomainError("evaluate at " + x.str() + " outside domain (" + start_.str() + ", inf)");
  GroupElem value = 0;
  for (const Jump& j : segments_) {
    if (x > j.breakpoint) break;
    value = j.value;
  }
  return value;
}

StepFunction StepFunction::restrict(const Rational& h) const {
  if (h < start_) throw DomainError("restriction height " + h.str() + " below domain start " + start_.str());
  return canonical(h, segments_);
}

UPoint::UPoint(Rational a, std::vector<Jump> segments) : f_(std::move(a), std::move(segments)) {
  if (f_.start().sign() <= 0) throw InvariantError("point height must be positive");
}

UPoint::UPoint(StepFunction f) : f_(std::move(f)) {
  if (f_.start().sign() <= 0) throw InvariantError("point height must be positive");
}

bool UPoint::valid_in(const GroupSpec& group) const {
  return std::all_of(segments().begin(), segments().end(), [&](const Jump& j) { return group.contains(j.value); });
}

std::string UPoint::str() const {
  std::ostringstream os;
  os << '<' << a() << "; [";
  for (std::size_t i = 0; i < segments().size(); ++i) {
    if (i) os << ", ";
    os << '(' << segments()[i].breakpoint << ',' << segments()[i].value << ')';
  }
  os << "]>";
  return os.str();
}

GroupElem evaluate(const UPoint& p, const Rational& x) { return p.function().evaluate(x); }

UPoint restrict(const UPoint& p, const Rational& h) { return UPoint(p.function().restrict(h)); }

bool model_leq(const UPoint& p, const UPoint& q) {
  if (p.a() > q.a()) return false;
  return p.function().restrict(q.a()).segments() == q.segments();
}

Rational join_height(const UPoint& p, const UPoint& q) {
  const Rational floor = std::max(p.a(), q.a());
  std::vector<Rational> candidates;
  for (const auto* pt : {&p, &q}) {
    for (const Jump& j : pt->segments()) {
      if (j.breakpoint > floor) candidates.push_back(j.breakpoint);
    }
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Both functions are constant on (next candidate, c]; the highest disagreement wins.
  for (const Rational& c : candidates) {
    if (evaluate(p, c) != evaluate(q, c)) return c;
  }
  return floor;
}

UPoint join(const UPoint& p, const UPoint& q) { return restrict(p, join_height(p, q)); }

Rational dist(const UPoint& p, const UPoint& q) {
  const Rational h = join_height(p, q);
  return (h - p.a()) + (h - q.a());
}

UPoint segment_point(const UPoint& p, const UPoint& q, const Rational& t) {
  const Rational h = join_height(p, q);
  const Rational ascent = h - p.a();
  const Rational total = ascent + (h - q.a());
  if (t.sign() < 0 || t > total) {
    throw RangeError("segment parameter " + t.str() + " outside [0, " + total.str() + "]");
  }
  if (t <= ascent) return restrict(p, p.a() + t);
  return restrict(q, h - (t - ascent));
}

UPoint median(const UPoint& x, const UPoint& y, const UPoint& z) {
  // Two of the pairwise joins coincide and sit highest; the remaining one is the median.
  UPoint best = join(x, y);
  for (UPoint candidate : {join(x, z), join(y, z)}) {
    if (candidate.a() < best.a()) best = std::move(candidate);
  }
  return best;
}

std::string ComponentLabel::str() const { return above ? "A" : "B(" + std::to_string(branch) + ")"; }

ComponentLabel classify_component(const UPoint& center, const UPoint& p) {
  if (p == center) throw ArgumentError("point coincides with the center");
  if (model_leq(p, center)) return ComponentLabel{false, evaluate(p, center.a())};
  return ComponentLabel{true, 0};
}

UniversalTree::UniversalTree(GroupSpec group, UPoint base) : group_(group), base_(std::move(base)) {
  if (!contains(base_)) throw ArgumentError("base point " + base_.str() + " has values outside " + group_.name());
}

UPoint UniversalTree::make_point(Rational a, std::vector<Jump> segments) const {
  UPoint p(std::move(a), std::move(segments));
  if (!contains(p)) throw ArgumentError("point " + p.str() + " has values outside " + group_.name());
  return p;
}

UPoint UniversalTree::ray_point(End, const UPoint& y, const Rational& s) const {
  if (s.sign() < 0) throw RangeError("ray parameter must be nonnegative");
  return restrict(y, y.a() + s);
}

UPoint UniversalTree::horoball_projection(End e, const UPoint& y, const UPoint& x) const {
  if (busemann(e, x) <= busemann(e, y)) return x;
  return restrict(x, y.a());
}

}  // namespace semitree
