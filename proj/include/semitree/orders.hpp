#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semitree/errors.hpp"
#include "semitree/rational.hpp"
#include "semitree/report.hpp"

namespace semitree {

/// What the order machinery needs from a tree model: exact distances and
/// medians, plus Busemann data for its ends.
template <class M>
concept TreeModel = requires(const M& m, const typename M::Point& p, const typename M::End& e,
                             const Rational& r) {
  { m.contains(p) } -> std::convertible_to<bool>;
  { m.canonical(p) } -> std::convertible_to<typename M::Point>;
  { m.valid_end(e) } -> std::convertible_to<bool>;
  { m.ends() } -> std::convertible_to<std::vector<typename M::End>>;
  { m.dist(p, p) } -> std::convertible_to<Rational>;
  { m.median(p, p, p) } -> std::convertible_to<typename M::Point>;
  { m.busemann(e, p) } -> std::convertible_to<Rational>;
  { m.ray_merge(e, p, p) } -> std::convertible_to<typename M::Point>;
  { m.horoball_projection(e, p, p) } -> std::convertible_to<typename M::Point>;
};

/// An upper semilinear metric order on a tree: rooted at a point, or focused on an end.
/// "x tau y" holds when y lies on the way from x toward the focus.
template <TreeModel Model>
class Order {
 public:
  using Point = typename Model::Point;
  using End = typename Model::End;

  static Order rooted(std::shared_ptr<const Model> model, const Point& root) {
    if (!model->contains(root)) throw ModelMismatch("root is not a point of the model");
    Point c = model->canonical(root);
    return Order(std::move(model), std::move(c));
  }
  static Order at_end(std::shared_ptr<const Model> model, const End& end) {
    if (!model->valid_end(end)) throw ModelMismatch("end is not an end of the model");
    return Order(std::move(model), end);
  }

  bool is_rooted() const { return std::holds_alternative<Point>(focus_); }
  const Point& root() const { return std::get<Point>(focus_); }
  const End& end() const { return std::get<End>(focus_); }
  const Model& model() const { return *model_; }
  const std::shared_ptr<const Model>& model_ptr() const { return model_; }

  friend bool operator==(const Order& a, const Order& b) { return a.model_ == b.model_ && a.focus_ == b.focus_; }

 private:
  Order(std::shared_ptr<const Model> model, std::variant<Point, End> focus)
      : model_(std::move(model)), focus_(std::move(focus)) {}

  std::shared_ptr<const Model> model_;
  std::variant<Point, End> focus_;
};

/// An element of the compactified tree: an interior point or an end.
template <TreeModel Model>
using PointOrEnd = std::variant<typename Model::Point, typename Model::End>;

namespace detail {

template <TreeModel Model>
void require_point(const Order<Model>& tau, const typename Model::Point& p) {
  if (!tau.model().contains(p)) throw ModelMismatch("point does not belong to the order's model");
}

template <TreeModel Model>
void require_same_model(const Order<Model>& a, const Order<Model>& b) {
  if (a.model_ptr() != b.model_ptr()) throw ModelMismatch("orders are bound to different models");
}

}  // namespace detail

/// x tau y: for a rooted order, median(root, x, y) == y; for an end,
/// beta(x) - beta(y) == dist(x, y).
template <TreeModel Model>
bool compare(const Order<Model>& tau, const typename Model::Point& x, const typename Model::Point& y) {
  detail::require_point(tau, x);
  detail::require_point(tau, y);
  const Model& m = tau.model();
  if (tau.is_rooted()) return m.median(tau.root(), x, y) == m.canonical(y);
  return m.busemann(tau.end(), x) - m.busemann(tau.end(), y) == m.dist(x, y);
}

/// Second route for compare: the distance-sum test dist(o,y) + dist(y,x) == dist(o,x)
/// for rooted orders, and the horoball projection test pi(x) == y for ends.
template <TreeModel Model>
bool compare_by_geometry(const Order<Model>& tau, const typename Model::Point& x, const typename Model::Point& y) {
  detail::require_point(tau, x);
  detail::require_point(tau, y);
  const Model& m = tau.model();
  if (tau.is_rooted()) return m.dist(tau.root(), y) + m.dist(y, x) == m.dist(tau.root(), x);
  return m.horoball_projection(tau.end(), y, x) == m.canonical(y);
}

/// Least upper bound of a nonempty finite set.
template <TreeModel Model>
typename Model::Point sup(const Order<Model>& tau, std::span<const typename Model::Point> points) {
  if (points.empty()) throw ArgumentError("supremum of an empty set");
  const Model& m = tau.model();
  for (const auto& p : points) detail::require_point(tau, p);
  typename Model::Point acc = m.canonical(points.front());
  for (const auto& p : points.subspan(1)) {
    acc = tau.is_rooted() ? m.median(tau.root(), acc, p) : m.ray_merge(tau.end(), acc, p);
  }
  return acc;
}

/// A rational or +infinity.
struct HausdorffValue {
  bool infinite = false;
  Rational value;
  static HausdorffValue finite(Rational v) { return {false, std::move(v)}; }
  static HausdorffValue infinity() { return {true, Rational(0)}; }
  std::string str() const { return infinite ? "inf" : value.str(); }
  friend bool operator==(const HausdorffValue&, const HausdorffValue&) = default;
};

/// Hausdorff distance between two orders viewed as closed subsets of X x X with
/// the sum metric. Rooted pairs give the distance of the roots.
template <TreeModel Model>
HausdorffValue hausdorff_distance(const Order<Model>& tau, const Order<Model>& sigma) {
  detail::require_same_model(tau, sigma);
  if (tau.is_rooted() && sigma.is_rooted()) return HausdorffValue::finite(tau.model().dist(tau.root(), sigma.root()));
  if (!tau.is_rooted() && !sigma.is_rooted() && tau.end() == sigma.end()) return HausdorffValue::finite(Rational(0));
  return HausdorffValue::infinity();
}

namespace detail {

// max over a in A of min over b in B of d+(a, b), with A, B relation masks over
// net x net and d+((s,t),(s',t')) = D[s][s'] + D[t][t'].
template <class Int>
Int directed_relation_distance(const std::vector<std::vector<Int>>& d, const std::vector<std::vector<bool>>& from,
                               const std::vector<std::vector<bool>>& to) {
  const std::size_t n = d.size();
  // nearest[s'][t] = min over t' with (s',t') in `to` of D[t][t'].
  std::vector<std::vector<Int>> nearest(n, std::vector<Int>(n));
  for (std::size_t s2 = 0; s2 < n; ++s2) {
    for (std::size_t t = 0; t < n; ++t) {
      bool have = false;
      Int best{};
      for (std::size_t t2 = 0; t2 < n; ++t2) {
        if (to[s2][t2] && (!have || d[t][t2] < best)) {
          best = d[t][t2];
          have = true;
        }
      }
      nearest[s2][t] = best;  // reflexivity guarantees (s2, s2) is present
    }
  }
  Int worst{};
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!from[s][t] || to[s][t]) continue;
      Int best = d[s][0] + nearest[0][t];
      for (std::size_t s2 = 1; s2 < n; ++s2) best = std::min<Int>(best, d[s][s2] + nearest[s2][t]);
      worst = std::max<Int>(worst, best);
    }
  }
  return worst;
}

template <class Int>
Int relation_hausdorff(const std::vector<std::vector<Int>>& d, const std::vector<std::vector<bool>>& a,
                       const std::vector<std::vector<bool>>& b) {
  return std::max<Int>(directed_relation_distance(d, a, b), directed_relation_distance(d, b, a));
}

}  // namespace detail

/// Independent discretized check of hausdorff_distance for rooted orders: the
/// Hausdorff distance between the relation sets restricted to net x net, under
/// the sum metric, in exact arithmetic.
template <TreeModel Model>
Rational hausdorff_oracle(const Order<Model>& tau, const Order<Model>& sigma,
                          std::span<const typename Model::Point> net) {
  detail::require_same_model(tau, sigma);
  if (!tau.is_rooted() || !sigma.is_rooted()) throw ArgumentError("hausdorff_oracle needs two rooted orders");
  if (net.empty()) throw ArgumentError("hausdorff_oracle needs a nonempty net");
  const Model& m = tau.model();
  const std::size_t n = net.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  std::vector<std::vector<bool>> rel_tau(n, std::vector<bool>(n)), rel_sigma(n, std::vector<bool>(n));
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = m.dist(net[i], net[j]);
      scale = boost::multiprecision::lcm(scale, d[i][j].denominator());
      rel_tau[i][j] = compare(tau, net[i], net[j]);
      rel_sigma[i][j] = compare(sigma, net[i], net[j]);
    }
  }
  // Work on the common-denominator integer grid; int64 when it safely fits.
  BigInt largest = 0;
  std::vector<std::vector<BigInt>> scaled(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      scaled[i][j] = d[i][j].numerator() * (scale / d[i][j].denominator());
      largest = std::max(largest, scaled[i][j]);
    }
  }
  BigInt result;
  if (largest < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    std::vector<std::vector<std::int64_t>> small(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) small[i][j] = scaled[i][j].convert_to<std::int64_t>();
    }
    result = detail::relation_hausdorff(small, rel_tau, rel_sigma);
  } else {
    result = detail::relation_hausdorff(scaled, rel_tau, rel_sigma);
  }
  return Rational(result, scale);
}

/// Membership in the basic neighbourhood U(x,y) = {tau : x tau y} minus the order rooted at y.
template <TreeModel Model>
bool in_neighborhood(const Order<Model>& tau, const typename Model::Point& x, const typename Model::Point& y) {
  const Model& m = tau.model();
  detail::require_point(tau, x);
  detail::require_point(tau, y);
  if (m.canonical(x) == m.canonical(y)) throw ArgumentError("neighbourhood U(x,y) needs x != y");
  if (tau.is_rooted() && tau.root() == m.canonical(y)) return false;
  return compare(tau, x, y);
}

template <TreeModel Model>
PointOrEnd<Model> phi(const Order<Model>& tau) {
  if (tau.is_rooted()) return tau.root();
  return tau.end();
}

template <TreeModel Model>
Order<Model> phi_inverse(std::shared_ptr<const Model> model, const PointOrEnd<Model>& v) {
  if (const auto* p = std::get_if<typename Model::Point>(&v)) return Order<Model>::rooted(std::move(model), *p);
  return Order<Model>::at_end(std::move(model), std::get<typename Model::End>(v));
}

/// Convergence of rooted orders toward `target`, judged on a finite sequence:
/// for each probe (x, y) in a neighbourhood of the target, every order in the
/// second half of the sequence (indices >= size/2) must lie in U(x,y).
struct ConvergenceResult {
  bool converges = true;
  std::vector<std::size_t> failing_probes;
};

template <TreeModel Model>
ConvergenceResult check_convergence(
    std::span<const typename Model::Point> roots, const Order<Model>& target,
    std::span<const std::pair<typename Model::Point, typename Model::Point>> probes) {
  if (roots.empty()) throw ArgumentError("convergence check needs a nonempty sequence");
  std::string invalid;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!in_neighborhood(target, probes[i].first, probes[i].second)) {
      invalid += (invalid.empty() ? "" : ", ") + std::to_string(i);
    }
  }
  if (!invalid.empty()) throw ArgumentError("probes not in a neighbourhood of the target: " + invalid);
  ConvergenceResult out;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t k = roots.size() / 2; k < roots.size(); ++k) {
      const auto tau = Order<Model>::rooted(target.model_ptr(), roots[k]);
      if (!in_neighborhood(tau, probes[i].first, probes[i].second)) {
        out.converges = false;
        out.failing_probes.push_back(i);
        break;
      }
    }
  }
  return out;
}

/// Checks on a sample that a rooted order makes the tree an upper semilinear
/// metric join-semilattice: chain additivity, the join identity, semilinearity
/// of upper cones, and the root being greatest.
template <TreeModel Model>
AuditReport audit_rooted_order(const Order<Model>& tau, std::span<const typename Model::Point> sample) {
  if (!tau.is_rooted()) throw ArgumentError("audit_rooted_order needs a rooted order");
  if (sample.empty()) throw ArgumentError("audit needs a nonempty sample");
  const Model& m = tau.model();
  const std::size_t n = sample.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = m.dist(sample[i], sample[j]);
      leq[i][j] = compare(tau, sample[i], sample[j]);
    }
  }
  AuditReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k][j] && d[i][k] + d[k][j] != d[i][j]) {
          report.violations.push_back({"chain-additivity", {i, k, j}, d[i][k] + d[k][j], d[i][j]});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const typename Model::Point pair[] = {sample[i], sample[j]};
      const auto w = sup(tau, std::span<const typename Model::Point>(pair));
      if (!compare(tau, sample[i], w) || !compare(tau, sample[j], w)) {
        report.violations.push_back({"join-upper-bound", {i, j}, std::nullopt, std::nullopt});
      }
      const Rational through = m.dist(sample[i], w) + m.dist(w, sample[j]);
      if (through != d[i][j]) report.violations.push_back({"join-identity", {i, j}, d[i][j], through});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!leq[i][a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (leq[i][b] && !leq[a][b] && !leq[b][a]) {
          report.violations.push_back({"upper-semilinear", {i, a, b}, std::nullopt, std::nullopt});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!compare(tau, sample[i], tau.root())) {
      report.violations.push_back({"root-greatest", {i}, std::nullopt, std::nullopt});
    }
  }
  return report;
}

}  // namespace semitree
