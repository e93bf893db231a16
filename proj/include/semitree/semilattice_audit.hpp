#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semitree/errors.hpp"
#include "semitree/ray_tree.hpp"
#include "semitree/rational.hpp"
#include "semitree/report.hpp"

namespace semitree {

/// Distance matrix of a finite sample.
struct FiniteMetric {
  std::vector<std::vector<Rational>> d;
  std::size_t size() const { return d.size(); }
};

/// Order relation and join table of a finite sample. join[i][j] may be absent.
struct FinitePoset {
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::optional<std::size_t>>> join;
  std::size_t size() const { return leq.size(); }
};

/// First violated metric invariant (shape, symmetry, zero diagonal, positivity, triangle).
std::optional<std::string> metric_violation(const FiniteMetric& m);
/// First violated poset invariant (shape, order axioms, joins being least upper bounds).
std::optional<std::string> poset_violation(const FinitePoset& p);

/// d(i,j) + d(k,l) exceeded max(d(i,k) + d(j,l), d(i,l) + d(j,k)).
struct FourPointWitness {
  std::array<std::size_t, 4> quad{};
  Rational lhs;
  Rational rhs;
};

/// Raised when a matrix that must be a tree metric is not.
class FourPointError : public DomainError {
 public:
  explicit FourPointError(FourPointWitness w);
  const FourPointWitness& witness() const { return witness_; }
  const char* kind() const noexcept override { return "four-point"; }

 private:
  FourPointWitness witness_;
};

/// Exhaustive four-point test. Throws InvariantError if `m` is not a valid metric.
std::optional<FourPointWitness> check_four_point(const FiniteMetric& m);

/// Chain additivity for every sampled chain and the join identity for every pair.
/// Missing join entries are reported as "missing-join"; an invalid poset throws.
AuditReport check_metric_semilattice(const FiniteMetric& m, const FinitePoset& p);

/// (base, a, b) with base <= a, base <= b and a, b incomparable.
std::optional<std::array<std::size_t, 3>> check_upper_semilinear(const FinitePoset& p);

/// The k x k integer grid with the l1 metric, coordinatewise order and
/// coordinatewise maximum as join. Point (x, y) has index y*k + x.
std::pair<FiniteMetric, FinitePoset> l1_plane_sample(std::size_t k);

struct Realization {
  RayTree tree;
  std::vector<Location> points;
};

/// Builds a finite tree whose distances between the embedded samples reproduce
/// `m` exactly. Points are inserted in order, each attached at its largest Gromov
/// product with point 0 (lowest index on ties). Throws FourPointError if `m` is
/// not a tree metric.
Realization realize_tree(const FiniteMetric& m);

/// Distance matrix of points in a model.
template <class Model>
FiniteMetric sample_metric(const Model& model, std::span<const typename Model::Point> points) {
  FiniteMetric out;
  out.d.assign(points.size(), std::vector<Rational>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) out.d[i][j] = model.dist(points[i], points[j]);
  }
  return out;
}

}  // namespace semitree
