#include "semitree/semilattice_audit.hpp"

#include <algorithm>
#include <functional>

namespace semitree {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

std::optional<std::string> metric_violation(const FiniteMetric& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m.d[i].size() != n) return "row " + idx(i) + " has wrong length";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.d[i][i].is_zero()) return "nonzero diagonal at " + idx(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.d[i][j] != m.d[j][i]) return "asymmetric at (" + idx(i) + "," + idx(j) + ")";
      if (m.d[i][j].sign() <= 0) return "nonpositive distance at (" + idx(i) + "," + idx(j) + ")";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (m.d[i][j] > m.d[i][k] + m.d[k][j]) {
          return "triangle inequality fails for (" + idx(i) + "," + idx(j) + ") via " + idx(k);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> poset_violation(const FinitePoset& p) {
  const std::size_t n = p.size();
  if (p.join.size() != n) return "join table has wrong size";
  for (std::size_t i = 0; i < n; ++i) {
    if (p.leq[i].size() != n || p.join[i].size() != n) return "row " + idx(i) + " has wrong length";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.leq[i][i]) return "not reflexive at " + idx(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && p.leq[i][j] && p.leq[j][i]) return "not antisymmetric at (" + idx(i) + "," + idx(j) + ")";
      for (std::size_t k = 0; k < n; ++k) {
        if (p.leq[i][j] && p.leq[j][k] && !p.leq[i][k]) {
          return "not transitive at (" + idx(i) + "," + idx(j) + "," + idx(k) + ")";
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.join[i][j]) continue;
      const std::size_t w = *p.join[i][j];
      const std::string where = "join(" + idx(i) + "," + idx(j) + ")";
      if (w >= n) return where + " out of range";
      if (!p.leq[i][w] || !p.leq[j][w]) return where + " is not an upper bound";
      for (std::size_t u = 0; u < n; ++u) {
        if (p.leq[i][u] && p.leq[j][u] && !p.leq[w][u]) return where + " is not least";
      }
    }
  }
  return std::nullopt;
}

FourPointError::FourPointError(FourPointWitness w)
    : DomainError("four-point condition fails at (" + idx(w.quad[0]) + "," + idx(w.quad[1]) + "," + idx(w.quad[2]) +
                  "," + idx(w.quad[3]) + "): " + w.lhs.str() + " > " + w.rhs.str()),
      witness_(std::move(w)) {}

std::optional<FourPointWitness> check_four_point(const FiniteMetric& m) {
  if (auto bad = metric_violation(m)) throw InvariantError("invalid metric: " + *bad);
  const auto& d = m.d;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          // The three pairings of {i,j,k,l}; each must be at most the larger of the other two.
          const std::array<std::pair<std::array<std::size_t, 4>, Rational>, 3> sums = {{
              {{i, j, k, l}, d[i][j] + d[k][l]},
              {{i, k, j, l}, d[i][k] + d[j][l]},
              {{i, l, j, k}, d[i][l] + d[j][k]},
          }};
          for (std::size_t s = 0; s < 3; ++s) {
            const Rational& other = std::max(sums[(s + 1) % 3].second, sums[(s + 2) % 3].second);
            if (sums[s].second > other) return FourPointWitness{sums[s].first, sums[s].second, other};
          }
        }
      }
    }
  }
  return std::nullopt;
}

AuditReport check_metric_semilattice(const FiniteMetric& m, const FinitePoset& p) {
  if (auto bad = metric_violation(m)) throw InvariantError("invalid metric: " + *bad);
  if (auto bad = poset_violation(p)) throw InvariantError("invalid poset: " + *bad);
  if (m.size() != p.size()) throw ArgumentError("metric and poset sizes differ");
  const auto& d = m.d;
  const std::size_t n = m.size();
  AuditReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!p.leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.leq[k][j] && d[i][k] + d[k][j] != d[i][j]) {
          report.violations.push_back({"chain-additivity", {i, k, j}, d[i][k] + d[k][j], d[i][j]});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!p.join[i][j]) {
        report.violations.push_back({"missing-join", {i, j}, std::nullopt, std::nullopt});
        continue;
      }
      const std::size_t w = *p.join[i][j];
      if (d[i][j] != d[i][w] + d[w][j]) {
        report.violations.push_back({"join-identity", {i, j, w}, d[i][j], d[i][w] + d[w][j]});
      }
    }
  }
  return report;
}

std::optional<std::array<std::size_t, 3>> check_upper_semilinear(const FinitePoset& p) {
  if (auto bad = poset_violation(p)) throw InvariantError("invalid poset: " + *bad);
  const std::size_t n = p.size();
  for (std::size_t base = 0; base < n; ++base) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!p.leq[base][a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (p.leq[base][b] && !p.leq[a][b] && !p.leq[b][a]) return std::array<std::size_t, 3>{base, a, b};
      }
    }
  }
  return std::nullopt;
}

std::pair<FiniteMetric, FinitePoset> l1_plane_sample(std::size_t k) {
  if (k < 2) throw ArgumentError("l1 plane sample needs k >= 2");
  const std::size_t n = k * k;
  FiniteMetric m;
  FinitePoset p;
  m.d.assign(n, std::vector<Rational>(n));
  p.leq.assign(n, std::vector<bool>(n));
  p.join.assign(n, std::vector<std::optional<std::size_t>>(n));
  const auto coord = [k](std::size_t i) { return std::pair<long, long>(static_cast<long>(i % k), static_cast<long>(i / k)); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto [x1, y1] = coord(i);
      const auto [x2, y2] = coord(j);
      m.d[i][j] = Rational(std::labs(x1 - x2) + std::labs(y1 - y2));
      p.leq[i][j] = x1 <= x2 && y1 <= y2;
      p.join[i][j] = static_cast<std::size_t>(std::max(y1, y2)) * k + static_cast<std::size_t>(std::max(x1, x2));
    }
  }
  return {std::move(m), std::move(p)};
}

namespace {

// Mutable tree under construction; nodes 0.. carry names, edges are finite.
struct TreeBuilder {
  std::vector<std::string> names;
  std::vector<RayEdge> edges;
  std::size_t steiner = 0;

  std::size_t add_node(std::string name) {
    names.push_back(std::move(name));
    return names.size() - 1;
  }

  // Edges along the unique path from `from` to `to`, as (edge index, node reached).
  std::vector<std::pair<std::size_t, std::size_t>> path(std::size_t from, std::size_t to) const {
    std::vector<std::pair<std::size_t, std::size_t>> trail;
    std::vector<bool> seen(names.size(), false);
    std::function<bool(std::size_t)> dfs = [&](std::size_t node) {
      if (node == to) return true;
      seen[node] = true;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        std::size_t next = names.size();
        if (edges[e].u == node) next = edges[e].v;
        if (edges[e].v == node) next = edges[e].u;
        if (next == names.size() || seen[next]) continue;
        trail.emplace_back(e, next);
        if (dfs(next)) return true;
        trail.pop_back();
      }
      return false;
    };
    dfs(from);
    return trail;
  }

  // Node at distance g from `from` along the path to `to`, splitting an edge if needed.
  std::size_t locate(std::size_t from, std::size_t to, const Rational& g) {
    std::size_t current = from;
    Rational walked;
    for (const auto& [e, next] : path(from, to)) {
      if (walked == g) return current;
      const Rational len = *edges[e].length;
      if (g < walked + len) {
        const std::size_t mid = add_node("s" + std::to_string(steiner++));
        const Rational head = g - walked;
        edges[e] = RayEdge{current, mid, head};
        edges.push_back(RayEdge{mid, next, len - head});
        return mid;
      }
      walked += len;
      current = next;
    }
    return current;
  }
};

}  // namespace

Realization realize_tree(const FiniteMetric& m) {
  if (m.size() == 0) throw ArgumentError("cannot realize an empty metric");
  if (auto witness = check_four_point(m)) throw FourPointError(*witness);
  const auto& d = m.d;
  const std::size_t n = m.size();
  TreeBuilder b;
  std::vector<std::size_t> node_of(n);
  node_of[0] = b.add_node("p0");
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t target = 0;
    Rational best;
    for (std::size_t j = 1; j < k; ++j) {
      const Rational gromov = (d[0][k] + d[0][j] - d[j][k]) / Rational(2);
      if (gromov.sign() < 0) throw InvariantError("negative Gromov product");
      if (gromov > best) {
        best = gromov;
        target = j;
      }
    }
    const std::size_t attach = b.locate(node_of[0], node_of[target], best);
    const Rational pendant = d[0][k] - best;
    if (pendant.is_zero()) {
      b.names[attach] = "p" + std::to_string(k);
      node_of[k] = attach;
    } else {
      node_of[k] = b.add_node("p" + std::to_string(k));
      b.edges.push_back(RayEdge{attach, node_of[k], pendant});
    }
  }
  RayTree tree(RayTreeTopology{b.names, b.edges, node_of[0]});
  std::vector<Location> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(tree.node_location(node_of[i]));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (tree.dist(points[i], points[j]) != d[i][j]) throw InvariantError("realization does not reproduce the metric");
    }
  }
  return Realization{std::move(tree), std::move(points)};
}

}  // namespace semitree
