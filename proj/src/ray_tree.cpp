#include "semitree/ray_tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "semitree/errors.hpp"

namespace semitree {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::optional<Diagnostic> validate(const RayTreeTopology& t) {
  const std::size_t n = t.nodes.size();
  if (n == 0) return Diagnostic{"empty", "tree has no nodes"};
  if (t.base >= n) return Diagnostic{"bad-base", "base node index out of range"};
  if (std::set<std::string>(t.nodes.begin(), t.nodes.end()).size() != n) {
    return Diagnostic{"duplicate-node", "node names must be distinct"};
  }
  DisjointSets sets(n);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const RayEdge& e = t.edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (e.u >= n || e.v >= n) return Diagnostic{"bad-endpoint", where + " references a missing node"};
    if (e.length && e.length->sign() <= 0) {
      return Diagnostic{"nonpositive-length", where + " has length " + e.length->str()};
    }
    if (!sets.unite(e.u, e.v)) return Diagnostic{"cycle", where + " closes a cycle"};
    ++degree[e.u];
    ++degree[e.v];
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (sets.find(i) != sets.find(0)) {
      return Diagnostic{"disconnected", "node '" + t.nodes[i] + "' is not connected to '" + t.nodes[0] + "'"};
    }
  }
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const RayEdge& e = t.edges[i];
    if (!e.infinite()) continue;
    if (degree[e.v] != 1) {
      return Diagnostic{"interior-infinite", "infinite edge " + std::to_string(i) + " does not end in a leaf"};
    }
    if (e.v == t.base) {
      return Diagnostic{"base-at-infinity", "base node is the far end of infinite edge " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

RayTree::RayTree(RayTreeTopology topology) : topology_(std::move(topology)) {
  if (auto diag = validate(topology_)) throw InvariantError(diag->code + ": " + diag->message);
  const std::size_t n = node_count();
  parent_.assign(n, kNoEdge);
  parent_edge_.assign(n, kNoEdge);
  hops_.assign(n, 0);
  depth_.assign(n, Rational(0));
  at_infinity_.assign(n, false);

  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < edge_count(); ++i) {
    incident[topology_.edges[i].u].push_back(i);
    incident[topology_.edges[i].v].push_back(i);
  }
  const std::size_t base = topology_.base;
  parent_[base] = base;
  std::queue<std::size_t> frontier;
  frontier.push(base);
  while (!frontier.empty()) {
    const std::size_t node = frontier.front();
    frontier.pop();
    for (std::size_t ei : incident[node]) {
      const RayEdge& e = topology_.edges[ei];
      const std::size_t other = e.u == node ? e.v : e.u;
      if (parent_[other] != kNoEdge) continue;
      parent_[other] = node;
      parent_edge_[other] = ei;
      hops_[other] = hops_[node] + 1;
      if (e.infinite()) {
        at_infinity_[other] = true;
      } else {
        depth_[other] = depth_[node] + *e.length;
      }
      frontier.push(other);
    }
  }
}

std::size_t RayTree::node_index(const std::string& name) const {
  const auto it = std::find(topology_.nodes.begin(), topology_.nodes.end(), name);
  if (it == topology_.nodes.end()) throw ArgumentError("unknown node '" + name + "'");
  return static_cast<std::size_t>(it - topology_.nodes.begin());
}

Location RayTree::node_location(std::size_t node) const {
  if (node >= node_count()) throw ArgumentError("node index out of range");
  if (at_infinity_[node]) throw ArgumentError("node '" + topology_.nodes[node] + "' lies at infinity");
  for (std::size_t i = 0; i < edge_count(); ++i) {
    const RayEdge& e = topology_.edges[i];
    if (e.u == node) return Location{i, Rational(0)};
    if (e.v == node) return Location{i, *e.length};
  }
  return Location{kNoEdge, Rational(0)};
}

Location RayTree::at(std::size_t edge, const Rational& offset) const { return canonical(Location{edge, offset}); }

bool RayTree::contains(const Location& p) const {
  if (p.edge == kNoEdge) return edge_count() == 0 && p.offset.is_zero();
  if (p.edge >= edge_count() || p.offset.sign() < 0) return false;
  const RayEdge& e = topology_.edges[p.edge];
  return e.infinite() || p.offset <= *e.length;
}

void RayTree::require(const Location& p) const {
  if (!contains(p)) {
    throw ModelMismatch("location (edge " + (p.edge == kNoEdge ? std::string("none") : std::to_string(p.edge)) +
                        ", offset " + p.offset.str() + ") is not a point of this tree");
  }
}

void RayTree::require(EndId e) const {
  if (!valid_end(e)) throw ModelMismatch("edge " + std::to_string(e.edge) + " is not an end of this tree");
}

Location RayTree::canonical(const Location& p) const { return location_of(place_of(p)); }

RayTree::Place RayTree::place_of(const Location& p) const {
  require(p);
  if (p.edge == kNoEdge) return Place{topology_.base, Rational(0)};
  const RayEdge& e = topology_.edges[p.edge];
  const bool u_is_parent = parent_edge_[e.v] == p.edge;
  const std::size_t top = u_is_parent ? e.u : e.v;
  const std::size_t bottom = u_is_parent ? e.v : e.u;
  const Rational from_top = u_is_parent ? p.offset : *e.length - p.offset;
  if (from_top.is_zero()) return Place{top, depth_[top]};
  return Place{bottom, depth_[top] + from_top};
}

Location RayTree::location_of(const Place& p) const {
  if (!at_infinity_[p.key] && p.depth == depth_[p.key]) return node_location(p.key);
  const std::size_t ei = parent_edge_[p.key];
  const RayEdge& e = topology_.edges[ei];
  const Rational from_top = p.depth - depth_[parent_[p.key]];
  return Location{ei, e.u == parent_[p.key] ? from_top : *e.length - from_top};
}

std::string RayTree::label(const Location& p) const {
  const Place pl = place_of(p);
  if (!at_infinity_[pl.key] && pl.depth == depth_[pl.key]) return topology_.nodes[pl.key];
  const Location c = location_of(pl);
  return "e" + std::to_string(c.edge) + "+" + c.offset.str();
}

Rational RayTree::depth(const Location& p) const { return place_of(p).depth; }

std::size_t RayTree::lca(std::size_t a, std::size_t b) const {
  while (hops_[a] > hops_[b]) a = parent_[a];
  while (hops_[b] > hops_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

RayTree::Place RayTree::meet(const Place& x, const Place& y) const {
  const std::size_t a = lca(x.key, y.key);
  if (a == x.key || a == y.key) return x.depth <= y.depth ? x : y;
  return Place{a, depth_[a]};
}

RayTree::Place RayTree::ancestor_at(const Place& p, const Rational& d) const {
  std::size_t key = p.key;
  while (key != topology_.base && depth_[parent_[key]] >= d) key = parent_[key];
  return Place{key, d};
}

RayTree::Place RayTree::far_place(EndId e, const Rational& beyond) const {
  const RayEdge& edge = topology_.edges[e.edge];
  return Place{edge.v, std::max(beyond, depth_[edge.u]) + Rational(1)};
}

Rational RayTree::dist(const Location& p, const Location& q) const {
  const Place a = place_of(p);
  const Place b = place_of(q);
  const Place m = meet(a, b);
  return a.depth + b.depth - m.depth - m.depth;
}

Location RayTree::median(const Location& x, const Location& y, const Location& z) const {
  const Place a = place_of(x);
  const Place b = place_of(y);
  const Place c = place_of(z);
  // With the base as root, the deepest pairwise meet is the median.
  Place best = meet(a, b);
  for (const Place& m : {meet(a, c), meet(b, c)}) {
    if (m.depth > best.depth) best = m;
  }
  return location_of(best);
}

Location RayTree::segment_point(const Location& p, const Location& q, const Rational& s) const {
  const Place a = place_of(p);
  const Place b = place_of(q);
  const Place m = meet(a, b);
  const Rational up = a.depth - m.depth;
  const Rational total = up + b.depth - m.depth;
  if (s.sign() < 0 || s > total) throw RangeError("segment parameter " + s.str() + " outside [0, " + total.str() + "]");
  if (s <= up) return location_of(ancestor_at(a, a.depth - s));
  return location_of(ancestor_at(b, b.depth - (total - s)));
}

std::vector<EndId> RayTree::ends() const {
  std::vector<EndId> out;
  for (std::size_t i = 0; i < edge_count(); ++i) {
    if (topology_.edges[i].infinite()) out.push_back(EndId{i});
  }
  return out;
}

bool RayTree::valid_end(EndId e) const { return e.edge < edge_count() && topology_.edges[e.edge].infinite(); }

Rational RayTree::busemann(EndId e, const Location& y) const {
  require(e);
  const Place py = place_of(y);
  const Place m = meet(py, far_place(e, py.depth));
  return py.depth - m.depth - m.depth;
}

Location RayTree::ray_point(EndId e, const Location& y, const Rational& s) const {
  require(e);
  if (s.sign() < 0) throw RangeError("ray parameter must be nonnegative");
  const Place py = place_of(y);
  const Place far = far_place(e, py.depth + s);
  const Place m = meet(py, far);
  const Rational up = py.depth - m.depth;
  if (s <= up) return location_of(ancestor_at(py, py.depth - s));
  return location_of(ancestor_at(far, m.depth + (s - up)));
}

Location RayTree::ray_merge(EndId e, const Location& x, const Location& y) const {
  require(e);
  const Place a = place_of(x);
  const Place b = place_of(y);
  const Place c = far_place(e, std::max(a.depth, b.depth));
  Place best = meet(a, b);
  for (const Place& m : {meet(a, c), meet(b, c)}) {
    if (m.depth > best.depth) best = m;
  }
  return location_of(best);
}

Location RayTree::horoball_projection(EndId e, const Location& y, const Location& x) const {
  const Rational bx = busemann(e, x);
  const Rational by = busemann(e, y);
  if (bx <= by) return canonical(x);
  return ray_point(e, x, bx - by);
}

}  // namespace semitree
