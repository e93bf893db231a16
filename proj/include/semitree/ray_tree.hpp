#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semitree/rational.hpp"

namespace semitree {

/// Edge of a ray tree. An absent length marks an infinite edge (a ray); its
/// far endpoint `v` is then a leaf "at infinity".
struct RayEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::optional<Rational> length;
  bool infinite() const { return !length.has_value(); }
  friend bool operator==(const RayEdge&, const RayEdge&) = default;
};

/// Raw description of a ray tree, as read from input.
struct RayTreeTopology {
  std::vector<std::string> nodes;
  std::vector<RayEdge> edges;
  std::size_t base = 0;
  friend bool operator==(const RayTreeTopology&, const RayTreeTopology&) = default;
};

struct Diagnostic {
  std::string code;  // "cycle", "disconnected", "interior-infinite", ...
  std::string message;
};

/// Returns the first violated invariant, or nothing if the topology is a valid ray tree.
std::optional<Diagnostic> validate(const RayTreeTopology& topology);

inline constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

/// A point of a ray tree: an edge and a finite offset from the edge's first endpoint.
/// The single node of an edgeless tree is (kNoEdge, 0).
struct Location {
  std::size_t edge = kNoEdge;
  Rational offset;
  friend bool operator==(const Location&, const Location&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Location& p) {
    return os << "e" << (p.edge == kNoEdge ? std::string("-") : std::to_string(p.edge)) << "+" << p.offset;
  }
};

/// An end of a ray tree, identified by its infinite edge.
struct EndId {
  std::size_t edge = 0;
  friend bool operator==(const EndId&, const EndId&) = default;
  friend std::ostream& operator<<(std::ostream& os, const EndId& e) { return os << "end" << e.edge; }
};

/// A validated finite metric tree with rational edge lengths and optional rays.
/// Distances are measured exactly; the base node normalizes Busemann functions.
class RayTree {
 public:
  using Point = Location;
  using End = EndId;

  /// Throws InvariantError carrying the diagnostic of `validate`.
  explicit RayTree(RayTreeTopology topology);

  const RayTreeTopology& topology() const { return topology_; }
  std::size_t node_count() const { return topology_.nodes.size(); }
  std::size_t edge_count() const { return topology_.edges.size(); }
  std::size_t base_node() const { return topology_.base; }

  /// Node index by name; throws ArgumentError if unknown.
  std::size_t node_index(const std::string& name) const;
  /// Canonical location of a finite node.
  Location node_location(std::size_t node) const;
  Location base_location() const { return node_location(topology_.base); }
  /// Location at `offset` along edge `edge`, canonicalized.
  Location at(std::size_t edge, const Rational& offset) const;

  bool contains(const Location& p) const;
  /// Node locations are rewritten to (lowest incident edge, 0 or length).
  Location canonical(const Location& p) const;
  /// Node name if the location is a node, else "e<edge>+<offset>".
  std::string label(const Location& p) const;
  /// Exact distance of a location from the base node.
  Rational depth(const Location& p) const;

  Rational dist(const Location& p, const Location& q) const;
  Location median(const Location& x, const Location& y, const Location& z) const;
  /// Point at arclength s from p along [pq]; throws RangeError outside [0, dist].
  Location segment_point(const Location& p, const Location& q, const Rational& s) const;

  std::vector<EndId> ends() const;
  bool valid_end(EndId e) const;
  /// Busemann function of the end, normalized to vanish at the base node.
  Rational busemann(EndId e, const Location& y) const;
  /// Point at distance s from y along the ray [y, e).
  Location ray_point(EndId e, const Location& y, const Rational& s) const;
  /// Merge point of the rays [x, e) and [y, e).
  Location ray_merge(EndId e, const Location& x, const Location& y) const;
  /// Nearest point to x of the horoball {z : busemann(e, z) <= busemann(e, y)}.
  Location horoball_projection(EndId e, const Location& y, const Location& x) const;

 private:
  // A point seen from the base: `key` is the node at or just below it (the child
  // endpoint of its edge), `depth` its distance from the base.
  struct Place {
    std::size_t key;
    Rational depth;
  };

  Place place_of(const Location& p) const;
  Location location_of(const Place& p) const;
  bool node_depth_le(std::size_t node, const Rational& d) const;
  std::size_t lca(std::size_t a, std::size_t b) const;
  Place meet(const Place& x, const Place& y) const;
  Place ancestor_at(const Place& p, const Rational& d) const;
  Place far_place(EndId e, const Rational& beyond) const;
  void require(const Location& p) const;
  void require(EndId e) const;

  RayTreeTopology topology_;
  std::vector<std::size_t> parent_;       // parent node; base is its own parent
  std::vector<std::size_t> parent_edge_;  // edge to parent; kNoEdge at base
  std::vector<std::size_t> hops_;         // combinatorial depth
  std::vector<Rational> depth_;           // metric depth; meaningless at infinity
  std::vector<bool> at_infinity_;
};

}  // namespace semitree
