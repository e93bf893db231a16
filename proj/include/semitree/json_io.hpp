#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "semitree/orders.hpp"
#include "semitree/ray_tree.hpp"
#include "semitree/rational.hpp"
#include "semitree/report.hpp"
#include "semitree/semilattice_audit.hpp"
#include "semitree/symmetry.hpp"
#include "semitree/universal_tree.hpp"

// JSON encodings of every domain object. Rationals are exact "p/q" strings;
// decoding failures raise ParseError.
namespace semitree::json_io {

using Json = nlohmann::json;

Json encode(const Rational& r);
Rational decode_rational(const Json& j);

/// [["b", v], ...]
Json encode_segments(const std::vector<Jump>& segments);
std::vector<Jump> decode_segments(const Json& j);

/// {"a": "p/q", "segments": [...]}
Json encode(const UPoint& p);
UPoint decode_upoint(const Json& j);

/// {"nodes": [...], "edges": [[u, v, "p/q" | "inf"], ...], "base": node}
Json encode(const RayTreeTopology& t);
RayTreeTopology decode_topology(const Json& j);

/// {"edge": i, "offset": "p/q"}; decoding also accepts {"node": name}.
Json encode(const Location& p);
Location decode_location(const Json& j, const RayTree& tree);

Json encode(const EndId& e);
Json encode(const UpwardEnd&);
EndId decode_end(const Json& j, const RayTree& tree);
UpwardEnd decode_end(const Json& j, const UniversalTree& tree);

/// {"n": k, "d": [[...]]}
Json encode(const FiniteMetric& m);
FiniteMetric decode_metric(const Json& j);
/// {"leq": [[bool]], "join": [[i | null]]}
Json encode(const FinitePoset& p);
FinitePoset decode_poset(const Json& j);

/// {"g": segments, "lambda": "p/q", "f": segments}; encoded in normal form (f empty).
Json encode(const Similarity& s);
Similarity decode_similarity(const Json& j, const GroupSpec& group);

Json encode(const HausdorffValue& h);

/// {"check", "witness": [...], "lhs", "rhs"}; witnesses rendered by `witness`
/// (indices by default).
Json encode(const Violation& v, const std::function<Json(std::size_t)>& witness = {});
Json encode(const AuditReport& r, const std::function<Json(std::size_t)>& witness = {});

Json encode(const FourPointWitness& w);

// Model-generic point/end helpers.
inline Location decode_point(const Json& j, const RayTree& tree) { return decode_location(j, tree); }
inline UPoint decode_point(const Json& j, const UniversalTree& tree) {
  UPoint p = decode_upoint(j);
  if (!tree.contains(p)) throw ParseError("point " + p.str() + " has values outside " + tree.group().name());
  return p;
}

/// {"kind": "rooted", "point": ...} or {"kind": "end", "end": ...}
template <class Model>
Json encode(const Order<Model>& tau) {
  if (tau.is_rooted()) return Json{{"kind", "rooted"}, {"point", encode(tau.root())}};
  return Json{{"kind", "end"}, {"end", encode(tau.end())}};
}

template <class Model>
Order<Model> decode_order(const Json& j, std::shared_ptr<const Model> model) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("order needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rooted") {
    if (!j.contains("point")) throw ParseError("rooted order needs a \"point\"");
    return Order<Model>::rooted(model, decode_point(j.at("point"), *model));
  }
  if (kind == "end") {
    if (!j.contains("end")) throw ParseError("end order needs an \"end\"");
    return Order<Model>::at_end(model, decode_end(j.at("end"), *model));
  }
  throw ParseError("unknown order kind '" + kind + "'");
}

/// {"kind": "point", "point": ...} or {"kind": "end", "end": ...}
template <class P, class E>
Json encode(const std::variant<P, E>& v) {
  if (const auto* p = std::get_if<P>(&v)) return Json{{"kind", "point"}, {"point", encode(*p)}};
  return Json{{"kind", "end"}, {"end", encode(std::get<E>(v))}};
}

template <class Model>
PointOrEnd<Model> decode_point_or_end(const Json& j, const Model& model) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("point-or-end needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "point") return decode_point(j.at("point"), model);
  if (kind == "end") return decode_end(j.at("end"), model);
  throw ParseError("unknown point-or-end kind '" + kind + "'");
}

}  // namespace semitree::json_io
