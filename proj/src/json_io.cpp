#include "semitree/json_io.hpp"

#include <algorithm>

namespace semitree::json_io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::string node_name(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError("node identifiers must be strings or integers");
}

}  // namespace

Json encode(const Rational& r) { return r.str(); }

Rational decode_rational(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("rationals must be \"p/q\" strings or integers, got " + j.dump());
}

Json encode_segments(const std::vector<Jump>& segments) {
  Json out = Json::array();
  for (const Jump& s : segments) out.push_back(Json::array({encode(s.breakpoint), s.value}));
  return out;
}

std::vector<Jump> decode_segments(const Json& j) {
  return guarded("segments", [&] {
    if (!j.is_array()) throw ParseError("segments must be an array");
    std::vector<Jump> out;
    for (const Json& s : j) {
      if (!s.is_array() || s.size() != 2) throw ParseError("segment must be [breakpoint, value]");
      out.push_back(Jump{decode_rational(s.at(0)), s.at(1).get<GroupElem>()});
    }
    return out;
  });
}

Json encode(const UPoint& p) { return Json{{"a", encode(p.a())}, {"segments", encode_segments(p.segments())}}; }

UPoint decode_upoint(const Json& j) {
  return guarded("point", [&] {
    if (!j.is_object() || !j.contains("a")) throw ParseError("point needs an \"a\"");
    const Json segments = j.value("segments", Json::array());
    try {
      return UPoint(decode_rational(j.at("a")), decode_segments(segments));
    } catch (const InvariantError& e) {
      throw ParseError(std::string("non-canonical point: ") + e.what());
    }
  });
}

Json encode(const RayTreeTopology& t) {
  Json edges = Json::array();
  for (const RayEdge& e : t.edges) {
    edges.push_back(Json::array({t.nodes[e.u], t.nodes[e.v], e.length ? encode(*e.length) : Json("inf")}));
  }
  return Json{{"nodes", t.nodes}, {"edges", edges}, {"base", t.nodes[t.base]}};
}

RayTreeTopology decode_topology(const Json& j) {
  return guarded("tree", [&] {
    RayTreeTopology t;
    for (const Json& n : j.at("nodes")) t.nodes.push_back(node_name(n));
    const auto index = [&](const Json& ref) {
      const std::string name = node_name(ref);
      const auto it = std::find(t.nodes.begin(), t.nodes.end(), name);
      if (it == t.nodes.end()) throw ParseError("edge references unknown node '" + name + "'");
      return static_cast<std::size_t>(it - t.nodes.begin());
    };
    for (const Json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [u, v, length]");
      RayEdge edge{index(e.at(0)), index(e.at(1)), std::nullopt};
      if (!(e.at(2).is_string() && e.at(2).get<std::string>() == "inf")) edge.length = decode_rational(e.at(2));
      t.edges.push_back(edge);
    }
    t.base = j.contains("base") ? index(j.at("base")) : 0;
    return t;
  });
}

Json encode(const Location& p) {
  return Json{{"edge", p.edge == kNoEdge ? Json(nullptr) : Json(p.edge)}, {"offset", encode(p.offset)}};
}

Location decode_location(const Json& j, const RayTree& tree) {
  return guarded("location", [&]() -> Location {
    if (!j.is_object()) throw ParseError("location must be an object");
    if (j.contains("node")) {
      try {
        return tree.node_location(tree.node_index(node_name(j.at("node"))));
      } catch (const ArgumentError& e) {
        throw ParseError(e.what());
      }
    }
    Location p{j.at("edge").is_null() ? kNoEdge : j.at("edge").get<std::size_t>(), decode_rational(j.at("offset"))};
    if (!tree.contains(p)) throw ParseError("location " + j.dump() + " is not a point of the tree");
    return tree.canonical(p);
  });
}

Json encode(const EndId& e) { return e.edge; }
Json encode(const UpwardEnd&) { return "omega"; }

EndId decode_end(const Json& j, const RayTree& tree) {
  if (!j.is_number_integer()) throw ParseError("ray-tree ends are infinite edge indices");
  const EndId e{j.get<std::size_t>()};
  if (!tree.valid_end(e)) throw ParseError("edge " + j.dump() + " is not an infinite edge");
  return e;
}

UpwardEnd decode_end(const Json& j, const UniversalTree&) {
  if (!(j.is_string() && j.get<std::string>() == "omega")) throw ParseError("the universal tree's only end is \"omega\"");
  return UpwardEnd{};
}

Json encode(const FiniteMetric& m) {
  Json rows = Json::array();
  for (const auto& row : m.d) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(encode(x));
    rows.push_back(r);
  }
  return Json{{"n", m.size()}, {"d", rows}};
}

FiniteMetric decode_metric(const Json& j) {
  return guarded("matrix", [&] {
    FiniteMetric m;
    for (const Json& row : j.at("d")) {
      std::vector<Rational> r;
      for (const Json& x : row) r.push_back(decode_rational(x));
      m.d.push_back(std::move(r));
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != m.size()) throw ParseError("\"n\" does not match \"d\"");
    for (const auto& row : m.d) {
      if (row.size() != m.size()) throw ParseError("distance matrix must be square");
    }
    return m;
  });
}

Json encode(const FinitePoset& p) {
  Json join = Json::array();
  for (const auto& row : p.join) {
    Json r = Json::array();
    for (const auto& w : row) r.push_back(w ? Json(*w) : Json(nullptr));
    join.push_back(r);
  }
  Json leq = Json::array();
  for (const auto& row : p.leq) leq.push_back(std::vector<bool>(row.begin(), row.end()));
  return Json{{"leq", leq}, {"join", join}};
}

FinitePoset decode_poset(const Json& j) {
  return guarded("poset", [&] {
    FinitePoset p;
    for (const Json& row : j.at("leq")) p.leq.push_back(row.get<std::vector<bool>>());
    for (const Json& row : j.at("join")) {
      std::vector<std::optional<std::size_t>> r;
      for (const Json& w : row) r.push_back(w.is_null() ? std::nullopt : std::optional<std::size_t>(w.get<std::size_t>()));
      p.join.push_back(std::move(r));
    }
    return p;
  });
}

Json encode(const Similarity& s) {
  return Json{{"g", encode_segments(s.shift().segments())}, {"lambda", encode(s.coefficient())}, {"f", Json::array()}};
}

Similarity decode_similarity(const Json& j, const GroupSpec& group) {
  return guarded("similarity", [&] {
    try {
      const StepFunction g(Rational(0), decode_segments(j.value("g", Json::array())));
      const StepFunction f(Rational(0), decode_segments(j.value("f", Json::array())));
      return Similarity::from_parts(group, g, decode_rational(j.at("lambda")), f);
    } catch (const InvariantError& e) {
      throw ParseError(std::string("non-canonical translation: ") + e.what());
    }
  });
}

Json encode(const HausdorffValue& h) { return h.str(); }

Json encode(const Violation& v, const std::function<Json(std::size_t)>& witness) {
  Json w = Json::array();
  for (std::size_t i : v.witness) w.push_back(witness ? witness(i) : Json(i));
  Json out{{"check", v.check}, {"witness", w}};
  out["lhs"] = v.lhs ? encode(*v.lhs) : Json(nullptr);
  out["rhs"] = v.rhs ? encode(*v.rhs) : Json(nullptr);
  return out;
}

Json encode(const AuditReport& r, const std::function<Json(std::size_t)>& witness) {
  Json out = Json::array();
  for (const Violation& v : r.violations) out.push_back(encode(v, witness));
  return out;
}

Json encode(const FourPointWitness& w) {
  return Json{{"quadruple", w.quad}, {"lhs", encode(w.lhs)}, {"rhs", encode(w.rhs)}};
}

}  // namespace semitree::json_io
