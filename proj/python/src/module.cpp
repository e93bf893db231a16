#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semitree/errors.hpp"
#include "semitree/json_io.hpp"
#include "semitree/orders.hpp"
#include "semitree/ray_tree.hpp"
#include "semitree/semilattice_audit.hpp"
#include "semitree/symmetry.hpp"
#include "semitree/universal_tree.hpp"

namespace py = pybind11;
using namespace semitree;

// Rational <-> fractions.Fraction. Accepts int, Fraction, or a "p/q" string.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = Rational::parse(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src)) return false;
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator") && !py::isinstance<py::float_>(src)) {
        const std::string num = py::str(src.attr("numerator"));
        const std::string den = py::str(src.attr("denominator"));
        value = Rational::parse(num + "/" + den);
        return true;
      }
    } catch (const ParseError&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.str()).release();
  }
};
}  // namespace pybind11::detail

namespace {

using Segments = std::vector<std::pair<Rational, GroupElem>>;

std::vector<Jump> to_jumps(const Segments& segs) {
  std::vector<Jump> out;
  out.reserve(segs.size());
  for (const auto& [b, v] : segs) out.push_back(Jump{b, v});
  return out;
}

Segments from_jumps(const std::vector<Jump>& jumps) {
  Segments out;
  out.reserve(jumps.size());
  for (const auto& j : jumps) out.emplace_back(j.breakpoint, j.value);
  return out;
}

template <class T>
std::string repr(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::shared_ptr<RayTree> tree_from_json(const std::string& text) {
  json_io::Json j;
  try {
    j = json_io::Json::parse(text);
  } catch (const json_io::Json::exception& e) {
    throw ParseError(e.what());
  }
  return std::make_shared<RayTree>(json_io::decode_topology(j));
}

FiniteMetric to_metric(const std::vector<std::vector<Rational>>& d) { return FiniteMetric{d}; }

py::dict witness_dict(const FourPointWitness& w) {
  py::dict out;
  out["quadruple"] = py::make_tuple(w.quad[0], w.quad[1], w.quad[2], w.quad[3]);
  out["lhs"] = w.lhs;
  out["rhs"] = w.rhs;
  return out;
}

py::list violations(const AuditReport& r) {
  py::list out;
  for (const auto& v : r.violations) {
    py::dict d;
    d["check"] = v.check;
    d["witness"] = v.witness;
    out.append(d);
  }
  return out;
}

template <class Model>
void bind_order(py::module_& m, const char* name) {
  using O = Order<Model>;
  using Point = typename Model::Point;
  py::class_<O>(m, name)
      .def_static("rooted", &O::rooted, py::arg("model"), py::arg("root"))
      .def_static("at_end", &O::at_end, py::arg("model"), py::arg("end"))
      .def_property_readonly("is_rooted", &O::is_rooted)
      .def_property_readonly("root", [](const O& o) { return o.root(); })
      .def_property_readonly("end", [](const O& o) { return o.end(); })
      .def("compare", [](const O& o, const Point& x, const Point& y) { return compare(o, x, y); })
      .def("sup", [](const O& o, const std::vector<Point>& pts) { return sup(o, std::span<const Point>(pts)); })
      .def("hausdorff",
           [](const O& a, const O& b) -> py::object {
             const HausdorffValue h = hausdorff_distance(a, b);
             if (h.infinite) return py::float_(py::module_::import("math").attr("inf"));
             return py::cast(h.value);
           })
      .def("phi",
           [](const O& o) -> py::object {
             const auto v = phi(o);
             if (const auto* p = std::get_if<Point>(&v)) return py::cast(*p);
             return py::cast(std::get<typename Model::End>(v));
           })
      .def("audit",
           [](const O& o, const std::vector<Point>& sample) {
             return violations(audit_rooted_order(o, std::span<const Point>(sample)));
           })
      .def("to_json", [](const O& o) { return json_io::encode(o).dump(); })
      .def(py::self == py::self);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact metric trees, rooted and end orders, and similarities of the universal tree.";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FourPointError>(m, "FourPointError", domain_error.ptr());
  py::register_exception<LimitRefused>(m, "LimitRefused", domain_error.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<GroupSpec>(m, "Group")
      .def_static("cyclic", &GroupSpec::cyclic, py::arg("k"))
      .def_static("integers", &GroupSpec::integers)
      .def_static("parse", &GroupSpec::parse)
      .def_property_readonly("name", &GroupSpec::name)
      .def("contains", &GroupSpec::contains)
      .def("__repr__", [](const GroupSpec& g) { return "Group(" + g.name() + ")"; })
      .def(py::self == py::self);

  py::class_<UPoint>(m, "Point")
      .def(py::init([](const Rational& a, const Segments& segs) { return UPoint(a, to_jumps(segs)); }), py::arg("a"),
           py::arg("segments") = Segments{})
      .def_static(
          "canonical",
          [](const Rational& a, const Segments& segs) { return UPoint(StepFunction::canonical(a, to_jumps(segs))); },
          py::arg("a"), py::arg("segments"))
      .def_static("from_json",
                  [](const std::string& text) { return json_io::decode_upoint(json_io::Json::parse(text)); })
      .def_property_readonly("a", &UPoint::a)
      .def_property_readonly("segments", [](const UPoint& p) { return from_jumps(p.segments()); })
      .def_property_readonly("top", &UPoint::top)
      .def("evaluate", [](const UPoint& p, const Rational& x) { return evaluate(p, x); })
      .def("restrict", [](const UPoint& p, const Rational& h) { return restrict(p, h); })
      .def("to_json", [](const UPoint& p) { return json_io::encode(p).dump(); })
      .def("__le__", [](const UPoint& p, const UPoint& q) { return model_leq(p, q); })
      .def("__repr__", &UPoint::str)
      .def("__hash__", [](const UPoint& p) { return py::hash(py::str(p.str())); })
      .def(py::self == py::self);

  m.def("dist", [](const UPoint& p, const UPoint& q) { return dist(p, q); });
  m.def("join", [](const UPoint& p, const UPoint& q) { return join(p, q); });
  m.def("join_height", [](const UPoint& p, const UPoint& q) { return join_height(p, q); });
  m.def("median", [](const UPoint& x, const UPoint& y, const UPoint& z) { return median(x, y, z); });
  m.def("segment_point", [](const UPoint& p, const UPoint& q, const Rational& t) { return segment_point(p, q, t); });
  m.def("classify_component", [](const UPoint& c, const UPoint& p) { return classify_component(c, p).str(); });

  py::class_<UpwardEnd>(m, "UpwardEnd").def(py::init<>()).def("__repr__", [](const UpwardEnd&) {
    return std::string("omega");
  });

  py::class_<UniversalTree, std::shared_ptr<UniversalTree>>(m, "UniversalTree")
      .def(py::init<GroupSpec, UPoint>(), py::arg("group"), py::arg("base") = UPoint())
      .def_property_readonly("group", &UniversalTree::group)
      .def_property_readonly("base", &UniversalTree::base)
      .def("contains", &UniversalTree::contains)
      .def("busemann", [](const UniversalTree& t, const UPoint& y) { return t.busemann(UpwardEnd{}, y); })
      .def("horoball_projection",
           [](const UniversalTree& t, const UPoint& y, const UPoint& x) {
             return t.horoball_projection(UpwardEnd{}, y, x);
           });

  py::class_<Location>(m, "Location")
      .def_readonly("edge", &Location::edge)
      .def_readonly("offset", &Location::offset)
      .def("__repr__", &repr<Location>)
      .def(py::self == py::self);

  py::class_<EndId>(m, "EndId")
      .def(py::init([](std::size_t edge) { return EndId{edge}; }))
      .def_readonly("edge", &EndId::edge)
      .def("__repr__", &repr<EndId>)
      .def(py::self == py::self);

  py::class_<RayTree, std::shared_ptr<RayTree>>(m, "RayTree")
      .def_static("from_json", &tree_from_json, py::arg("text"))
      .def("to_json", [](const RayTree& t) { return json_io::encode(t.topology()).dump(); })
      .def_property_readonly("node_count", &RayTree::node_count)
      .def_property_readonly("edge_count", &RayTree::edge_count)
      .def("node", [](const RayTree& t, const std::string& name) { return t.node_location(t.node_index(name)); })
      .def("at", &RayTree::at, py::arg("edge"), py::arg("offset"))
      .def("ends", &RayTree::ends)
      .def("dist", &RayTree::dist)
      .def("median", &RayTree::median)
      .def("depth", &RayTree::depth)
      .def("segment_point", &RayTree::segment_point)
      .def("busemann", &RayTree::busemann)
      .def("ray_point", &RayTree::ray_point)
      .def("horoball_projection", &RayTree::horoball_projection)
      .def("label", &RayTree::label);

  bind_order<UniversalTree>(m, "UniversalOrder");
  bind_order<RayTree>(m, "TreeOrder");

  m.def(
      "check_four_point",
      [](const std::vector<std::vector<Rational>>& d) -> py::object {
        const auto w = check_four_point(to_metric(d));
        if (!w) return py::none();
        return witness_dict(*w);
      },
      py::arg("d"));
  m.def(
      "realize",
      [](const std::vector<std::vector<Rational>>& d) {
        Realization r = realize_tree(to_metric(d));
        return py::make_tuple(std::make_shared<RayTree>(std::move(r.tree)), r.points);
      },
      py::arg("d"));
  m.def(
      "l1_grid",
      [](std::size_t k) {
        auto [metric, poset] = l1_plane_sample(k);
        return py::make_tuple(metric.d, poset.leq);
      },
      py::arg("k"));
  m.def(
      "audit_semilattice",
      [](std::size_t k) {
        auto [metric, poset] = l1_plane_sample(k);
        py::dict out;
        out["metric_semilattice"] = violations(check_metric_semilattice(metric, poset));
        const auto w = check_upper_semilinear(poset);
        out["semilinear_witness"] = w ? py::object(py::make_tuple((*w)[0], (*w)[1], (*w)[2])) : py::none();
        const auto f = check_four_point(metric);
        out["four_point"] = f ? py::object(witness_dict(*f)) : py::none();
        return out;
      },
      py::arg("k"),
      "Audits the k x k integer grid of the l1 plane with its coordinatewise order.");

  py::class_<Similarity>(m, "Similarity")
      .def_static("identity", &Similarity::identity)
      .def_static("homothety", &Similarity::homothety, py::arg("group"), py::arg("factor"))
      .def_static(
          "translation", [](const GroupSpec& g, const UPoint& p) { return Similarity::translation(g, p); },
          py::arg("group"), py::arg("point"))
      .def_static("mapping", &map_point_to_point, py::arg("group"), py::arg("p"), py::arg("q"))
      .def_property_readonly("coefficient", &Similarity::coefficient)
      .def("__call__", &Similarity::apply)
      .def("__matmul__", &Similarity::compose)
      .def("inverse", &Similarity::inverse)
      .def("to_json", [](const Similarity& s) { return json_io::encode(s).dump(); })
      .def(py::self == py::self);

  m.def(
      "fiber_nearest",
      [](const UPoint& p, const Rational& b) {
        const FiberPoint f = fiber_nearest(p, b);
        return py::make_tuple(f.point, f.distance, f.unique);
      },
      py::arg("p"), py::arg("height"));
  m.def("fiber_map", &fiber_map, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def(
      "complete_limit",
      [](const UPoint& center, const Rational& radius, std::function<UPoint(std::size_t)> term,
         const Rational& height_limit, std::size_t horizon) {
        return complete_limit(center, radius, CauchySequence{std::move(term), height_limit}, horizon);
      },
      py::arg("center"), py::arg("radius"), py::arg("term"), py::arg("height_limit"), py::arg("horizon") = 64);
}
