// semitree: batch frontend over the tree kernels. Inputs are JSON files,
// results are JSON on stdout (DOT for export-dot).
// Exit codes: 0 success, 1 parse or usage error, 2 domain error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "semitree/dot_export.hpp"
#include "semitree/errors.hpp"
#include "semitree/json_io.hpp"
#include "semitree/orders.hpp"
#include "semitree/ray_tree.hpp"
#include "semitree/semilattice_audit.hpp"
#include "semitree/symmetry.hpp"
#include "semitree/universal_tree.hpp"

namespace {

using namespace semitree;
using json_io::Json;

struct Options {
  std::string command;
  std::string model = "auto";
  std::string tree_file;
  std::string group = "z2";
  std::vector<std::string> inputs;
  bool rooted = false;
  bool inverse = false;
  bool map = false;
  std::string height;
  std::string from;
  std::string oracle_delta;
  std::size_t l1_grid = 0;
};

struct Output {
  Json json;
  std::optional<std::string> text;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

// The loaded inputs plus the model they refer to.
struct Inputs {
  std::vector<Json> docs;
  std::shared_ptr<const UniversalTree> universal;
  std::shared_ptr<const RayTree> tree;
};

bool looks_like_topology(const Json& j) { return j.is_object() && j.contains("nodes") && j.contains("edges"); }

std::shared_ptr<const RayTree> build_tree(const Json& j) {
  return std::make_shared<const RayTree>(json_io::decode_topology(j));
}

Inputs load(const Options& opt, bool needs_model) {
  Inputs in;
  for (const auto& path : opt.inputs) in.docs.push_back(read_json(path));
  if (!needs_model) return in;
  std::string model = opt.model;
  if (model == "auto") {
    model = (!opt.tree_file.empty() || (!in.docs.empty() && looks_like_topology(in.docs.back()))) ? "tree" : "upoint";
  }
  if (model == "upoint") {
    in.universal = std::make_shared<const UniversalTree>(GroupSpec::parse(opt.group));
  } else if (!opt.tree_file.empty()) {
    in.tree = build_tree(read_json(opt.tree_file));
  } else {
    if (in.docs.empty() || !looks_like_topology(in.docs.back())) {
      throw ParseError("the tree model needs --tree FILE or a tree document as the last input");
    }
    in.tree = build_tree(in.docs.back());
    in.docs.pop_back();
  }
  return in;
}

// Calls f with the shared model pointer of whichever model was loaded.
template <class F>
Json with_model(const Inputs& in, F&& f) {
  if (in.tree) return f(in.tree);
  return f(in.universal);
}

void need(const Inputs& in, std::size_t lo, std::size_t hi, const std::string& what) {
  if (in.docs.size() < lo || in.docs.size() > hi) throw ParseError("expected " + what);
}

template <class Model>
std::vector<typename Model::Point> points_of(const Json& j, const Model& m) {
  std::vector<typename Model::Point> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(json_io::decode_point(e, m));
  } else {
    out.push_back(json_io::decode_point(j, m));
  }
  return out;
}

template <class Model>
std::vector<typename Model::Point> all_points(const std::vector<Json>& docs, std::size_t first, const Model& m) {
  std::vector<typename Model::Point> out;
  for (std::size_t i = first; i < docs.size(); ++i) {
    for (auto& p : points_of(docs[i], m)) out.push_back(std::move(p));
  }
  return out;
}

template <class Model>
Order<Model> order_of(const Json& j, const std::shared_ptr<const Model>& m, bool rooted) {
  if (rooted) return Order<Model>::rooted(m, json_io::decode_point(j, *m));
  return json_io::decode_order<Model>(j, m);
}

Rational rational_flag(const std::string& text, const std::string& flag) {
  if (text.empty()) throw ParseError(flag + " is required");
  return Rational::parse(text);
}

Output cmd_dist(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 2, 2, "two points");
  return {with_model(in, [&](const auto& m) {
    return Json{{"dist", json_io::encode(m->dist(json_io::decode_point(in.docs[0], *m),
                                                 json_io::decode_point(in.docs[1], *m)))}};
  })};
}

Output cmd_median(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 3, 3, "three points");
  return {with_model(in, [&](const auto& m) {
    return Json{{"median", json_io::encode(m->median(json_io::decode_point(in.docs[0], *m),
                                                     json_io::decode_point(in.docs[1], *m),
                                                     json_io::decode_point(in.docs[2], *m)))}};
  })};
}

Output cmd_join(const Options& opt) {
  const Inputs in = load(opt, true);
  if (!in.universal) throw ParseError("join is defined on the universal tree; use order-sup on a ray tree");
  need(in, 2, 2, "two points");
  const UPoint p = json_io::decode_point(in.docs[0], *in.universal);
  const UPoint q = json_io::decode_point(in.docs[1], *in.universal);
  return {Json{{"join", json_io::encode(join(p, q))}, {"height", json_io::encode(join_height(p, q))}}};
}

Output cmd_order_compare(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 3, 3, "an order and two points");
  return {with_model(in, [&](const auto& m) {
    const auto tau = order_of(in.docs[0], m, opt.rooted);
    return Json{{"compare", compare(tau, json_io::decode_point(in.docs[1], *m), json_io::decode_point(in.docs[2], *m))}};
  })};
}

Output cmd_order_sup(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 2, SIZE_MAX, "an order and at least one point");
  return {with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    const auto tau = order_of(in.docs[0], m, opt.rooted);
    const auto pts = all_points(in.docs, 1, *m);
    return Json{{"sup", json_io::encode(sup(tau, std::span<const typename Model::Point>(pts)))}};
  })};
}

Output cmd_hd_orders(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 2, 2, "two orders");
  return {with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    const auto tau = order_of(in.docs[0], m, opt.rooted);
    const auto sigma = order_of(in.docs[1], m, opt.rooted);
    Json out{{"hd", json_io::encode(hausdorff_distance(tau, sigma))}};
    if (!opt.oracle_delta.empty()) {
      if constexpr (std::is_same_v<Model, RayTree>) {
        const Rational delta = Rational::parse(opt.oracle_delta);
        if (delta.sign() <= 0) throw ArgumentError("--oracle-delta must be positive");
        // Subdivide every finite edge into pieces no longer than delta.
        std::vector<Location> net;
        for (std::size_t e = 0; e < m->edge_count(); ++e) {
          const auto& len = m->topology().edges[e].length;
          if (!len) continue;
          const Rational ratio = *len / delta;
          BigInt pieces = ratio.numerator() / ratio.denominator();
          if (Rational(pieces, 1) < ratio) pieces += 1;
          for (BigInt k = 0; k <= pieces; ++k) {
            const Location p = m->at(e, *len * Rational(k, pieces));
            if (std::find(net.begin(), net.end(), p) == net.end()) net.push_back(p);
          }
        }
        if (net.empty()) net.push_back(m->base_location());
        out["oracle"] = json_io::encode(hausdorff_oracle(tau, sigma, std::span<const Location>(net)));
      } else {
        throw ParseError("--oracle-delta needs a ray tree");
      }
    }
    return out;
  })};
}

Output cmd_phi(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 1, 1, "one order or point-or-end");
  return {with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    if (opt.inverse) {
      return Json{{"order", json_io::encode(phi_inverse<Model>(m, json_io::decode_point_or_end(in.docs[0], *m)))}};
    }
    return Json{{"phi", json_io::encode(phi(order_of(in.docs[0], m, opt.rooted)))}};
  })};
}

Output cmd_busemann(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 2, 2, "an end and a point");
  return {with_model(in, [&](const auto& m) {
    const auto e = json_io::decode_end(in.docs[0], *m);
    return Json{{"busemann", json_io::encode(m->busemann(e, json_io::decode_point(in.docs[1], *m)))}};
  })};
}

Output cmd_project(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 3, 3, "an end, the horoball point y and the point x");
  return {with_model(in, [&](const auto& m) {
    const auto e = json_io::decode_end(in.docs[0], *m);
    const auto y = json_io::decode_point(in.docs[1], *m);
    const auto x = json_io::decode_point(in.docs[2], *m);
    return Json{{"projection", json_io::encode(m->horoball_projection(e, y, x))}};
  })};
}

Output cmd_check_tree_metric(const Options& opt) {
  const Inputs in = load(opt, false);
  need(in, 1, 1, "a distance matrix");
  if (const auto w = check_four_point(json_io::decode_metric(in.docs[0]))) throw FourPointError(*w);
  return {Json{{"ok", true}}};
}

Output cmd_realize(const Options& opt) {
  const Inputs in = load(opt, false);
  need(in, 1, 1, "a distance matrix");
  const Realization r = realize_tree(json_io::decode_metric(in.docs[0]));
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(json_io::encode(p));
  return {Json{{"tree", json_io::encode(r.tree.topology())}, {"points", points}}};
}

Output cmd_audit_order(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 2, SIZE_MAX, "a rooted order and sample points");
  return {with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    const auto tau = order_of(in.docs[0], m, opt.rooted);
    const auto sample = all_points(in.docs, 1, *m);
    const AuditReport report = audit_rooted_order(tau, std::span<const typename Model::Point>(sample));
    return Json{{"ok", report.ok()},
                {"violations", json_io::encode(report, [&](std::size_t i) { return json_io::encode(sample[i]); })}};
  })};
}

Output cmd_audit_semilattice(const Options& opt) {
  const Inputs in = load(opt, false);
  FiniteMetric metric;
  FinitePoset poset;
  if (opt.l1_grid > 0) {
    need(in, 0, 0, "no inputs with --l1-grid");
    std::tie(metric, poset) = l1_plane_sample(opt.l1_grid);
  } else {
    need(in, 2, 2, "a distance matrix and a poset");
    metric = json_io::decode_metric(in.docs[0]);
    poset = json_io::decode_poset(in.docs[1]);
  }
  const AuditReport report = check_metric_semilattice(metric, poset);
  const auto semilinear = check_upper_semilinear(poset);
  const auto four = check_four_point(metric);
  Json out;
  out["metric_semilattice"] = Json{{"ok", report.ok()}, {"violations", json_io::encode(report)}};
  out["upper_semilinear"] = Json{{"ok", !semilinear}, {"witness", semilinear ? Json(*semilinear) : Json(nullptr)}};
  out["four_point"] = Json{{"ok", !four}, {"witness", four ? json_io::encode(*four) : Json(nullptr)}};
  return {out};
}

Output cmd_sim_apply(const Options& opt) {
  const Inputs in = load(opt, false);
  need(in, 2, 2, "a similarity and a point");
  const GroupSpec g = GroupSpec::parse(opt.group);
  const Similarity s = json_io::decode_similarity(in.docs[0], g);
  const UPoint p = json_io::decode_point(in.docs[1], UniversalTree(g));
  return {Json{{"image", json_io::encode(s.apply(p))}, {"coefficient", json_io::encode(s.coefficient())}}};
}

Output cmd_sim_map(const Options& opt) {
  const Inputs in = load(opt, false);
  need(in, 2, 2, "two points");
  const GroupSpec g = GroupSpec::parse(opt.group);
  const UniversalTree model(g);
  const Similarity s =
      map_point_to_point(g, json_io::decode_point(in.docs[0], model), json_io::decode_point(in.docs[1], model));
  return {Json{{"similarity", json_io::encode(s)}, {"coefficient", json_io::encode(s.coefficient())}}};
}

Output cmd_fiber(const Options& opt) {
  const Inputs in = load(opt, false);
  need(in, 1, 1, "one point");
  const UPoint p = json_io::decode_point(in.docs[0], UniversalTree(GroupSpec::parse(opt.group)));
  const Rational b = rational_flag(opt.height, "--height");
  if (b.sign() <= 0) throw ArgumentError("fiber height must be positive");
  if (opt.map) {
    const Rational a = opt.from.empty() ? p.a() : Rational::parse(opt.from);
    return {Json{{"image", json_io::encode(fiber_map(a, b, p))}}};
  }
  const FiberPoint f = fiber_nearest(p, b);
  return {Json{{"nearest", json_io::encode(f.point)}, {"distance", json_io::encode(f.distance)}, {"unique", f.unique}}};
}

Output cmd_convergence(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 3, 3, "a target order, a root sequence and a probe list");
  return {with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    using Point = typename Model::Point;
    const auto target = order_of(in.docs[0], m, opt.rooted);
    const auto roots = points_of(in.docs[1], *m);
    std::vector<std::pair<Point, Point>> probes;
    if (!in.docs[2].is_array()) throw ParseError("probes must be a list of [x, y] pairs");
    for (const auto& pr : in.docs[2]) {
      if (!pr.is_array() || pr.size() != 2) throw ParseError("probes must be a list of [x, y] pairs");
      probes.emplace_back(json_io::decode_point(pr[0], *m), json_io::decode_point(pr[1], *m));
    }
    const auto r = check_convergence<Model>(roots, target, probes);
    return Json{{"converges", r.converges}, {"failing_probes", r.failing_probes}};
  })};
}

Output cmd_export_dot(const Options& opt) {
  const Inputs in = load(opt, true);
  need(in, 1, SIZE_MAX, "at least one point");
  Output out;
  with_model(in, [&](const auto& m) {
    using Model = typename std::decay_t<decltype(*m)>;
    const auto pts = all_points(in.docs, 0, *m);
    out.text = export_dot(*m, std::span<const typename Model::Point>(pts));
    return Json();
  });
  return out;
}

using Handler = Output (*)(const Options&);

struct Command {
  const char* name;
  const char* help;
  Handler run;
  bool model_flags;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> all{
      {"dist", "distance between two points", cmd_dist, true},
      {"median", "median of three points", cmd_median, true},
      {"join", "join of two universal-tree points", cmd_join, true},
      {"order-compare", "ORDER X Y: does x tau y hold", cmd_order_compare, true},
      {"order-sup", "ORDER P...: supremum under the order", cmd_order_sup, true},
      {"hd-orders", "Hausdorff distance between two orders", cmd_hd_orders, true},
      {"phi", "order to its root or end (--inverse for the converse)", cmd_phi, true},
      {"busemann", "END Y: Busemann function of the end at y", cmd_busemann, true},
      {"project", "END Y X: nearest point to x of the horoball through y", cmd_project, true},
      {"check-tree-metric", "four-point test of a distance matrix", cmd_check_tree_metric, false},
      {"realize", "tree realizing a distance matrix", cmd_realize, false},
      {"audit-order", "ORDER P...: audit a rooted order on a sample", cmd_audit_order, true},
      {"audit-semilattice", "METRIC POSET: semilattice, semilinearity and four-point checks",
       cmd_audit_semilattice, false},
      {"sim-apply", "SIM P: image of a point under a similarity", cmd_sim_apply, false},
      {"sim-map", "P Q: similarity taking p to q", cmd_sim_map, false},
      {"fiber", "P --height B: nearest point of a fiber, or --map to move p into it", cmd_fiber, false},
      {"convergence", "TARGET ROOTS PROBES: convergence of rooted orders", cmd_convergence, true},
      {"export-dot", "P...: DOT drawing of the spanned subtree", cmd_export_dot, true},
  };
  return all;
}

int fail(int code, const Json& diagnostic) {
  std::cout << diagnostic.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on metric trees and their orders"};
  app.require_subcommand(1);
  Options opt;
  std::map<const CLI::App*, const Command*> by_app;
  for (const Command& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    by_app[sub] = &c;
    sub->add_option("inputs", opt.inputs, "JSON input files");
    sub->add_option("--group", opt.group, "value group: z<k> or int")->default_val("z2");
    if (c.model_flags) {
      sub->add_option("--model", opt.model, "upoint, tree, or auto")
          ->check(CLI::IsMember({"upoint", "tree", "auto"}))
          ->default_val("auto");
      sub->add_option("--tree", opt.tree_file, "ray-tree topology file");
      sub->add_flag("--rooted", opt.rooted, "order arguments are root points");
    }
    const std::string name = c.name;
    if (name == "phi") sub->add_flag("--inverse", opt.inverse, "map a point or end to its order");
    if (name == "hd-orders") sub->add_option("--oracle-delta", opt.oracle_delta, "also run the discretized check");
    if (name == "audit-semilattice") sub->add_option("--l1-grid", opt.l1_grid, "use the k x k l1 grid");
    if (name == "fiber") {
      sub->add_option("--height", opt.height, "target fiber height")->required();
      sub->add_flag("--map", opt.map, "shift p into the fiber instead of projecting");
      sub->add_option("--from", opt.from, "height of p's fiber for --map (default p.a)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const Command* cmd = nullptr;
  for (const auto& [sub, c] : by_app) {
    if (sub->parsed()) cmd = c;
  }
  try {
    const Output out = cmd->run(opt);
    if (out.text) {
      std::cout << *out.text;
    } else {
      std::cout << out.json.dump() << "\n";
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "semitree: " << e.what() << "\n";
    return fail(1, Json{{"error", "parse"}, {"message", e.what()}});
  } catch (const FourPointError& e) {
    return fail(2, Json{{"error", e.kind()}, {"message", e.what()}, {"witness", json_io::encode(e.witness())}});
  } catch (const DomainError& e) {
    return fail(2, Json{{"error", e.kind()}, {"message", e.what()}});
  } catch (const Json::exception& e) {
    std::cerr << "semitree: " << e.what() << "\n";
    return fail(1, Json{{"error", "parse"}, {"message", e.what()}});
  }
}
