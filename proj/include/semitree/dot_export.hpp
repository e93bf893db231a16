#pragma once

#include <algorithm>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "semitree/errors.hpp"
#include "semitree/rational.hpp"

namespace semitree {

/// The finite subtree spanned by a point set: the set closed under medians, and
/// the edges between vertices with no other vertex between them.
template <class Model>
struct SpannedSubtree {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Rational length;
  };
  std::vector<typename Model::Point> vertices;
  std::vector<Edge> edges;
};

template <class Model>
SpannedSubtree<Model> span_subtree(const Model& model, std::span<const typename Model::Point> points) {
  if (points.empty()) throw ArgumentError("cannot span an empty point set");
  SpannedSubtree<Model> out;
  auto& v = out.vertices;
  const auto known = [&](const typename Model::Point& p) { return std::find(v.begin(), v.end(), p) != v.end(); };
  for (const auto& p : points) {
    auto c = model.canonical(p);
    if (!known(c)) v.push_back(std::move(c));
  }
  const std::size_t seeds = v.size();
  for (std::size_t i = 0; i < seeds; ++i) {
    for (std::size_t j = i + 1; j < seeds; ++j) {
      for (std::size_t k = j + 1; k < seeds; ++k) {
        auto m = model.median(v[i], v[j], v[k]);
        if (!known(m)) v.push_back(std::move(m));
      }
    }
  }
  // One pass suffices in a tree: medians of medians are already present.
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        if (!known(model.median(v[i], v[j], v[k]))) throw InvariantError("median closure needed a second pass");
      }
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const Rational d = model.dist(v[i], v[j]);
      bool direct = true;
      for (std::size_t k = 0; k < v.size() && direct; ++k) {
        if (k != i && k != j && model.dist(v[i], v[k]) + model.dist(v[k], v[j]) == d) direct = false;
      }
      if (direct) out.edges.push_back({i, j, d});
    }
  }
  return out;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// DOT drawing of the spanned subtree; edge labels are exact lengths.
template <class Model>
std::string export_dot(const Model& model, std::span<const typename Model::Point> points) {
  const auto sub = span_subtree(model, points);
  std::ostringstream os;
  os << "graph spanned_subtree {\n";
  for (std::size_t i = 0; i < sub.vertices.size(); ++i) {
    os << "  n" << i << " [label=\"" << detail::dot_escape(model.label(sub.vertices[i])) << "\"];\n";
  }
  for (const auto& e : sub.edges) {
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.length.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace semitree
