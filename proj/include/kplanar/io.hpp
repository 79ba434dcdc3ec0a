#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kplanar/construction.hpp"
#include "kplanar/decompose.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/geometry.hpp"
#include "kplanar/rational.hpp"

namespace kplanar::io {

using Json = nlohmann::json;

inline constexpr std::string_view kEnvelopeVersion = "kplanar/1";

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

namespace detail {

inline const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) throw Error(where + ": missing field '" + name + "'");
  return obj.at(name);
}

inline std::int64_t as_index(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) throw Error(where + ": expected an integer");
  auto v = value.get<std::int64_t>();
  if (v < 0 || v > INT32_MAX) throw Error(where + ": index out of range");
  return v;
}

inline std::vector<Edge> parse_edges(const Json& edges, const std::string& where,
                                     std::int64_t& max_vertex) {
  if (!edges.is_array()) throw Error(where + ": expected an array of [u, v] pairs");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) throw Error(at + ": expected [u, v]");
    auto u = as_index(edges[i][0], at + "[0]");
    auto v = as_index(edges[i][1], at + "[1]");
    max_vertex = std::max({max_vertex, u, v});
    out.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  return out;
}

}  // namespace detail

/// Parses a drawing from its JSON form, or from an envelope whose outputs
/// hold one under "drawing". Diagnostics name the offending field.
inline Drawing parse_drawing(const Json& root) {
  const Json* node = &root;
  if (root.is_object() && root.contains("outputs") && root["outputs"].is_object() &&
      root["outputs"].contains("drawing")) {
    node = &root["outputs"]["drawing"];
  }
  const Json& d = *node;
  if (!d.is_object()) throw Error("drawing: expected a JSON object");
  const Json& format = detail::field(d, "format", "drawing");
  if (!format.is_string()) throw Error("drawing.format: expected a string");
  std::int64_t max_vertex = -1;
  auto edges = detail::parse_edges(detail::field(d, "edges", "drawing"), "drawing.edges", max_vertex);

  if (format == "geometric") {
    const Json& coords = detail::field(d, "coords", "drawing");
    if (!coords.is_array()) throw Error("drawing.coords: expected an array of [x, y]");
    std::vector<std::array<double, 2>> raw;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      std::string at = "drawing.coords[" + std::to_string(i) + "]";
      if (!coords[i].is_array() || coords[i].size() != 2 || !coords[i][0].is_number() ||
          !coords[i][1].is_number()) {
        throw Error(at + ": expected [x, y] numbers");
      }
      raw.push_back({coords[i][0].get<double>(), coords[i][1].get<double>()});
    }
    if (max_vertex >= static_cast<std::int64_t>(raw.size())) {
      throw Error("drawing.edges: vertex " + std::to_string(max_vertex) + " has no coordinate");
    }
    Graph graph(static_cast<int>(raw.size()), std::move(edges));
    return crossings_from_geometry(graph, integerize(raw));
  }
  if (format == "combinatorial") {
    std::int64_t n = max_vertex + 1;
    if (d.contains("n")) {
      n = detail::as_index(d["n"], "drawing.n");
      if (n <= max_vertex) throw Error("drawing.n: smaller than the largest vertex id + 1");
    }
    Graph graph(static_cast<int>(n), std::move(edges));
    std::vector<Crossing> crossings;
    const Json& list = detail::field(d, "crossings", "drawing");
    if (!list.is_array()) throw Error("drawing.crossings: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string at = "drawing.crossings[" + std::to_string(i) + "]";
      const Json& c = list[i];
      if (!c.is_array() || c.size() < 2 || c.size() > 3) throw Error(at + ": expected [e, f] or [e, f, mult]");
      auto e = detail::as_index(c[0], at + "[0]");
      auto f = detail::as_index(c[1], at + "[1]");
      std::int64_t mult = 1;
      if (c.size() == 3) {
        mult = detail::as_index(c[2], at + "[2]");
        if (mult < 1) throw Error(at + "[2]: multiplicity must be >= 1");
      }
      if (e >= graph.edge_count() || f >= graph.edge_count()) {
        throw Error(at + ": unknown edge id " + std::to_string(e >= graph.edge_count() ? e : f));
      }
      if (e == f) throw Error(at + ": edge " + std::to_string(e) + " cannot cross itself");
      crossings.push_back({static_cast<EdgeId>(e), static_cast<EdgeId>(f), static_cast<int>(mult)});
    }
    return Drawing(std::move(graph), std::move(crossings));
  }
  throw Error("drawing.format: expected \"geometric\" or \"combinatorial\"");
}

inline Drawing parse_drawing(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  return parse_drawing(root);
}

inline Drawing load_drawing_file(const std::string& path) {
  try {
    return parse_drawing(std::string_view(read_file(path)));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline Json drawing_stats(const Drawing& d) {
  return Json{{"n", d.graph().vertex_count()},
              {"m", d.graph().edge_count()},
              {"max_degree", d.graph().max_degree()},
              {"C", d.total_crossings()},
              {"L", d.local_crossing_number()}};
}

inline Json to_json(const Drawing& d) {
  Json edges = Json::array();
  for (const auto& e : d.graph().edges()) edges.push_back({e.u, e.v});
  Json out;
  if (d.representation() == Representation::geometric) {
    Json coords = Json::array();
    for (const auto& p : d.coords()) coords.push_back({p.x, p.y});
    out = Json{{"format", "geometric"}, {"coords", coords}, {"edges", edges}};
  } else {
    Json crossings = Json::array();
    for (const auto& c : d.crossings()) crossings.push_back({c.e, c.f, c.multiplicity});
    out = Json{{"format", "combinatorial"},
               {"n", d.graph().vertex_count()},
               {"edges", edges},
               {"crossings", crossings}};
  }
  out["stats"] = drawing_stats(d);
  return out;
}

/// Exact rational as [numerator, denominator]; parts beyond 64 bits become
/// decimal strings.
inline Json to_json(const Rational& r) {
  auto part = [](const BigInt& v) -> Json {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
      return v.convert_to<std::int64_t>();
    }
    return v.str();
  };
  return Json::array({part(numerator(r)), part(denominator(r))});
}

inline Json to_json(const DecompositionResult& r) {
  Json out;
  out["mode"] = r.mode;
  out["k"] = r.assignment.k;
  out["seed"] = r.seed;
  if (r.weights) {
    Json w = Json::array(), exact = Json::array();
    for (const auto& p : r.weights->probabilities()) {
      w.push_back(to_double(p));
      exact.push_back(to_json(p));
    }
    out["weights"] = w;
    out["weights_exact"] = exact;
    out["gamma"] = to_json(r.weights->gamma());
  } else {
    out["weights"] = Json::array();
  }
  if (r.labeling) out["labels"] = r.labeling->labels;
  out["planes"] = r.assignment.plane;
  out["g"] = r.report.g;
  out["C_i"] = r.report.plane_total;
  out["L_i"] = r.report.plane_max;
  out["max_load"] = r.report.max_load;
  out["total"] = r.report.total;
  out["certified"] = r.report.certified;
  out["thresholds"] = r.report.thresholds;
  out["rounds"] = r.rounds;
  out["restarts"] = r.restarts;
  out["warnings"] = r.warnings;
  return out;
}

inline Json envelope(std::string_view command, Json inputs, Json outputs, std::uint64_t seed) {
  return Json{{"version", kEnvelopeVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)},
              {"seed", seed}};
}

}  // namespace kplanar::io
