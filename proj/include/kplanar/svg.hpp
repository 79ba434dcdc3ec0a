#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <regex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "kplanar/construction.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/geometry.hpp"

namespace kplanar::svg {

/// One rendered edge as read back from an SVG.
struct Segment {
  EdgeId edge = 0;
  int plane = 0;
  VertexId u = 0;
  VertexId v = 0;
  Point a;
  Point b;
};

struct Layout {
  int planes = 0;
  std::vector<Segment> segments;
  std::int64_t width = 0;
  std::int64_t height = 0;
};

namespace detail {

struct Box {
  std::int64_t min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  std::int64_t width() const { return max_x - min_x; }
  std::int64_t height() const { return max_y - min_y; }
};

inline Box bounding_box(std::span<const Point> coords, const std::vector<VertexId>& vertices) {
  Box box{INT64_MAX, INT64_MAX, INT64_MIN, INT64_MIN};
  for (VertexId v : vertices) {
    const Point& p = coords[static_cast<std::size_t>(v)];
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

inline std::int64_t padding(std::int64_t extent) {
  return std::max<std::int64_t>(1, (extent + 9) / 10);
}

}  // namespace detail

/// Lays out one panel per plane. Labeling-derived assignments split each
/// plane into its edge-type classes, which are vertex-disjoint, and
/// shelf-pack their bounding boxes (10% padding) so only same-type crossings
/// remain. Other assignments keep each plane's original geometry. A panel
/// holding a single class keeps its coordinates unchanged.
inline Layout layout_planes(const Drawing& drawing, const PlaneAssignment& assignment) {
  if (drawing.representation() != Representation::geometric) {
    throw Error("SVG export needs a geometric drawing");
  }
  const Graph& graph = drawing.graph();
  const auto& coords = drawing.coords();
  const bool typed = !assignment.types.empty();
  Layout layout;
  layout.planes = assignment.k;

  std::vector<VertexId> all(static_cast<std::size_t>(graph.vertex_count()));
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VertexId>(v);
  const detail::Box whole = all.empty() ? detail::Box{} : detail::bounding_box(coords, all);

  std::int64_t panel_x = 0;
  for (int plane = 0; plane < assignment.k; ++plane) {
    // Edge classes of this plane keyed by type (a single class when untyped).
    std::map<std::pair<Label, Label>, std::vector<EdgeId>> classes;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      if (assignment.plane[static_cast<std::size_t>(e)] != plane) continue;
      std::pair<Label, Label> key{0, 0};
      if (typed) key = {assignment.types[static_cast<std::size_t>(e)].low,
                        assignment.types[static_cast<std::size_t>(e)].high};
      classes[key].push_back(e);
    }
    struct Item {
      std::vector<EdgeId> edges;
      detail::Box box;
      std::int64_t dx = 0, dy = 0;
    };
    std::vector<Item> items;
    for (auto& [key, edges] : classes) {
      std::vector<VertexId> vs;
      for (EdgeId e : edges) {
        vs.push_back(graph.edge(e).u);
        vs.push_back(graph.edge(e).v);
      }
      items.push_back({edges, detail::bounding_box(coords, vs)});
    }

    std::int64_t panel_width = whole.width(), panel_height = whole.height();
    if (items.size() > 1) {
      std::vector<std::size_t> order(items.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return items[a].box.height() > items[b].box.height();
      });
      std::int64_t shelf_limit = whole.width();
      for (const auto& it : items) {
        shelf_limit = std::max(shelf_limit, it.box.width() + 2 * detail::padding(it.box.width()));
      }
      std::int64_t x = 0, y = 0, shelf_height = 0;
      panel_width = 0;
      for (std::size_t i : order) {
        Item& it = items[i];
        const std::int64_t px = detail::padding(it.box.width());
        const std::int64_t py = detail::padding(it.box.height());
        const std::int64_t w = it.box.width() + 2 * px, h = it.box.height() + 2 * py;
        if (x > 0 && x + w > shelf_limit) {
          y += shelf_height;
          x = 0;
          shelf_height = 0;
        }
        it.dx = whole.min_x + x + px - it.box.min_x;
        it.dy = whole.min_y + y + py - it.box.min_y;
        x += w;
        shelf_height = std::max(shelf_height, h);
        panel_width = std::max(panel_width, x);
      }
      panel_height = y + shelf_height;
    }
    for (const Item& it : items) {
      for (EdgeId e : it.edges) {
        const Edge& edge = graph.edge(e);
        const Point& a = coords[static_cast<std::size_t>(edge.u)];
        const Point& b = coords[static_cast<std::size_t>(edge.v)];
        layout.segments.push_back({e, plane, edge.u, edge.v,
                                   {a.x + it.dx + panel_x, a.y + it.dy},
                                   {b.x + it.dx + panel_x, b.y + it.dy}});
      }
    }
    panel_x += panel_width + detail::padding(panel_width);
    layout.height = std::max(layout.height, panel_height);
  }
  layout.width = panel_x;
  return layout;
}

inline std::string render(const Layout& layout, std::int64_t min_x = 0, std::int64_t min_y = 0) {
  const std::int64_t margin = detail::padding(std::max(layout.width, layout.height)) / 2 + 1;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << min_x - margin << ' '
      << min_y - margin << ' ' << layout.width + 2 * margin << ' '
      << layout.height + 2 * margin << "\" data-planes=\"" << layout.planes << "\">\n";
  for (int plane = 0; plane < layout.planes; ++plane) {
    out << "<g class=\"plane\" data-plane=\"" << plane
        << "\" stroke=\"black\" fill=\"none\" vector-effect=\"non-scaling-stroke\">\n";
    for (const auto& s : layout.segments) {
      if (s.plane != plane) continue;
      out << "<line data-edge=\"" << s.edge << "\" data-plane=\"" << s.plane << "\" data-u=\""
          << s.u << "\" data-v=\"" << s.v << "\" x1=\"" << s.a.x << "\" y1=\"" << s.a.y
          << "\" x2=\"" << s.b.x << "\" y2=\"" << s.b.y << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

/// Renders the decomposition, one panel per plane.
inline std::string render_decomposition(const Drawing& drawing, const PlaneAssignment& assignment) {
  const Layout layout = layout_planes(drawing, assignment);
  std::int64_t min_x = 0, min_y = 0;
  if (!drawing.coords().empty()) {
    min_x = INT64_MAX;
    min_y = INT64_MAX;
    for (const auto& p : drawing.coords()) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
    }
  }
  return render(layout, min_x, min_y);
}

/// Reads back the `<line>` elements written by `render`.
inline Layout parse(const std::string& text) {
  static const std::regex planes_re(R"re(data-planes="(\d+)")re");
  static const std::regex line_re(
      R"re(<line data-edge="(\d+)" data-plane="(\d+)" data-u="(\d+)" data-v="(\d+)" x1="(-?\d+)" y1="(-?\d+)" x2="(-?\d+)" y2="(-?\d+)"/>)re");
  Layout layout;
  std::smatch match;
  if (!std::regex_search(text, match, planes_re)) throw Error("svg: missing data-planes");
  layout.planes = std::stoi(match[1]);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), line_re);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    layout.segments.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4]),
                               {std::stoll(m[5]), std::stoll(m[6])},
                               {std::stoll(m[7]), std::stoll(m[8])}});
  }
  return layout;
}

/// Proper crossings between non-adjacent segments of each plane, counted on
/// the rendered coordinates.
inline std::vector<std::int64_t> crossings_per_plane(const Layout& layout) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(layout.planes), 0);
  std::vector<std::vector<const Segment*>> by_plane(static_cast<std::size_t>(layout.planes));
  for (const auto& s : layout.segments) {
    if (s.plane < 0 || s.plane >= layout.planes) throw Error("svg: plane index out of range");
    by_plane[static_cast<std::size_t>(s.plane)].push_back(&s);
  }
  for (std::size_t p = 0; p < by_plane.size(); ++p) {
    const auto& segs = by_plane[p];
    for (std::size_t i = 0; i < segs.size(); ++i) {
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        const Segment& s = *segs[i];
        const Segment& t = *segs[j];
        if (s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v) continue;
        if (geom::segments_cross(s.a, s.b, t.a, t.b)) ++counts[p];
      }
    }
  }
  return counts;
}

}  // namespace kplanar::svg
