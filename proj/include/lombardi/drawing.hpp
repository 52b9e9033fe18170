// Drawings whose edges are circular arcs: the data model, a validity checker
// for the equal-angle, planarity, and embedding-consistency conditions, and a
// deterministic SVG renderer.
#pragma once

#include <cstdio>
#include <map>
#include <string>

#include "lombardi/geom.hpp"
#include "lombardi/graphs.hpp"

namespace lombardi {

// Arcs are indexed like graph.edges and oriented from the lower endpoint id
// to the higher one.
struct LombardiDrawing {
  EmbeddedGraph graph;
  std::vector<Point> position;
  std::vector<DirectedArc> arc;
};

struct ValidationReport {
  bool lombardi_ok = true;    // consecutive tangents equally spaced everywhere
  bool planar_ok = true;      // no two arcs cross or overlap
  bool embedding_ok = true;   // tangent orders realize the rotation system
  bool mirrored = false;      // drawing realizes the reflected embedding
  double max_angle_deviation = 0;
  std::vector<double> vertex_deviation;        // worst spacing error, radians
  std::vector<std::pair<int, int>> crossings;  // offending edge index pairs
  std::vector<int> rotation_mismatches;        // vertex ids
  std::vector<std::pair<int, int>> coincident_vertices;
  std::vector<int> arc_endpoint_mismatches;    // edge indices

  bool valid() const { return lombardi_ok && planar_ok && embedding_ok; }
};

namespace detail {

// Outgoing tangent direction and neighbor id for every dart, gathered per
// vertex.  Degenerate arcs (coincident endpoints) are skipped and reported.
inline std::vector<std::vector<std::pair<double, int>>> vertex_directions(
    const LombardiDrawing& d, std::vector<int>* degenerate) {
  const EmbeddedGraph& g = d.graph;
  std::vector<std::vector<std::pair<double, int>>> dirs(g.color.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    const DirectedArc& a = d.arc[e];
    if (approx_eq(a.start, a.end)) {
      if (degenerate) degenerate->push_back(e);
      continue;
    }
    dirs[u].push_back({tangent_start(a), v});
    dirs[v].push_back({wrap_pi(tangent_end(a) + kPi), u});
  }
  for (std::vector<std::pair<double, int>>& list : dirs)
    std::sort(list.begin(), list.end());
  return dirs;
}

// True when `want` equals the cyclic sequence `have` read from some start,
// forward or (with flip) backward.
inline bool cyclic_match(const std::vector<int>& have, const std::vector<int>& want,
                         bool flip) {
  size_t n = have.size();
  if (want.size() != n || n == 0) return false;
  for (size_t shift = 0; shift < n; ++shift) {
    bool all = true;
    for (size_t i = 0; i < n && all; ++i) {
      size_t j = flip ? (shift + n - i) % n : (shift + i) % n;
      all = have[j] == want[i];
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

inline ValidationReport validate(const LombardiDrawing& d, double tol = 1e-6) {
  const EmbeddedGraph& g = d.graph;
  if (d.position.size() != g.color.size() || d.arc.size() != g.edges.size())
    fail(ErrorCode::kBadParameter, "drawing arrays do not match the graph");
  ValidationReport report;

  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (approx_eq(d.position[u], d.position[v], tol))
        report.coincident_vertices.push_back({u, v});

  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    if (!approx_eq(d.arc[e].start, d.position[u], tol) ||
        !approx_eq(d.arc[e].end, d.position[v], tol))
      report.arc_endpoint_mismatches.push_back(e);
  }

  std::vector<int> degenerate;
  std::vector<std::vector<std::pair<double, int>>> dirs =
      detail::vertex_directions(d, &degenerate);
  for (int e : degenerate) report.arc_endpoint_mismatches.push_back(e);
  std::sort(report.arc_endpoint_mismatches.begin(), report.arc_endpoint_mismatches.end());
  report.arc_endpoint_mismatches.erase(
      std::unique(report.arc_endpoint_mismatches.begin(),
                  report.arc_endpoint_mismatches.end()),
      report.arc_endpoint_mismatches.end());

  report.vertex_deviation.assign(g.color.size(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    size_t n = dirs[v].size();
    if (n < 2) continue;
    double target = 2 * kPi / static_cast<double>(n);
    double worst = 0;
    for (size_t i = 0; i < n; ++i) {
      double next = i + 1 < n ? dirs[v][i + 1].first : dirs[v][0].first + 2 * kPi;
      worst = std::max(worst, std::fabs(next - dirs[v][i].first - target));
    }
    report.vertex_deviation[v] = worst;
    report.max_angle_deviation = std::max(report.max_angle_deviation, worst);
  }
  report.lombardi_ok = report.max_angle_deviation <= tol;

  for (int i = 0; i < g.edge_count(); ++i) {
    for (int j = i + 1; j < g.edge_count(); ++j) {
      auto [u1, v1] = g.edges[i];
      auto [u2, v2] = g.edges[j];
      int shared = -1;
      if (u1 == u2 || u1 == v2) shared = u1;
      if (v1 == u2 || v1 == v2) shared = v1;
      IntersectResult hit = intersect(d.arc[i], d.arc[j], std::max(tol, kTol));
      bool bad = hit.overlap;
      for (const IntersectionPoint& ip : hit.points) {
        bool at_shared =
            shared >= 0 && approx_eq(ip.p, d.position[shared], std::max(tol, 1e-7));
        bad = bad || !at_shared;
      }
      if (bad) report.crossings.push_back({i, j});
    }
  }
  report.planar_ok = report.crossings.empty();

  // Orientation vote: +1 when the counterclockwise tangent order around a
  // vertex matches its rotation list, -1 when it matches the reversal.
  std::vector<std::pair<int, int>> votes;  // (vertex, orientation)
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 3 || dirs[v].size() != static_cast<size_t>(g.degree(v))) continue;
    std::vector<int> ccw;
    for (const std::pair<double, int>& dn : dirs[v]) ccw.push_back(dn.second);
    if (detail::cyclic_match(ccw, g.rotation[v], false))
      votes.push_back({v, 1});
    else if (detail::cyclic_match(ccw, g.rotation[v], true))
      votes.push_back({v, -1});
    else
      votes.push_back({v, 0});
  }
  int plus = 0, minus = 0;
  for (auto [v, o] : votes) {
    plus += o == 1;
    minus += o == -1;
  }
  int global = minus > plus ? -1 : 1;
  for (auto [v, o] : votes)
    if (o != global) report.rotation_mismatches.push_back(v);
  report.embedding_ok = report.rotation_mismatches.empty();
  report.mirrored = report.embedding_ok && global == -1 && !votes.empty();
  return report;
}

// Minimum over all vertices of the smallest angular gap between consecutive
// incident tangent directions; 2*pi when no vertex has two incident arcs.
inline double angular_resolution(const LombardiDrawing& d) {
  std::vector<std::vector<std::pair<double, int>>> dirs =
      detail::vertex_directions(d, nullptr);
  double best = 2 * kPi;
  for (const std::vector<std::pair<double, int>>& list : dirs) {
    size_t n = list.size();
    if (n < 2) continue;
    for (size_t i = 0; i < n; ++i) {
      double next = i + 1 < n ? list[i + 1].first : list[0].first + 2 * kPi;
      best = std::min(best, next - list[i].first);
    }
  }
  return best;
}

struct StyleOptions {
  double scale = 100;        // world units to pixels
  double margin = 24;        // pixels around the drawing
  double stroke_width = 2;   // pixels
  double vertex_radius = 4;  // pixels
  bool monochrome = false;   // ignore vertex colors, fill every disk gray
};

namespace detail {

inline std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline const char* fill_for(Color c) {
  switch (c) {
    case Color::kYellow: return "#f0c030";
    case Color::kBlue: return "#3060d0";
    case Color::kRed: return "#d03030";
  }
  return "#000000";
}

}  // namespace detail

// Renders the drawing as a standalone SVG document: one path per edge (an
// elliptical-arc command with equal radii, or a line for straight edges) and
// one filled disk per vertex.  Output is byte-stable for fixed inputs.
inline std::string render_svg(const LombardiDrawing& d, const StyleOptions& style = {}) {
  const EmbeddedGraph& g = d.graph;
  if (d.position.size() != g.color.size() || d.arc.size() != g.edges.size())
    fail(ErrorCode::kBadParameter, "drawing arrays do not match the graph");

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  auto grow = [&](const Point& p) {
    if (p.infinite) return;
    if (first) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      first = false;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const Point& p : d.position) grow(p);
  for (const DirectedArc& a : d.arc)
    if (!approx_eq(a.start, a.end))
      for (int i = 0; i <= 8; ++i) grow(point_at(a, i / 8.0));

  double width = (max_x - min_x) * style.scale + 2 * style.margin;
  double height = (max_y - min_y) * style.scale + 2 * style.margin;
  auto map_x = [&](double x) { return style.margin + (x - min_x) * style.scale; };
  auto map_y = [&](double y) { return style.margin + (max_y - y) * style.scale; };

  using detail::fmt6;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt6(width) +
         "\" height=\"" + fmt6(height) + "\" viewBox=\"0 0 " + fmt6(width) + " " +
         fmt6(height) + "\">\n";
  svg += "<g fill=\"none\" stroke=\"#303030\" stroke-width=\"" +
         fmt6(style.stroke_width) + "\">\n";
  for (const DirectedArc& a : d.arc) {
    std::string path = "M " + fmt6(map_x(a.start.x)) + " " + fmt6(map_y(a.start.y));
    if (a.bulge == 0) {
      path += " L ";
    } else {
      double r = arc_radius(a) * style.scale;
      // The y-flip turns the arc's sweep around, so positive bulge (left of
      // the chord in world coordinates) becomes SVG sweep flag 1.
      int large_arc = std::fabs(a.bulge) > 1 ? 1 : 0;
      int sweep = a.bulge > 0 ? 1 : 0;
      path += " A " + fmt6(r) + " " + fmt6(r) + " 0 " + std::to_string(large_arc) +
              " " + std::to_string(sweep) + " ";
    }
    path += fmt6(map_x(a.end.x)) + " " + fmt6(map_y(a.end.y));
    svg += "<path d=\"" + path + "\"/>\n";
  }
  svg += "</g>\n<g stroke=\"none\">\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    svg += "<circle cx=\"" + fmt6(map_x(d.position[v].x)) + "\" cy=\"" +
           fmt6(map_y(d.position[v].y)) + "\" r=\"" + fmt6(style.vertex_radius) +
           "\" fill=\"" +
           (style.monochrome ? "#404040" : detail::fill_for(g.color[v])) + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace lombardi
