// JSON documents for graphs, drawings, arc-quads, and search reports.
// Writing is hand-rolled with a fixed key order and 17-significant-digit
// numbers, so equal values always serialize to identical bytes; parsing uses
// the vendored nlohmann header and re-checks every structural invariant.
#pragma once

#include <cinttypes>
#include <cstdio>
#include <map>
#include <string>

#include <json.hpp>

#include "lombardi/arcquad.hpp"
#include "lombardi/certify.hpp"
#include "lombardi/drawing.hpp"
#include "lombardi/graphs.hpp"

namespace lombardi {

namespace detail {

inline void append_double(std::string* out, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  *out += buf;
}

inline void append_int(std::string* out, long long x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", x);
  *out += buf;
}

inline void append_string(std::string* out, const std::string& s) {
  *out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') *out += '\\';
    *out += c;
  }
  *out += '"';
}

inline void append_bool(std::string* out, bool b) { *out += b ? "true" : "false"; }

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::kBadParameter, std::string("document is missing field '") + key + "'");
  return *it;
}

inline int int_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& f = require_field(j, key);
  if (!f.is_number_integer())
    fail(ErrorCode::kBadParameter, std::string("field '") + key + "' must be an integer");
  return f.get<int>();
}

inline double double_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& f = require_field(j, key);
  if (!f.is_number())
    fail(ErrorCode::kBadParameter, std::string("field '") + key + "' must be a number");
  return f.get<double>();
}

inline std::string string_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& f = require_field(j, key);
  if (!f.is_string())
    fail(ErrorCode::kBadParameter, std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

inline void require_schema(const nlohmann::json& j, const char* tag) {
  if (string_field(j, "schema") != tag)
    fail(ErrorCode::kBadParameter, std::string("expected a '") + tag + "' document");
}

}  // namespace detail

inline nlohmann::json parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::kBadParameter, "malformed JSON");
  return j;
}

inline const char* color_name(Color c) {
  switch (c) {
    case Color::kYellow: return "yellow";
    case Color::kBlue: return "blue";
    case Color::kRed: return "red";
  }
  return "unknown";
}

inline Color color_from_name(const std::string& name) {
  if (name == "yellow") return Color::kYellow;
  if (name == "blue") return Color::kBlue;
  if (name == "red") return Color::kRed;
  fail(ErrorCode::kBadParameter, "unknown vertex color '" + name + "'");
}

// Index of edge (u, v) in the sorted edge list.
inline int edge_index_of(const EmbeddedGraph& g, int u, int v) {
  std::pair<int, int> key{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(g.edges.begin(), g.edges.end(), key);
  if (it == g.edges.end() || *it != key)
    fail(ErrorCode::kBadParameter, "rotation references a missing edge");
  return static_cast<int>(it - g.edges.begin());
}

// ---------------------------------------------------------------------------
// Graph documents ("graph/1"): rotation lists are edge indices, and faces are
// re-derived on write so round-trips stay byte-identical.

inline std::string write_graph(const EmbeddedGraph& g) {
  std::string out = "{\"schema\":\"graph/1\",\"name\":";
  detail::append_string(&out, g.name);
  out += ",\"k\":";
  detail::append_int(&out, g.k);
  out += ",\"vertices\":[";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v) out += ',';
    out += "{\"id\":";
    detail::append_int(&out, v);
    out += ",\"color\":\"";
    out += color_name(g.color[v]);
    out += "\"}";
  }
  out += "],\"edges\":[";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (i) out += ',';
    out += '[';
    detail::append_int(&out, g.edges[i].first);
    out += ',';
    detail::append_int(&out, g.edges[i].second);
    out += ']';
  }
  out += "],\"rotation\":{";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v) out += ',';
    out += '"';
    detail::append_int(&out, v);
    out += "\":[";
    for (size_t i = 0; i < g.rotation[v].size(); ++i) {
      if (i) out += ',';
      detail::append_int(&out, edge_index_of(g, v, g.rotation[v][i]));
    }
    out += ']';
  }
  out += "},\"faces\":[";
  std::vector<std::vector<int>> faces = trace_faces(g);
  for (size_t i = 0; i < faces.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (size_t j = 0; j < faces[i].size(); ++j) {
      if (j) out += ',';
      detail::append_int(&out, faces[i][j]);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline EmbeddedGraph graph_from_json(const nlohmann::json& j) {
  detail::require_schema(j, "graph/1");
  EmbeddedGraph g;
  g.name = detail::string_field(j, "name");
  g.k = detail::int_field(j, "k");

  const nlohmann::json& verts = detail::require_field(j, "vertices");
  if (!verts.is_array()) fail(ErrorCode::kBadParameter, "'vertices' must be an array");
  int n = static_cast<int>(verts.size());
  for (int v = 0; v < n; ++v) {
    if (detail::int_field(verts[v], "id") != v)
      fail(ErrorCode::kBadParameter, "vertex ids must be dense from 0");
    g.color.push_back(color_from_name(detail::string_field(verts[v], "color")));
  }

  const nlohmann::json& edges = detail::require_field(j, "edges");
  if (!edges.is_array()) fail(ErrorCode::kBadParameter, "'edges' must be an array");
  for (const nlohmann::json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      fail(ErrorCode::kBadParameter, "each edge must be a pair of vertex ids");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
      fail(ErrorCode::kBadParameter, "edges must be [u,v] with 0 <= u < v < n");
    g.edges.emplace_back(u, v);
    if (g.edges.size() > 1 && !(g.edges[g.edges.size() - 2] < g.edges.back()))
      fail(ErrorCode::kBadParameter, "edges must be strictly sorted");
  }

  const nlohmann::json& rot = detail::require_field(j, "rotation");
  if (!rot.is_object()) fail(ErrorCode::kBadParameter, "'rotation' must be an object");
  std::vector<int> uses(g.edges.size(), 0);
  g.rotation.resize(n);
  for (int v = 0; v < n; ++v) {
    auto it = rot.find(std::to_string(v));
    if (it == rot.end() || !it->is_array())
      fail(ErrorCode::kBadParameter, "rotation must list every vertex id");
    for (const nlohmann::json& idx : *it) {
      if (!idx.is_number_integer())
        fail(ErrorCode::kBadParameter, "rotation entries must be edge indices");
      int e = idx.get<int>();
      if (e < 0 || e >= static_cast<int>(g.edges.size()))
        fail(ErrorCode::kBadParameter, "rotation edge index out of range");
      auto [a, b] = g.edges[e];
      if (v != a && v != b)
        fail(ErrorCode::kBadParameter, "rotation lists an edge not incident to its vertex");
      ++uses[e];
      g.rotation[v].push_back(v == a ? b : a);
    }
  }
  for (int count : uses)
    if (count != 2)
      fail(ErrorCode::kBadParameter, "every edge must appear in exactly two rotations");
  return g;
}

inline EmbeddedGraph parse_graph(const std::string& text) {
  return graph_from_json(parse_json(text));
}

// ---------------------------------------------------------------------------
// Drawing documents ("drawing/1"): inline graph, positions per vertex, and
// one bulge per edge index.

inline std::string write_drawing(const LombardiDrawing& d) {
  std::string out = "{\"schema\":\"drawing/1\",\"graph\":";
  out += write_graph(d.graph);
  out += ",\"positions\":{";
  for (size_t v = 0; v < d.position.size(); ++v) {
    if (v) out += ',';
    out += '"';
    detail::append_int(&out, static_cast<long long>(v));
    out += "\":[";
    detail::append_double(&out, d.position[v].x);
    out += ',';
    detail::append_double(&out, d.position[v].y);
    out += ']';
  }
  out += "},\"arcs\":[";
  for (size_t i = 0; i < d.arc.size(); ++i) {
    if (i) out += ',';
    out += "{\"edge\":";
    detail::append_int(&out, static_cast<long long>(i));
    out += ",\"bulge\":";
    detail::append_double(&out, d.arc[i].bulge);
    out += '}';
  }
  out += "]}";
  return out;
}

inline LombardiDrawing parse_drawing(const std::string& text) {
  nlohmann::json j = parse_json(text);
  detail::require_schema(j, "drawing/1");
  LombardiDrawing d;
  d.graph = graph_from_json(detail::require_field(j, "graph"));

  const nlohmann::json& pos = detail::require_field(j, "positions");
  if (!pos.is_object()) fail(ErrorCode::kBadParameter, "'positions' must be an object");
  for (int v = 0; v < d.graph.vertex_count(); ++v) {
    auto it = pos.find(std::to_string(v));
    if (it == pos.end() || !it->is_array() || it->size() != 2 ||
        !(*it)[0].is_number() || !(*it)[1].is_number())
      fail(ErrorCode::kBadParameter, "positions must map every vertex id to [x,y]");
    d.position.push_back(pt((*it)[0].get<double>(), (*it)[1].get<double>()));
  }

  const nlohmann::json& arcs = detail::require_field(j, "arcs");
  if (!arcs.is_array() || arcs.size() != d.graph.edges.size())
    fail(ErrorCode::kBadParameter, "'arcs' must list one entry per edge");
  std::vector<char> seen(d.graph.edges.size(), 0);
  d.arc.resize(d.graph.edges.size());
  for (const nlohmann::json& a : arcs) {
    int e = detail::int_field(a, "edge");
    if (e < 0 || e >= static_cast<int>(d.graph.edges.size()) || seen[e])
      fail(ErrorCode::kBadParameter, "each edge index must appear exactly once in 'arcs'");
    seen[e] = 1;
    auto [u, v] = d.graph.edges[e];
    d.arc[e] = arc(to_complex(d.position[u]), to_complex(d.position[v]),
                   detail::double_field(a, "bulge"));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Validation reports.

inline std::string write_validation_report(const ValidationReport& r) {
  std::string out = "{\"schema\":\"validation/1\",\"valid\":";
  detail::append_bool(&out, r.valid());
  out += ",\"lombardi_ok\":";
  detail::append_bool(&out, r.lombardi_ok);
  out += ",\"planar_ok\":";
  detail::append_bool(&out, r.planar_ok);
  out += ",\"embedding_ok\":";
  detail::append_bool(&out, r.embedding_ok);
  out += ",\"mirrored\":";
  detail::append_bool(&out, r.mirrored);
  out += ",\"max_angle_deviation\":";
  detail::append_double(&out, r.max_angle_deviation);
  out += ",\"vertex_deviation\":[";
  for (size_t i = 0; i < r.vertex_deviation.size(); ++i) {
    if (i) out += ',';
    detail::append_double(&out, r.vertex_deviation[i]);
  }
  out += "],\"crossings\":[";
  for (size_t i = 0; i < r.crossings.size(); ++i) {
    if (i) out += ',';
    out += '[';
    detail::append_int(&out, r.crossings[i].first);
    out += ',';
    detail::append_int(&out, r.crossings[i].second);
    out += ']';
  }
  out += "],\"rotation_mismatches\":[";
  for (size_t i = 0; i < r.rotation_mismatches.size(); ++i) {
    if (i) out += ',';
    detail::append_int(&out, r.rotation_mismatches[i]);
  }
  out += "],\"coincident_vertices\":[";
  for (size_t i = 0; i < r.coincident_vertices.size(); ++i) {
    if (i) out += ',';
    out += '[';
    detail::append_int(&out, r.coincident_vertices[i].first);
    out += ',';
    detail::append_int(&out, r.coincident_vertices[i].second);
    out += ']';
  }
  out += "],\"arc_endpoint_mismatches\":[";
  for (size_t i = 0; i < r.arc_endpoint_mismatches.size(); ++i) {
    if (i) out += ',';
    detail::append_int(&out, r.arc_endpoint_mismatches[i]);
  }
  out += "]}";
  return out;
}

// ---------------------------------------------------------------------------
// Arc-quad documents ("arcquad/1"): vertices and side bulges describe the
// quad; measured angles ride along for information and are re-derived on
// parse.

inline std::string write_arcquad(const ArcQuad& q) {
  std::string out = "{\"schema\":\"arcquad/1\",\"vertices\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    out += '[';
    detail::append_double(&out, q.v[i].x);
    out += ',';
    detail::append_double(&out, q.v[i].y);
    out += ']';
  }
  out += "],\"bulges\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    detail::append_double(&out, q.side[i].bulge);
  }
  out += "],\"theta\":";
  detail::append_double(&out, q.theta);
  out += ",\"phi1\":";
  detail::append_double(&out, q.phi1);
  out += ",\"phi2\":";
  detail::append_double(&out, q.phi2);
  out += ",\"tilt\":";
  detail::append_double(&out, tilt(q));
  out += ",\"inside\":";
  detail::append_bool(&out, q.inside);
  out += ",\"ccw\":";
  detail::append_bool(&out, q.ccw);
  out += ",\"cyclic_residual\":";
  detail::append_double(&out, q.cyclic_residual);
  out += '}';
  return out;
}

inline ArcQuad parse_arcquad(const std::string& text, double tol) {
  nlohmann::json j = parse_json(text);
  detail::require_schema(j, "arcquad/1");
  const nlohmann::json& verts = detail::require_field(j, "vertices");
  const nlohmann::json& bulges = detail::require_field(j, "bulges");
  if (!verts.is_array() || verts.size() != 4 || !bulges.is_array() || bulges.size() != 4)
    fail(ErrorCode::kBadParameter, "need four vertices and four bulges");
  std::array<Point, 4> v;
  for (int i = 0; i < 4; ++i) {
    if (!verts[i].is_array() || verts[i].size() != 2 || !verts[i][0].is_number() ||
        !verts[i][1].is_number())
      fail(ErrorCode::kBadParameter, "vertices must be [x,y] pairs");
    v[i] = pt(verts[i][0].get<double>(), verts[i][1].get<double>());
  }
  std::array<DirectedArc, 4> sides;
  for (int i = 0; i < 4; ++i) {
    if (!bulges[i].is_number())
      fail(ErrorCode::kBadParameter, "bulges must be numbers");
    sides[i] = arc(to_complex(v[i]), to_complex(v[(i + 1) % 4]), bulges[i].get<double>());
  }
  return quad_from_sides(sides, tol);
}

inline std::string write_rhombus_form(const RhombusForm& r) {
  auto pair = [](std::string* out, Complex z) {
    *out += '[';
    detail::append_double(out, z.real());
    *out += ',';
    detail::append_double(out, z.imag());
    *out += ']';
  };
  std::string out = "{\"schema\":\"rhombus/1\",\"transform\":{\"a\":";
  pair(&out, r.transform.a);
  out += ",\"b\":";
  pair(&out, r.transform.b);
  out += ",\"c\":";
  pair(&out, r.transform.c);
  out += ",\"d\":";
  pair(&out, r.transform.d);
  out += "},\"circles\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    out += "{\"a\":";
    detail::append_double(&out, r.circles[i].a);
    out += ",\"b\":";
    pair(&out, r.circles[i].b);
    out += ",\"c\":";
    detail::append_double(&out, r.circles[i].c);
    out += '}';
  }
  out += "],\"center_residual\":";
  detail::append_double(&out, r.center_residual);
  out += ",\"radius_residual\":";
  detail::append_double(&out, r.radius_residual);
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Search reports: seed and digest are strings so 64-bit values survive JSON's
// double-precision numbers.

inline std::string write_search_report(const SearchReport& r) {
  char seed_buf[32], digest_buf[32];
  std::snprintf(seed_buf, sizeof seed_buf, "%" PRIu64, r.seed);
  std::snprintf(digest_buf, sizeof digest_buf, "%016" PRIx64, r.digest);
  std::string out = "{\"schema\":\"search-report/1\",\"k\":";
  detail::append_int(&out, r.k);
  out += ",\"theta\":";
  detail::append_double(&out, r.theta);
  out += ",\"budget\":";
  detail::append_int(&out, r.budget);
  out += ",\"seed\":\"";
  out += seed_buf;
  out += "\",\"gate\":";
  detail::append_bool(&out, r.gate);
  out += ",\"tilt_bound\":";
  detail::append_double(&out, r.tilt_bound);
  out += ",\"candidates\":";
  detail::append_int(&out, r.candidates);
  out += ",\"valid_candidates\":";
  detail::append_int(&out, r.valid_candidates);
  out += ",\"degenerate_candidates\":";
  detail::append_int(&out, r.degenerate_candidates);
  out += ",\"steps_checked\":";
  detail::append_int(&out, r.steps_checked);
  out += ",\"steps_passed\":";
  detail::append_int(&out, r.steps_passed);
  out += ",\"inconclusive_steps\":";
  detail::append_int(&out, r.inconclusive_steps);
  out += ",\"precondition_failures\":";
  detail::append_int(&out, r.precondition_failures);
  out += ",\"closed_configurations\":";
  detail::append_int(&out, r.closed_configurations);
  out += ",\"min_tau_increment\":";
  detail::append_double(&out, r.min_tau_increment);
  out += ",\"max_tau_increment\":";
  detail::append_double(&out, r.max_tau_increment);
  out += ",\"min_intercircle_gap\":";
  detail::append_double(&out, r.min_intercircle_gap);
  out += ",\"max_intercircle_gap\":";
  detail::append_double(&out, r.max_intercircle_gap);
  out += ",\"pigeonhole_ok\":";
  detail::append_bool(&out, r.pigeonhole_ok);
  out += ",\"digest\":\"";
  out += digest_buf;
  out += "\"}";
  return out;
}

}  // namespace lombardi
