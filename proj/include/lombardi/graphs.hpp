// Generators for the embedded graph families used by the drawing and
// certification code: a bipartite double fan with paired red ladders and a
// series-parallel double fan with stuffed chain sectors, plus three variants
// (maximal, bipartite subdivision, apex tree) and the face-level checks.
#pragma once

#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "lombardi/geom.hpp"

namespace lombardi {

enum class Color { kYellow, kBlue, kRed };

// A plane graph: simple edges plus a counterclockwise cyclic neighbor order
// around every vertex.  Vertices are dense integer ids; the two yellow hub
// vertices are always 0 and 1, blues follow, reds after them.
struct EmbeddedGraph {
  std::string name;  // family tag, e.g. "B" or "S-maximal"
  int k = 0;         // family size parameter
  std::vector<Color> color;
  std::vector<std::pair<int, int>> edges;       // normalized u < v, sorted
  std::vector<std::vector<int>> rotation;       // CCW neighbor ids per vertex

  int vertex_count() const { return static_cast<int>(color.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(rotation[v].size()); }
};

namespace detail {

inline void add_edge(EmbeddedGraph* g, int u, int v) {
  g->edges.emplace_back(std::min(u, v), std::max(u, v));
}

inline void finish_edges(EmbeddedGraph* g) {
  std::sort(g->edges.begin(), g->edges.end());
  for (size_t i = 0; i + 1 < g->edges.size(); ++i)
    if (g->edges[i] == g->edges[i + 1])
      fail(ErrorCode::kConstructionInfeasible, "duplicate edge in generator");
}

inline int require_size(int k, int minimum) {
  if (k < minimum) fail(ErrorCode::kBadParameter, "family parameter too small");
  return k;
}

}  // namespace detail

// Walks every face of the embedding.  The next dart after arriving at v from
// u continues to the rotation successor of u around v, so with consistently
// counterclockwise rotations each interior face is traced once.
inline std::vector<std::vector<int>> trace_faces(const EmbeddedGraph& g) {
  std::vector<std::map<int, int>> pos(g.color.size());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < g.degree(v); ++i) pos[v][g.rotation[v][i]] = i;

  std::vector<std::vector<int>> faces;
  std::set<std::pair<int, int>> seen;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v : g.rotation[u]) {
      if (seen.count({u, v})) continue;
      std::vector<int> walk;
      int a = u, b = v;
      while (!seen.count({a, b})) {
        seen.insert({a, b});
        walk.push_back(a);
        auto it = pos[b].find(a);
        if (it == pos[b].end())
          fail(ErrorCode::kConstructionInfeasible, "rotation lists disagree with edges");
        int next = g.rotation[b][(it->second + 1) % g.degree(b)];
        a = b;
        b = next;
      }
      faces.push_back(std::move(walk));
    }
  }
  return faces;
}

inline bool is_connected(const EmbeddedGraph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<char> seen(g.color.size(), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : g.rotation[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        bfs.push(v);
      }
  }
  return reached == g.vertex_count();
}

// Connected plane graph criterion: the traced faces satisfy V - E + F = 2.
inline bool euler_ok(const EmbeddedGraph& g) {
  if (!is_connected(g)) return false;
  long faces = static_cast<long>(trace_faces(g).size());
  return g.vertex_count() - g.edge_count() + faces == 2;
}

inline bool is_bipartite(const EmbeddedGraph& g) {
  std::vector<int> side(g.color.size(), -1);
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (int v : g.rotation[u]) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          bfs.push(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Series-parallel reduction on the underlying multigraph: merge parallel
// edges and smooth degree-two vertices until nothing applies.  True when the
// graph collapses to a single edge.
inline bool sp_reduces_to_edge(const EmbeddedGraph& g) {
  std::map<std::pair<int, int>, int> mult;
  std::vector<int> deg(g.color.size(), 0);
  for (auto [u, v] : g.edges) {
    ++mult[{u, v}];
    ++deg[u];
    ++deg[v];
  }
  int alive = g.vertex_count();

  auto drop_edge = [&](int u, int v) {
    auto key = std::minmax(u, v);
    auto it = mult.find({key.first, key.second});
    if (--it->second == 0) mult.erase(it);
    --deg[u];
    --deg[v];
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = mult.begin(); it != mult.end();) {
      if (it->second > 1) {
        deg[it->first.first] -= it->second - 1;
        deg[it->first.second] -= it->second - 1;
        it->second = 1;
        changed = true;
      }
      ++it;
    }
    for (int u = 0; u < g.vertex_count() && !changed; ++u) {
      if (deg[u] != 2) continue;
      std::vector<int> nb;
      for (auto& [e, m] : mult) {
        if (e.first == u)
          for (int i = 0; i < m; ++i) nb.push_back(e.second);
        else if (e.second == u)
          for (int i = 0; i < m; ++i) nb.push_back(e.first);
      }
      if (nb.size() != 2) continue;
      drop_edge(u, nb[0]);
      drop_edge(u, nb[1]);
      --alive;
      if (nb[0] != nb[1]) {
        ++mult[{std::min(nb[0], nb[1]), std::max(nb[0], nb[1])}];
        ++deg[nb[0]];
        ++deg[nb[1]];
      }
      changed = true;
    }
  }
  return alive == 2 && mult.size() == 1 && mult.begin()->second == 1;
}

// Two-tree recognition by perfect elimination: repeatedly remove a degree-two
// vertex whose neighbors are adjacent; true when only one edge remains.
inline bool is_two_tree(const EmbeddedGraph& g) {
  std::vector<std::set<int>> adj(g.color.size());
  for (auto [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  int alive = g.vertex_count();
  std::queue<int> candidates;
  for (int v = 0; v < g.vertex_count(); ++v) candidates.push(v);
  std::vector<char> gone(g.color.size(), 0);
  while (!candidates.empty()) {
    int v = candidates.front();
    candidates.pop();
    if (gone[v] || adj[v].size() != 2) continue;
    int a = *adj[v].begin();
    int b = *std::next(adj[v].begin());
    if (!adj[a].count(b)) continue;
    gone[v] = 1;
    --alive;
    adj[a].erase(v);
    adj[b].erase(v);
    adj[v].clear();
    candidates.push(a);
    candidates.push(b);
  }
  int live_edges = 0;
  for (int v = 0; v < g.vertex_count(); ++v) live_edges += static_cast<int>(adj[v].size());
  return alive == 2 && live_edges == 2;
}

// Smallest d such that repeatedly deleting a minimum-degree vertex never
// meets a degree above d.
inline int degeneracy(const EmbeddedGraph& g) {
  std::vector<std::set<int>> adj(g.color.size());
  for (auto [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> gone(g.color.size(), 0);
  int worst = 0;
  for (int step = 0; step < g.vertex_count(); ++step) {
    int best = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!gone[v] && (best < 0 || adj[v].size() < adj[best].size())) best = v;
    worst = std::max(worst, static_cast<int>(adj[best].size()));
    gone[best] = 1;
    for (int u : adj[best]) adj[u].erase(best);
    adj[best].clear();
  }
  return worst;
}

// True when deleting the given vertex leaves a tree (connected, V-1 edges).
inline bool tree_after_deleting(const EmbeddedGraph& g, int apex) {
  int vertices = g.vertex_count() - 1;
  int edges = 0;
  std::vector<std::vector<int>> adj(g.color.size());
  for (auto [u, v] : g.edges) {
    if (u == apex || v == apex) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
    ++edges;
  }
  if (edges != vertices - 1) return false;
  int start = apex == 0 ? 1 : 0;
  std::vector<char> seen(g.color.size(), 0);
  seen[start] = 1;
  std::queue<int> bfs;
  bfs.push(start);
  int reached = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        bfs.push(v);
      }
  }
  return reached == vertices;
}

// Canonical description of the embedded graph up to relabeling, rotation of
// the cyclic orders, and reflection.  Breadth-first labels are generated from
// every possible starting dart in both orientations; the lexicographically
// smallest trace is the canonical form.
inline std::string canonical_code(const EmbeddedGraph& g) {
  std::string best;
  for (int su = 0; su < g.vertex_count(); ++su) {
    for (int sv : g.rotation[su]) {
      for (int dir : {1, -1}) {
        std::vector<int> label(g.color.size(), -1);
        std::vector<int> entry(g.color.size(), -1);  // neighbor we arrived from
        std::vector<int> order;
        label[su] = 0;
        entry[su] = sv;
        order.push_back(su);
        std::string code;
        for (size_t head = 0; head < order.size(); ++head) {
          int u = order[head];
          code += static_cast<char>('a' + static_cast<int>(g.color[u]));
          int deg = g.degree(u);
          int at = 0;
          while (g.rotation[u][at] != entry[u]) ++at;
          for (int i = 0; i < deg; ++i) {
            int v = g.rotation[u][(at + dir * i % deg + deg) % deg];
            if (label[v] < 0) {
              label[v] = static_cast<int>(order.size());
              entry[v] = u;
              order.push_back(v);
            }
            code += ' ' + std::to_string(label[v]);
          }
          code += ';';
        }
        if (best.empty() || code < best) best = std::move(code);
      }
    }
  }
  return best;
}

// Double fan over paired blue vertices: two yellow hubs joined to 2k blues,
// with each consecutive blue pair (2i, 2i+1) also joined to a shared set of
// 2k-2 degree-two reds forming a ladder inside the pair's sector.
inline EmbeddedGraph build_b(int k) {
  detail::require_size(k, 2);
  EmbeddedGraph g;
  g.name = "B";
  g.k = k;
  int blues = 2 * k, reds_per_pair = 2 * k - 2;
  auto blue = [](int j) { return 2 + j; };
  auto red = [&](int pair, int m) { return 2 + blues + pair * reds_per_pair + m; };
  g.color.assign(2, Color::kYellow);
  g.color.insert(g.color.end(), blues, Color::kBlue);
  g.color.insert(g.color.end(), k * reds_per_pair, Color::kRed);
  g.rotation.resize(g.color.size());

  for (int j = 0; j < blues; ++j) {
    detail::add_edge(&g, 0, blue(j));
    detail::add_edge(&g, 1, blue(j));
    g.rotation[0].push_back(blue(j));
    g.rotation[1].push_back(blue(blues - 1 - j));
  }
  for (int i = 0; i < k; ++i) {
    int lower = blue(2 * i), upper = blue(2 * i + 1);
    g.rotation[lower] = {0, 1};
    g.rotation[upper] = {0};
    for (int m = reds_per_pair - 1; m >= 0; --m) g.rotation[lower].push_back(red(i, m));
    for (int m = 0; m < reds_per_pair; ++m) {
      detail::add_edge(&g, lower, red(i, m));
      detail::add_edge(&g, upper, red(i, m));
      g.rotation[upper].push_back(red(i, m));
      g.rotation[red(i, m)] = {lower, upper};
    }
    g.rotation[upper].push_back(1);
  }
  detail::finish_edges(&g);
  return g;
}

// Series-parallel double fan: two yellow hubs joined to 2k blues, and for
// every yellow-blue pair a chain of 2k-1 reds fanned under the blue, the
// chain head also joined to the yellow.  Chains fill alternate sectors, four
// per stuffed sector, leaving k clean quadrilateral faces.
inline EmbeddedGraph build_s(int k) {
  detail::require_size(k, 2);
  EmbeddedGraph g;
  g.name = "S";
  g.k = k;
  int blues = 2 * k, len = 2 * k - 1;
  auto blue = [](int j) { return 2 + j; };
  // Chains from yellow 0 come first, then chains from yellow 1, blue-major.
  auto red = [&](int y, int j, int m) { return 2 + blues + (y * blues + j) * len + m; };
  g.color.assign(2, Color::kYellow);
  g.color.insert(g.color.end(), blues, Color::kBlue);
  g.color.insert(g.color.end(), 2 * blues * len, Color::kRed);
  g.rotation.resize(g.color.size());

  for (int j = 0; j < blues; ++j) {
    detail::add_edge(&g, 0, blue(j));
    detail::add_edge(&g, 1, blue(j));
    detail::add_edge(&g, 0, red(0, j, 0));
    detail::add_edge(&g, 1, red(1, j, 0));
    for (int y = 0; y < 2; ++y)
      for (int m = 0; m < len; ++m) {
        detail::add_edge(&g, blue(j), red(y, j, m));
        if (m + 1 < len) detail::add_edge(&g, red(y, j, m), red(y, j, m + 1));
      }
  }

  for (int i = 0; i < k; ++i) {
    int lo = 2 * i, hi = 2 * i + 1;
    // Yellow 0 on the left, counterclockwise is bottom-up.
    g.rotation[0].insert(g.rotation[0].end(),
                         {blue(lo), red(0, lo, 0), red(0, hi, 0), blue(hi)});
    // Yellow 1 on the right, counterclockwise is top-down.
    int ilo = 2 * (k - 1 - i), ihi = ilo + 1;
    g.rotation[1].insert(g.rotation[1].end(),
                         {blue(ihi), red(1, ihi, 0), red(1, ilo, 0), blue(ilo)});
  }
  for (int j = 0; j < blues; ++j) {
    bool lower = j % 2 == 0;  // stuffed sector sits above the even blue
    std::vector<int>& rot = g.rotation[blue(j)];
    if (lower) {
      rot = {0, 1};
      for (int m = 0; m < len; ++m) rot.push_back(red(1, j, m));
      for (int m = len - 1; m >= 0; --m) rot.push_back(red(0, j, m));
    } else {
      rot = {0};
      for (int m = 0; m < len; ++m) rot.push_back(red(0, j, m));
      for (int m = len - 1; m >= 0; --m) rot.push_back(red(1, j, m));
      rot.push_back(1);
    }
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < len; ++m) {
        int prev = m == 0 ? y : red(y, j, m - 1);
        int self = red(y, j, m);
        if (m + 1 == len) {
          g.rotation[self] = {prev, blue(j)};
        } else if ((y == 0) == lower) {
          g.rotation[self] = {prev, blue(j), red(y, j, m + 1)};
        } else {
          g.rotation[self] = {prev, red(y, j, m + 1), blue(j)};
        }
      }
    }
  }
  detail::finish_edges(&g);
  return g;
}

// Maximal variant of the series-parallel fan: an extra yellow-yellow edge
// through sector zero and chains lengthened on the yellow-0 side to 2k reds
// (2k-1 on the yellow-1 side), which makes every yellow and blue degree equal
// to 4k+1 and the whole graph a 2-tree.
inline EmbeddedGraph build_s_maximal(int k) {
  detail::require_size(k, 2);
  EmbeddedGraph g;
  g.name = "S-maximal";
  g.k = k;
  int blues = 2 * k;
  std::array<int, 2> len{2 * k, 2 * k - 1};
  auto blue = [](int j) { return 2 + j; };
  int base1 = 2 + blues + blues * len[0];
  auto red = [&](int y, int j, int m) {
    return y == 0 ? 2 + blues + j * len[0] + m : base1 + j * len[1] + m;
  };
  g.color.assign(2, Color::kYellow);
  g.color.insert(g.color.end(), blues, Color::kBlue);
  g.color.insert(g.color.end(), blues * (len[0] + len[1]), Color::kRed);
  g.rotation.resize(g.color.size());

  detail::add_edge(&g, 0, 1);
  for (int j = 0; j < blues; ++j) {
    detail::add_edge(&g, 0, blue(j));
    detail::add_edge(&g, 1, blue(j));
    for (int y = 0; y < 2; ++y) {
      detail::add_edge(&g, y, red(y, j, 0));
      for (int m = 0; m < len[y]; ++m) {
        detail::add_edge(&g, blue(j), red(y, j, m));
        if (m + 1 < len[y]) detail::add_edge(&g, red(y, j, m), red(y, j, m + 1));
      }
    }
  }

  for (int i = 0; i < k; ++i) {
    int lo = 2 * i, hi = 2 * i + 1;
    g.rotation[0].push_back(blue(lo));
    g.rotation[0].push_back(red(0, lo, 0));
    if (i == 0) g.rotation[0].push_back(1);  // yellow-yellow edge splits sector zero
    g.rotation[0].insert(g.rotation[0].end(), {red(0, hi, 0), blue(hi)});
    int ilo = 2 * (k - 1 - i), ihi = ilo + 1;
    g.rotation[1].push_back(blue(ihi));
    g.rotation[1].push_back(red(1, ihi, 0));
    if (i == k - 1) g.rotation[1].push_back(0);
    g.rotation[1].insert(g.rotation[1].end(), {red(1, ilo, 0), blue(ilo)});
  }
  for (int j = 0; j < blues; ++j) {
    bool lower = j % 2 == 0;
    std::vector<int>& rot = g.rotation[blue(j)];
    if (lower) {
      rot = {0, 1};
      for (int m = 0; m < len[1]; ++m) rot.push_back(red(1, j, m));
      for (int m = len[0] - 1; m >= 0; --m) rot.push_back(red(0, j, m));
    } else {
      rot = {0};
      for (int m = 0; m < len[0]; ++m) rot.push_back(red(0, j, m));
      for (int m = len[1] - 1; m >= 0; --m) rot.push_back(red(1, j, m));
      rot.push_back(1);
    }
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < len[y]; ++m) {
        int prev = m == 0 ? y : red(y, j, m - 1);
        int self = red(y, j, m);
        if (m + 1 == len[y]) {
          g.rotation[self] = {prev, blue(j)};
        } else if ((y == 0) == lower) {
          g.rotation[self] = {prev, blue(j), red(y, j, m + 1)};
        } else {
          g.rotation[self] = {prev, red(y, j, m + 1), blue(j)};
        }
      }
    }
  }
  detail::finish_edges(&g);
  return g;
}

// Apex variant: the red chains collapse to 2k-2 pendant reds per blue, so
// deleting either yellow hub leaves a tree while yellow and blue degrees stay
// equal at 2k.  Pendants fill alternate sectors exactly like the ladders.
inline EmbeddedGraph build_apex_tree(int k) {
  detail::require_size(k, 2);
  EmbeddedGraph g;
  g.name = "apex-tree";
  g.k = k;
  int blues = 2 * k, pendants = 2 * k - 2;
  auto blue = [](int j) { return 2 + j; };
  auto red = [&](int j, int m) { return 2 + blues + j * pendants + m; };
  g.color.assign(2, Color::kYellow);
  g.color.insert(g.color.end(), blues, Color::kBlue);
  g.color.insert(g.color.end(), blues * pendants, Color::kRed);
  g.rotation.resize(g.color.size());

  for (int j = 0; j < blues; ++j) {
    detail::add_edge(&g, 0, blue(j));
    detail::add_edge(&g, 1, blue(j));
    g.rotation[0].push_back(blue(j));
    g.rotation[1].push_back(blue(blues - 1 - j));
    bool lower = j % 2 == 0;
    std::vector<int>& rot = g.rotation[blue(j)];
    rot = lower ? std::vector<int>{0, 1} : std::vector<int>{0};
    for (int m = 0; m < pendants; ++m) {
      detail::add_edge(&g, blue(j), red(j, m));
      rot.push_back(red(j, m));
      g.rotation[red(j, m)] = {blue(j)};
    }
    if (!lower) rot.push_back(1);
  }
  detail::finish_edges(&g);
  return g;
}

// Bipartite variant: subdivide every yellow-red and red-red edge of the
// series-parallel fan with a fresh red vertex, leaving yellow-blue and
// blue-red edges alone.  Subdividers are appended in sorted edge order.
inline EmbeddedGraph build_s_bipartite(int k) {
  EmbeddedGraph g = build_s(k);
  g.name = "S-bipartite";
  auto splits = [&](int u, int v) {
    bool yellow_red = g.color[u] == Color::kYellow && g.color[v] == Color::kRed;
    bool red_red = g.color[u] == Color::kRed && g.color[v] == Color::kRed;
    return yellow_red || red_red;
  };
  std::vector<std::pair<int, int>> old_edges = std::move(g.edges);
  g.edges.clear();
  for (auto [u, v] : old_edges) {
    if (!splits(u, v)) {
      g.edges.emplace_back(u, v);
      continue;
    }
    int w = g.vertex_count();
    g.color.push_back(Color::kRed);
    g.rotation.push_back({u, v});
    *std::find(g.rotation[u].begin(), g.rotation[u].end(), v) = w;
    *std::find(g.rotation[v].begin(), g.rotation[v].end(), u) = w;
    detail::add_edge(&g, u, w);
    detail::add_edge(&g, v, w);
  }
  detail::finish_edges(&g);
  return g;
}

// The quadrilateral faces running yellow-blue-yellow-blue, reported as
// (yellow 0, blue, yellow 1, blue) walks and ordered by their smaller blue
// id, which follows the fan order of the generators above.
inline std::vector<std::array<int, 4>> quad_faces(const EmbeddedGraph& g) {
  std::vector<std::array<int, 4>> quads;
  for (const std::vector<int>& walk : trace_faces(g)) {
    if (walk.size() != 4) continue;
    int at0 = -1;
    for (int i = 0; i < 4; ++i)
      if (walk[i] == 0) at0 = i;
    if (at0 < 0 || walk[(at0 + 2) % 4] != 1) continue;
    int p = walk[(at0 + 1) % 4], q = walk[(at0 + 3) % 4];
    if (g.color[p] != Color::kBlue || g.color[q] != Color::kBlue) continue;
    quads.push_back({0, p, 1, q});
  }
  std::sort(quads.begin(), quads.end(),
            [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
              return std::min(a[1], a[3]) < std::min(b[1], b[3]);
            });
  return quads;
}

}  // namespace lombardi
