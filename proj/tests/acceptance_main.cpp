// Acceptance harness: runs every shipped-quality criterion with its stated
// tolerance and time budget, printing one pass/fail line per criterion and
// exiting nonzero if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lombardi/certify.hpp"
#include "lombardi/jsonio.hpp"

namespace {

using namespace lombardi;

void notef(std::string* note, const char* fmt, ...) {
  if (!note->empty()) return;  // keep the first failure
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  *note = buf;
}

double frand(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

MoebiusTransform random_far_pole_transform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Complex a{1 + 0.2 * u(rng), 0.2 * u(rng)};
  Complex b{u(rng), u(rng)};
  Complex c{0.02 * u(rng), 0.02 * u(rng)};
  return moebius_normalize(a, b, c, Complex{1, 0});
}

ArcQuad mapped_quad(const MoebiusTransform& t, const ArcQuad& q, double tol) {
  std::array<DirectedArc, 4> sides;
  for (int i = 0; i < 4; ++i) sides[i] = apply_to_arc(t, q.side[i]);
  return quad_from_sides(sides, tol);
}

double circular_diff(double a, double b) { return std::fabs(wrap_pi(a - b)); }

// Four angular positions on a circle, sorted, with cyclic gaps of at least
// `sep` so the quad's vertices stay well separated.
std::array<double, 4> random_positions(std::mt19937_64& rng, double sep) {
  for (;;) {
    std::array<double, 4> p;
    for (double& x : p) x = frand(rng, 0, 2 * kPi);
    std::sort(p.begin(), p.end());
    double min_gap = 2 * kPi + p[0] - p[3];
    for (int i = 0; i < 3; ++i) min_gap = std::min(min_gap, p[i + 1] - p[i]);
    if (min_gap >= sep) return p;
  }
}

// ---------------------------------------------------------------------------
// 1. Construction counts.

bool counts_ok(std::string* note) {
  for (int k = 2; k <= 12; ++k) {
    EmbeddedGraph g = build_b(k);
    if (g.vertex_count() != 2 * k * k + 2) {
      notef(note, "B(%d) has %d vertices", k, g.vertex_count());
      return false;
    }
    int high = 0, low = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      int deg = g.degree(v);
      if (deg == 2 * k)
        ++high;
      else if (deg == 2)
        ++low;
      else {
        notef(note, "B(%d) vertex %d has degree %d", k, v, deg);
        return false;
      }
    }
    if (high != 2 * k + 2 || low != 2 * k * k - 2 * k) {
      notef(note, "B(%d) degree multiset is {2k on %d, 2 on %d}", k, high, low);
      return false;
    }
  }
  for (int k = 2; k <= 10; ++k) {
    EmbeddedGraph g = build_s(k);
    if (g.vertex_count() != 8 * k * k - 2 * k + 2) {
      notef(note, "S(%d) has %d vertices", k, g.vertex_count());
      return false;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      int deg = g.degree(v);
      if (g.color[v] == Color::kRed ? (deg != 2 && deg != 3) : deg != 4 * k) {
        notef(note, "S(%d) vertex %d (%s) has degree %d", k, v,
              color_name(g.color[v]), deg);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Structural certifications.

// True when removing the one vertex `apex` leaves a tree: no edge among the
// survivors closes a cycle, and an acyclic graph on n-1 vertices with n-2
// edges is necessarily connected.
bool deletion_leaves_tree(const EmbeddedGraph& g, int apex) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int kept_edges = 0;
  for (auto [u, v] : g.edges) {
    if (u == apex || v == apex) continue;
    ++kept_edges;
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;  // cycle
    parent[ru] = rv;
  }
  return kept_edges == n - 2;
}

bool structure_ok(std::string* note) {
  for (int k = 2; k <= 8; ++k) {
    EmbeddedGraph b = build_b(k);
    if (!is_bipartite(b) || !euler_ok(b)) {
      notef(note, "B(%d) bipartite/Euler check failed", k);
      return false;
    }
    if (!sp_reduces_to_edge(build_s(k))) {
      notef(note, "S(%d) does not series-parallel reduce", k);
      return false;
    }
    EmbeddedGraph apex = build_apex_tree(k);
    for (int v = 0; v < apex.vertex_count(); ++v) {
      if (apex.color[v] != Color::kYellow) continue;
      if (!deletion_leaves_tree(apex, v)) {
        notef(note, "apex-tree(%d) minus yellow hub %d is not a tree", k, v);
        return false;
      }
    }
    if (!is_bipartite(build_s_bipartite(k))) {
      notef(note, "bipartite variant (%d) is not 2-colorable", k);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Equiangular quads stay cyclic with an inside/outside dichotomy.

bool cyclic_suite_ok(std::string* note) {
  std::mt19937_64 rng(33003);
  int done = 0, attempts = 0;
  while (done < 1000) {
    if (++attempts > 5000) {
      notef(note, "only %d usable quads in %d attempts", done, attempts);
      return false;
    }
    Complex center{frand(rng, -2, 2), frand(rng, -2, 2)};
    GeneralizedCircle circle = circle_from_center_radius(center, frand(rng, 0.5, 2));
    double theta = frand(rng, 0.06, kPi - 0.12);
    double phi1 = frand(rng, 0.05, kPi - theta - 0.05);
    bool inside = rng() & 1;
    ArcQuad m;
    try {
      ArcQuad q = build_from_circle(circle, random_positions(rng, 0.25), theta, phi1,
                                    inside);
      m = mapped_quad(random_far_pole_transform(rng), q, 1e-6);
    } catch (const Error&) {
      continue;  // the transform landed too close to a vertex or the carrier
    }
    ++done;
    if (m.cyclic_residual > 1e-7) {
      notef(note, "quad %d residual %.3g", done, m.cyclic_residual);
      return false;
    }
    // 100 boundary samples: the sides must stay weakly on the declared side
    // of the vertex circle.
    for (int s = 0; s < 4; ++s) {
      for (int i = 0; i < 25; ++i) {
        double val = evaluate(m.circle, point_at(m.side[s], (i + 0.5) / 25));
        if (m.inside ? val > 1e-9 : val < -1e-9) {
          notef(note, "quad %d side %d leaves its half-plane (%.3g)", done, s, val);
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. Focus-fixing transforms shift bipolar coordinates uniformly.

bool bipolar_suite_ok(std::string* note) {
  std::mt19937_64 rng(44004);
  auto tangent_dir_at = [](const GeneralizedCircle& g, const Point& p) {
    if (g.is_line()) return std::arg(normalized(g).b * Complex(0, 1));
    return std::arg(Complex(0, 1) * (to_complex(p) - g.center()));
  };
  int done = 0, attempts = 0;
  while (done < 500) {
    if (++attempts > 3000) {
      notef(note, "only %d usable triples in %d attempts", done, attempts);
      return false;
    }
    Point s = pt(frand(rng, -2, 2), frand(rng, -2, 2));
    Point t = pt(frand(rng, -2, 2), frand(rng, -2, 2));
    if (distance(s, t) < 0.3) continue;
    BipolarFrame f = bipolar_frame(s, t);
    double ds = frand(rng, -3, 3), dt = frand(rng, -2, 2);
    MoebiusTransform map = fixing_foci(s, t, ds, dt);

    BipolarCoord c[2];
    bool usable = true;
    Point p[2], moved[2];
    for (int i = 0; i < 2; ++i) {
      c[i] = BipolarCoord{frand(rng, -3, 3), frand(rng, -2, 2), false};
      p[i] = from_bipolar(f, c[i]);
      moved[i] = apply(map, p[i]);
      if (moved[i].infinite) usable = false;
    }
    if (!usable) continue;
    ++done;

    // Coordinate differences of the pair are unchanged by the transform.
    BipolarCoord m0 = to_bipolar(f, moved[0]), m1 = to_bipolar(f, moved[1]);
    if (circular_diff(m0.sigma - m1.sigma, c[0].sigma - c[1].sigma) > 1e-8 ||
        std::fabs((m0.tau - m1.tau) - (c[0].tau - c[1].tau)) > 1e-8) {
      notef(note, "triple %d: coordinate differences moved", done);
      return false;
    }
    // And each coordinate shifts by exactly the transform's offsets.
    if (circular_diff(m0.sigma, c[0].sigma + ds) > 1e-8 ||
        std::fabs(m0.tau - (c[0].tau + dt)) > 1e-8) {
      notef(note, "triple %d: shift is not (%.3f, %.3f)", done, ds, dt);
      return false;
    }

    // Group law: composing two focus maps adds their offsets.
    double ds2 = frand(rng, -2, 2), dt2 = frand(rng, -1, 1);
    Point via_compose = apply(compose(fixing_foci(s, t, ds2, dt2), map), p[0]);
    Point direct = apply(fixing_foci(s, t, ds + ds2, dt + dt2), p[0]);
    if (via_compose.infinite || direct.infinite ||
        distance(via_compose, direct) > 1e-8) {
      notef(note, "triple %d: group law violated", done);
      return false;
    }

    // Orthogonality of the level sets through the first point.
    if (std::fabs(std::sin(c[0].sigma)) > 0.05 && std::fabs(c[0].tau) > 0.05) {
      GeneralizedCircle gs = sigma_circle(f, c[0].sigma);
      GeneralizedCircle gt = tau_circle(f, c[0].tau);
      double cross = wrap_pi(tangent_dir_at(gs, p[0]) - tangent_dir_at(gt, p[0]));
      if (std::fabs(std::fabs(cross) - kPi / 2) > 1e-8) {
        notef(note, "triple %d: level sets meet at %.9f", done, cross);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. The sigma span of a quad matches its angle bookkeeping.

bool span_suite_ok(std::string* note) {
  std::mt19937_64 rng(55005);
  int done = 0, attempts = 0;
  while (done < 500) {
    if (++attempts > 3000) {
      notef(note, "only %d usable quads in %d attempts", done, attempts);
      return false;
    }
    Complex center{frand(rng, -2, 2), frand(rng, -2, 2)};
    GeneralizedCircle circle = circle_from_center_radius(center, frand(rng, 0.5, 2));
    double theta = frand(rng, 0.1, kPi - 0.2);
    double phi1 = frand(rng, 0.05, kPi - theta - 0.05);
    ArcQuad q;
    try {
      q = build_from_circle(circle, random_positions(rng, 0.25), theta, phi1,
                            rng() & 1);
    } catch (const Error&) {
      continue;
    }
    ++done;
    if (circular_diff(sigma_span(q), sigma_span_from_angles(q)) > 1e-6) {
      notef(note, "quad %d: span %.9f vs predicted %.9f", done, sigma_span(q),
            sigma_span_from_angles(q));
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. The lift step raises tau for every admissible target point.

bool lift_suite_ok(std::string* note) {
  BipolarFrame f = bipolar_frame(pt(0, -1), pt(0, 1));
  std::mt19937_64 rng(66006);
  const double phis[] = {3 * kPi / 4, 0.8 * kPi, 0.9 * kPi};
  const double offs[] = {0.30, 0.94, 2.55};
  for (int fx = 0; fx < 3; ++fx) {
    ArcQuad q = build_fan_quad(f, kPi / 2, 0.0, offs[fx], 0.15, phis[fx]);
    std::vector<Point> samples;
    int admissible = 0;
    for (int a = 0; a < 10; ++a) {
      double sigma = 0.02 + (kPi - 0.04) * a / 9;
      for (int b = 0; b < 10; ++b) {
        double tau = -1.0 + 7.0 * b / 9;
        Point r = from_bipolar(f, {sigma, tau, false});
        LiftResult res;
        try {
          res = lift_check(q, r);
        } catch (const Error&) {
          continue;  // outside the admissible band for this tilt
        }
        ++admissible;
        if (!res.ok || res.tau_r <= res.tau_p) {
          notef(note, "phi1 %.3f sigma %.3f tau %.3f: tau_r %.6f vs tau_p %.6f",
                phis[fx], sigma, tau, res.tau_r, res.tau_p);
          return false;
        }
        if (samples.size() < 3) samples.push_back(r);
      }
    }
    if (admissible < 5) {
      notef(note, "phi1 %.3f: only %d admissible grid points", phis[fx], admissible);
      return false;
    }
    // A transformed copy of the whole picture must agree point for point.
    MoebiusTransform maps[] = {fixing_foci(f.s, f.t, 0.3, 0.2),
                               random_far_pole_transform(rng)};
    for (const MoebiusTransform& t : maps) {
      ArcQuad qi = mapped_quad(t, q, 1e-6);
      for (const Point& r : samples) {
        LiftResult plain = lift_check(q, r);
        LiftResult moved = lift_check(qi, apply(t, r));
        if (plain.ok != moved.ok ||
            std::fabs((moved.tau_r - moved.tau_p) - (plain.tau_r - plain.tau_p)) >
                1e-8) {
          notef(note, "phi1 %.3f: transformed copy disagrees", phis[fx]);
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. The seeded closure search never finds a closed fan in the gate regime.

bool search_suite_ok(std::string* note) {
  for (int k : {9, 12}) {
    for (double theta : {kPi / k, kPi / (2 * k)}) {
      SearchReport r = closure_search(k, theta, 10000, 4242);
      if (!r.gate || r.candidates != 10000) {
        notef(note, "k=%d: gate %d candidates %d", k, r.gate, r.candidates);
        return false;
      }
      if (r.valid_candidates == 0 || r.steps_checked == 0) {
        notef(note, "k=%d theta=%.4f: nothing explored", k, theta);
        return false;
      }
      if (r.closed_configurations != 0 || r.min_tau_increment <= 1e-8 ||
          r.inconclusive_steps != 0) {
        notef(note, "k=%d theta=%.4f: closed %d min increment %.3g inconclusive %ld",
              k, theta, r.closed_configurations, r.min_tau_increment,
              r.inconclusive_steps);
        return false;
      }
      std::string bytes = write_search_report(r);
      if (write_search_report(closure_search(k, theta, 10000, 4242)) != bytes ||
          write_search_report(closure_search(k, theta, 10000, 4242, 1)) != bytes ||
          write_search_report(closure_search(k, theta, 10000, 4242, 2)) != bytes) {
        notef(note, "k=%d theta=%.4f: report depends on rerun or workers", k, theta);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Validator fixtures.

LombardiDrawing four_cycle() {
  LombardiDrawing d;
  EmbeddedGraph& g = d.graph;
  g.name = "C4";
  g.color.assign(4, Color::kBlue);
  g.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
  g.rotation = {{1, 3}, {2, 0}, {3, 1}, {0, 2}};
  for (int i = 0; i < 4; ++i)
    d.position.push_back(pt(std::cos(i * kPi / 2), std::sin(i * kPi / 2)));
  double b = std::tan(kPi / 8);
  auto at = [&](int v) { return to_complex(d.position[v]); };
  d.arc = {arc(at(0), at(1), -b), arc(at(0), at(3), b), arc(at(1), at(2), -b),
           arc(at(2), at(3), -b)};
  return d;
}

LombardiDrawing two_hubs() {
  LombardiDrawing d;
  EmbeddedGraph& g = d.graph;
  g.name = "H";
  g.color = {Color::kBlue, Color::kBlue, Color::kRed, Color::kRed, Color::kRed,
             Color::kRed};
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}};
  g.rotation = {{1, 2, 3}, {4, 0, 5}, {0}, {0}, {1}, {1}};
  double s3 = std::sqrt(3.0) / 2;
  d.position = {pt(-1, 0),     pt(1, 0),      pt(-1.5, s3),
                pt(-1.5, -s3), pt(1.5, s3),   pt(1.5, -s3)};
  for (auto [u, v] : g.edges)
    d.arc.push_back(arc(to_complex(d.position[u]), to_complex(d.position[v]), 0));
  return d;
}

bool validator_suite_ok(std::string* note) {
  LombardiDrawing good = four_cycle();
  ValidationReport r = validate(good);
  if (!r.lombardi_ok || !r.planar_ok || !r.embedding_ok ||
      std::fabs(angular_resolution(good) - kPi) > 1e-9) {
    notef(note, "round four-cycle rejected (resolution %.12f)",
          angular_resolution(good));
    return false;
  }

  LombardiDrawing bent = four_cycle();
  bent.position[1] = pt(0, 1.1);
  bent.arc[0] = arc(to_complex(bent.position[0]), to_complex(bent.position[1]), 0);
  bent.arc[2] = arc(to_complex(bent.position[1]), to_complex(bent.position[2]), 0);
  ValidationReport r1 = validate(bent);
  if (r1.lombardi_ok || !r1.planar_ok || !r1.embedding_ok) {
    notef(note, "angle defect flags: lombardi %d planar %d embedding %d",
          r1.lombardi_ok, r1.planar_ok, r1.embedding_ok);
    return false;
  }

  LombardiDrawing crossed;
  crossed.graph.name = "X";
  crossed.graph.color.assign(4, Color::kBlue);
  crossed.graph.edges = {{0, 2}, {1, 3}};
  crossed.graph.rotation = {{2}, {3}, {0}, {1}};
  crossed.position = {pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1)};
  for (auto [u, v] : crossed.graph.edges)
    crossed.arc.push_back(
        arc(to_complex(crossed.position[u]), to_complex(crossed.position[v]), 0));
  ValidationReport r2 = validate(crossed);
  if (!r2.lombardi_ok || r2.planar_ok || !r2.embedding_ok ||
      r2.crossings.size() != 1) {
    notef(note, "crossing flags: lombardi %d planar %d embedding %d",
          r2.lombardi_ok, r2.planar_ok, r2.embedding_ok);
    return false;
  }

  LombardiDrawing twisted = two_hubs();
  twisted.graph.rotation[0] = {1, 3, 2};
  ValidationReport r3 = validate(twisted);
  if (!r3.lombardi_ok || !r3.planar_ok || r3.embedding_ok || r3.mirrored) {
    notef(note, "rotation flags: lombardi %d planar %d embedding %d",
          r3.lombardi_ok, r3.planar_ok, r3.embedding_ok);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. Command-line contract.

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& input = "") {
  static int counter = 0;
  std::string base = "acceptance_io_" + std::to_string(++counter);
  std::string in_path = base + ".in", out_path = base + ".out";
  {
    std::ofstream f(in_path, std::ios::binary);
    f << input;
  }
  std::string cmd = "\"" LOMBARDI_CLI_PATH "\" " + args + " < " + in_path + " > " +
                    out_path + " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());
  return r;
}

bool cli_suite_ok(std::string* note) {
  RunResult gen1 = run_cli("gen B 5");
  RunResult gen2 = run_cli("gen B 5");
  if (gen1.exit_code != 0 || gen1.out != gen2.out ||
      parse_graph(gen1.out).vertex_count() != 52) {
    notef(note, "gen B 5: exit %d, stable %d", gen1.exit_code, gen1.out == gen2.out);
    return false;
  }
  if (run_cli("gen B 1").exit_code != 2) {
    notef(note, "gen B 1 did not exit 2");
    return false;
  }

  std::string good = write_drawing(four_cycle());
  if (run_cli("validate -", good).exit_code != 0) {
    notef(note, "validate on the round four-cycle did not exit 0");
    return false;
  }
  LombardiDrawing crossed;
  crossed.graph.name = "X";
  crossed.graph.color.assign(4, Color::kBlue);
  crossed.graph.edges = {{0, 2}, {1, 3}};
  crossed.graph.rotation = {{2}, {3}, {0}, {1}};
  crossed.position = {pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1)};
  for (auto [u, v] : crossed.graph.edges)
    crossed.arc.push_back(
        arc(to_complex(crossed.position[u]), to_complex(crossed.position[v]), 0));
  if (run_cli("validate -", write_drawing(crossed)).exit_code != 1) {
    notef(note, "validate on the crossing fixture did not exit 1");
    return false;
  }
  if (run_cli("validate -", "{broken").exit_code != 2) {
    notef(note, "validate on malformed input did not exit 2");
    return false;
  }

  RunResult svg1 = run_cli("render - -", good);
  RunResult svg2 = run_cli("render - -", good);
  if (svg1.exit_code != 0 || svg1.out != svg2.out || svg1.out.rfind("<svg", 0) != 0) {
    notef(note, "render is not byte-stable");
    return false;
  }

  RunResult cert1 = run_cli("certify 9 --theta B --budget 50 --seed 7");
  RunResult cert2 = run_cli("certify 9 --theta B --budget 50 --seed 7");
  if (cert1.exit_code != 0 || cert1.out != cert2.out) {
    notef(note, "certify report is not byte-stable");
    return false;
  }
  if (run_cli("certify 9 --budget 50").exit_code != 2) {
    notef(note, "certify without --seed did not exit 2");
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    std::function<bool(std::string*)> fn;
  };
  const Criterion criteria[] = {
      {1, "construction counts for the B and S families", 1, counts_ok},
      {2, "structural certifications of all four families", 5, structure_ok},
      {3, "random equiangular quads stay cyclic with a side dichotomy", 30,
       cyclic_suite_ok},
      {4, "focus-fixing transforms shift bipolar coordinates uniformly", 10,
       bipolar_suite_ok},
      {5, "sigma span matches the angle bookkeeping", 10, span_suite_ok},
      {6, "lift step raises tau for admissible targets at every tilt", 10,
       lift_suite_ok},
      {7, "closure search finds no closed fan in the gate regime", 120,
       search_suite_ok},
      {8, "validator fixtures pass and fail with the intended flags", 1,
       validator_suite_ok},
      {9, "command-line exit codes and byte-stable documents", 10, cli_suite_ok},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string note;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn(&note);
    } catch (const std::exception& e) {
      notef(&note, "threw: %s", e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start)
                         .count();
    if (seconds > c.budget_seconds) {
      ok = false;
      notef(&note, "exceeded the %.0f s budget", c.budget_seconds);
    }
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.label, seconds, note.empty() ? "" : ": ", note.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
