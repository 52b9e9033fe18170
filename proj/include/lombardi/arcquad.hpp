// Equiangular arc-quadrilaterals: four circular-arc sides meeting at equal
// vertex angles.  Includes the inscribed-circle builder, detection of the
// common circle through the four vertices, the angular span swept about a
// vertex pair, and a canonical position in which the four side carriers have
// centers on a rhombus with opposite radii equal.
#pragma once

#include <random>

#include "lombardi/bipolar.hpp"

namespace lombardi {

struct ArcQuad {
  // Vertices in traversal order; the span and certification code reads them
  // as s, p, t, q with the focus pair at indices 0 and 2.
  std::array<Point, 4> v;
  std::array<DirectedArc, 4> side;  // side[i] runs from v[i] to v[(i+1)%4]
  double theta = 0;                 // vertex angle folded into (0, pi)
  double phi1 = 0;                  // lens angle of sides 0 and 2 against the circle
  double phi2 = 0;                  // lens angle of sides 1 and 3
  GeneralizedCircle circle;         // circle through the four vertices
  double cyclic_residual = 0;       // how far the fourth vertex misses it
  bool inside = true;               // quad lies inside its vertex circle
  bool ccw = true;                  // traversal order is counterclockwise
};

inline double interior_angle(const ArcQuad& q) { return q.theta; }
inline double tilt(const ArcQuad& q) { return std::max(q.phi1, q.phi2); }

struct CyclicResult {
  GeneralizedCircle circle;
  bool inside = true;
  double residual = 0;  // how far the fourth vertex misses the circle
};

// Reconstructs the full quad record from four sides: validates closure,
// simplicity, equal vertex angles, and the common vertex circle, then
// measures the lens angles.
inline ArcQuad quad_from_sides(const std::array<DirectedArc, 4>& sides, double tol = kTol) {
  double tol_len = std::max(tol, 1e-12);
  for (int i = 0; i < 4; ++i) {
    check_arc(sides[i]);
    if (!approx_eq(sides[i].end, sides[(i + 1) % 4].start, tol_len))
      fail(ErrorCode::kNotCyclic, "sides do not close up into a cycle");
  }

  ArcQuad q;
  for (int i = 0; i < 4; ++i) {
    q.v[i] = sides[i].start;
    q.side[i] = sides[i];
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (approx_eq(q.v[i], q.v[j], tol_len))
        fail(ErrorCode::kNotCyclic, "vertices are not pairwise distinct");

  // Simplicity: adjacent sides may meet only at the shared vertex, opposite
  // sides not at all.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      IntersectResult r = intersect(sides[i], sides[j], tol_len);
      if (r.overlap) fail(ErrorCode::kSelfCrossing, "two sides overlap");
      bool adjacent = (j == i + 1) || (i == 0 && j == 3);
      if (!adjacent && !r.points.empty())
        fail(ErrorCode::kSelfCrossing, "opposite sides cross");
      if (adjacent) {
        Point shared = (j == i + 1) ? sides[i].end : sides[j].end;
        for (const auto& ip : r.points)
          if (!approx_eq(ip.p, shared, 10 * tol_len))
            fail(ErrorCode::kSelfCrossing, "adjacent sides cross away from their vertex");
      }
    }
  }

  // Total turning of the boundary: arc sweeps plus exterior angles at the
  // vertices.  A simple closed curve turns by exactly one full angle, and its
  // sign gives the traversal orientation.
  double turns[4];
  double total = 0;
  for (int i = 0; i < 4; ++i) {
    total += sweep_angle(sides[i]);
    turns[i] = wrap_pi(tangent_start(sides[(i + 1) % 4]) - tangent_end(sides[i]));
    total += turns[i];
  }
  if (std::fabs(total - 2 * kPi) < 0.5) {
    q.ccw = true;
  } else if (std::fabs(total + 2 * kPi) < 0.5) {
    q.ccw = false;
  } else {
    fail(ErrorCode::kSelfCrossing, "boundary winds like a self-crossing curve");
  }

  // Interior angle at the vertex between consecutive sides.
  double angles[4];
  for (int i = 0; i < 4; ++i) {
    double a = q.ccw ? kPi - turns[i] : kPi + turns[i];
    angles[(i + 1) % 4] = a;
  }
  double mean = (angles[0] + angles[1] + angles[2] + angles[3]) / 4;
  double tol_ang = std::max(tol, 1e-9);
  for (double a : angles)
    if (std::fabs(a - mean) > tol_ang)
      fail(ErrorCode::kNotEquiangular, "vertex angles are not all equal");
  q.inside = mean < kPi;
  q.theta = q.inside ? mean : 2 * kPi - mean;

  // Circle through the first three vertices; the fourth must land on it.
  GeneralizedCircle circ;
  try {
    circ = circumcircle(q.v[0], q.v[1], q.v[2], tol_len);
  } catch (const Error&) {
    fail(ErrorCode::kNotCyclic, "vertices do not span a circle");
  }
  if (circ.is_line()) fail(ErrorCode::kNotCyclic, "vertices are collinear");
  q.cyclic_residual = std::fabs(evaluate(circ, q.v[3]));
  if (q.cyclic_residual > std::max(tol, 1e-9))
    fail(ErrorCode::kNotCyclic, "fourth vertex misses the vertex circle");
  q.circle = circ;

  // Lens angle of each side against the vertex circle, measured between the
  // side's start tangent and the circle arc joining the same vertices in the
  // same traversal direction.
  Complex center = circ.center();
  double pos[4];
  for (int i = 0; i < 4; ++i) pos[i] = std::arg(to_complex(q.v[i]) - center);
  double phis[4];
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    double gap = q.ccw ? wrap_2pi(pos[j] - pos[i]) : wrap_2pi(pos[i] - pos[j]);
    double cb = (q.ccw ? -1.0 : 1.0) * std::tan(gap / 4);
    DirectedArc carc{q.v[i], q.v[j], cb};
    phis[i] = std::fabs(wrap_pi(tangent_start(sides[i]) - tangent_start(carc)));
  }
  double pair_tol = std::max(100 * tol, 1e-7);
  if (std::fabs(phis[0] - phis[2]) > pair_tol || std::fabs(phis[1] - phis[3]) > pair_tol)
    fail(ErrorCode::kNotEquiangular, "opposite sides have unequal lens angles");
  q.phi1 = (phis[0] + phis[2]) / 2;
  q.phi2 = (phis[1] + phis[3]) / 2;
  if (std::fabs(q.theta + q.phi1 + q.phi2 - kPi) > pair_tol)
    fail(ErrorCode::kNotEquiangular, "vertex and lens angles are inconsistent");
  return q;
}

// Builds the equiangular quad with vertices at the given angular positions on
// circle c, vertex angle theta, lens angle phi1 on sides 0 and 2 (phi2 =
// pi - theta - phi1 on the others), drawn inside or outside the circle.
inline ArcQuad build_from_circle(const GeneralizedCircle& c,
                                 const std::array<double, 4>& positions, double theta,
                                 double phi1, bool inside, double tol = kTol) {
  if (c.is_line()) fail(ErrorCode::kBadParameter, "vertex carrier must be a proper circle");
  double phi2 = kPi - theta - phi1;
  if (!(theta > 1e-12 && theta < kPi - 1e-12) || !(phi1 > 1e-12 && phi1 < kPi - 1e-12) ||
      !(phi2 > 1e-12 && phi2 < kPi - 1e-12))
    fail(ErrorCode::kBadAngles, "need positive theta, phi1, phi2 with sum pi");

  // Classify the cyclic order of the positions: counterclockwise gaps sum to
  // one full turn exactly when the order is counterclockwise.
  double gap_ccw[4], gap_cw[4], sum_ccw = 0, sum_cw = 0;
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    gap_ccw[i] = wrap_2pi(positions[j] - positions[i]);
    gap_cw[i] = wrap_2pi(positions[i] - positions[j]);
    if (gap_ccw[i] < 1e-9 || gap_cw[i] < 1e-9)
      fail(ErrorCode::kBadAngles, "vertex positions must be distinct");
    sum_ccw += gap_ccw[i];
    sum_cw += gap_cw[i];
  }
  bool ccw;
  if (std::fabs(sum_ccw - 2 * kPi) < 1e-9) {
    ccw = true;
  } else if (std::fabs(sum_cw - 2 * kPi) < 1e-9) {
    ccw = false;
  } else {
    fail(ErrorCode::kBadAngles, "vertex positions must be in cyclic order");
  }

  Complex center = c.center();
  double radius = c.radius();
  std::array<Complex, 4> vz;
  for (int i = 0; i < 4; ++i) vz[i] = center + radius * std::exp(Complex(0, positions[i]));

  std::array<DirectedArc, 4> sides;
  double s_or = ccw ? 1.0 : -1.0;
  for (int i = 0; i < 4; ++i) {
    double gap = ccw ? gap_ccw[i] : gap_cw[i];
    double phi = (i % 2 == 0) ? phi1 : phi2;
    double half = inside ? (phi / 2 - gap / 4) : -(phi / 2 + gap / 4);
    if (std::fabs(half) >= kPi / 2 - 1e-9)
      fail(ErrorCode::kBadAngles, "side arc would wind past a half turn");
    sides[i] = arc(vz[i], vz[(i + 1) % 4], s_or * std::tan(half));
  }

  ArcQuad q = quad_from_sides(sides, std::max(tol, 1e-9));
  if (std::fabs(q.theta - theta) > 1e-6 || q.inside != inside)
    fail(ErrorCode::kBadAngles, "constructed quad does not realize the requested angles");
  // Keep the requested angles exactly rather than their measured copies.
  q.theta = theta;
  q.phi1 = phi1;
  q.phi2 = phi2;
  return q;
}

inline CyclicResult check_cyclic(const std::array<DirectedArc, 4>& sides, double tol = kTol) {
  ArcQuad q = quad_from_sides(sides, tol);
  return CyclicResult{q.circle, q.inside, q.cyclic_residual};
}

// Angle swept between the sigma levels of the two sides leaving the focus
// pair (v0, v2): the level of side 1 at v2 minus the level of side 3 at v0,
// measured in the traversal orientation and reduced to [0, 2*pi).
inline double sigma_span(const ArcQuad& q, double tol = kTol) {
  BipolarFrame f = bipolar_frame(q.v[0], q.v[2]);
  double at_t = sigma_tangent(f, q.side[1], q.v[2], std::max(tol, 1e-9));
  double at_s = sigma_tangent(f, q.side[3], q.v[0], std::max(tol, 1e-9));
  double raw = at_t - at_s;
  return wrap_2pi(q.ccw ? raw : -raw);
}

// The span predicted by the angle bookkeeping alone.  Sides of an outside
// quad deviate from the vertex circle against the traversal, which negates
// the swept angle.
inline double sigma_span_from_angles(const ArcQuad& q) {
  double s = 2 * q.theta + 2 * q.phi1 - kPi;
  return wrap_2pi(q.inside ? s : -s);
}

// ---------------------------------------------------------------------------
// Canonical rhombus position

struct RhombusForm {
  MoebiusTransform transform;
  std::array<GeneralizedCircle, 4> circles;  // images of the four side carriers
  double center_residual = 0;  // deviation of the centers from a rhombus, relative
  double radius_residual = 0;  // opposite-radius mismatch, relative
};

namespace detail {

// Relative deviation of four circles from "centers on a rhombus, opposite
// radii equal"; infinite when any of them is a line.
inline double rhombus_measure(const std::array<GeneralizedCircle, 4>& ks,
                              double* center_res = nullptr, double* radius_res = nullptr) {
  for (const auto& k : ks)
    if (k.is_line(1e-13)) return HUGE_VAL;
  Complex z[4];
  double r[4];
  for (int i = 0; i < 4; ++i) {
    z[i] = ks[i].center();
    r[i] = ks[i].radius();
  }
  double len[4];
  double mean_len = 0;
  for (int i = 0; i < 4; ++i) {
    len[i] = std::abs(z[i] - z[(i + 1) % 4]);
    mean_len += len[i] / 4;
  }
  double scale = std::max({mean_len, r[0], r[1], r[2], r[3], 1e-12});
  double spread = 0;
  for (int i = 0; i < 4; ++i)
    spread = std::max(spread, std::fabs(len[i] - mean_len));
  double par = std::abs((z[0] + z[2]) - (z[1] + z[3])) / 2;
  double rad = std::max(std::fabs(r[0] - r[2]), std::fabs(r[1] - r[3]));
  if (center_res) *center_res = std::max(spread, par) / scale;
  if (radius_res) *radius_res = rad / scale;
  return std::max({spread, par, rad}) / scale;
}

inline double circle_point_gap(const GeneralizedCircle& g, Complex z) {
  GeneralizedCircle n = normalized(g);
  if (n.is_line(1e-13)) {
    double nb = std::abs(n.b);
    return std::fabs(2 * (n.b.real() * z.real() + n.b.imag() * z.imag()) + n.c) / (2 * nb);
  }
  return std::fabs(std::abs(z - n.center()) - n.radius());
}

// Shared tail of the canonical-position search: sweep the one-parameter
// family remaining after the working pair has been equalized, bisect the
// radius mismatch of the other pair to its roots, and keep the root whose
// four circle images come closest to the rhombus conditions.
template <typename Family>
inline bool rhombus_sweep(const std::array<GeneralizedCircle, 4>& ks,
                          const MoebiusTransform& base, Family family, double lo, double hi,
                          int steps, RhombusForm* out, double* out_measure) {
  GeneralizedCircle b1 = apply_to_circle(base, ks[1]);
  GeneralizedCircle b3 = apply_to_circle(base, ks[3]);
  // Relative radius mismatch of the second pair, scale-free so one threshold
  // serves every configuration.
  auto mismatch = [&](double u) {
    GeneralizedCircle k1 = apply_to_circle(family(u), b1);
    GeneralizedCircle k3 = apply_to_circle(family(u), b3);
    if (k1.is_line(1e-13) || k3.is_line(1e-13)) return HUGE_VAL;
    double r1 = k1.radius(), r3 = k3.radius();
    return (r1 - r3) / (r1 + r3);
  };

  double best_measure = HUGE_VAL;
  auto consider = [&](double u) {
    MoebiusTransform cand = compose(family(u), base);
    std::array<GeneralizedCircle, 4> imgs;
    for (int j = 0; j < 4; ++j) imgs[j] = apply_to_circle(cand, ks[j]);
    double cr, rr;
    double m = rhombus_measure(imgs, &cr, &rr);
    if (m < best_measure) {
      best_measure = m;
      out->transform = cand;
      out->circles = imgs;
      out->center_residual = cr;
      out->radius_residual = rr;
    }
  };

  double prev_u = lo, prev_g = mismatch(lo);
  for (int i = 1; i <= steps; ++i) {
    double u = lo + (hi - lo) * i / steps;
    double g = mismatch(u);
    bool bracket = std::isfinite(prev_g) && std::isfinite(g) &&
                   ((prev_g < 0 && g > 0) || (prev_g > 0 && g < 0));
    if (bracket) {
      double a = prev_u, b = u, ga = prev_g;
      for (int it = 0; it < 90; ++it) {
        double m = (a + b) / 2;
        double gm = mismatch(m);
        if (!std::isfinite(gm)) break;
        if ((ga < 0) == (gm < 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      consider((a + b) / 2);
    } else if (std::isfinite(g) && std::fabs(g) <= 1e-11) {
      // The mismatch vanishes without a sign change, as happens when the
      // second pair is already equal along the whole family.
      consider(u);
    }
    prev_u = u;
    prev_g = g;
  }
  *out_measure = best_measure;
  return std::isfinite(best_measure);
}

}  // namespace detail

// Moves the quad by a fractional-linear map into the position where the four
// side carriers have their centers on a rhombus and opposite carriers share a
// radius.  The pencil spanned by carriers 0 and 2 drives the search: stage
// one equalizes that pair in closed form, stage two slides along the maps
// preserving the pair until the radii of carriers 1 and 3 agree as well.
inline RhombusForm canonical_rhombus_form(const ArcQuad& q, double tol = 1e-9) {
  std::array<GeneralizedCircle, 4> ks;
  for (int i = 0; i < 4; ++i) ks[i] = carrier(q.side[i]);

  RhombusForm out;
  double accept = std::max(tol, 1e-7);
  if (detail::rhombus_measure(ks, &out.center_residual, &out.radius_residual) <= accept) {
    out.transform = moebius_identity();
    out.circles = ks;
    return out;
  }

  Complex centroid{0, 0};
  double scene = 1e-9;
  for (int i = 0; i < 4; ++i) centroid += to_complex(q.v[i]) / 4.0;
  for (int i = 0; i < 4; ++i) scene = std::max(scene, std::abs(to_complex(q.v[i]) - centroid));

  bool k0_line = normalized(ks[0]).is_line(1e-12);
  bool k2_line = normalized(ks[2]).is_line(1e-12);
  bool both_lines = k0_line && k2_line;
  std::vector<Complex> meet = detail::carrier_intersections(ks[0], ks[2]);
  if (meet.size() == 2) {
    // A tangency computed in floating point splits into two nearby points.
    double sep_scale = std::max({scene, std::abs(meet[0] - centroid), 1.0});
    if (std::abs(meet[0] - meet[1]) <= 1e-6 * sep_scale) meet.pop_back();
  }
  // Tangent working pair (one common point; two parallel lines touch at
  // infinity).  Two crossing lines instead form an ordinary two-point pencil
  // through the crossing and infinity, handled by the general route below.
  bool parabolic = (both_lines && meet.empty()) || (!both_lines && meet.size() == 1);

  if (parabolic) {
    // Send the tangency to infinity, turning the working pair into parallel
    // lines, then rotate and scale them onto y = +1 and y = -1.  What is left
    // of the group is the choice of an inversion pole along y = 0.
    MoebiusTransform flip =
        both_lines ? moebius_identity() : moebius_normalize(0, 1, 1, -meet[0]);
    GeneralizedCircle l0 = normalized(apply_to_circle(flip, ks[0]));
    GeneralizedCircle l2 = normalized(apply_to_circle(flip, ks[2]));
    if (!l0.is_line(1e-7) || !l2.is_line(1e-7))
      fail(ErrorCode::kConvergenceFailure, "tangent working pair did not flatten");
    Complex n = l0.b / std::abs(l0.b);
    auto offset = [&](const GeneralizedCircle& l) {
      double along = (std::conj(n) * l.b).real();
      return -l.c / (2 * along);
    };
    double h0 = offset(l0), h2 = offset(l2);
    if (std::fabs(h0 - h2) < 1e-12)
      fail(ErrorCode::kConvergenceFailure, "tangent working pair collapsed");
    Complex rot = Complex(0, 1) / n;  // rotate the common normal onto +i
    double mid = (h0 + h2) / 2, half_gap = (h0 - h2) / 2;
    Complex sa = rot / half_gap;
    Complex sb = Complex(0, -mid / half_gap);
    MoebiusTransform base = compose(moebius_normalize(sa, sb, 0, 1), flip);
    auto family = [](double x) { return moebius_normalize(0, 1, 1, -x); };

    double reach = 4;
    for (int i : {1, 3}) {
      GeneralizedCircle k = normalized(apply_to_circle(base, ks[i]));
      if (!k.is_line(1e-10))
        reach = std::max({reach, std::abs(k.center()) + k.radius()});
    }
    double limit = 8 * reach;
    double best = HUGE_VAL;
    detail::rhombus_sweep(ks, base, family, -limit, limit, 1024, &out, &best);
    if (best > accept)
      fail(ErrorCode::kConvergenceFailure, "no position with rhombus centers found");
    return out;
  }

  // Optional pre-inversion: make all four carriers proper circles and, when
  // the working pair is disjoint, non-concentric, so both pencil frames have
  // finite foci.
  auto needs_fix = [&](const std::array<GeneralizedCircle, 4>& cs) {
    for (const auto& c : cs)
      if (normalized(c).is_line(1e-12)) return true;
    Complex c0 = cs[0].center(), c2 = cs[2].center();
    if (meet.empty() && std::abs(c0 - c2) <= 1e-9 * (cs[0].radius() + cs[2].radius()))
      return true;
    return false;
  };

  MoebiusTransform pre = moebius_identity();
  std::array<GeneralizedCircle, 4> ws = ks;
  if (needs_fix(ws)) {
    bool fixed = false;
    for (int attempt = 0; attempt < 12 && !fixed; ++attempt) {
      Complex pole =
          centroid + scene * (1.7 + 0.13 * attempt) * std::exp(Complex(0, 0.7 + 0.9 * attempt));
      double clear = HUGE_VAL;
      for (const auto& c : ks) clear = std::min(clear, detail::circle_point_gap(c, pole));
      if (clear < 0.05 * scene) continue;
      MoebiusTransform cand = moebius_normalize(0, 1, 1, -pole);
      std::array<GeneralizedCircle, 4> imgs;
      for (int i = 0; i < 4; ++i) imgs[i] = apply_to_circle(cand, ks[i]);
      if (needs_fix(imgs)) continue;
      pre = cand;
      ws = imgs;
      fixed = true;
    }
    if (!fixed) fail(ErrorCode::kConvergenceFailure, "could not free the carriers of lines");
  }

  auto sample_on = [&](const GeneralizedCircle& g, Complex avoid1, Complex avoid2) {
    Complex c = g.center();
    double r = g.radius();
    for (int j = 0; j < 16; ++j) {
      Complex p = c + r * std::exp(Complex(0, 0.37 + j * 0.41));
      if (std::abs(p - avoid1) > 0.02 * r && std::abs(p - avoid2) > 0.02 * r) return p;
    }
    return c + r;
  };

  double best = HUGE_VAL;

  // One full pass: stage one moves the working pair to symmetric levels of
  // its pencil (equal radii in closed form), stage two sweeps the maps
  // preserving the pair until the radii of carriers 1 and 3 agree as well.
  // The pair-preserving maps fall into disconnected components: besides the
  // swept one-parameter family there are the half-turn about the foci, the
  // exchange of the foci, and their composite; the root can sit on any.
  auto attempt = [&](const std::array<GeneralizedCircle, 4>& cs, const MoebiusTransform& to_cs) {
    std::vector<Complex> meets = detail::carrier_intersections(cs[0], cs[2]);
    bool intersecting = meets.size() == 2;
    Point f1, f2;
    MoebiusTransform stage1;
    if (intersecting) {
      f1 = pt(meets[0]);
      f2 = pt(meets[1]);
      BipolarFrame frame = bipolar_frame(f1, f2);
      double s0 = to_bipolar(frame, pt(sample_on(cs[0], meets[0], meets[1]))).sigma;
      double s2 = to_bipolar(frame, pt(sample_on(cs[2], meets[0], meets[1]))).sigma;
      stage1 = fixing_foci(f1, f2, -(s0 + s2) / 2, 0);
    } else if (meets.empty()) {
      // Limit points of the pencil of two disjoint circles, found from the
      // common inverse pair on their center line.
      Complex c1 = cs[0].center(), c2 = cs[2].center();
      double r1 = cs[0].radius(), r2 = cs[2].radius();
      double d = std::abs(c2 - c1);
      Complex u = (c2 - c1) / d;
      double s_sum = (r1 * r1 - r2 * r2 + d * d) / d;
      double disc = s_sum * s_sum - 4 * r1 * r1;
      if (disc <= 0) return;
      f1 = pt(c1 + (s_sum - std::sqrt(disc)) / 2 * u);
      f2 = pt(c1 + (s_sum + std::sqrt(disc)) / 2 * u);
      BipolarFrame frame = bipolar_frame(f1, f2);
      double t0 = to_bipolar(frame, pt(sample_on(cs[0], to_complex(f1), to_complex(f2)))).tau;
      double t2 = to_bipolar(frame, pt(sample_on(cs[2], to_complex(f1), to_complex(f2)))).tau;
      stage1 = fixing_foci(f1, f2, 0, -(t0 + t2) / 2);
    } else {
      return;
    }

    MoebiusTransform base = compose(stage1, to_cs);
    auto family = [&](double u) {
      return intersecting ? fixing_foci(f1, f2, 0, u) : fixing_foci(f1, f2, u, 0);
    };
    double lo = intersecting ? -8.0 : -kPi;
    double hi = intersecting ? 8.0 : kPi;

    MoebiusTransform to_normal = moebius_normalize(1, -to_complex(f1), 1, -to_complex(f2));
    MoebiusTransform swap_foci =
        compose(inverse(to_normal), compose(moebius_normalize(0, 1, 1, 0), to_normal));
    std::vector<MoebiusTransform> branches{moebius_identity(), swap_foci};
    if (intersecting) {
      // The radii of two circles through the foci agree when their levels are
      // symmetric, which pins the stage-one rotation only modulo a quarter
      // turn; the remaining quarter-turn multiples are separate orbits.
      for (int quarter = 1; quarter < 4; ++quarter) {
        MoebiusTransform rot = fixing_foci(f1, f2, quarter * kPi / 2, 0);
        branches.push_back(rot);
        branches.push_back(compose(rot, swap_foci));
      }
    }

    for (const MoebiusTransform& br : branches) {
      RhombusForm cand;
      double cand_measure = HUGE_VAL;
      detail::rhombus_sweep(ks, compose(br, base), family, lo, hi, 512, &cand, &cand_measure);
      if (cand_measure < best) {
        best = cand_measure;
        out = cand;
      }
      if (best <= accept / 64) return;  // already essentially exact
    }
  };

  attempt(ws, pre);

  // The distance between the centers of two crossing circles depends on the
  // signed product that distinguishes the crossing angle from its supplement,
  // and that sign flips for both neighbours of a carrier whenever a map turns
  // that carrier's disk inside out.  When the plain pass leaves a kite rather
  // than a rhombus, retry after inverting at a pole placed inside exactly the
  // disks whose eversion makes all four signed products agree.
  if (best > accept) {
    std::array<Complex, 4> cw;
    std::array<double, 4> rw;
    for (int i = 0; i < 4; ++i) {
      GeneralizedCircle n = normalized(ws[i]);
      cw[i] = n.center();
      rw[i] = n.radius();
    }
    std::array<double, 4> cross;
    for (int i = 0; i < 4; ++i) {
      int j = (i + 1) % 4;
      double d = std::abs(cw[j] - cw[i]);
      cross[i] = (d * d - rw[i] * rw[i] - rw[j] * rw[j]) / (2 * rw[i] * rw[j]);
    }
    std::vector<int> targets;
    for (int mask = 1; mask < 15; ++mask) {
      if (mask > (15 ^ mask)) continue;  // everting a disk set or its complement agree
      bool pos = false, neg = false;
      for (int i = 0; i < 4; ++i) {
        if (std::fabs(cross[i]) < 1e-7) continue;
        int flips = ((mask >> i) & 1) ^ ((mask >> ((i + 1) % 4)) & 1);
        ((flips ? -cross[i] : cross[i]) > 0 ? pos : neg) = true;
      }
      if (!(pos && neg)) targets.push_back(mask);
    }

    double scene_w = 1e-9;
    Complex centroid_w{0, 0};
    for (int i = 0; i < 4; ++i) centroid_w += cw[i] / 4.0;
    for (int i = 0; i < 4; ++i)
      scene_w = std::max(scene_w, std::abs(cw[i] - centroid_w) + rw[i]);
    auto pole_mask = [&](Complex z) {
      int m = 0;
      for (int i = 0; i < 4; ++i)
        if (evaluate(normalized(ws[i]), pt(z)) < 0) m |= 1 << i;
      return m;
    };
    auto pole_clearance = [&](Complex z) {
      double c = HUGE_VAL;
      for (int i = 0; i < 4; ++i) c = std::min(c, detail::circle_point_gap(ws[i], z));
      return c;
    };
    std::array<Complex, 16> pole_for;
    std::array<double, 16> clearance_for;
    clearance_for.fill(-1);
    auto offer = [&](Complex z) {
      double c = pole_clearance(z);
      if (c < 0.02 * scene_w) return;
      int m = pole_mask(z);
      if (c > clearance_for[m]) {
        clearance_for[m] = c;
        pole_for[m] = z;
      }
    };
    for (int i = 0; i < 4; ++i) {
      offer(cw[i]);
      for (int j = 0; j < 6; ++j)
        offer(cw[i] + 0.55 * rw[i] * std::exp(Complex(0, j * kPi / 3)));
    }
    std::mt19937_64 scatter(20240717);
    std::uniform_real_distribution<double> spread(-1.6, 1.6);
    for (int j = 0; j < 600; ++j)
      offer(centroid_w + scene_w * Complex(spread(scatter), spread(scatter)));

    for (int target : targets) {
      if (best <= accept / 64) break;
      for (int m : {target, 15 ^ target}) {
        if (clearance_for[m] < 0) continue;
        MoebiusTransform evert = moebius_normalize(0, 1, 1, -pole_for[m]);
        std::array<GeneralizedCircle, 4> es;
        for (int i = 0; i < 4; ++i) es[i] = apply_to_circle(evert, ws[i]);
        if (needs_fix(es)) continue;
        attempt(es, compose(evert, pre));
        if (best <= accept / 64) break;
      }
    }
  }

  if (best > accept)
    fail(ErrorCode::kConvergenceFailure, "no position with rhombus centers found");
  return out;
}

}  // namespace lombardi
