// Plane inversive-geometry kernel: points (with a single point at infinity),
// generalized circles covering lines and proper circles in one coefficient
// form, and directed circular arcs stored as chord plus signed bulge.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lombardi {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Default tolerance for incidence predicates, calibrated for unit-scale data.
inline constexpr double kTol = 1e-9;

enum class ErrorCode {
  kNotIncident,
  kDuplicatePoints,
  kUnboundedImage,
  kCoincidentFoci,
  kDegenerateTriple,
  kSelfCrossing,
  kBadAngles,
  kNotEquiangular,
  kNotCyclic,
  kConvergenceFailure,
  kBadParameter,
  kConstructionInfeasible,
  kPreconditionViolated,
  kDegenerateInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotIncident: return "NotIncident";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kUnboundedImage: return "UnboundedImage";
    case ErrorCode::kCoincidentFoci: return "CoincidentFoci";
    case ErrorCode::kDegenerateTriple: return "DegenerateTriple";
    case ErrorCode::kSelfCrossing: return "SelfCrossing";
    case ErrorCode::kBadAngles: return "BadAngles";
    case ErrorCode::kNotEquiangular: return "NotEquiangular";
    case ErrorCode::kNotCyclic: return "NotCyclic";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kConstructionInfeasible: return "ConstructionInfeasible";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
  }
  return "Unknown";
}

// Angle wrapped into (-pi, pi].
inline double wrap_pi(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  if (a > kPi) a -= 2 * kPi;
  return a;
}

// Angle wrapped into [0, 2*pi).
inline double wrap_2pi(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  if (a >= 2 * kPi) a -= 2 * kPi;
  return a;
}

// ---------------------------------------------------------------------------
// Point

struct Point {
  double x = 0;
  double y = 0;
  bool infinite = false;  // the single point at infinity of the inversive plane

  static Point at_infinity() { return Point{0, 0, true}; }
};

inline Point pt(double x, double y) { return Point{x, y, false}; }
inline Point pt(Complex z) { return Point{z.real(), z.imag(), false}; }

inline Complex to_complex(const Point& p) {
  // Callers must check p.infinite first; asserting here keeps misuse loud.
  if (p.infinite) fail(ErrorCode::kDegenerateInput, "point at infinity has no complex value");
  return Complex(p.x, p.y);
}

inline bool approx_eq(const Point& p, const Point& q, double tol = kTol) {
  if (p.infinite || q.infinite) return p.infinite && q.infinite;
  return std::hypot(p.x - q.x, p.y - q.y) <= tol;
}

inline double distance(const Point& p, const Point& q) {
  if (p.infinite || q.infinite) return (p.infinite && q.infinite) ? 0 : HUGE_VAL;
  return std::hypot(p.x - q.x, p.y - q.y);
}

// ---------------------------------------------------------------------------
// GeneralizedCircle
//
// Zero set of  a*(x^2+y^2) + 2*(bx*x + by*y) + c  with b = bx + i*by, i.e.
// a*|z|^2 + conj(b)*z + b*conj(z) + c = 0.  a == 0 gives a line; for a > 0
// the disk bounded by the circle is where the form is negative.

struct GeneralizedCircle {
  double a = 0;
  Complex b{0, 0};
  double c = 0;

  bool is_line(double tol = kTol) const { return std::fabs(a) <= tol * scale(); }

  double scale() const {
    return std::max({std::fabs(a), std::abs(b), std::fabs(c)});
  }

  Complex center() const {
    if (a == 0) fail(ErrorCode::kDegenerateInput, "a line has no center");
    return -b / a;
  }

  double radius() const {
    if (a == 0) fail(ErrorCode::kDegenerateInput, "a line has no radius");
    double disc = std::norm(b) - a * c;
    return std::sqrt(std::max(disc, 0.0)) / std::fabs(a);
  }
};

// Scales coefficients so the largest magnitude is 1 and fixes the overall sign
// so the largest-magnitude component of (a, Re b, Im b, c) is positive, with a
// preference for positive `a` whenever `a` is not vanishingly small.  Two
// coefficient vectors describing the same circle normalize to equal vectors.
inline GeneralizedCircle normalized(const GeneralizedCircle& g) {
  double m = g.scale();
  if (m == 0) fail(ErrorCode::kDegenerateInput, "zero circle coefficients");
  GeneralizedCircle r{g.a / m, g.b / m, g.c / m};
  double lead;
  if (std::fabs(r.a) > 1e-12) {
    lead = r.a;
  } else {
    lead = r.b.real();
    if (std::fabs(r.b.imag()) > std::fabs(lead)) lead = r.b.imag();
    if (std::fabs(r.c) > std::fabs(lead)) lead = r.c;
  }
  if (lead < 0) {
    r.a = -r.a;
    r.b = -r.b;
    r.c = -r.c;
  }
  return r;
}

// Signed value of the normalized form at p; the point at infinity evaluates to
// the |z|^2 coefficient, so lines (and only lines) pass through infinity.
inline double evaluate(const GeneralizedCircle& g, const Point& p) {
  GeneralizedCircle n = normalized(g);
  if (p.infinite) return n.a;
  Complex z{p.x, p.y};
  return n.a * std::norm(z) + 2 * (n.b.real() * p.x + n.b.imag() * p.y) + n.c;
}

inline bool on_circle(const GeneralizedCircle& g, const Point& p, double tol = kTol) {
  return std::fabs(evaluate(g, p)) <= tol;
}

inline GeneralizedCircle circle_from_center_radius(Complex center, double radius) {
  if (!(radius > 0)) fail(ErrorCode::kDegenerateInput, "radius must be positive");
  return normalized({1.0, -center, std::norm(center) - radius * radius});
}

// Same circle but with the constant coefficient computed from a known point on
// the circle, which avoids the |center|^2 - r^2 cancellation when the circle
// is huge and nearly flat.
inline GeneralizedCircle circle_from_center_and_point(Complex center, Complex on) {
  double c = ((2.0 * center - on) * std::conj(on)).real();
  return normalized({1.0, -center, c});
}

// Line through two distinct finite points.
inline GeneralizedCircle line_through(Complex p, Complex q) {
  Complex v = q - p;
  if (std::abs(v) == 0) fail(ErrorCode::kDuplicatePoints, "line through coincident points");
  Complex b = Complex(0, 1) * v;  // normal direction
  return normalized({0.0, b, -2 * (b.real() * p.real() + b.imag() * p.imag())});
}

inline bool same_carrier(const GeneralizedCircle& g1, const GeneralizedCircle& g2,
                         double tol = kTol) {
  GeneralizedCircle a = normalized(g1), b = normalized(g2);
  auto maxdiff = [](const GeneralizedCircle& u, const GeneralizedCircle& v) {
    return std::max({std::fabs(u.a - v.a), std::abs(u.b - v.b), std::fabs(u.c - v.c)});
  };
  GeneralizedCircle nb{-b.a, -b.b, -b.c};
  return std::min(maxdiff(a, b), maxdiff(a, nb)) <= tol;
}

// ---------------------------------------------------------------------------
// DirectedArc
//
// Chord from start to end plus a bulge, the tangent of a quarter of the
// central angle.  Positive bulge pushes the arc to the left of the chord
// direction, so the sweep measured counterclockwise is -4*atan(bulge); zero
// bulge is the straight segment.

struct DirectedArc {
  Point start;
  Point end;
  double bulge = 0;
};

inline DirectedArc arc(Complex s, Complex e, double bulge) {
  return DirectedArc{pt(s), pt(e), bulge};
}

inline DirectedArc reversed(const DirectedArc& a) {
  return DirectedArc{a.end, a.start, -a.bulge};
}

inline void check_arc(const DirectedArc& a) {
  if (a.start.infinite || a.end.infinite)
    fail(ErrorCode::kDegenerateInput, "arc endpoints must be finite");
  if (a.start.x == a.end.x && a.start.y == a.end.y)
    fail(ErrorCode::kDegenerateInput, "arc endpoints must be distinct");
}

// Signed sweep of the arc in the counterclockwise sense.
inline double sweep_angle(const DirectedArc& a) { return -4 * std::atan(a.bulge); }

inline double chord_angle(const DirectedArc& a) {
  check_arc(a);
  return std::atan2(a.end.y - a.start.y, a.end.x - a.start.x);
}

inline double arc_radius(const DirectedArc& a) {
  check_arc(a);
  if (a.bulge == 0) fail(ErrorCode::kDegenerateInput, "segment has no radius");
  double len = distance(a.start, a.end);
  return len * (1 + a.bulge * a.bulge) / (4 * std::fabs(a.bulge));
}

inline Complex arc_center(const DirectedArc& a) {
  check_arc(a);
  if (a.bulge == 0) fail(ErrorCode::kDegenerateInput, "segment has no center");
  Complex s = to_complex(a.start), e = to_complex(a.end);
  Complex v = e - s;
  return (s + e) / 2.0 + Complex(0, 1) * v * ((a.bulge * a.bulge - 1) / (4 * a.bulge));
}

// Point at parameter u in [0,1], start to end.  Uses a ratio form that stays
// accurate for tiny bulges instead of going through the (far away) center.
inline Point point_at(const DirectedArc& a, double u) {
  check_arc(a);
  Complex s = to_complex(a.start), e = to_complex(a.end);
  if (a.bulge == 0) return pt(s + (e - s) * u);
  double sw = sweep_angle(a);
  Complex ratio = std::sin(sw * u / 2) / std::sin(sw / 2) *
                  std::exp(Complex(0, 1) * (sw * (u - 1) / 2));
  return pt(s + (e - s) * ratio);
}

// Inverse of point_at for a point on the carrier: recovers the parameter u
// (possibly outside [0,1]) without referencing the center, so it is stable for
// near-straight arcs as well.
inline double parameter_of(const DirectedArc& a, const Point& p) {
  check_arc(a);
  if (p.infinite) return HUGE_VAL;
  Complex s = to_complex(a.start), e = to_complex(a.end);
  Complex w = (to_complex(p) - s) / (e - s);
  if (a.bulge == 0) return w.real();
  if (std::abs(w) == 0) return 0.0;
  double sw = sweep_angle(a);
  return 1 + 2 * wrap_pi(std::arg(w)) / sw;
}

inline double arc_length(const DirectedArc& a) {
  check_arc(a);
  double len = distance(a.start, a.end);
  if (a.bulge == 0) return len;
  double half = std::fabs(2 * std::atan(a.bulge));
  return len * half / std::sin(half);
}

// Direction of travel at the start point.
inline double tangent_start(const DirectedArc& a) {
  return wrap_pi(chord_angle(a) - sweep_angle(a) / 2);
}

// Direction of travel at the end point.
inline double tangent_end(const DirectedArc& a) {
  return wrap_pi(chord_angle(a) + sweep_angle(a) / 2);
}

enum class ArcEnd { kStart, kEnd };

// Direction of travel at the chosen endpoint.
inline double tangent_direction(const DirectedArc& a, ArcEnd at) {
  return at == ArcEnd::kStart ? tangent_start(a) : tangent_end(a);
}

// Direction pointing away from p along the arc; p must be an endpoint.
inline double outgoing_direction(const DirectedArc& a, const Point& p, double tol = kTol) {
  check_arc(a);
  double ds = distance(a.start, p), de = distance(a.end, p);
  if (ds > tol && de > tol)
    fail(ErrorCode::kNotIncident, "point is not an endpoint of the arc");
  if (ds <= de) return tangent_start(a);
  return wrap_pi(tangent_end(a) + kPi);
}

// Arc from s to e whose direction of travel at s is `dir`.  The turn from the
// chord to the tangent must stay strictly inside (-pi, pi); at +-pi the arc
// degenerates to a full circle through infinity.
inline DirectedArc arc_with_start_tangent(Complex s, Complex e, double dir) {
  DirectedArc chord = arc(s, e, 0);
  double dev = wrap_pi(dir - chord_angle(chord));
  if (std::fabs(std::fabs(dev) - kPi) < 1e-12)
    fail(ErrorCode::kDegenerateInput, "tangent opposite to chord");
  return arc(s, e, std::tan(dev / 2));
}

// Bulge of the arc from s to e passing through interior point m.
inline double bulge_through(Complex s, Complex m, Complex e) {
  double beta = wrap_pi(std::arg(e - m) - std::arg(s - m));
  if (beta == 0) fail(ErrorCode::kDegenerateInput, "interior point collinear outside chord");
  double sgn = beta > 0 ? 1.0 : -1.0;
  return std::tan(sgn * kPi / 2 - beta / 2);
}

// Carrier circle (or line, for zero bulge) of the arc.
inline GeneralizedCircle carrier(const DirectedArc& a) {
  check_arc(a);
  Complex s = to_complex(a.start), e = to_complex(a.end);
  if (a.bulge == 0) return line_through(s, e);
  return circle_from_center_and_point(arc_center(a), s);
}

// True when p lies on the arc itself (carrier incidence plus parameter range).
inline bool arc_contains(const DirectedArc& a, const Point& p, double tol = kTol) {
  check_arc(a);
  if (p.infinite) return false;
  if (!on_circle(carrier(a), p, tol)) return false;
  if (approx_eq(a.start, p, tol) || approx_eq(a.end, p, tol)) return true;
  double slack = tol / std::max(arc_length(a), tol);
  double u = parameter_of(a, p);
  return u >= -slack && u <= 1 + slack;
}

// Counterclockwise angle in [0, 2*pi) from the outgoing direction of a1 to the
// outgoing direction of a2 at a shared endpoint.
inline double angle_between(const DirectedArc& a1, const DirectedArc& a2,
                            const Point& at, double tol = kTol) {
  double d1 = outgoing_direction(a1, at, tol);
  double d2 = outgoing_direction(a2, at, tol);
  return wrap_2pi(d2 - d1);
}

// ---------------------------------------------------------------------------
// Circle through three points

// Circle (or line, when the points are collinear or one is infinite) through
// three pairwise distinct points.
inline GeneralizedCircle circumcircle(const Point& p1, const Point& p2, const Point& p3,
                                      double tol = kTol) {
  const Point* ps[3] = {&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (approx_eq(*ps[i], *ps[j], tol))
        fail(ErrorCode::kDuplicatePoints, "circle through coincident points");

  int ninf = p1.infinite + p2.infinite + p3.infinite;
  if (ninf > 0) {
    // One point at infinity: the circle is the line through the finite two.
    std::vector<Complex> fin;
    for (const Point* p : ps)
      if (!p->infinite) fin.push_back(to_complex(*p));
    return line_through(fin[0], fin[1]);
  }

  double x1 = p1.x, y1 = p1.y, q1 = x1 * x1 + y1 * y1;
  double x2 = p2.x, y2 = p2.y, q2 = x2 * x2 + y2 * y2;
  double x3 = p3.x, y3 = p3.y, q3 = x3 * x3 + y3 * y3;

  // Cofactor expansion of the 4x4 incidence determinant along its first row.
  double a = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
  double mx = (q2 - q1) * (y3 - y1) - (q3 - q1) * (y2 - y1);
  double my = (q2 - q1) * (x3 - x1) - (q3 - q1) * (x2 - x1);
  double c = -(q1 * ((x2) * (y3) - (x3) * (y2)) - x1 * (q2 * y3 - q3 * y2) +
               y1 * (q2 * x3 - q3 * x2));

  GeneralizedCircle g{a, Complex(-mx / 2, my / 2), c};
  if (g.scale() == 0) fail(ErrorCode::kDuplicatePoints, "degenerate point triple");
  // Collinear points give a vanishing quadratic coefficient; snap it to an
  // exact line so downstream line handling applies.
  GeneralizedCircle n = normalized(g);
  if (std::fabs(n.a) <= 1e-12) n.a = 0;
  return n;
}

// ---------------------------------------------------------------------------
// Arc intersection

enum class Incidence { kInterior, kEndpoint };

struct IntersectionPoint {
  Point p;
  Incidence on_first = Incidence::kInterior;
  Incidence on_second = Incidence::kInterior;
};

struct IntersectResult {
  bool overlap = false;  // the arcs share a sub-arc of positive length
  std::vector<IntersectionPoint> points;
};

namespace detail {

// Intersection points of two distinct carrier circles/lines (0, 1 or 2).
inline std::vector<Complex> carrier_intersections(const GeneralizedCircle& g1,
                                                  const GeneralizedCircle& g2) {
  GeneralizedCircle n1 = normalized(g1), n2 = normalized(g2);
  bool line1 = std::fabs(n1.a) <= 1e-12, line2 = std::fabs(n2.a) <= 1e-12;

  if (line1 && line2) {
    // 2*(b1x x + b1y y) + c1 = 0 and same for 2; solve the 2x2 system.
    double det = n1.b.real() * n2.b.imag() - n1.b.imag() * n2.b.real();
    if (std::fabs(det) <= 1e-14) return {};
    double r1 = -n1.c / 2, r2 = -n2.c / 2;
    double x = (r1 * n2.b.imag() - r2 * n1.b.imag()) / det;
    double y = (n1.b.real() * r2 - n2.b.real() * r1) / det;
    return {Complex(x, y)};
  }

  if (line1 || line2) {
    const GeneralizedCircle& ln = line1 ? n1 : n2;
    const GeneralizedCircle& ci = line1 ? n2 : n1;
    Complex center = ci.center();
    double radius = ci.radius();
    double nb = std::abs(ln.b);
    // Signed distance from center to the line along the unit normal.
    double dist = (2 * (ln.b.real() * center.real() + ln.b.imag() * center.imag()) + ln.c) /
                  (2 * nb);
    Complex unit = ln.b / nb;
    Complex foot = center - unit * dist;
    double h2 = radius * radius - dist * dist;
    if (h2 < -1e-13 * radius * radius) return {};
    double h = std::sqrt(std::max(h2, 0.0));
    Complex t = unit * Complex(0, 1);
    if (h == 0) return {foot};
    return {foot - t * h, foot + t * h};
  }

  // Circle-circle: reduce to the radical line against the first circle.
  GeneralizedCircle rad{0.0, n2.a * n1.b - n1.a * n2.b, n2.a * n1.c - n1.a * n2.c};
  if (rad.scale() <= 1e-14) return {};  // concentric (or identical)
  return carrier_intersections(rad, n1);
}

}  // namespace detail

// Intersection of two arcs.  Same-carrier arcs sharing a sub-arc of positive
// length report overlap; otherwise up to two isolated points come back, each
// tagged interior/endpoint per arc.
inline IntersectResult intersect(const DirectedArc& a1, const DirectedArc& a2,
                                 double tol = kTol) {
  check_arc(a1);
  check_arc(a2);
  IntersectResult out;
  GeneralizedCircle c1 = carrier(a1), c2 = carrier(a2);

  auto endpoint_flag = [&](const DirectedArc& a, const Point& p) {
    return (approx_eq(a.start, p, tol) || approx_eq(a.end, p, tol))
               ? Incidence::kEndpoint
               : Incidence::kInterior;
  };

  if (same_carrier(c1, c2, std::max(tol, 1e-9))) {
    // On a common carrier the arcs overlap in positive length exactly when
    // some point of one lies strictly inside the other; endpoints and
    // midpoints together witness every such configuration.
    auto strictly_inside = [&](const DirectedArc& host, const Point& p) {
      double slack = tol / std::max(arc_length(host), tol);
      double u = parameter_of(host, p);
      return u > slack && u < 1 - slack;
    };
    Point m1 = point_at(a1, 0.5), m2 = point_at(a2, 0.5);
    if (strictly_inside(a1, a2.start) || strictly_inside(a1, a2.end) ||
        strictly_inside(a1, m2) || strictly_inside(a2, a1.start) ||
        strictly_inside(a2, a1.end) || strictly_inside(a2, m1)) {
      out.overlap = true;
      return out;
    }
    // No overlapping run: the arcs can still touch at shared endpoints.
    for (const Point& p : {a1.start, a1.end, a2.start, a2.end}) {
      if (!arc_contains(a1, p, tol) || !arc_contains(a2, p, tol)) continue;
      bool dup = false;
      for (const auto& ip : out.points) dup = dup || approx_eq(ip.p, p, tol);
      if (dup) continue;
      out.points.push_back({p, endpoint_flag(a1, p), endpoint_flag(a2, p)});
    }
    return out;
  }

  std::vector<Complex> cands = detail::carrier_intersections(c1, c2);
  for (Complex z : cands) {
    Point p = pt(z);
    if (!arc_contains(a1, p, tol) || !arc_contains(a2, p, tol)) continue;
    bool dup = false;
    for (const auto& ip : out.points) dup = dup || approx_eq(ip.p, p, tol);
    if (dup) continue;
    out.points.push_back({p, endpoint_flag(a1, p), endpoint_flag(a2, p)});
  }
  return out;
}

}  // namespace lombardi
