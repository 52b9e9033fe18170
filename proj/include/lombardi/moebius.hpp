// Fractional-linear maps of the inversive plane: z -> (a z + b) / (c z + d),
// stored as determinant-one matrices, plus their action on points, circles
// (by coefficient congruence, no point sampling) and directed arcs.
#pragma once

#include "lombardi/geom.hpp"

namespace lombardi {

struct MoebiusTransform {
  Complex a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
};

inline MoebiusTransform moebius_normalize(Complex a, Complex b, Complex c, Complex d) {
  Complex det = a * d - b * c;
  if (std::abs(det) < 1e-300)
    fail(ErrorCode::kDegenerateInput, "transform matrix is singular");
  Complex s = std::sqrt(det);
  return MoebiusTransform{a / s, b / s, c / s, d / s};
}

inline MoebiusTransform moebius_identity() { return MoebiusTransform{}; }

inline MoebiusTransform inverse(const MoebiusTransform& t) {
  // For a det-one matrix the inverse is the adjugate.
  return MoebiusTransform{t.d, -t.b, -t.c, t.a};
}

inline MoebiusTransform compose(const MoebiusTransform& t1, const MoebiusTransform& t2) {
  // Apply t2 first, then t1.
  return moebius_normalize(t1.a * t2.a + t1.b * t2.c, t1.a * t2.b + t1.b * t2.d,
                           t1.c * t2.a + t1.d * t2.c, t1.c * t2.b + t1.d * t2.d);
}

inline Point apply(const MoebiusTransform& t, const Point& p) {
  if (p.infinite) {
    if (std::abs(t.c) <= 1e-14) return Point::at_infinity();
    return pt(t.a / t.c);
  }
  Complex z = to_complex(p);
  Complex num = t.a * z + t.b;
  Complex den = t.c * z + t.d;
  // A denominator that vanished to rounding noise means z sits at the pole.
  if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(z))) return Point::at_infinity();
  return pt(num / den);
}

// Image circle computed as a congruence on the Hermitian coefficient matrix
// [[a, b], [conj(b), c]] of the form a*|z|^2 + conj(b) z + b conj(z) + c.
inline GeneralizedCircle apply_to_circle(const MoebiusTransform& t,
                                         const GeneralizedCircle& g) {
  GeneralizedCircle n = normalized(g);
  // Matrix of the inverse map; substituting z = T^{-1}(w) into the form gives
  // the image's coefficients as M^dagger H M.
  Complex m11 = t.d, m12 = -t.b, m21 = -t.c, m22 = t.a;
  Complex A{n.a, 0}, B = n.b, C{n.c, 0};
  Complex p11 = A * m11 + B * m21;
  Complex p12 = A * m12 + B * m22;
  Complex p21 = std::conj(B) * m11 + C * m21;
  Complex p22 = std::conj(B) * m12 + C * m22;
  Complex h11 = std::conj(m11) * p11 + std::conj(m21) * p21;
  Complex h12 = std::conj(m11) * p12 + std::conj(m21) * p22;
  Complex h22 = std::conj(m12) * p12 + std::conj(m22) * p22;
  return normalized({h11.real(), h12, h22.real()});
}

// Image of a directed arc.  The endpoints map directly and the bulge is
// refitted through the image of the arc midpoint, which preserves both the
// carrier and the direction of travel.  Arcs passing through the pole have an
// unbounded image and are rejected.
inline DirectedArc apply_to_arc(const MoebiusTransform& t, const DirectedArc& a,
                                double tol = kTol) {
  check_arc(a);
  if (std::abs(t.c) > 1e-14) {
    Point pole = pt(-t.d / t.c);
    if (arc_contains(a, pole, std::max(tol, 1e-9)))
      fail(ErrorCode::kUnboundedImage, "arc passes through the pole of the map");
  }
  Point s = apply(t, a.start);
  Point e = apply(t, a.end);
  Point m = apply(t, point_at(a, 0.5));
  if (s.infinite || e.infinite || m.infinite)
    fail(ErrorCode::kUnboundedImage, "arc image reaches the point at infinity");
  if (approx_eq(s, e, 0.0) || approx_eq(s, m, 0.0) || approx_eq(m, e, 0.0))
    fail(ErrorCode::kUnboundedImage, "arc image collapses numerically");
  return arc(to_complex(s), to_complex(e),
             bulge_through(to_complex(s), to_complex(m), to_complex(e)));
}

// The one-parameter family fixing two focus points s and t: in coordinates
// where s, t sit at -1, +1 the map is q -> (a q + b)/(b q + a).  A multiplier
// exp(dtau - i*dsigma) advances the angular coordinate about the foci by
// dsigma and the logarithmic one by dtau (the angular coordinate is measured
// counterclockwise, which fixes the sign in the exponent).
inline MoebiusTransform fixing_foci(const Point& s, const Point& t, double dsigma,
                                    double dtau) {
  if (s.infinite || t.infinite)
    fail(ErrorCode::kCoincidentFoci, "foci must be distinct finite points");
  if (approx_eq(s, t, 0.0))
    fail(ErrorCode::kCoincidentFoci, "foci must be distinct finite points");
  Complex zs = to_complex(s), zt = to_complex(t);
  Complex mu = std::exp(Complex(dtau, -dsigma));
  // N acts as the multiplier map on (q+1)/(q-1)-coordinates, with -1, +1 fixed.
  Complex na = mu + 1.0, nb = mu - 1.0;
  // W sends -1, +1 to s, t; conjugating N by W moves the fixed pair into place.
  Complex wa = (zt - zs) / 2.0, wb = (zt + zs) / 2.0;
  // T = W N W^{-1} with W = [[wa, wb], [0, 1]], W^{-1} = [[1, -wb], [0, wa]]
  // up to scale, multiplied out by hand.
  Complex ta = wa * na + wb * nb;
  Complex tb = -wb * (wa * na + wb * nb) + wa * (wa * nb + wb * na);
  Complex tc = nb;
  Complex td = wa * na - wb * nb;
  return moebius_normalize(ta, tb, tc, td);
}

// Unique map taking one triple of distinct points to another, built from the
// standard triple-to-(0, 1, infinity) matrices.
inline MoebiusTransform normalize_to(const Point& p1, const Point& p2, const Point& p3,
                                     const Point& q1, const Point& q2, const Point& q3) {
  auto check_triple = [](const Point& a, const Point& b, const Point& c) {
    if (approx_eq(a, b, 0.0) || approx_eq(b, c, 0.0) || approx_eq(a, c, 0.0))
      fail(ErrorCode::kDegenerateTriple, "triple points must be pairwise distinct");
  };
  check_triple(p1, p2, p3);
  check_triple(q1, q2, q3);

  // Matrix of z -> ((z - z1)(z2 - z3)) / ((z - z3)(z2 - z1)), sending the
  // triple to 0, 1, infinity, with the usual limits when a point is infinite.
  auto triple_matrix = [](const Point& r1, const Point& r2, const Point& r3) {
    if (r1.infinite) {
      Complex z2 = to_complex(r2), z3 = to_complex(r3);
      return MoebiusTransform{0, z2 - z3, 1, -z3};
    }
    if (r2.infinite) {
      Complex z1 = to_complex(r1), z3 = to_complex(r3);
      return MoebiusTransform{1, -z1, 1, -z3};
    }
    if (r3.infinite) {
      Complex z1 = to_complex(r1), z2 = to_complex(r2);
      return MoebiusTransform{1, -z1, 0, z2 - z1};
    }
    Complex z1 = to_complex(r1), z2 = to_complex(r2), z3 = to_complex(r3);
    return MoebiusTransform{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
  };

  MoebiusTransform rp = triple_matrix(p1, p2, p3);
  MoebiusTransform rq = triple_matrix(q1, q2, q3);
  MoebiusTransform rp_n = moebius_normalize(rp.a, rp.b, rp.c, rp.d);
  MoebiusTransform rq_n = moebius_normalize(rq.a, rq.b, rq.c, rq.d);
  return compose(inverse(rq_n), rp_n);
}

}  // namespace lombardi
