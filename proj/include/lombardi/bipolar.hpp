// Bipolar coordinates about an ordered pair of foci: sigma is the signed
// angle subtended by the foci, tau the log-ratio of focal distances.  Level
// sets of both coordinates are generalized circles, and the coordinates turn
// focus-fixing fractional-linear maps into plain translations.
#pragma once

#include "lombardi/moebius.hpp"

namespace lombardi {

struct BipolarFrame {
  Point s;
  Point t;
};

inline BipolarFrame bipolar_frame(const Point& s, const Point& t) {
  if (s.infinite || t.infinite)
    fail(ErrorCode::kCoincidentFoci, "foci must be finite");
  if (approx_eq(s, t, 0.0)) fail(ErrorCode::kCoincidentFoci, "foci must be distinct");
  return BipolarFrame{s, t};
}

struct BipolarCoord {
  double sigma = 0;
  double tau = 0;
  // At a focus tau is +-infinity and sigma carries no information.
  bool at_focus = false;
};

// sigma in (-pi, pi], counterclockwise from the ray toward s to the ray
// toward t; tau = log(|p-s| / |p-t|).  The point at infinity gets (0, 0) and
// the foci themselves get the at_focus sentinel with tau = -inf at s, +inf
// at t.
inline BipolarCoord to_bipolar(const BipolarFrame& f, const Point& p, double tol = kTol) {
  if (p.infinite) return BipolarCoord{0, 0, false};
  if (approx_eq(p, f.s, tol)) return BipolarCoord{0, -HUGE_VAL, true};
  if (approx_eq(p, f.t, tol)) return BipolarCoord{0, HUGE_VAL, true};
  Complex z = to_complex(p), zs = to_complex(f.s), zt = to_complex(f.t);
  double sigma = wrap_pi(std::arg(zt - z) - std::arg(zs - z));
  double tau = std::log(std::abs(z - zs) / std::abs(z - zt));
  return BipolarCoord{sigma, tau, false};
}

inline Point from_bipolar(const BipolarFrame& f, const BipolarCoord& c) {
  if (c.at_focus || std::isinf(c.tau)) return c.tau < 0 ? f.s : f.t;
  Complex u = std::exp(Complex(c.tau, -c.sigma));
  if (std::abs(u - 1.0) == 0) return Point::at_infinity();
  // In the frame where the foci sit at -1, +1 the point is -(1+u)/(1-u);
  // a similarity carries it back to world coordinates.
  Complex q = -(1.0 + u) / (1.0 - u);
  Complex zs = to_complex(f.s), zt = to_complex(f.t);
  return pt(((zt - zs) * q + (zt + zs)) / 2.0);
}

// Full circle through both foci on which sigma takes the value sigma (on one
// arc; the other arc carries sigma - pi).  Values 0 mod pi give the focal
// line.
inline GeneralizedCircle sigma_circle(const BipolarFrame& f, double sigma) {
  Complex zs = to_complex(f.s), zt = to_complex(f.t);
  double sn = std::sin(sigma);
  if (std::fabs(sn) <= 1e-12) return line_through(zs, zt);
  Complex mid = (zs + zt) / 2.0;
  Complex center = mid + Complex(0, 1) * (zt - zs) / 2.0 * (std::cos(sigma) / sn);
  return circle_from_center_and_point(center, zs);
}

// Circle of constant tau.  tau = 0 is the perpendicular bisector of the foci;
// +-infinity degenerate to zero-radius circles at the foci themselves.
inline GeneralizedCircle tau_circle(const BipolarFrame& f, double tau) {
  Complex zs = to_complex(f.s), zt = to_complex(f.t);
  if (std::isinf(tau)) {
    Complex focus = tau < 0 ? zs : zt;
    return normalized({1.0, -focus, std::norm(focus)});
  }
  Complex mid = (zs + zt) / 2.0, half = (zt - zs) / 2.0;
  if (tau == 0) {
    // Line through mid with normal along the focal axis.
    Complex b = half;
    return normalized({0.0, b, -2 * (b.real() * mid.real() + b.imag() * mid.imag())});
  }
  double ch = std::cosh(tau), sh = std::sinh(tau);
  Complex center = mid + half * (ch / sh);
  Complex on = mid + half * std::tanh(tau / 2);  // closest crossing of the axis
  return circle_from_center_and_point(center, on);
}

// Limit of sigma along an arc ending at a focus: the level of the sigma-circle
// tangent to the arc there.  Derived from the outgoing direction in closed
// form.
inline double sigma_tangent(const BipolarFrame& f, const DirectedArc& a,
                            const Point& focus, double tol = kTol) {
  Complex zs = to_complex(f.s), zt = to_complex(f.t);
  if (approx_eq(focus, f.s, tol)) {
    double psi = outgoing_direction(a, f.s, tol);
    return wrap_pi(std::arg(zt - zs) + kPi - psi);
  }
  if (approx_eq(focus, f.t, tol)) {
    double psi = outgoing_direction(a, f.t, tol);
    return wrap_pi(psi + kPi - std::arg(zs - zt));
  }
  fail(ErrorCode::kNotIncident, "point is not a focus of the frame");
}

}  // namespace lombardi
