#include "lombardi/geom.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <random>

using namespace lombardi;

namespace {

double frand(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

TEST(Angles, Wrapping) {
  EXPECT_DOUBLE_EQ(wrap_pi(3 * kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_pi(-kPi), kPi);
  EXPECT_NEAR(wrap_2pi(-0.25), 2 * kPi - 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_2pi(2 * kPi), 0.0);
}

TEST(Carrier, SemicircleThroughTop) {
  // Unit-magnitude bulge is a half turn; positive bulge pushes the arc to the
  // left of the chord, so this semicircle passes through (0, 1).
  DirectedArc a = arc({-1, 0}, {1, 0}, 1.0);
  GeneralizedCircle g = carrier(a);
  EXPECT_FALSE(g.is_line());
  EXPECT_NEAR(std::abs(g.center()), 0.0, 1e-12);
  EXPECT_NEAR(g.radius(), 1.0, 1e-12);
  Point m = point_at(a, 0.5);
  EXPECT_NEAR(m.x, 0.0, 1e-12);
  EXPECT_NEAR(m.y, 1.0, 1e-12);
}

TEST(Carrier, SegmentIsALine) {
  DirectedArc a = arc({0, 0}, {4, 0}, 0.0);
  GeneralizedCircle g = carrier(a);
  EXPECT_TRUE(g.is_line());
  EXPECT_TRUE(on_circle(g, pt(7, 0)));
  EXPECT_TRUE(on_circle(g, Point::at_infinity()));
  EXPECT_FALSE(on_circle(g, pt(0, 1)));
}

TEST(Carrier, QuarterTurnBulge) {
  // Bulge tan(pi/8) is a quarter turn.  For the chord from (0,-1) to (0,1)
  // the arc bows to the left of the upward chord direction (negative x), so
  // its carrier is centered at (+1, 0) with radius sqrt(2).
  DirectedArc a = arc({0, -1}, {0, 1}, std::tan(kPi / 8));
  GeneralizedCircle g = carrier(a);
  EXPECT_NEAR(g.radius(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(g.center().real(), 1.0, 1e-12);
  EXPECT_NEAR(g.center().imag(), 0.0, 1e-12);
  // All three defining points satisfy the carrier equation.
  EXPECT_TRUE(on_circle(g, a.start));
  EXPECT_TRUE(on_circle(g, a.end));
  EXPECT_TRUE(on_circle(g, point_at(a, 0.5)));
  Point m = point_at(a, 0.5);
  EXPECT_LT(m.x, 0.0);
}

TEST(Tangents, SegmentAndSemicircle) {
  DirectedArc seg = arc({0, 0}, {2, 0}, 0.0);
  EXPECT_DOUBLE_EQ(tangent_direction(seg, ArcEnd::kStart), 0.0);
  EXPECT_DOUBLE_EQ(tangent_direction(seg, ArcEnd::kEnd), 0.0);

  DirectedArc semi = arc({-1, 0}, {1, 0}, 1.0);
  EXPECT_NEAR(tangent_direction(semi, ArcEnd::kStart), kPi / 2, 1e-12);
  EXPECT_NEAR(tangent_direction(semi, ArcEnd::kEnd), -kPi / 2, 1e-12);
}

TEST(Tangents, MatchesFiniteDifferences) {
  std::mt19937 rng(7001);
  for (int it = 0; it < 50; ++it) {
    DirectedArc a = arc({frand(rng, -2, 2), frand(rng, -2, 2)},
                        {frand(rng, -2, 2), frand(rng, -2, 2)},
                        frand(rng, -2.5, 2.5));
    if (distance(a.start, a.end) < 0.1) continue;
    double h = 1e-6;
    Complex p0 = to_complex(point_at(a, 0));
    Complex p1 = to_complex(point_at(a, h));
    Complex p2 = to_complex(point_at(a, 2 * h));
    // Second-order one-sided difference of the position.
    Complex d = (4.0 * (p1 - p0) - (p2 - p0)) / (2 * h);
    EXPECT_NEAR(wrap_pi(std::arg(d) - tangent_start(a)), 0.0, 1e-6);
  }
}

TEST(Tangents, OutgoingAtBothEnds) {
  DirectedArc semi = arc({-1, 0}, {1, 0}, 1.0);
  EXPECT_NEAR(outgoing_direction(semi, pt(-1, 0)), kPi / 2, 1e-12);
  EXPECT_NEAR(outgoing_direction(semi, pt(1, 0)), kPi / 2, 1e-12);
  EXPECT_THROW(outgoing_direction(semi, pt(0, 1)), Error);
}

TEST(Arcs, ReversalIsAnInvolution) {
  std::mt19937 rng(7002);
  for (int it = 0; it < 100; ++it) {
    DirectedArc a = arc({frand(rng, -3, 3), frand(rng, -3, 3)},
                        {frand(rng, -3, 3), frand(rng, -3, 3)},
                        frand(rng, -4, 4));
    DirectedArc b = reversed(reversed(a));
    auto bits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
    EXPECT_EQ(bits(a.start.x), bits(b.start.x));
    EXPECT_EQ(bits(a.start.y), bits(b.start.y));
    EXPECT_EQ(bits(a.end.x), bits(b.end.x));
    EXPECT_EQ(bits(a.end.y), bits(b.end.y));
    EXPECT_EQ(bits(a.bulge), bits(b.bulge));
  }
}

TEST(Arcs, ReversalKeepsCarrierAndPoints) {
  std::mt19937 rng(7003);
  for (int it = 0; it < 50; ++it) {
    DirectedArc a = arc({frand(rng, -3, 3), frand(rng, -3, 3)},
                        {frand(rng, -3, 3), frand(rng, -3, 3)},
                        frand(rng, -4, 4));
    if (distance(a.start, a.end) < 0.1) continue;
    DirectedArc r = reversed(a);
    EXPECT_TRUE(same_carrier(carrier(a), carrier(r), 1e-9));
    for (double u : {0.0, 0.25, 0.5, 0.8, 1.0}) {
      Point p = point_at(a, u);
      Point q = point_at(r, 1 - u);
      EXPECT_TRUE(approx_eq(p, q, 1e-9));
    }
  }
}

TEST(Arcs, PointAtHitsEndpointsExactly) {
  DirectedArc a = arc({0.3, -0.7}, {1.2, 2.1}, 0.6);
  EXPECT_TRUE(approx_eq(point_at(a, 0), a.start, 1e-15));
  EXPECT_TRUE(approx_eq(point_at(a, 1), a.end, 1e-14));
}

TEST(Arcs, ParameterOfInvertsPointAt) {
  std::mt19937 rng(7004);
  for (int it = 0; it < 100; ++it) {
    DirectedArc a = arc({frand(rng, -3, 3), frand(rng, -3, 3)},
                        {frand(rng, -3, 3), frand(rng, -3, 3)},
                        frand(rng, -4, 4));
    if (distance(a.start, a.end) < 0.1) continue;
    double u = frand(rng, 0.01, 0.99);
    EXPECT_NEAR(parameter_of(a, point_at(a, u)), u, 1e-9);
  }
  // Near-straight arcs must not lose accuracy to the distant center.
  DirectedArc flat = arc({0, 0}, {10, 0}, 1e-12);
  EXPECT_NEAR(parameter_of(flat, point_at(flat, 0.3)), 0.3, 1e-9);
  EXPECT_TRUE(arc_contains(flat, point_at(flat, 0.5)));
}

TEST(Arcs, StartTangentRoundTrip) {
  std::mt19937 rng(7005);
  for (int it = 0; it < 100; ++it) {
    Complex s{frand(rng, -3, 3), frand(rng, -3, 3)};
    Complex e{frand(rng, -3, 3), frand(rng, -3, 3)};
    if (std::abs(e - s) < 0.1) continue;
    double dir = frand(rng, -kPi, kPi);
    DirectedArc chord = arc(s, e, 0);
    if (std::fabs(std::fabs(wrap_pi(dir - chord_angle(chord))) - kPi) < 0.05) continue;
    DirectedArc a = arc_with_start_tangent(s, e, dir);
    EXPECT_NEAR(wrap_pi(tangent_start(a) - dir), 0.0, 1e-10);
  }
}

TEST(Arcs, BulgeThroughRecoversArc) {
  std::mt19937 rng(7006);
  for (int it = 0; it < 100; ++it) {
    DirectedArc a = arc({frand(rng, -3, 3), frand(rng, -3, 3)},
                        {frand(rng, -3, 3), frand(rng, -3, 3)},
                        frand(rng, -4, 4));
    if (distance(a.start, a.end) < 0.1) continue;
    Complex m = to_complex(point_at(a, frand(rng, 0.2, 0.8)));
    double b = bulge_through(to_complex(a.start), m, to_complex(a.end));
    EXPECT_NEAR(b, a.bulge, 1e-9 * (1 + std::fabs(a.bulge)));
  }
}

TEST(AngleBetween, PerpendicularSegments) {
  DirectedArc ax = arc({0, 0}, {1, 0}, 0);
  DirectedArc ay = arc({0, 0}, {0, 1}, 0);
  EXPECT_NEAR(angle_between(ax, ay, pt(0, 0)), kPi / 2, 1e-12);
  EXPECT_NEAR(angle_between(ay, ax, pt(0, 0)), 3 * kPi / 2, 1e-12);
}

TEST(AngleBetween, AntisymmetricModuloFullTurn) {
  std::mt19937 rng(7007);
  for (int it = 0; it < 50; ++it) {
    Complex shared{frand(rng, -1, 1), frand(rng, -1, 1)};
    DirectedArc a1 = arc(shared, shared + Complex(frand(rng, 0.5, 2), frand(rng, -1, 1)),
                         frand(rng, -2, 2));
    DirectedArc a2 = arc(shared + Complex(frand(rng, -2, -0.5), frand(rng, -1, 1)), shared,
                         frand(rng, -2, 2));
    double f = angle_between(a1, a2, pt(shared));
    double g = angle_between(a2, a1, pt(shared));
    double sum = wrap_2pi(f + g);
    EXPECT_TRUE(sum < 1e-9 || std::fabs(sum - 2 * kPi) < 1e-9);
  }
}

TEST(AngleBetween, RequiresSharedEndpoint) {
  DirectedArc a1 = arc({0, 0}, {1, 0}, 0);
  DirectedArc a2 = arc({5, 5}, {6, 5}, 0);
  try {
    angle_between(a1, a2, pt(0, 0));
    FAIL() << "expected an incidence error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotIncident);
  }
}

TEST(Intersect, SemicircleAgainstDiameter) {
  DirectedArc semi = arc({-1, 0}, {1, 0}, 1.0);
  DirectedArc diam = arc({-1, 0}, {1, 0}, 0.0);
  IntersectResult r = intersect(semi, diam);
  EXPECT_FALSE(r.overlap);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& ip : r.points) {
    EXPECT_EQ(ip.on_first, Incidence::kEndpoint);
    EXPECT_EQ(ip.on_second, Incidence::kEndpoint);
    EXPECT_NEAR(std::fabs(ip.p.x), 1.0, 1e-12);
    EXPECT_NEAR(ip.p.y, 0.0, 1e-12);
  }
}

TEST(Intersect, LensCrossingPoints) {
  // Unit circles centered at 0 and 1 cross at (1/2, +-sqrt(3)/2).
  Complex c2{1, 0};
  auto on1 = [](double t) { return Complex(std::cos(t), std::sin(t)); };
  auto on2 = [&](double t) { return c2 + Complex(std::cos(t), std::sin(t)); };
  // Counterclockwise travel bulges right of the chord, hence negative bulge.
  DirectedArc a1 = arc(on1(-1.3), on1(1.3), -std::tan(2.6 / 4));
  DirectedArc a2 = arc(on2(2.0), on2(-2.0), -std::tan((2 * kPi - 4.0) / 4));
  IntersectResult r = intersect(a1, a2);
  EXPECT_FALSE(r.overlap);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& ip : r.points) {
    EXPECT_EQ(ip.on_first, Incidence::kInterior);
    EXPECT_EQ(ip.on_second, Incidence::kInterior);
    EXPECT_NEAR(ip.p.x, 0.5, 1e-12);
    EXPECT_NEAR(std::fabs(ip.p.y), std::sqrt(3.0) / 2, 1e-12);
  }
}

TEST(Intersect, DisjointArcs) {
  DirectedArc a1 = arc({0, 0}, {1, 0}, 0.2);
  DirectedArc a2 = arc({5, 5}, {6, 5}, -0.3);
  IntersectResult r = intersect(a1, a2);
  EXPECT_FALSE(r.overlap);
  EXPECT_TRUE(r.points.empty());
}

TEST(Intersect, CocircularOverlapAndTouch) {
  auto on = [](double t) { return Complex(std::cos(t), std::sin(t)); };
  auto ccw = [&](double t0, double t1) {
    return arc(on(t0), on(t1), -std::tan(wrap_2pi(t1 - t0) / 4));
  };
  DirectedArc a = ccw(0, kPi / 2);
  DirectedArc b = ccw(kPi / 4, 3 * kPi / 4);
  EXPECT_TRUE(intersect(a, b).overlap);

  DirectedArc c = ccw(kPi / 2, kPi);
  IntersectResult touch = intersect(a, c);
  EXPECT_FALSE(touch.overlap);
  ASSERT_EQ(touch.points.size(), 1u);
  EXPECT_TRUE(approx_eq(touch.points[0].p, pt(0, 1), 1e-12));
  EXPECT_EQ(touch.points[0].on_first, Incidence::kEndpoint);
  EXPECT_EQ(touch.points[0].on_second, Incidence::kEndpoint);

  // Identical arcs overlap rather than reporting endpoint touches.
  EXPECT_TRUE(intersect(a, a).overlap);
  EXPECT_TRUE(intersect(a, reversed(a)).overlap);
}

TEST(Intersect, TangentCirclesTouchOnce) {
  DirectedArc right_half = arc({0, -1}, {0, 1}, -1.0);   // through (1, 0)
  DirectedArc left_half = arc({2, 1}, {2, -1}, -1.0);    // through (1, 0)
  IntersectResult r = intersect(right_half, left_half);
  EXPECT_FALSE(r.overlap);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_TRUE(approx_eq(r.points[0].p, pt(1, 0), 1e-9));
}

TEST(Intersect, PointsLieOnBothCarriers) {
  std::mt19937 rng(7008);
  int found = 0;
  for (int it = 0; it < 200; ++it) {
    DirectedArc a1 = arc({frand(rng, -2, 2), frand(rng, -2, 2)},
                         {frand(rng, -2, 2), frand(rng, -2, 2)},
                         frand(rng, -3, 3));
    DirectedArc a2 = arc({frand(rng, -2, 2), frand(rng, -2, 2)},
                         {frand(rng, -2, 2), frand(rng, -2, 2)},
                         frand(rng, -3, 3));
    if (distance(a1.start, a1.end) < 0.1 || distance(a2.start, a2.end) < 0.1) continue;
    IntersectResult r = intersect(a1, a2);
    for (const auto& ip : r.points) {
      ++found;
      EXPECT_TRUE(on_circle(carrier(a1), ip.p, 1e-9));
      EXPECT_TRUE(on_circle(carrier(a2), ip.p, 1e-9));
      EXPECT_TRUE(arc_contains(a1, ip.p, 1e-7));
      EXPECT_TRUE(arc_contains(a2, ip.p, 1e-7));
    }
  }
  EXPECT_GT(found, 20);
}

TEST(Intersect, SymmetricUpToFlagExchange) {
  std::mt19937 rng(7009);
  for (int it = 0; it < 100; ++it) {
    DirectedArc a1 = arc({frand(rng, -2, 2), frand(rng, -2, 2)},
                         {frand(rng, -2, 2), frand(rng, -2, 2)},
                         frand(rng, -3, 3));
    DirectedArc a2 = arc({frand(rng, -2, 2), frand(rng, -2, 2)},
                         {frand(rng, -2, 2), frand(rng, -2, 2)},
                         frand(rng, -3, 3));
    if (distance(a1.start, a1.end) < 0.1 || distance(a2.start, a2.end) < 0.1) continue;
    IntersectResult r12 = intersect(a1, a2);
    IntersectResult r21 = intersect(a2, a1);
    EXPECT_EQ(r12.overlap, r21.overlap);
    ASSERT_EQ(r12.points.size(), r21.points.size());
    for (const auto& ip : r12.points) {
      bool matched = false;
      for (const auto& jp : r21.points)
        matched = matched || (approx_eq(ip.p, jp.p, 1e-9) &&
                              ip.on_first == jp.on_second && ip.on_second == jp.on_first);
      EXPECT_TRUE(matched);
    }
  }
}

TEST(Circumcircle, ThreeFinitePoints) {
  GeneralizedCircle g = circumcircle(pt(0, 0), pt(4, 0), pt(0, 3));
  EXPECT_NEAR(g.center().real(), 2.0, 1e-12);
  EXPECT_NEAR(g.center().imag(), 1.5, 1e-12);
  EXPECT_NEAR(g.radius(), 2.5, 1e-12);
}

TEST(Circumcircle, CollinearGivesLine) {
  GeneralizedCircle g = circumcircle(pt(0, 0), pt(1, 1), pt(2, 2));
  EXPECT_TRUE(g.is_line());
  EXPECT_TRUE(on_circle(g, pt(5, 5)));
}

TEST(Circumcircle, ThroughInfinityGivesLine) {
  GeneralizedCircle g = circumcircle(pt(0, 1), Point::at_infinity(), pt(2, 1));
  EXPECT_TRUE(g.is_line());
  EXPECT_TRUE(on_circle(g, pt(9, 1)));
  EXPECT_FALSE(on_circle(g, pt(9, 2)));
}

TEST(Circumcircle, RejectsDuplicates) {
  try {
    circumcircle(pt(1, 1), pt(1, 1), pt(2, 2));
    FAIL() << "expected duplicate-point error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicatePoints);
  }
  EXPECT_THROW(circumcircle(Point::at_infinity(), Point::at_infinity(), pt(0, 0)), Error);
}

TEST(Circles, NormalizationIsCanonical) {
  GeneralizedCircle g1{2.0, {-4.0, 2.0}, 6.0};
  GeneralizedCircle g2{-1.0, {2.0, -1.0}, -3.0};
  GeneralizedCircle n1 = normalized(g1), n2 = normalized(g2);
  EXPECT_NEAR(n1.a, n2.a, 1e-15);
  EXPECT_NEAR(std::abs(n1.b - n2.b), 0.0, 1e-15);
  EXPECT_NEAR(n1.c, n2.c, 1e-15);
  EXPECT_TRUE(same_carrier(g1, g2));
}

TEST(Circles, InsideIsNegative) {
  GeneralizedCircle g = circle_from_center_radius({0, 0}, 2.0);
  EXPECT_LT(evaluate(g, pt(0, 0)), 0.0);
  EXPECT_GT(evaluate(g, pt(5, 0)), 0.0);
  EXPECT_NEAR(evaluate(g, pt(2, 0)), 0.0, 1e-15);
}

TEST(Circles, CenterAndPointForm) {
  GeneralizedCircle a = circle_from_center_radius({3, -2}, 5.0);
  GeneralizedCircle b = circle_from_center_and_point({3, -2}, {3 + 5, -2});
  EXPECT_TRUE(same_carrier(a, b, 1e-12));
}

}  // namespace
