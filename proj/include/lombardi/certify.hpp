// Numerical harness for the high-tilt monotonicity argument: the tilt lower
// bound forced on quadrilateral fans, the tau-lift check for points caught
// between a heavily tilted quad and its vertex circle, and a randomized
// falsification search for closed fan configurations.
#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <thread>

#include "lombardi/arcquad.hpp"
#include "lombardi/bipolar.hpp"
#include "lombardi/geom.hpp"

namespace lombardi {

struct TiltBound {
  double tilt = 0;    // pi * (1 - 2/k)
  bool gate = false;  // k > 8, where the bound clears the 3*pi/4 threshold
};

inline TiltBound tilt_lower_bound(int k) {
  if (k < 3) fail(ErrorCode::kBadParameter, "fan needs at least three quads");
  return TiltBound{kPi * (1 - 2.0 / k), k > 8};
}

struct LiftResult {
  bool ok = false;  // tau_r > tau_p held
  double tau_r = 0;
  double tau_p = 0;
};

namespace detail {

// Membership in the pocket between side tq (index 2) and the vertex circle:
// on the same side of the vertex circle as the side itself, and separated
// from vertex s by the side's carrier.  Using a point of the side as the
// witness keeps the predicate Moebius-invariant: a transform whose pole sits
// inside the vertex circle swaps its two sides, but moves the witness along.
inline bool in_pocket(const ArcQuad& q, const Point& r) {
  if (r.infinite) return false;
  GeneralizedCircle big = normalized(q.circle);
  GeneralizedCircle cut = normalized(carrier(q.side[2]));
  bool pocket_side = evaluate(big, point_at(q.side[2], 0.5)) < 0;
  if ((evaluate(big, r) < 0) != pocket_side) return false;
  return evaluate(cut, q.v[0]) * evaluate(cut, r) < 0;
}

}  // namespace detail

// Monotonicity check for a quad s p t q read from indices 0..3: when the
// deep bigon pair (angle >= 3*pi/4) lies on the sp/tq sides, any point r in
// the pocket behind side tq whose circle through the foci stays within a
// right angle of the one through p must have a larger tau-coordinate than p.
// Every precondition and the verdict are invariant under Moebius transforms
// (tau and sigma differences are cross-ratio data), so quads measured on
// either side of their vertex circle are handled alike.  Violated
// preconditions raise errors naming the failed clause; the verdict itself
// goes in the result.
inline LiftResult lift_check(const ArcQuad& q, const Point& r, double tol = 1e-9) {
  if (q.phi1 + tol < q.phi2)
    fail(ErrorCode::kPreconditionViolated, "deep bigon pair must be the sp/tq sides");
  if (q.phi1 < 3 * kPi / 4 - tol)
    fail(ErrorCode::kPreconditionViolated, "tilt is below 3*pi/4");

  BipolarFrame f = bipolar_frame(q.v[0], q.v[2]);
  BipolarCoord cr = to_bipolar(f, r), cp = to_bipolar(f, q.v[1]);
  if (r.infinite || cr.at_focus)
    fail(ErrorCode::kPreconditionViolated, "r must be a finite point away from the foci");
  if (std::fabs(wrap_pi(cr.sigma - cp.sigma)) > kPi / 2 + tol)
    fail(ErrorCode::kPreconditionViolated,
         "arc through r deviates from the arc through p by more than a right angle");
  if (!detail::in_pocket(q, r))
    fail(ErrorCode::kPreconditionViolated, "r is not in the pocket behind side tq");

  LiftResult out;
  out.tau_r = cr.tau;
  out.tau_p = cp.tau;
  out.ok = out.tau_r > out.tau_p;
  return out;
}

// One quad of a fan plus the bipolar parameters that produced it.
struct FanQuad {
  ArcQuad quad;
  double sigma_p = 0;
  double tau_p = 0;
  double tau_q = 0;
};

struct FanConfig {
  int k = 0;
  double theta = 0;  // interior angle of every quad
  double phi1 = 0;   // lens angle of the sp/tq side pair (the tilt side)
  BipolarFrame frame;
  std::vector<FanQuad> quads;
};

// Builds the equiangular quad s p t q over the frame's foci with p at
// bipolar position (sigma_p, tau_p), q on the complementary arc of the same
// vertex circle at tau_q, interior angle theta, and lens angle phi1 on the
// sp/tq pair.  Side tangents at the foci are pinned by sigma-level
// bookkeeping; the assembled sides must survive the full quad validation.
inline ArcQuad build_fan_quad(const BipolarFrame& f, double sigma_p, double tau_p,
                              double tau_q, double theta, double phi1) {
  double phi2 = kPi - theta - phi1;
  if (!(theta > 1e-9) || !(phi1 > 1e-9) || !(phi2 > 1e-9))
    fail(ErrorCode::kBadAngles, "need positive theta, phi1, phi2 with sum pi");
  Point p = from_bipolar(f, {sigma_p, tau_p, false});
  Point q = from_bipolar(f, {wrap_pi(sigma_p - kPi), tau_q, false});
  if (p.infinite || q.infinite)
    fail(ErrorCode::kConstructionInfeasible, "vertex escaped to infinity");
  Complex zs = to_complex(f.s), zt = to_complex(f.t);
  double sigma_q = sigma_p - kPi;

  // Sigma levels toward which each side leaves the foci.
  double slot_sp = sigma_p + phi1, slot_sq = sigma_q - phi2;
  double slot_tp = sigma_p + phi2, slot_tq = sigma_q - phi1;
  double base_s = std::arg(zt - zs) + kPi, base_t = std::arg(zs - zt) - kPi;

  std::array<DirectedArc, 4> sides;
  sides[0] = arc_with_start_tangent(zs, to_complex(p), wrap_pi(base_s - slot_sp));
  sides[1] = reversed(arc_with_start_tangent(zt, to_complex(p), wrap_pi(base_t + slot_tp)));
  sides[2] = arc_with_start_tangent(zt, to_complex(q), wrap_pi(base_t + slot_tq));
  sides[3] = reversed(arc_with_start_tangent(zs, to_complex(q), wrap_pi(base_s - slot_sq)));
  ArcQuad quad = quad_from_sides(sides, 1e-7);
  if (std::fabs(quad.theta - theta) > 1e-6 || std::fabs(quad.phi1 - phi1) > 1e-6)
    fail(ErrorCode::kConstructionInfeasible,
         "constructed quad does not reproduce the requested angles");
  return quad;
}

struct FanStepResult {
  bool ok = false;      // tau rose from p_i to p_{i+1}
  double sigma_gap = 0; // angle between the consecutive vertex-circle arcs
  double tau_from = 0;
  double tau_to = 0;
};

// Verifies one step of the fan argument: consecutive vertex-circle arcs may
// differ by at most 3*pi/k, and the next quad's p vertex must pass the lift
// check against the current quad.
inline FanStepResult fan_step_check(const FanConfig& cfg, int i, double tol = 1e-9) {
  if (cfg.k <= 8)
    fail(ErrorCode::kPreconditionViolated, "tilt gate needs more than eight quads");
  if (i < 0 || i >= static_cast<int>(cfg.quads.size()))
    fail(ErrorCode::kBadParameter, "step index out of range");
  const FanQuad& cur = cfg.quads[i];
  const FanQuad& nxt = cfg.quads[(i + 1) % cfg.quads.size()];
  double gap = std::fabs(wrap_pi(nxt.sigma_p - cur.sigma_p));
  if (gap > 3 * kPi / cfg.k + tol)
    fail(ErrorCode::kPreconditionViolated,
         "consecutive vertex circles meet at more than 3*pi/k");
  LiftResult lift = lift_check(cur.quad, nxt.quad.v[1], tol);
  return FanStepResult{lift.ok, gap, lift.tau_p, lift.tau_r};
}

struct SearchReport {
  int k = 0;
  double theta = 0;
  int budget = 0;
  uint64_t seed = 0;
  bool gate = false;       // k > 8: verdicts below carry the certified claim
  double tilt_bound = 0;   // pi * (1 - 2/k)
  int candidates = 0;
  int valid_candidates = 0;
  int degenerate_candidates = 0;
  long steps_checked = 0;  // lift-checked steps (gate regime only)
  long steps_passed = 0;
  long inconclusive_steps = 0;  // |increment| within the noise margin
  long precondition_failures = 0;
  int closed_configurations = 0;
  double min_tau_increment = 0;
  double max_tau_increment = 0;
  double min_intercircle_gap = 0;
  double max_intercircle_gap = 0;
  bool pigeonhole_ok = false;  // smallest gap is at most 2*pi/k
  uint64_t digest = 0;         // order-sensitive hash of every candidate
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t fnv64(uint64_t h, uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t fnv64(uint64_t h, double x) { return fnv64(h, std::bit_cast<uint64_t>(x)); }

struct CandidateOutcome {
  bool valid = false;
  bool wrap_admissible = false;
  int built = 0;
  long steps = 0, passed = 0, inconclusive = 0, precondition_failures = 0;
  bool closed = false;
  double min_inc = HUGE_VAL, max_inc = -HUGE_VAL;
  double min_gap = HUGE_VAL, max_gap = -HUGE_VAL;
  uint64_t hash = 14695981039346656037ull;
};

// Builds one sampled fan: quads chained counterclockwise with sigma advance
// 2*pi/k, each next p placed inside the current pocket (its admissible tau
// run is located by scan plus bisection), then every consecutive step is
// lift-checked.  Chains stop at tau caps chosen so the shared circumcircle
// arithmetic stays well conditioned; a chain of at least two quads already
// carries a checkable step, so partial chains count as candidates.
// Candidates indexed 7 mod 8 walk a deterministic grid instead of sampling.
inline CandidateOutcome run_candidate(int k, double theta, uint64_t seed, int index) {
  CandidateOutcome out;
  std::mt19937_64 rng(splitmix64(seed ^ ((static_cast<uint64_t>(index) + 1) *
                                         0x9E3779B97F4A7C15ull)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double tilt = kPi * (1 - 2.0 / k);
  double lo_phi = tilt + 0.01, hi_phi = kPi - theta - 0.01;
  bool grid = index % 8 == 7;
  double u_phi = grid ? ((index / 8) % 16 + 0.5) / 16.0 : unit(rng);
  if (lo_phi >= hi_phi) {
    out.hash = fnv64(out.hash, static_cast<uint64_t>(0));
    return out;
  }
  double phi1 = lo_phi + u_phi * (hi_phi - lo_phi);
  out.hash = fnv64(out.hash, phi1);

  BipolarFrame f = bipolar_frame(pt(0, -1), pt(0, 1));
  FanConfig cfg;
  cfg.k = k;
  cfg.theta = theta;
  cfg.phi1 = phi1;
  cfg.frame = f;

  // Above tilt 3*pi/4 the two deep sides cross unless q sits well above p;
  // the cubic overshoots the measured minimum viable offset at every tilt.
  double x = phi1 - 3 * kPi / 4;
  double min_off = x > 0 ? x * (4 + x * (1.2 + x * 2.2)) : 0.0;
  double off = min_off + 0.05 + (grid ? 0.5 : unit(rng));
  out.hash = fnv64(out.hash, off);

  // Start offset by pi/(4k) so no sigma level ever hits 0 or pi exactly,
  // where the vertex circle through collinear s, p, t degenerates to a line:
  // pi/2 + pi/(4k) + 2*pi*i/k = m*pi would need odd 2k + 1 + 8i = even 4km.
  double sigma = kPi / 2 + kPi / (4 * k);
  double tau = -6.5 + (grid ? 0.1 : 0.2 * unit(rng));
  for (int i = 0; i < k; ++i) {
    if (tau > 6.5 || tau + off > 9.0) break;  // vertices collapse onto a focus
    FanQuad fq;
    try {
      fq.quad = build_fan_quad(f, sigma, tau, tau + off, theta, phi1);
    } catch (const Error&) {
      out.hash = fnv64(out.hash, static_cast<uint64_t>(0x40 + i));
      break;
    }
    fq.sigma_p = sigma;
    fq.tau_p = tau;
    fq.tau_q = tau + off;
    out.hash = fnv64(out.hash, tau);
    out.hash = fnv64(out.hash, tau + off);
    cfg.quads.push_back(fq);
    out.built = i + 1;
    if (i + 1 == k) break;

    // Locate the admissible tau run for the next p inside this pocket.
    double next_sigma = wrap_pi(sigma + 2 * kPi / k);
    const int kScan = 72;
    double lo = tau - 0.2, hi = tau + 6.2;
    auto admissible = [&](double t) {
      Point r = from_bipolar(f, {next_sigma, t, false});
      return in_pocket(fq.quad, r);
    };
    int run_start = -1, run_len = 0, best_start = -1, best_len = 0;
    for (int j = 0; j < kScan; ++j) {
      double tj = lo + (hi - lo) * j / (kScan - 1);
      if (admissible(tj)) {
        if (run_start < 0) run_start = j;
        if (++run_len > best_len) {
          best_len = run_len;
          best_start = run_start;
        }
      } else {
        run_start = -1;
        run_len = 0;
      }
    }
    if (best_len == 0) {
      out.hash = fnv64(out.hash, static_cast<uint64_t>(0x90 + i));
      break;
    }
    auto at = [&](int j) { return lo + (hi - lo) * j / (kScan - 1); };
    double run_lo = at(best_start), run_hi = at(best_start + best_len - 1);
    if (best_start > 0) {
      double a = at(best_start - 1), b = run_lo;
      for (int it = 0; it < 24; ++it) {
        double m = (a + b) / 2;
        (admissible(m) ? b : a) = m;
      }
      run_lo = b;
    }
    if (best_start + best_len < kScan) {
      double a = run_hi, b = at(best_start + best_len);
      for (int it = 0; it < 24; ++it) {
        double m = (a + b) / 2;
        (admissible(m) ? a : b) = m;
      }
      run_hi = a;
    }
    double u = grid ? 0.5 : 0.05 + 0.9 * unit(rng);
    sigma = next_sigma;
    tau = run_lo + u * std::min(run_hi - run_lo, 1.2);
  }
  out.valid = out.built >= 2;

  int m = out.built;
  int pairs = m == k ? m : (m > 0 ? m - 1 : 0);
  for (int i = 0; i < pairs; ++i) {
    const FanQuad& cur = cfg.quads[i];
    const FanQuad& nxt = cfg.quads[(i + 1) % m];
    double gap = wrap_2pi(nxt.sigma_p - cur.sigma_p);
    out.min_gap = std::min(out.min_gap, gap);
    out.max_gap = std::max(out.max_gap, gap);
    bool wrap = i + 1 == m;
    if (wrap) {
      out.wrap_admissible = in_pocket(cur.quad, nxt.quad.v[1]);
      if (!out.wrap_admissible) continue;  // the cycle refuses to close here
    }
    double inc = nxt.tau_p - cur.tau_p;
    out.min_inc = std::min(out.min_inc, inc);
    out.max_inc = std::max(out.max_inc, inc);
    out.hash = fnv64(out.hash, inc);
    if (k > 8) {
      ++out.steps;
      try {
        FanStepResult step = fan_step_check(cfg, i);
        if (std::fabs(step.tau_to - step.tau_from) <= 1e-8)
          ++out.inconclusive;
        else if (step.ok)
          ++out.passed;
      } catch (const Error&) {
        ++out.precondition_failures;
      }
    }
  }
  out.closed = out.wrap_admissible && out.passed == out.steps && out.steps == k;
  out.hash = fnv64(out.hash, static_cast<uint64_t>(out.valid ? 2 : 1));
  out.hash = fnv64(out.hash, static_cast<uint64_t>(out.wrap_admissible ? 3 : 5));
  return out;
}

}  // namespace detail

// Randomized falsification search over fan configurations with the stated
// angle constraints.  Every candidate is derived deterministically from
// (seed, index) alone and results are merged in index order, so the report
// does not depend on the worker count.  This explores, it does not prove.
inline SearchReport closure_search(int k, double theta, int budget, uint64_t seed,
                                   int workers = 0) {
  TiltBound bound = tilt_lower_bound(k);
  if (budget < 0 || !(theta > 0) || !(theta < kPi))
    fail(ErrorCode::kBadParameter, "need a positive budget and theta in (0, pi)");

  std::vector<detail::CandidateOutcome> results(budget);
  int n = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, std::min({n, 64, budget == 0 ? 1 : budget}));
  auto work = [&](int w) {
    for (int idx = w; idx < budget; idx += n)
      results[idx] = detail::run_candidate(k, theta, seed, idx);
  };
  if (n == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
  }

  SearchReport report;
  report.k = k;
  report.theta = theta;
  report.budget = budget;
  report.seed = seed;
  report.gate = bound.gate;
  report.tilt_bound = bound.tilt;
  report.candidates = budget;
  double min_inc = HUGE_VAL, max_inc = -HUGE_VAL;
  double min_gap = HUGE_VAL, max_gap = -HUGE_VAL;
  uint64_t digest = 14695981039346656037ull;
  for (const detail::CandidateOutcome& c : results) {
    if (c.valid)
      ++report.valid_candidates;
    else
      ++report.degenerate_candidates;
    report.steps_checked += c.steps;
    report.steps_passed += c.passed;
    report.inconclusive_steps += c.inconclusive;
    report.precondition_failures += c.precondition_failures;
    report.closed_configurations += c.closed ? 1 : 0;
    min_inc = std::min(min_inc, c.min_inc);
    max_inc = std::max(max_inc, c.max_inc);
    min_gap = std::min(min_gap, c.min_gap);
    max_gap = std::max(max_gap, c.max_gap);
    digest = detail::fnv64(digest, c.hash);
  }
  report.min_tau_increment = min_inc <= max_inc ? min_inc : 0;
  report.max_tau_increment = min_inc <= max_inc ? max_inc : 0;
  report.min_intercircle_gap = min_gap <= max_gap ? min_gap : 0;
  report.max_intercircle_gap = min_gap <= max_gap ? max_gap : 0;
  report.pigeonhole_ok =
      report.valid_candidates > 0 && report.min_intercircle_gap <= 2 * kPi / k + 1e-9;
  report.digest = digest;
  return report;
}

}  // namespace lombardi
