#pragma once

// Lipschitz constants and bounds: the exact classical constant, the
// resultant and GIR/B0 bounds, radial image profiles with their segment
// constants, the degree-one closed form, and a seeded sampler.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nalip/invariants.hpp"

namespace nalip {

/// 1/GPR
inline PPowerSum lip_classical(const PrimeContext& ctx, const Ord& gpr_ord) {
  return PPowerSum::power(ctx, gpr_ord.value());
}

inline PPowerSum lip_classical(const RationalMap& map) {
  if (!map.fibers()) fail(ErrorKind::factored_required, "factored form required");
  return lip_classical(map.context(), gpr(map).gpr);
}

struct Thm1Bounds {
  PPowerSum classical;  // 1/|Res|
  PPowerSum berk;       // max(d/|Res|, 1/|Res|^d)
  PPowerSum berk_linear;
  PPowerSum berk_power;
};

inline Thm1Bounds thm1_bounds(const PrimeContext& ctx, int d, const Ord& res_ord) {
  const Rational r = res_ord.value();
  PPowerSum lin = PPowerSum::power(ctx, r, Rational(d));
  PPowerSum pw = PPowerSum::power(ctx, Rational(d) * r);
  PPowerSum mx = max_of(lin, pw);
  return {PPowerSum::power(ctx, r), mx, lin, pw};
}

inline Thm1Bounds thm1_bounds(const RationalMap& map) {
  return thm1_bounds(map.context(), map.degree(), resultant_ord(map));
}

enum class B0Source { rp_lower, user };

struct Thm2Bound {
  PPowerSum first;   // 1/(GIR B0^d)
  PPowerSum second;  // d/(GIR^{1/d} B0)
  PPowerSum bound;   // max of the two
  std::optional<PPowerSum> coarse;  // d/(GIR B0^d), reported when B0 = RP
  B0Source source = B0Source::rp_lower;
};

inline Thm2Bound thm2_bound(const PrimeContext& ctx, int d, const Ord& gir_ord, const Rational& b0_ord, B0Source source) {
  if (b0_ord < 0) fail(ErrorKind::domain, "B0 > 1 impossible");
  const Rational g = gir_ord.value(), dd(d);
  PPowerSum first = PPowerSum::power(ctx, g + dd * b0_ord);
  PPowerSum second = PPowerSum::power(ctx, g / dd + b0_ord, dd);
  PPowerSum mx = max_of(first, second);
  Thm2Bound out{first, second, mx, std::nullopt, source};
  if (source == B0Source::rp_lower) out.coarse = PPowerSum::power(ctx, g + dd * b0_ord, dd);
  return out;
}

inline Thm2Bound thm2_bound(const RationalMap& map, const Rational& b0_ord, B0Source source) {
  return thm2_bound(map.context(), map.degree(), gir_minors(map), b0_ord, source);
}

enum class ProfileKind { diam_G, diam_infty };

/// On t_lo <= t <= t_hi (t_hi absent = the classical center) the image size is
/// p^{-coeff_ord} r^k with r = p^{-t}; in ord form coeff_ord + k t.
struct ProfileSegment {
  Rational t_lo;
  std::optional<Rational> t_hi;
  Rational coeff_ord;
  long k;

  friend bool operator==(const ProfileSegment&, const ProfileSegment&) = default;
};

struct RadialProfile {
  Rational center;
  ProfileKind kind = ProfileKind::diam_G;
  std::vector<ProfileSegment> segments;  // from the center outward

  friend bool operator==(const RadialProfile&, const RadialProfile&) = default;
};

namespace detail {

inline Rational profile_value(const RationalMap& map, const RayImage& ray, ProfileKind kind, const Rational& t) {
  const BerkPoint y = push_forward(map, ray.point(t));
  return kind == ProfileKind::diam_G ? diam_G(map.context(), y).value() : y.radius_ord().value();
}

}  // namespace detail

/// Image size of zeta_{center,t} for t >= t_min, as exact piecewise monomials.
inline RadialProfile radial_profile(const RationalMap& map, const Rational& center, const Rational& t_min,
                                    ProfileKind kind = ProfileKind::diam_G) {
  const RayImage ray(map, center);
  const TRange range{t_min, std::nullopt};
  std::vector<ProfileSegment> pieces;
  for (const auto& cell : cells_of(range, ray.critical_points(range))) {
    const Rational t1 = *cell.lo;
    const Rational t2 = cell.hi ? *cell.hi : Rational(t1 + 1);
    const Rational v1 = detail::profile_value(map, ray, kind, t1);
    const Rational v2 = detail::profile_value(map, ray, kind, t2);
    const Rational k = (v2 - v1) / (t2 - t1);
    if (k.get_den() != 1) fail(ErrorKind::internal, "non-integral profile exponent");
    pieces.push_back({t1, cell.hi, Rational(v1 - k * t1), checked_long(k, "profile exponent")});
  }
  RadialProfile out{center, kind, {}};
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (!out.segments.empty() && out.segments.back().k == it->k && out.segments.back().coeff_ord == it->coeff_ord) {
      out.segments.back().t_lo = it->t_lo;
      continue;
    }
    out.segments.push_back(*it);
  }
  return out;
}

/// max over segments of sup |d/dr p^{-c} r^k| = |k| p^{-c} r^{k-1} at the segment's end.
inline PPowerSum segment_lip(const PrimeContext& ctx, const RadialProfile& profile) {
  PPowerSum best = PPowerSum::zero(ctx);
  for (const auto& s : profile.segments) {
    if (s.k == 0) continue;
    Rational t_end = s.t_lo;
    if (s.k < 0) {
      if (!s.t_hi) fail(ErrorKind::domain, "unbounded derivative at the center");
      t_end = *s.t_hi;
    }
    const Rational k(s.k);
    const PPowerSum v = PPowerSum::power(ctx, -s.coeff_ord - (k - 1) * t_end, Rational(abs(k)));
    best = max_of(best, v);
  }
  return best;
}

/// For phi = (az+b)/(cz+d) normalized: the common value max(|a|,|b|,|c|,|d|)/|ad-bc|
/// of 1/GIR, 1/GPR and 1/|Res|.
inline PPowerSum mobius_exact(const RationalMap& map) {
  if (map.degree() != 1) fail(ErrorKind::domain, "mobius_exact needs degree 1");
  const auto& ctx = map.context();
  const RationalMap n = map.normalized();
  const Rational a = n.F()[0], b = n.F()[1], c = n.G()[0], d = n.G()[1];
  const Ord entries = min(min(ord_p(ctx, a), ord_p(ctx, b)), min(ord_p(ctx, c), ord_p(ctx, d)));
  const Rational e = ord_p(ctx, Rational(a * d - b * c)).value() - entries.value();
  const Ord gir = gir_minors(map), res = resultant_ord(map), g = gpr(map).gpr;
  if (gir != Ord(e) || res != Ord(e) || g != Ord(e))
    fail(ErrorKind::internal, "degree-one invariants disagree: entries " + e.get_str() + ", gir " + gir.to_string() +
                                  ", res " + res.to_string() + ", gpr " + g.to_string());
  return PPowerSum::power(ctx, e);
}

using PointPair = std::pair<ProjPoint, ProjPoint>;

struct SampleResult {
  PPowerSum max_ratio;
  std::optional<PointPair> argmax;
  long pairs = 0;
};

namespace detail {

// A rational p^k u with u = +-n/m, p not dividing n or m, n,m <= height; k is
// negative, zero or positive with equal probability.
inline Rational sample_rational(const PrimeContext& ctx, std::mt19937_64& rng, unsigned long height) {
  auto draw = [&](unsigned long lo, unsigned long hi) { return lo + rng() % (hi - lo + 1); };
  auto unit = [&] {
    unsigned long v;
    do v = draw(1, height);
    while (v % ctx.p() == 0);
    return v;
  };
  const unsigned long n = unit(), m = unit();
  Rational u{Integer(n), Integer(m)};
  u.canonicalize();
  if (rng() % 2) u = -u;
  switch (rng() % 3) {
    case 0: return u * p_power(ctx, static_cast<long>(draw(1, 3)));
    case 1: return u;
    default: return u * p_power(ctx, -static_cast<long>(draw(1, 3)));
  }
}

}  // namespace detail

/// max over sampled pairs x != y of ||phi x, phi y|| / ||x, y||, as p^{ord||x,y|| - ord||phi x, phi y||}.
/// Extra pairs are evaluated after the n random ones.
inline SampleResult sample_ratios(const RationalMap& map, long n, std::uint64_t seed,
                                  const std::vector<PointPair>& extra = {}) {
  if (n < 1) fail(ErrorKind::domain, "sample count must be >= 1");
  const auto& ctx = map.context();
  std::mt19937_64 rng(seed);
  std::optional<Rational> best;
  SampleResult out{PPowerSum::zero(ctx), std::nullopt, 0};
  auto consider = [&](const ProjPoint& x, const ProjPoint& y) {
    if (x == y) return;
    ++out.pairs;
    const Ord dst = spherical_ord(ctx, map(x), map(y));
    if (dst.is_infinite()) return;
    const Rational e = spherical_ord(ctx, x, y).value() - dst.value();
    if (!best || e > *best) {
      best = e;
      out.argmax = PointPair{x, y};
    }
  };
  for (long i = 0; i < n; ++i) {
    auto pick = [&]() -> ProjPoint {
      if (rng() % 64 == 0) return ProjPoint::infinity();
      return detail::sample_rational(ctx, rng, 40);
    };
    const ProjPoint x = pick();
    const ProjPoint y = pick();
    consider(x, y);
  }
  for (const auto& [x, y] : extra) consider(x, y);
  if (best) out.max_ratio = PPowerSum::power(ctx, *best);
  return out;
}

struct WitnessResult {
  std::optional<PointPair> pair;
  std::string diagnostic;
};

/// Classical x, y below the GPR point Q = zeta_{a,R} with ||x,y|| = diam_G(Q) and
/// ||phi x, phi y|| = 1, which certify that the classical Lipschitz constant is attained.
inline WitnessResult gpr_witness(const RationalMap& map, const BerkPoint& q) {
  const auto& ctx = map.context();
  if (!q.is_type_ii()) return {std::nullopt, "gpr point is not of type II"};
  const Rational t = q.radius_ord().value();
  if (t.get_den() != 1) return {std::nullopt, "gpr radius is not an integral power of p"};
  const Rational step = p_power(ctx, checked_long(t, "radius exponent"));
  const Ord target = diam_G(ctx, q);
  // points in p residue classes below Q (three lifts each), plus two in the upward direction
  std::vector<ProjPoint> cand;
  for (long lift = 0; lift < 3; ++lift)
    for (unsigned long u = 0; u < ctx.p(); ++u)
      cand.emplace_back(Rational(q.center() + Rational(static_cast<long>(u + lift * static_cast<long>(ctx.p()))) * step));
  cand.emplace_back(Rational(q.center() + step / Rational(ctx.prime())));
  cand.push_back(ProjPoint::infinity());
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const ProjPoint &x = cand[i], &y = cand[j];
      if (spherical_ord(ctx, x, y) != target) continue;
      if (spherical_ord(ctx, map(x), map(y)) == Ord(0L)) return {PointPair{x, y}, ""};
    }
  return {std::nullopt, "witness needs > p residue directions"};
}

struct BoundOptions {
  std::optional<Rational> b0_ord;  // user-supplied B0, as an ord
  long n = 1000;
  std::uint64_t seed = 1;
};

struct BoundReport {
  std::optional<PPowerSum> lip_classical;
  Thm1Bounds thm1;
  std::optional<Thm2Bound> thm2_with_rp;
  std::optional<Thm2Bound> thm2_with_b0;
  std::optional<PPowerSum> mobius_exact;
  std::optional<PPowerSum> sampled_max_ratio;
  std::optional<PointPair> witness;
  std::vector<std::string> diagnostics;
};

inline BoundReport bound_report(const RationalMap& map, const BoundOptions& opt) {
  const auto& ctx = map.context();
  const InvariantBundle inv = bundle(map);
  BoundReport r{std::nullopt, thm1_bounds(ctx, map.degree(), inv.res), std::nullopt, std::nullopt,
                std::nullopt, std::nullopt, std::nullopt, inv.diagnostics};
  std::vector<PointPair> extra;
  if (inv.gpr) {
    r.lip_classical = lip_classical(ctx, *inv.gpr);
    const WitnessResult w = gpr_witness(map, *inv.gpr_argmin);
    if (w.pair) {
      r.witness = w.pair;
      extra.push_back(*w.pair);
    } else {
      r.diagnostics.push_back(w.diagnostic);
    }
  }
  if (inv.rp) r.thm2_with_rp = thm2_bound(ctx, map.degree(), inv.gir, inv.rp->value(), B0Source::rp_lower);
  if (opt.b0_ord) r.thm2_with_b0 = thm2_bound(ctx, map.degree(), inv.gir, *opt.b0_ord, B0Source::user);
  if (map.degree() == 1) r.mobius_exact = mobius_exact(map);
  const SampleResult s = sample_ratios(map, opt.n, opt.seed, extra);
  r.sampled_max_ratio = s.max_ratio;

  auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::internal, "bound ordering violated: " + what);
  };
  if (r.lip_classical) {
    check(ppow_compare(*r.lip_classical, r.thm1.classical) != std::strong_ordering::greater,
          "Lip <= 1/|Res|");
    check(ppow_compare(s.max_ratio, *r.lip_classical) != std::strong_ordering::greater, "sampled <= Lip");
  }
  check(ppow_compare(s.max_ratio, r.thm1.classical) != std::strong_ordering::greater, "sampled <= 1/|Res|");
  return r;
}

}  // namespace nalip
