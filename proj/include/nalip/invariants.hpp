#pragma once

// Tree invariants of a rational map: convex hulls of classical point sets,
// the root-pole number RP, the Gauss pre-image radius GPR, and the bundle
// of all invariants with their ordering checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nalip/berk.hpp"
#include "nalip/ratmap.hpp"

namespace nalip {

/// The segment {zeta_{center,t} : t between upper and lower}; upper may be
/// infinity (a ray) and lower may be classical.
struct TreeEdge {
  BerkPoint lower;
  BerkPoint upper;
  Rational center;

  TRange range() const {
    TRange r;
    if (!upper.is_infinity()) r.lo = upper.radius_ord().value();
    if (!lower.is_type_i()) r.hi = lower.radius_ord().value();
    return r;
  }
};

struct FiniteTree {
  std::vector<BerkPoint> vertices;
  std::vector<TreeEdge> edges;
};

/// ord RP: the largest spherical ord between a zero and a pole.
inline Ord rp(const RationalMap& map) {
  if (!map.factored()) fail(ErrorKind::factored_required, "factored form required");
  const auto& f = *map.factored();
  const int d = map.degree();
  std::optional<Ord> best;
  for (const auto& z : detail::padded(f.zeros, d))
    for (const auto& q : detail::padded(f.poles, d)) {
      const Ord s = spherical_ord(map.context(), z.point, q.point);
      if (!best || s > *best) best = s;
    }
  return *best;
}

/// Convex hull of classical points in the Berkovich line.
inline FiniteTree hull(const PrimeContext& ctx, const std::vector<ProjPoint>& points) {
  std::vector<Rational> finite;
  bool has_inf = false;
  for (const auto& pt : points) {
    if (pt.is_infinity())
      has_inf = true;
    else if (std::find(finite.begin(), finite.end(), pt.value()) == finite.end())
      finite.push_back(pt.value());
  }
  if (finite.size() + (has_inf ? 1 : 0) < 2) fail(ErrorKind::domain, "hull needs at least two distinct points");

  FiniteTree tree;
  auto add_vertex = [&](const BerkPoint& v) {
    if (std::find(tree.vertices.begin(), tree.vertices.end(), v) == tree.vertices.end()) tree.vertices.push_back(v);
  };
  for (const auto& a : finite) add_vertex(BerkPoint::type_i(ProjPoint(a)));
  std::vector<BerkPoint> branch;
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      const BerkPoint v = BerkPoint::type_ii(ctx, finite[i], ord_p(ctx, Rational(finite[i] - finite[j])).value());
      if (std::find(branch.begin(), branch.end(), v) == branch.end()) branch.push_back(v);
      add_vertex(v);
    }

  auto add_edge = [&](const TreeEdge& e) {
    for (const auto& o : tree.edges)
      if (o.lower == e.lower && o.upper == e.upper) return;
    tree.edges.push_back(e);
  };
  // Top of the finite part: the join toward infinity of all finite points.
  std::optional<BerkPoint> top;
  if (finite.size() >= 2) {
    Ord t = Ord::infinity();
    for (std::size_t j = 1; j < finite.size(); ++j) t = min(t, ord_p(ctx, Rational(finite[0] - finite[j])));
    top = BerkPoint::type_ii(ctx, finite[0], t.value());
  }
  for (const auto& a : finite) {
    if (!top) break;
    std::vector<BerkPoint> above;
    for (const auto& v : branch)
      if (ord_p(ctx, Rational(a - v.center())) >= v.radius_ord()) above.push_back(v);
    std::sort(above.begin(), above.end(),
              [](const BerkPoint& x, const BerkPoint& y) { return x.radius_ord() > y.radius_ord(); });
    BerkPoint prev = BerkPoint::type_i(ProjPoint(a));
    for (const auto& v : above) {
      add_edge({prev, v, a});
      prev = v;
    }
  }
  if (has_inf) {
    const BerkPoint from = top ? *top : BerkPoint::type_i(ProjPoint(finite.front()));
    add_edge({from, BerkPoint::type_i(ProjPoint::infinity()), finite.front()});
    tree.vertices.push_back(BerkPoint::type_i(ProjPoint::infinity()));
  }
  return tree;
}

struct GprResult {
  Ord gpr;
  BerkPoint argmin;
};

/// ord GPR and a preimage of the Gauss point of smallest diam_G.
/// The search runs over the hull of two fibers whose targets are at spherical
/// distance 1; the Gauss point lies on the path between those targets, so every
/// preimage of it lies in that hull.
inline GprResult gpr(const RationalMap& map) {
  if (!map.fibers()) fail(ErrorKind::factored_required, "factored form required");
  const auto& ctx = map.context();
  const auto& fib = *map.fibers();
  if (spherical_ord(ctx, fib[0].value, fib[1].value) != Ord(0L))
    fail(ErrorKind::internal, "fiber targets are not at spherical distance 1");
  std::vector<ProjPoint> pts;
  for (const auto& f : fib)
    for (const auto& w : f.points) pts.push_back(w.point);
  const FiniteTree tree = hull(ctx, pts);
  const BerkPoint gauss = BerkPoint::gauss(ctx);

  std::optional<GprResult> best;
  for (const auto& e : tree.edges) {
    const RayImage ray(map, e.center);
    const TRange r = e.range();
    std::vector<Rational> ts = ray.critical_points(r);
    if (r.lo) ts.push_back(*r.lo);
    if (r.hi) ts.push_back(*r.hi);
    const Ord kink = min(Ord(0L), ord_p(ctx, e.center));
    if (r.interior(kink.value())) ts.push_back(kink.value());
    for (const auto& t : ts) {
      const BerkPoint x = ray.point(t);
      if (!(push_forward(map, x) == gauss)) continue;
      const Ord s = diam_G(ctx, x);
      if (!best || s > best->gpr) best = GprResult{s, x};
    }
  }
  if (!best) fail(ErrorKind::internal, "internal: preimage must lie on hull");
  return *best;
}

struct InvariantBundle {
  Ord gir;
  std::optional<Ord> rp;
  std::optional<Ord> gpr;
  std::optional<BerkPoint> gpr_argmin;
  Ord res;
  std::optional<Ord> b0_lower;
  std::vector<std::string> diagnostics;
};

/// All available invariants. Checks |Res| <= GPR <= RP <= 1 and GIR >= |Res|^{1/d}
/// (in ord form: res >= gpr >= rp >= 0 and gir <= res/d).
inline InvariantBundle bundle(const RationalMap& map) {
  InvariantBundle b;
  b.gir = gir_minors(map);
  b.res = resultant_ord(map);
  if (map.factored()) {
    b.rp = rp(map);
    b.b0_lower = b.rp;
  } else {
    b.diagnostics.emplace_back("rp absent: map has no factored form");
  }
  if (map.fibers()) {
    const GprResult g = gpr(map);
    b.gpr = g.gpr;
    b.gpr_argmin = g.argmin;
  } else {
    b.diagnostics.emplace_back("gpr absent: zeros and poles are not known over Q");
  }
  auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::internal, "invariant chain violated: " + what);
  };
  const Rational d(map.degree());
  check(b.gir.value() * d <= b.res.value(), "GIR >= |Res|^(1/d)");
  check(b.res >= Ord(0L), "|Res| <= 1");
  if (b.gpr) check(*b.gpr <= b.res, "|Res| <= GPR");
  if (b.rp) check(*b.rp >= Ord(0L), "RP <= 1");
  if (b.gpr && b.rp) check(*b.gpr >= *b.rp, "GPR <= RP");
  return b;
}

}  // namespace nalip
