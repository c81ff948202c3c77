#include <gtest/gtest.h>

#include "support.hpp"

using namespace nalip;
using namespace nalip::testing;

namespace {

RationalMap z_squared_minus(unsigned long p) {
  const PrimeContext ctx(p);
  const Rational inv(1, p);
  return RationalMap::from_factored(ctx, {Rational(1), {{ProjPoint(inv), 1}, {ProjPoint(Rational(-inv)), 1}},
                                          {{ProjPoint::infinity(), 2}}});
}

RationalMap over_D(unsigned long p, long D) {
  return RationalMap::from_coefficients(PrimeContext(p), {Rational(1), Rational(0)}, {Rational(0), Rational(D)});
}

bool has_edge(const FiniteTree& t, const BerkPoint& lower, const BerkPoint& upper) {
  for (const auto& e : t.edges)
    if (e.lower == lower && e.upper == upper) return true;
  return false;
}

}  // namespace

TEST(Rp, Examples) {
  EXPECT_EQ(rp(z_squared_minus(3)), Ord(1L));
  const PrimeContext ctx(5);
  EXPECT_EQ(rp(RationalMap::from_factored(ctx, {Rational(1), {{ProjPoint(0L), 3}}, {{ProjPoint::infinity(), 3}}})), Ord(0L));
  // zeros at 0, poles of size S = 5^-1
  EXPECT_EQ(rp(RationalMap::from_factored(
                ctx, {Rational(25), {{ProjPoint(0L), 3}}, {{ProjPoint(5L), 1}, {ProjPoint(10L), 1}, {ProjPoint(15L), 1}}})),
            Ord(1L));
  EXPECT_THROW(rp(RationalMap::from_coefficients(PrimeContext(3), {Rational(1), Rational(1), Rational(2)},
                                                 {Rational(0), Rational(0), Rational(1)})),
               Error);
}

TEST(Hull, StarAtGauss) {
  const PrimeContext ctx(3);
  const FiniteTree t = hull(ctx, {ProjPoint(0L), ProjPoint(1L), ProjPoint::infinity()});
  EXPECT_EQ(t.edges.size(), 3u);
  const BerkPoint g = BerkPoint::gauss(ctx);
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(0L)), g));
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(1L)), g));
  EXPECT_TRUE(has_edge(t, g, BerkPoint::type_i(ProjPoint::infinity())));
}

TEST(Hull, WorkedExample) {
  const PrimeContext ctx(3);
  const FiniteTree t = hull(ctx, {ProjPoint(Rational(1, 3)), ProjPoint(Rational(-1, 3)), ProjPoint::infinity()});
  const BerkPoint top = BerkPoint::type_ii(ctx, Rational(0), Rational(-1));
  EXPECT_EQ(t.edges.size(), 3u);
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(Rational(1, 3))), top));
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(Rational(-1, 3))), top));
  EXPECT_TRUE(has_edge(t, top, BerkPoint::type_i(ProjPoint::infinity())));
}

TEST(Hull, TwoPointsMeetAtTheirJoin) {
  // two vertical edges from a and b up to zeta_{a,|a-b|}
  const PrimeContext ctx(5);
  const FiniteTree t = hull(ctx, {ProjPoint(1L), ProjPoint(26L)});
  const BerkPoint j = BerkPoint::type_ii(ctx, Rational(1), Rational(2));
  EXPECT_EQ(t.edges.size(), 2u);
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(1L)), j));
  EXPECT_TRUE(has_edge(t, BerkPoint::type_i(ProjPoint(26L)), j));
  EXPECT_THROW(hull(ctx, {ProjPoint(1L), ProjPoint(1L)}), Error);
}

TEST(Hull, EdgesAreVerticalAndConnected) {
  Rng rng(40);
  for (int i = 0; i < 100; ++i) {
    const PrimeContext ctx(std::array<unsigned long, 3>{2, 3, 5}[rng() % 3]);
    std::vector<ProjPoint> pts;
    for (long n = uniform(rng, 2, 7); n > 0; --n) pts.push_back(random_point(ctx, rng));
    std::vector<ProjPoint> distinct;
    for (const auto& q : pts)
      if (std::find(distinct.begin(), distinct.end(), q) == distinct.end()) distinct.push_back(q);
    if (distinct.size() < 2) continue;
    const FiniteTree t = hull(ctx, pts);
    // a tree on V vertices has V - 1 edges
    EXPECT_EQ(t.edges.size() + 1, t.vertices.size());
    for (const auto& e : t.edges) {
      if (!e.lower.is_type_i()) {
        EXPECT_EQ(BerkPoint::type_ii(ctx, e.center, e.lower.radius_ord().value()), e.lower);
      }
      if (!e.upper.is_infinity()) {
        EXPECT_EQ(BerkPoint::type_ii(ctx, e.center, e.upper.radius_ord().value()), e.upper);
      }
      EXPECT_FALSE(e.lower == e.upper);
    }
    // every input point is an endpoint
    for (const auto& q : distinct) {
      bool found = false;
      for (const auto& e : t.edges) found = found || e.lower == BerkPoint::type_i(q) || e.upper == BerkPoint::type_i(q);
      EXPECT_TRUE(found) << q.to_string();
    }
  }
}

TEST(Gpr, Examples) {
  for (unsigned long p : {3UL, 5UL, 7UL}) {
    const GprResult g = gpr(z_squared_minus(p));
    const PrimeContext ctx(p);
    EXPECT_EQ(g.gpr, Ord(3L));
    const Rational inv(1, p);
    EXPECT_TRUE(g.argmin == BerkPoint::type_ii(ctx, inv, Rational(1)) ||
                g.argmin == BerkPoint::type_ii(ctx, Rational(-inv), Rational(1)));
  }
  const GprResult m = gpr(over_D(5, 125));
  EXPECT_EQ(m.gpr, Ord(3L));
  EXPECT_EQ(m.argmin, BerkPoint::type_ii(PrimeContext(5), Rational(0), Rational(3)));
  const PrimeContext c3(3);
  const GprResult z3 = gpr(RationalMap::from_factored(c3, {Rational(1), {{ProjPoint(0L), 3}}, {{ProjPoint::infinity(), 3}}}));
  EXPECT_EQ(z3.gpr, Ord(0L));
  EXPECT_EQ(z3.argmin, BerkPoint::gauss(c3));
}

TEST(Gpr, ArgminMapsToGauss) {
  for (const auto& m : corpus(401, 200)) {
    const GprResult g = gpr(m);
    EXPECT_EQ(push_forward(m, g.argmin), BerkPoint::gauss(m.context()));
    EXPECT_EQ(diam_G(m.context(), g.argmin), g.gpr);
  }
}

TEST(Gpr, NoSmallerPreimageOnHullGrid) {
  // about 10^3 points per hull, spread over every edge
  Rng rng(41);
  for (const auto& m : corpus(411, 50, 3)) {
    const auto& ctx = m.context();
    const GprResult g = gpr(m);
    std::vector<ProjPoint> pts;
    for (const auto& f : *m.fibers())
      for (const auto& w : f.points) pts.push_back(w.point);
    const FiniteTree t = hull(ctx, pts);
    const long per_edge = 1000 / static_cast<long>(t.edges.size()) + 1;
    const BerkPoint gauss = BerkPoint::gauss(ctx);
    for (const auto& e : t.edges) {
      const TRange r = e.range();
      const Rational lo = r.lo ? *r.lo : Rational(-8), hi = r.hi ? *r.hi : Rational(12);
      for (long k = 0; k <= per_edge; ++k) {
        const Rational tt = lo + (hi - lo) * Rational(k, per_edge);
        const BerkPoint x = BerkPoint::type_ii(ctx, e.center, tt);
        if (push_forward(m, x) == gauss) {
          EXPECT_LE(diam_G(ctx, x), g.gpr) << x.to_string();
        }
      }
    }
  }
}

// zeta_{c,t} lies in the hull of S iff S meets both the closed disc and its
// complement, or two points of S inside the disc are in different residue classes.
static bool on_hull(const PrimeContext& ctx, const BerkPoint& x, const std::vector<ProjPoint>& s) {
  std::vector<Rational> inside;
  bool outside = false;
  for (const auto& q : s) {
    if (!q.is_infinity() && ord_p(ctx, Rational(q.value() - x.center())) >= x.radius_ord())
      inside.push_back(q.value());
    else
      outside = true;
  }
  if (!inside.empty() && outside) return true;
  for (std::size_t i = 0; i < inside.size(); ++i)
    for (std::size_t j = i + 1; j < inside.size(); ++j)
      if (ord_p(ctx, Rational(inside[i] - inside[j])) == x.radius_ord()) return true;
  return false;
}

TEST(Gpr, GaussPreimagesLieOnTheHull) {
  Rng rng(42);
  int hits = 0;
  for (const auto& m : corpus(421, 60, 3)) {
    const auto& ctx = m.context();
    std::vector<ProjPoint> s;
    for (const auto& f : *m.fibers())
      for (const auto& w : f.points) s.push_back(w.point);
    for (int i = 0; i < 200; ++i) {
      Rational t(uniform(rng, -8, 12), 2);
      t.canonicalize();
      const BerkPoint x = BerkPoint::type_ii(ctx, random_rational(ctx, rng, -2, 3), t);
      if (!(push_forward(m, x) == BerkPoint::gauss(ctx))) continue;
      ++hits;
      EXPECT_TRUE(on_hull(ctx, x, s)) << x.to_string();
    }
  }
  EXPECT_GT(hits, 0);
}

TEST(Bundle, Examples) {
  const InvariantBundle b = bundle(z_squared_minus(3));
  EXPECT_EQ(b.gir, Ord(4L));
  EXPECT_EQ(b.rp, Ord(1L));
  EXPECT_EQ(b.gpr, Ord(3L));
  EXPECT_EQ(b.res, Ord(8L));
  EXPECT_EQ(b.b0_lower, Ord(1L));
  const InvariantBundle id = bundle(RationalMap::from_coefficients(PrimeContext(3), {Rational(1), Rational(0)},
                                                                   {Rational(0), Rational(1)}));
  EXPECT_EQ(id.gir, Ord(0L));
  EXPECT_EQ(id.rp, Ord(0L));
  EXPECT_EQ(id.gpr, Ord(0L));
  EXPECT_EQ(id.res, Ord(0L));
  const InvariantBundle m = bundle(over_D(7, 49));
  EXPECT_EQ(m.gir, Ord(2L));
  EXPECT_EQ(m.gpr, Ord(2L));
  EXPECT_EQ(m.res, Ord(2L));
  EXPECT_EQ(m.rp, Ord(0L));
  EXPECT_EQ(m.b0_lower, Ord(0L));
}

TEST(Bundle, CoefficientOnlyMapReportsAbsence) {
  const InvariantBundle b = bundle(RationalMap::from_coefficients(PrimeContext(3), {Rational(1), Rational(1), Rational(2)},
                                                                  {Rational(0), Rational(0), Rational(1)}));
  EXPECT_FALSE(b.rp);
  EXPECT_FALSE(b.gpr);
  EXPECT_EQ(b.diagnostics.size(), 2u);
}

TEST(Bundle, ChainOnCorpus) {
  for (const auto& m : corpus(431, 200)) {
    const InvariantBundle b = bundle(m);
    EXPECT_GE(b.res, *b.gpr);
    EXPECT_GE(*b.gpr, *b.rp);
    EXPECT_GE(*b.rp, Ord(0L));
    EXPECT_LE(b.gir.value() * m.degree(), b.res.value());
  }
}

TEST(Bundle, StrictChainWitness) {
  const InvariantBundle b = bundle(z_squared_minus(5));
  EXPECT_GT(*b.gpr, *b.rp);
  EXPECT_GT(*b.rp, Ord(0L));
}

TEST(Gpr, UnimodularInvariance) {
  Rng rng(44);
  for (const auto& m : corpus(441, 30)) {
    const Ord g = gpr(m).gpr;
    for (int j = 0; j < 8; ++j) {
      const Mobius u = random_unimodular(rng);
      EXPECT_EQ(gpr(precompose(m, u)).gpr, g);
      EXPECT_EQ(gpr(postcompose(u, m)).gpr, g);
    }
  }
}
