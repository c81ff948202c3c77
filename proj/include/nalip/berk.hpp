#pragma once

// Type I and type II points of the Berkovich projective line, their
// diameters, joins and metrics, and the action of rational maps on them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nalip/polynomial.hpp"
#include "nalip/projective.hpp"
#include "nalip/ratmap.hpp"
#include "nalip/tropical.hpp"

namespace nalip {

/// A classical point of P^1(Q), or zeta_{a,r} with r = p^{-t}.
class BerkPoint {
 public:
  static BerkPoint type_i(ProjPoint pt) {
    BerkPoint x;
    x.pt_ = std::move(pt);
    return x;
  }
  static BerkPoint type_ii(const PrimeContext& ctx, Rational center, Rational t) {
    BerkPoint x;
    x.p_ = ctx.p();
    x.center_ = std::move(center);
    x.t_ = std::move(t);
    return x;
  }
  static BerkPoint gauss(const PrimeContext& ctx) { return type_ii(ctx, Rational(0), Rational(0)); }

  bool is_type_i() const noexcept { return pt_.has_value(); }
  bool is_type_ii() const noexcept { return !pt_.has_value(); }
  bool is_infinity() const noexcept { return pt_ && pt_->is_infinity(); }

  const ProjPoint& point() const {
    if (!pt_) fail(ErrorKind::domain, "not a classical point");
    return *pt_;
  }
  /// The disc center; for a finite classical point, the point itself.
  const Rational& center() const { return pt_ ? pt_->value() : center_; }
  /// t with radius p^{-t}; +inf for a finite classical point.
  Ord radius_ord() const {
    if (pt_) {
      if (pt_->is_infinity()) fail(ErrorKind::domain, "infinity has no finite disc");
      return Ord::infinity();
    }
    return Ord(t_);
  }

  std::string to_string() const {
    if (pt_) return pt_->to_string();
    return "zeta(" + center_.get_str() + ", p^-(" + t_.get_str() + "))";
  }

  friend bool operator==(const BerkPoint& x, const BerkPoint& y) {
    if (x.pt_ || y.pt_) return x.pt_ == y.pt_;
    if (x.p_ != y.p_) fail(ErrorKind::domain, "points over different primes");
    return x.t_ == y.t_ && ord_p(PrimeContext(x.p_), Rational(x.center_ - y.center_)) >= Ord(x.t_);
  }

 private:
  BerkPoint() = default;
  std::optional<ProjPoint> pt_;
  unsigned long p_ = 0;
  Rational center_;
  Rational t_;
};

/// Convenience for a disc point or a finite classical point (t = +inf).
inline BerkPoint disc_point(const PrimeContext& ctx, const Rational& a, const Ord& t) {
  if (t.is_infinite()) return BerkPoint::type_i(ProjPoint(a));
  return BerkPoint::type_ii(ctx, a, t.value());
}

inline Ord diam_infty(const BerkPoint& x) {
  if (x.is_infinity()) fail(ErrorKind::domain, "diam_infty undefined at infinity");
  return x.radius_ord();
}

/// s with diam_G(x) = p^{-s}, i.e. r / max(1, |a|, r)^2.
inline Ord diam_G(const PrimeContext& ctx, const BerkPoint& x) {
  if (x.is_type_i()) return Ord::infinity();
  const Ord t = x.radius_ord();
  const Ord m = min(min(Ord(0L), ord_p(ctx, x.center())), t);
  return Ord(Rational(t.value() - 2 * m.value()));
}

/// Smallest point above both x and y in the ordering toward infinity.
inline BerkPoint join_infty(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (x.is_infinity() || y.is_infinity()) return BerkPoint::type_i(ProjPoint::infinity());
  const Ord t = min(min(x.radius_ord(), y.radius_ord()), ord_p(ctx, Rational(x.center() - y.center())));
  return disc_point(ctx, x.center(), t);
}

namespace detail {

// On the vertical segment {zeta_{a,s} : lo <= s <= hi} the ord of diam_G is
// s - 2 min(0, ord a, s), minimized at s = clamp(min(0, ord a), lo, hi).
inline Ord best_on_branch(const PrimeContext& ctx, const Rational& a, const std::optional<Rational>& lo, const Ord& hi) {
  Ord s = min(Ord(0L), ord_p(ctx, a));
  if (s > hi) s = hi;
  if (lo && s < Ord(*lo)) s = Ord(*lo);
  return s;
}

}  // namespace detail

/// The point of [x, y] closest to the Gauss point.
inline BerkPoint join_G(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (x.is_infinity() && y.is_infinity()) return x;
  if (x.is_infinity()) return join_G(ctx, y, x);
  if (y.is_infinity()) {
    const Ord s = detail::best_on_branch(ctx, x.center(), std::nullopt, x.radius_ord());
    return disc_point(ctx, x.center(), s);
  }
  const BerkPoint u = join_infty(ctx, x, y);
  const Ord tu = u.radius_ord();
  if (tu.is_infinite()) return x;  // x == y classical
  const BerkPoint bx = disc_point(ctx, x.center(), detail::best_on_branch(ctx, x.center(), tu.value(), x.radius_ord()));
  const BerkPoint by = disc_point(ctx, y.center(), detail::best_on_branch(ctx, y.center(), tu.value(), y.radius_ord()));
  return diam_G(ctx, bx) <= diam_G(ctx, by) ? bx : by;
}

/// Path length between two type II points.
inline Rational rho(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (x.is_type_i() || y.is_type_i()) fail(ErrorKind::domain, "rho infinite at classical points");
  const Rational tu = join_infty(ctx, x, y).radius_ord().value();
  return (x.radius_ord().value() - tu) + (y.radius_ord().value() - tu);
}

/// d(x,y) = 2 diam_G(x v_G y) - diam_G(x) - diam_G(y).
inline PPowerSum d_metric(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (x == y) return PPowerSum::zero(ctx);
  std::vector<PowerTerm> raw;
  auto add = [&](const BerkPoint& z, long c) {
    const Ord s = diam_G(ctx, z);
    if (s.is_finite()) raw.push_back({Rational(c), Rational(-s.value())});
  };
  add(join_G(ctx, x, y), 2);
  add(x, -1);
  add(y, -1);
  return PPowerSum::normalize(ctx, raw);
}

/// t -> ord |f|_{zeta_{a,t}} as a min of affine pieces, from the Taylor coefficients at a.
inline MinPlus seminorm_envelope(const PrimeContext& ctx, const Poly& shifted) {
  MinPlus env;
  for (std::size_t i = 0; i < shifted.size(); ++i)
    if (shifted[i] != 0) env.add({ord_p(ctx, shifted[i]).value(), Rational(static_cast<long>(i))});
  if (env.empty()) fail(ErrorKind::domain, "seminorm of the zero polynomial");
  return env;
}

/// ord |f|_x = min_i (ord c_i + i t), c_i the Taylor coefficients at the center of x.
inline Ord seminorm(const PrimeContext& ctx, const Poly& f, const BerkPoint& x) {
  if (x.is_infinity()) fail(ErrorKind::domain, "seminorm at infinity");
  const Poly c = taylor_shift(f, x.center());
  const MinPlus env = seminorm_envelope(ctx, c);
  const Ord t = x.radius_ord();
  if (t.is_infinite()) return ord_p(ctx, c.empty() ? Rational(0) : c[0]);
  return env.eval(t.value());
}

/// z -> 1/z on Berkovich points.
inline BerkPoint invert(const PrimeContext& ctx, const BerkPoint& x) {
  if (x.is_type_i()) {
    const ProjPoint& z = x.point();
    if (z.is_infinity()) return BerkPoint::type_i(ProjPoint(0L));
    if (z.value() == 0) return BerkPoint::type_i(ProjPoint::infinity());
    return BerkPoint::type_i(ProjPoint(Rational(1 / z.value())));
  }
  const Rational t = x.radius_ord().value();
  const Ord oa = ord_p(ctx, x.center());
  if (oa >= Ord(t)) return BerkPoint::type_ii(ctx, Rational(0), Rational(-t));
  return BerkPoint::type_ii(ctx, Rational(1 / x.center()), Rational(t - 2 * oa.value()));
}

namespace detail {

// Ratios f_i/g_i of same-index coefficients, then 0; deduplicated.
inline std::vector<Rational> candidate_centers(const Poly& f, const Poly& g) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) {
      const Rational r = (i < f.size() ? f[i] : Rational(0)) / g[i];
      if (std::find(w.begin(), w.end(), r) == w.end()) w.push_back(r);
    }
  if (std::find(w.begin(), w.end(), Rational(0)) == w.end()) w.emplace_back(0);
  return w;
}

struct ImageDisc {
  Rational center;
  Rational t;
};

// Image of zeta_{0,t} (coordinates already shifted to the center) under f/g:
// the radius is the largest ord of |f/g - w| over candidate centers w.
inline ImageDisc image_disc(const PrimeContext& ctx, const Poly& f, const Poly& g, const Rational& t) {
  const Rational sg = seminorm_envelope(ctx, g).eval(t).value();
  std::optional<ImageDisc> best;
  for (const auto& w : candidate_centers(f, g)) {
    const Rational r = seminorm_envelope(ctx, subtract_scaled(f, w, g)).eval(t).value() - sg;
    if (!best || r > best->t) best = ImageDisc{w, r};
  }
  return *best;
}

}  // namespace detail

/// phi(x). For a type II point the image is computed in the chart where |phi|_x <= 1.
inline BerkPoint push_forward(const RationalMap& map, const BerkPoint& x) {
  if (x.is_type_i()) return BerkPoint::type_i(map(x.point()));
  const auto& ctx = map.context();
  const Rational t = x.radius_ord().value();
  const Poly f = taylor_shift(map.f_affine(), x.center());
  const Poly g = taylor_shift(map.g_affine(), x.center());
  const Rational s0 = seminorm_envelope(ctx, f).eval(t).value() - seminorm_envelope(ctx, g).eval(t).value();
  if (s0 >= 0) {
    const auto img = detail::image_disc(ctx, f, g, t);
    return BerkPoint::type_ii(ctx, img.center, img.t);
  }
  const auto img = detail::image_disc(ctx, g, f, t);
  return invert(ctx, BerkPoint::type_ii(ctx, img.center, img.t));
}

/// phi(x) computed in the finite chart only, whatever the size of |phi|_x.
inline BerkPoint push_forward_direct(const RationalMap& map, const BerkPoint& x) {
  if (x.is_type_i()) return BerkPoint::type_i(map(x.point()));
  const auto& ctx = map.context();
  const auto img = detail::image_disc(ctx, taylor_shift(map.f_affine(), x.center()),
                                      taylor_shift(map.g_affine(), x.center()), x.radius_ord().value());
  return BerkPoint::type_ii(ctx, img.center, img.t);
}

inline BerkPoint apply_mobius(const PrimeContext& ctx, const Mobius& g, const BerkPoint& x) {
  if (x.is_type_i()) return BerkPoint::type_i(g(x.point()));
  return push_forward(RationalMap::from_coefficients(ctx, {g.a, g.b}, {g.c, g.d}), x);
}

/// The image data of phi along the vertical ray {zeta_{a,t}} over a fixed center a.
/// ord|phi| and the image radius are piecewise affine in t; this exposes every
/// place where either can bend.
class RayImage {
 public:
  RayImage(const RationalMap& map, Rational center) : map_(map), center_(std::move(center)) {
    const auto& ctx = map.context();
    const Poly f = taylor_shift(map.f_affine(), center_);
    const Poly g = taylor_shift(map.g_affine(), center_);
    sf_ = seminorm_envelope(ctx, f);
    sg_ = seminorm_envelope(ctx, g);
    for (const auto& w : detail::candidate_centers(f, g)) tw_.push_back(seminorm_envelope(ctx, subtract_scaled(f, w, g)));
  }

  const Rational& center() const noexcept { return center_; }
  BerkPoint point(const Rational& t) const { return BerkPoint::type_ii(map_.context(), center_, t); }

  /// ord |phi|_{zeta_{a,t}}
  Rational s(const Rational& t) const { return sf_.eval(t).value() - sg_.eval(t).value(); }

  /// ord of the radius of phi(zeta_{a,t}) in the finite chart.
  Rational image_radius(const Rational& t) const {
    std::optional<Rational> best;
    for (const auto& e : tw_) {
      const Rational v = e.eval(t).value();
      if (!best || v > *best) best = v;
    }
    return *best - sg_.eval(t).value();
  }

  /// ord diam_G(phi(zeta_{a,t})) = R - 2 min(0, s).
  Rational image_diam_G(const Rational& t) const {
    const Rational s0 = s(t);
    return image_radius(t) - 2 * (s0 < 0 ? s0 : Rational(0));
  }

  /// Every t inside r where s, the image radius, or the image diam_G can change
  /// slope, together with the zeros of s and of each (candidate radius - ord|G|).
  std::vector<Rational> critical_points(const TRange& r) const {
    std::vector<Rational> cuts = sf_.breakpoints(r);
    auto append = [&](const std::vector<Rational>& v) { cuts.insert(cuts.end(), v.begin(), v.end()); };
    append(sg_.breakpoints(r));
    for (const auto& e : tw_) append(e.breakpoints(r));
    std::vector<Rational> out = cuts;
    for (const auto& cell : cells_of(r, cuts)) {
      const Rational probe = cell.sample();
      const Affine& g = sg_.active_at(probe);
      std::vector<Affine> pieces{sf_.active_at(probe) - g};
      for (const auto& e : tw_) pieces.push_back(e.active_at(probe) - g);
      // zeros of each piece, and pairwise crossings
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].slope != 0) {
          const Rational z = -pieces[i].at0 / pieces[i].slope;
          if (cell.interior(z)) out.push_back(z);
        }
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
          const Affine diff = pieces[i] - pieces[j];
          if (diff.slope == 0) continue;
          const Rational z = -diff.at0 / diff.slope;
          if (cell.interior(z)) out.push_back(z);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  RationalMap map_;
  Rational center_;
  MinPlus sf_, sg_;
  std::vector<MinPlus> tw_;
};

}  // namespace nalip
