#pragma once

// Points of P^1(Q), homogeneous coordinates, the spherical metric and the
// action of 2x2 matrices by linear fractional transformations.

#include <optional>
#include <string>
#include <string_view>

#include "nalip/valued.hpp"

namespace nalip {

class ProjPoint {
 public:
  ProjPoint(Rational z) : z_(std::move(z)) {}  // NOLINT(google-explicit-constructor)
  ProjPoint(long z) : z_(Rational(z)) {}       // NOLINT(google-explicit-constructor)

  static ProjPoint infinity() { return ProjPoint(); }

  bool is_infinity() const noexcept { return !z_.has_value(); }
  const Rational& value() const {
    if (!z_) fail(ErrorKind::domain, "infinity has no affine coordinate");
    return *z_;
  }

  std::string to_string() const { return z_ ? z_->get_str() : "inf"; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint() = default;
  std::optional<Rational> z_;
};

inline ProjPoint parse_proj_point(std::string_view s) {
  if (s == "inf") return ProjPoint::infinity();
  return ProjPoint(parse_rational(s));
}

struct HomogCoords {
  Rational x;
  Rational y;

  friend bool operator==(const HomogCoords&, const HomogCoords&) = default;
};

/// (z : 1) for finite z, (1 : 0) for infinity.
inline HomogCoords homogeneous(const ProjPoint& pt) {
  if (pt.is_infinity()) return {Rational(1), Rational(0)};
  return {pt.value(), Rational(1)};
}

inline ProjPoint dehomogenize(const HomogCoords& h) {
  if (h.y == 0) {
    if (h.x == 0) fail(ErrorKind::domain, "(0 : 0) is not a point");
    return ProjPoint::infinity();
  }
  return ProjPoint(Rational(h.x / h.y));
}

/// Scales by p^{-min(ord X, ord Y)} so that min(ord X, ord Y) = 0.
inline HomogCoords unit_normalize(const PrimeContext& ctx, const HomogCoords& h) {
  if (h.x == 0 && h.y == 0) fail(ErrorKind::domain, "(0 : 0) is not a point");
  const Ord m = min(ord_p(ctx, h.x), ord_p(ctx, h.y));
  const Rational s = p_power(ctx, -checked_long(m.value(), "valuation"));
  return {h.x * s, h.y * s};
}

/// t with ||x, y|| = p^{-t}; +inf iff x == y.
inline Ord spherical_ord(const PrimeContext& ctx, const ProjPoint& x, const ProjPoint& y) {
  if (x == y) return Ord::infinity();
  // |z| > 1 <=> ord z < 0; infinity counts as |z| > 1 with 1/z = 0.
  auto outside = [&](const ProjPoint& z) { return z.is_infinity() || ord_p(ctx, z.value()) < Ord(0L); };
  const bool ox = outside(x), oy = outside(y);
  if (!ox && !oy) return ord_p(ctx, Rational(x.value() - y.value()));
  if (ox && oy) {
    auto inv = [](const ProjPoint& z) { return z.is_infinity() ? Rational(0) : Rational(1 / z.value()); };
    return ord_p(ctx, Rational(inv(x) - inv(y)));
  }
  return Ord(0L);
}

/// z -> (a z + b) / (c z + d)
struct Mobius {
  Rational a, b, c, d;

  Rational det() const { return a * d - b * c; }

  ProjPoint operator()(const ProjPoint& z) const {
    const HomogCoords h = homogeneous(z);
    return dehomogenize({a * h.x + b * h.y, c * h.x + d * h.y});
  }

  /// (*this)(other(z))
  Mobius after(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Mobius inverse() const {
    if (det() == 0) fail(ErrorKind::degenerate, "singular matrix");
    return {d, -b, -c, a};
  }

  static Mobius identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }

  friend bool operator==(const Mobius&, const Mobius&) = default;
};

}  // namespace nalip
