#pragma once

// Rational maps as homogeneous pairs (F, G) of degree d, with optional
// factored form and the resultant / Gauss-image-radius formulas.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nalip/polynomial.hpp"
#include "nalip/projective.hpp"

namespace nalip {

struct WeightedPoint {
  ProjPoint point;
  int mult = 1;

  friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

/// phi(z) = C * prod (z - alpha)^m / prod (z - beta)^m over the finite zeros and
/// poles. Infinity may be listed explicitly; otherwise it is implied.
struct FactoredForm {
  Rational C;
  std::vector<WeightedPoint> zeros;
  std::vector<WeightedPoint> poles;

  friend bool operator==(const FactoredForm&, const FactoredForm&) = default;
};

/// The complete preimage (with multiplicity) of one point of P^1(Q).
struct Fiber {
  ProjPoint value;
  std::vector<WeightedPoint> points;

  friend bool operator==(const Fiber&, const Fiber&) = default;
};

namespace detail {

inline int total_mult(const std::vector<WeightedPoint>& pts, bool finite_only) {
  int n = 0;
  for (const auto& w : pts)
    if (!finite_only || !w.point.is_infinity()) n += w.mult;
  return n;
}

// Merge repeated points, validate multiplicities.
inline std::vector<WeightedPoint> merged(const std::vector<WeightedPoint>& pts) {
  std::vector<WeightedPoint> out;
  for (const auto& w : pts) {
    if (w.mult < 1) fail(ErrorKind::parse, "multiplicity must be >= 1");
    auto it = std::find_if(out.begin(), out.end(), [&](const WeightedPoint& o) { return o.point == w.point; });
    if (it == out.end())
      out.push_back(w);
    else
      it->mult += w.mult;
  }
  return out;
}

// Pads with infinity so the list has exactly d entries counted with multiplicity.
inline std::vector<WeightedPoint> padded(const std::vector<WeightedPoint>& pts, int d) {
  std::vector<WeightedPoint> out;
  for (const auto& w : pts)
    if (!w.point.is_infinity()) out.push_back(w);
  const int at_inf = d - total_mult(out, true);
  if (at_inf > 0) out.push_back({ProjPoint::infinity(), at_inf});
  return out;
}

inline Rational leading_coefficient(const Poly& f) {
  const int n = degree(f);
  if (n < 0) fail(ErrorKind::degenerate, "zero polynomial");
  return f[static_cast<std::size_t>(n)];
}

// Lowest-first affine polynomial of a highest-first homogeneous coefficient list.
inline Poly affine_of(const std::vector<Rational>& high_first) {
  Poly f(high_first.rbegin(), high_first.rend());
  trim(f);
  return f;
}

inline std::vector<Rational> homogeneous_of(Poly f, int d) {
  f.resize(static_cast<std::size_t>(d) + 1, Rational(0));
  return {f.rbegin(), f.rend()};
}

}  // namespace detail

/// Determinant of the 2d x 2d Sylvester matrix of two highest-first
/// coefficient lists of length d+1, by fraction-free (Bareiss) elimination.
inline Rational sylvester_resultant(const std::vector<Rational>& F, const std::vector<Rational>& G) {
  if (F.size() != G.size() || F.size() < 2) fail(ErrorKind::domain, "resultant needs two lists of length d+1 >= 2");
  const std::size_t d = F.size() - 1, n = 2 * d;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, 0));
  Rational scale(1);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& src = r < d ? F : G;
    const std::size_t shift = r < d ? r : r - d;
    Integer den = 1;
    for (const auto& c : src) den = lcm_of(den, c.get_den());
    for (std::size_t k = 0; k <= d; ++k) {
      const Rational v = src[k] * Rational(den);
      m[r][shift + k] = v.get_num();
    }
    scale *= Rational(den);
  }
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return Rational(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return Rational(m[n - 1][n - 1] * sign) / scale;
}

class RationalMap {
 public:
  /// Coefficient lists are highest-degree first, each of length d+1.
  static RationalMap from_coefficients(const PrimeContext& ctx, std::vector<Rational> F, std::vector<Rational> G) {
    if (F.size() != G.size()) fail(ErrorKind::parse, "F and G coefficient lists differ in length");
    if (F.size() < 2) fail(ErrorKind::degenerate, "degree zero");
    RationalMap m(ctx, std::move(F), std::move(G));
    if (m.d_ == 1) m.attach_linear_factorization();
    return m;
  }

  /// Expands the factored form, attaches it (with its zero/pole fibers) and normalizes.
  static RationalMap from_factored(const PrimeContext& ctx, const FactoredForm& f) {
    if (f.C == 0) fail(ErrorKind::degenerate, "degenerate map: C = 0");
    FactoredForm clean{f.C, detail::merged(f.zeros), detail::merged(f.poles)};
    for (const auto& z : clean.zeros)
      for (const auto& q : clean.poles)
        if (z.point == q.point) fail(ErrorKind::degenerate, "degenerate map: shared zero/pole " + z.point.to_string());
    const int nf = detail::total_mult(clean.zeros, true), mf = detail::total_mult(clean.poles, true);
    const int d = std::max(nf, mf);
    if (d == 0) fail(ErrorKind::degenerate, "degree zero");
    auto check_inf = [&](const std::vector<WeightedPoint>& pts, int implied, const char* which) {
      for (const auto& w : pts)
        if (w.point.is_infinity() && w.mult != implied)
          fail(ErrorKind::degenerate, std::string("degenerate map: multiplicity of infinity among ") + which +
                                          " must be " + std::to_string(implied));
    };
    check_inf(clean.zeros, d - nf, "zeros");
    check_inf(clean.poles, d - mf, "poles");

    Poly num{f.C}, den{Rational(1)};
    for (const auto& w : clean.zeros)
      if (!w.point.is_infinity())
        for (int i = 0; i < w.mult; ++i) num = multiply(num, {Rational(-w.point.value()), Rational(1)});
    for (const auto& w : clean.poles)
      if (!w.point.is_infinity())
        for (int i = 0; i < w.mult; ++i) den = multiply(den, {Rational(-w.point.value()), Rational(1)});
    RationalMap m(ctx, detail::homogeneous_of(num, d), detail::homogeneous_of(den, d));
    m = m.normalized();
    m.factored_ = clean;
    m.fibers_ = {Fiber{ProjPoint(0L), detail::padded(clean.zeros, d)},
                 Fiber{ProjPoint::infinity(), detail::padded(clean.poles, d)}};
    return m;
  }

  const PrimeContext& context() const noexcept { return ctx_; }
  int degree() const noexcept { return d_; }
  const std::vector<Rational>& F() const noexcept { return F_; }
  const std::vector<Rational>& G() const noexcept { return G_; }
  const std::optional<FactoredForm>& factored() const noexcept { return factored_; }
  const std::optional<std::array<Fiber, 2>>& fibers() const noexcept { return fibers_; }

  Poly f_affine() const { return detail::affine_of(F_); }
  Poly g_affine() const { return detail::affine_of(G_); }

  /// Min coefficient ord, i.e. the scaling exponent m with (F,G) = p^m (F0,G0), (F0,G0) normalized.
  Rational min_coefficient_ord() const {
    Ord m = Ord::infinity();
    for (const auto* v : {&F_, &G_})
      for (const auto& c : *v) m = min(m, ord_p(ctx_, c));
    return m.value();
  }

  bool is_normalized() const { return min_coefficient_ord() == 0; }

  RationalMap normalized() const {
    RationalMap out = *this;
    const Rational s = p_power(ctx_, -checked_long(min_coefficient_ord(), "valuation"));
    for (auto* v : {&out.F_, &out.G_})
      for (auto& c : *v) c *= s;
    return out;
  }

  /// The same map with F and G scaled by a common nonzero constant (drops nothing).
  RationalMap rescaled(const Rational& k) const {
    if (k == 0) fail(ErrorKind::degenerate, "zero scaling");
    RationalMap out = *this;
    for (auto* v : {&out.F_, &out.G_})
      for (auto& c : *v) c *= k;
    return out;
  }

  ProjPoint operator()(const ProjPoint& z) const {
    const HomogCoords h = homogeneous(z);
    return dehomogenize({eval_form(F_, h), eval_form(G_, h)});
  }

  /// Replaces the fiber data (used by composition helpers and tests).
  RationalMap with_fibers(std::optional<std::array<Fiber, 2>> fib, std::optional<FactoredForm> fac) const {
    RationalMap out = *this;
    out.fibers_ = std::move(fib);
    out.factored_ = std::move(fac);
    return out;
  }

  RationalMap without_factorization() const { return with_fibers(std::nullopt, std::nullopt); }

 private:
  RationalMap(const PrimeContext& ctx, std::vector<Rational> F, std::vector<Rational> G)
      : ctx_(ctx), d_(static_cast<int>(F.size()) - 1), F_(std::move(F)), G_(std::move(G)) {
    if (sylvester_resultant(F_, G_) == 0) fail(ErrorKind::degenerate, "degenerate map: F and G share a root");
  }

  static Rational eval_form(const std::vector<Rational>& c, const HomogCoords& h) {
    // sum_i a_i X^i Y^{d-i}, list is a_d..a_0
    const std::size_t d = c.size() - 1;
    if (h.y == 0) return c.front() * detail::pow_q(h.x, d);
    Rational acc = c.front();
    if (h.y == 1) {
      for (std::size_t i = 1; i <= d; ++i) acc = acc * h.x + c[i];
      return acc;
    }
    Rational ypow = h.y;
    for (std::size_t i = 1; i <= d; ++i) {
      acc = acc * h.x + c[i] * ypow;
      ypow *= h.y;
    }
    return acc;
  }

  void attach_linear_factorization() {
    // a1 X + a0 Y vanishes at X/Y = -a0/a1, or at infinity when a1 = 0.
    auto root = [](const std::vector<Rational>& c) {
      return c[0] == 0 ? ProjPoint::infinity() : ProjPoint(Rational(-c[1] / c[0]));
    };
    const Rational C = detail::leading_coefficient(f_affine()) / detail::leading_coefficient(g_affine());
    FactoredForm f{C, {{root(F_), 1}}, {{root(G_), 1}}};
    factored_ = f;
    fibers_ = {Fiber{ProjPoint(0L), f.zeros}, Fiber{ProjPoint::infinity(), f.poles}};
  }

  PrimeContext ctx_;
  int d_;
  std::vector<Rational> F_, G_;
  std::optional<FactoredForm> factored_;
  std::optional<std::array<Fiber, 2>> fibers_;

  friend RationalMap precompose(const RationalMap&, const Mobius&);
  friend RationalMap postcompose(const Mobius&, const RationalMap&);
};

inline RationalMap normalize(const RationalMap& m) { return m.normalized(); }

inline Ord resultant_ord(const RationalMap& map) {
  const RationalMap m = map.normalized();
  const Rational r = sylvester_resultant(m.F(), m.G());
  if (r == 0) fail(ErrorKind::degenerate, "degenerate map: resultant vanishes");
  return ord_p(m.context(), r);
}

/// ord of |Res| from the zero/pole product formula.
inline Ord resultant_ord_product(const RationalMap& map) {
  if (!map.factored()) fail(ErrorKind::factored_required, "factored form required");
  const auto& ctx = map.context();
  const auto& f = *map.factored();
  const int d = map.degree();
  // F = C0 * prod L_alpha, G = C1 * prod L_beta with unit-content linear forms;
  // C0/C1 = +-C * prod_{|alpha|>1} alpha / prod_{|beta|>1} beta.
  Rational kappa = ord_p(ctx, f.C).value();
  for (const auto& w : f.zeros)
    if (!w.point.is_infinity() && ord_p(ctx, w.point.value()) < Ord(0L))
      kappa += w.mult * ord_p(ctx, w.point.value()).value();
  for (const auto& w : f.poles)
    if (!w.point.is_infinity() && ord_p(ctx, w.point.value()) < Ord(0L))
      kappa -= w.mult * ord_p(ctx, w.point.value()).value();
  const Rational c0 = kappa > 0 ? kappa : Rational(0);
  const Rational c1 = kappa < 0 ? Rational(-kappa) : Rational(0);
  Ord total(Rational(d * c0 + d * c1));
  for (const auto& z : detail::padded(f.zeros, d))
    for (const auto& q : detail::padded(f.poles, d))
      total = total + Rational(z.mult * q.mult) * spherical_ord(ctx, z.point, q.point);
  return total;
}

/// ord of GIR(phi) = max_{i != j} |a_i b_j - a_j b_i| on a normalized representation.
inline Ord gir_minors(const RationalMap& map) {
  const RationalMap m = map.normalized();
  const auto &a = m.F(), &b = m.G();
  Ord best = Ord::infinity();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) best = min(best, ord_p(m.context(), Rational(a[i] * b[j] - a[j] * b[i])));
  if (best.is_infinite()) fail(ErrorKind::degenerate, "degenerate map: all minors vanish");
  return best;
}

namespace detail {

inline std::vector<WeightedPoint> moved(const std::vector<WeightedPoint>& pts, const Mobius& g) {
  std::vector<WeightedPoint> out;
  for (const auto& w : pts) out.push_back({g(w.point), w.mult});
  return out;
}

inline FactoredForm refactored(const RationalMap& m, std::vector<WeightedPoint> zeros, std::vector<WeightedPoint> poles) {
  const Rational C = leading_coefficient(m.f_affine()) / leading_coefficient(m.g_affine());
  return {C, std::move(zeros), std::move(poles)};
}

}  // namespace detail

/// phi o g; zero/pole data moves by g^{-1}.
inline RationalMap precompose(const RationalMap& phi, const Mobius& g) {
  if (g.det() == 0) fail(ErrorKind::degenerate, "singular matrix");
  const int d = phi.degree();
  auto sub = [&](const std::vector<Rational>& high_first) {
    // sum_i a_i (a z + b)^i (c z + d)^{d-i}
    Poly acc;
    for (int i = 0; i <= d; ++i) {
      const Rational& ai = high_first[static_cast<std::size_t>(d - i)];
      if (ai == 0) continue;
      Poly term{ai};
      for (int k = 0; k < i; ++k) term = multiply(term, {g.b, g.a});
      for (int k = i; k < d; ++k) term = multiply(term, {g.d, g.c});
      if (acc.size() < term.size()) acc.resize(term.size(), Rational(0));
      for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
    }
    return detail::homogeneous_of(acc, d);
  };
  RationalMap out(phi.ctx_, sub(phi.F_), sub(phi.G_));
  out = out.normalized();
  const Mobius inv = g.inverse();
  if (phi.fibers_) {
    auto fib = *phi.fibers_;
    for (auto& f : fib) f.points = detail::moved(f.points, inv);
    out.fibers_ = fib;
  }
  if (phi.factored_)
    out.factored_ = detail::refactored(out, detail::moved(phi.factored_->zeros, inv), detail::moved(phi.factored_->poles, inv));
  return out;
}

/// g o phi; fibers keep their points and move their target values by g.
inline RationalMap postcompose(const Mobius& g, const RationalMap& phi) {
  if (g.det() == 0) fail(ErrorKind::degenerate, "singular matrix");
  std::vector<Rational> F(phi.F_.size()), G(phi.G_.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    F[i] = g.a * phi.F_[i] + g.b * phi.G_[i];
    G[i] = g.c * phi.F_[i] + g.d * phi.G_[i];
  }
  RationalMap out(phi.ctx_, std::move(F), std::move(G));
  out = out.normalized();
  if (phi.fibers_) {
    auto fib = *phi.fibers_;
    for (auto& f : fib) f.value = g(f.value);
    out.fibers_ = fib;
  }
  if (phi.factored_) {
    if (g.b == 0 && g.c == 0)
      out.factored_ = detail::refactored(out, phi.factored_->zeros, phi.factored_->poles);
    else if (g.a == 0 && g.d == 0)
      out.factored_ = detail::refactored(out, phi.factored_->poles, phi.factored_->zeros);
  }
  return out;
}

}  // namespace nalip
