#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.
// The oracles deliberately avoid the library's own algorithms.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nalip/nalip.hpp"

namespace nalip::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }

/// +-(n/m) p^k with p not dividing n, m; n, m <= height; k in [kmin, kmax].
inline Rational random_rational(const PrimeContext& ctx, Rng& rng, long kmin = -2, long kmax = 2, long height = 12) {
  auto unit = [&] {
    long v;
    do v = uniform(rng, 1, height);
    while (v % static_cast<long>(ctx.p()) == 0);
    return v;
  };
  Rational u(unit(), unit());
  u.canonicalize();
  if (rng() % 2) u = -u;
  return u * p_power(ctx, uniform(rng, kmin, kmax));
}

inline ProjPoint random_point(const PrimeContext& ctx, Rng& rng) {
  if (rng() % 12 == 0) return ProjPoint::infinity();
  if (rng() % 10 == 0) return ProjPoint(0L);
  return ProjPoint(random_rational(ctx, rng));
}

/// An integer matrix with determinant +-1.
inline Mobius random_unimodular(Rng& rng) {
  Mobius g = Mobius::identity();
  for (int i = 0; i < 4; ++i) {
    const long k = uniform(rng, -3, 3);
    Mobius e = rng() % 2 ? Mobius{Rational(1), Rational(k), Rational(0), Rational(1)}
                         : Mobius{Rational(1), Rational(0), Rational(k), Rational(1)};
    g = g.after(e);
  }
  if (rng() % 2) g = g.after(Mobius{Rational(0), Rational(1), Rational(1), Rational(0)});
  return g;
}

/// A factored map of degree in [1, max_degree] with rational zeros and poles.
inline FactoredForm random_factored(const PrimeContext& ctx, Rng& rng, int max_degree) {
  const int d = static_cast<int>(uniform(rng, 1, max_degree));
  std::vector<ProjPoint> used;
  auto fresh = [&] {
    for (;;) {
      ProjPoint z = ProjPoint(random_rational(ctx, rng));
      if (rng() % 8 == 0) z = ProjPoint(0L);
      if (std::find(used.begin(), used.end(), z) == used.end()) {
        used.push_back(z);
        return z;
      }
    }
  };
  // infinity may be a zero or a pole (never both); its multiplicity is implied
  const int where_inf = static_cast<int>(uniform(rng, 0, 2));  // 0 none, 1 among zeros, 2 among poles
  auto side = [&](bool has_inf) {
    std::vector<WeightedPoint> out;
    int left = d - (has_inf ? static_cast<int>(uniform(rng, 1, d)) : 0);
    while (left > 0) {
      const int m = static_cast<int>(uniform(rng, 1, std::min(left, 2)));
      out.push_back({fresh(), m});
      left -= m;
    }
    return out;
  };
  FactoredForm f;
  f.zeros = side(where_inf == 1);
  f.poles = side(where_inf == 2);
  f.C = random_rational(ctx, rng, -2, 2, 7);
  return f;
}

/// The 200-map corpus of the cross-check criteria: primes 2..7, degree <= 5.
inline std::vector<RationalMap> corpus(std::uint64_t seed, int count, int max_degree = 5) {
  Rng rng(seed);
  const unsigned long primes[] = {2, 3, 5, 7};
  std::vector<RationalMap> maps;
  while (static_cast<int>(maps.size()) < count) {
    const PrimeContext ctx(primes[rng() % 4]);
    maps.push_back(RationalMap::from_factored(ctx, random_factored(ctx, rng, max_degree)));
  }
  return maps;
}

// ---------------------------------------------------------------- oracles

/// ||x,y|| from homogeneous coordinates: |x0 y1 - x1 y0| / (max(|x0|,|x1|) max(|y0|,|y1|)).
inline Ord oracle_spherical(const PrimeContext& ctx, const ProjPoint& x, const ProjPoint& y) {
  const Rational x0 = x.is_infinity() ? Rational(1) : x.value(), x1 = x.is_infinity() ? Rational(0) : Rational(1);
  const Rational y0 = y.is_infinity() ? Rational(1) : y.value(), y1 = y.is_infinity() ? Rational(0) : Rational(1);
  const Ord num = ord_p(ctx, Rational(x0 * y1 - x1 * y0));
  return num + Ord(Rational(-min(ord_p(ctx, x0), ord_p(ctx, x1)).value() - min(ord_p(ctx, y0), ord_p(ctx, y1)).value()));
}

/// Taylor coefficients by the binomial expansion sum_j f_j C(j,i) a^{j-i}.
inline Poly oracle_taylor(const Poly& f, const Rational& a) {
  Poly out(f.size(), Rational(0));
  for (std::size_t j = 0; j < f.size(); ++j) {
    Integer binom = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      Rational apow(1);
      for (std::size_t k = 0; k < j - i; ++k) apow *= a;
      out[i] += f[j] * Rational(binom) * apow;
      binom = binom * Integer(static_cast<unsigned long>(j - i)) / Integer(static_cast<unsigned long>(i + 1));
    }
  }
  return out;
}

/// Determinant by plain Gaussian elimination over Q.
inline Rational oracle_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

inline std::vector<std::vector<Rational>> sylvester_matrix(const std::vector<Rational>& F, const std::vector<Rational>& G) {
  const std::size_t d = F.size() - 1;
  std::vector<std::vector<Rational>> m(2 * d, std::vector<Rational>(2 * d, Rational(0)));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= d; ++k) {
      m[r][r + k] = F[k];
      m[d + r][r + k] = G[k];
    }
  return m;
}

/// A disc as (center, t); the classical points z with ord(z - c) >= t.
struct OracleDisc {
  Rational c;
  Rational t;
};

inline bool same_disc(const PrimeContext& ctx, const OracleDisc& a, const OracleDisc& b) {
  return a.t == b.t && ord_p(ctx, Rational(a.c - b.c)) >= Ord(a.t);
}

/// Image of zeta_{a,t} (t integral) estimated from classical points: images of
/// 200 points z = a + p^t u, the smallest disc containing each pair of images,
/// and the most frequent such disc.
inline std::optional<OracleDisc> oracle_pushforward(const RationalMap& map, const Rational& a, long t, Rng& rng,
                                                    int samples = 200) {
  const auto& ctx = map.context();
  const Rational step = p_power(ctx, t);
  std::vector<Rational> images;
  while (static_cast<int>(images.size()) < samples) {
    Rational u(uniform(rng, 0, 40 * static_cast<long>(ctx.p())), uniform(rng, 1, 6) * static_cast<long>(ctx.p()) + 1);
    u.canonicalize();
    const ProjPoint w = map(ProjPoint(Rational(a + step * u)));
    if (!w.is_infinity()) images.push_back(w.value());
  }
  std::vector<std::pair<OracleDisc, int>> tally;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const Ord o = ord_p(ctx, Rational(images[i] - images[j]));
      if (o.is_infinite()) continue;
      const OracleDisc disc{images[i], o.value()};
      auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& e) { return same_disc(ctx, e.first, disc); });
      if (it == tally.end())
        tally.emplace_back(disc, 1);
      else
        ++it->second;
    }
  if (tally.empty()) return std::nullopt;
  return std::max_element(tally.begin(), tally.end(), [](const auto& x, const auto& y) { return x.second < y.second; })
      ->first;
}

/// ord diam_G(zeta_{a,r}) straight from r / max(1,|a|,r)^2.
inline Rational oracle_diam_G(const PrimeContext& ctx, const Rational& a, const Rational& t) {
  Rational big = 0;  // ord of max(1,|a|,r)
  const Ord oa = ord_p(ctx, a);
  if (oa.is_finite() && oa.value() < big) big = oa.value();
  if (t < big) big = t;
  return t - 2 * big;
}

}  // namespace nalip::testing
