#pragma once

#include <cstddef>
#include <vector>

#include "nalip/valued.hpp"

namespace nalip {

/// Dense univariate polynomial over Q; entry i is the coefficient of z^i.
using Poly = std::vector<Rational>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// -1 for the zero polynomial.
inline int degree(const Poly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

inline Rational evaluate(const Poly& f, const Rational& z) {
  Rational acc(0);
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * z + f[i];
  return acc;
}

inline Poly multiply(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly h(f.size() + g.size() - 1, Rational(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
  trim(h);
  return h;
}

/// f - w*g
inline Poly subtract_scaled(const Poly& f, const Rational& w, const Poly& g) {
  Poly h(std::max(f.size(), g.size()), Rational(0));
  for (std::size_t i = 0; i < f.size(); ++i) h[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) h[i] -= w * g[i];
  return h;
}

/// Coefficients of f(u + a) in powers of u, i.e. the Taylor coefficients of f at a.
inline Poly taylor_shift(Poly f, const Rational& a) {
  const std::size_t n = f.size();
  if (a == 0 || n < 2) return f;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) f[j] += a * f[j + 1];
  return f;
}

}  // namespace nalip
