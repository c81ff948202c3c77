#pragma once

// Exact arithmetic relative to a fixed prime p: p-adic valuations, the
// log-domain Ord type, and finite sums of rational powers of p.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nalip/error.hpp"

namespace nalip {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "n" or "n/d" (optional sign, decimal digits). Throws ErrorKind::parse.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { fail(ErrorKind::parse, "malformed rational \"" + std::string(text) + "\""); };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// The fixed prime p; absolute values are |x| = p^{-ord_p(x)}.
class PrimeContext {
 public:
  explicit PrimeContext(unsigned long p) : p_(p) {
    if (!is_prime(p)) fail(ErrorKind::domain, "p = " + std::to_string(p) + " is not prime");
  }

  unsigned long p() const noexcept { return p_; }
  Integer prime() const { return Integer(p_); }

  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

 private:
  unsigned long p_;
};

/// p^k for an integer k.
inline Rational p_power(const PrimeContext& ctx, long k) {
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), ctx.p(), static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? Rational(Integer(1), m) : Rational(m);
}

inline long checked_long(const Rational& q, const char* what) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    fail(ErrorKind::domain, std::string(what) + " must be a machine-sized integer, got " + q.get_str());
  return q.get_num().get_si();
}

/// A valuation exponent t in Q ∪ {+inf}; t encodes the absolute value p^{-t}.
class Ord {
 public:
  Ord() = default;  // +inf
  Ord(Rational t) : value_(std::move(t)) {}  // NOLINT(google-explicit-constructor)
  Ord(long t) : value_(Rational(t)) {}       // NOLINT(google-explicit-constructor)

  static Ord infinity() { return Ord(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  const Rational& value() const {
    if (!value_) fail(ErrorKind::domain, "Ord is +inf");
    return *value_;
  }

  std::string to_string() const { return value_ ? value_->get_str() : "inf"; }

  friend Ord operator+(const Ord& a, const Ord& b) {
    if (a.is_infinite() || b.is_infinite()) return Ord();
    return Ord(Rational(*a.value_ + *b.value_));
  }
  friend Ord operator*(const Rational& k, const Ord& a) {
    if (a.is_infinite()) {
      if (k < 0) fail(ErrorKind::domain, "negative multiple of +inf");
      if (k == 0) return Ord(0L);
      return Ord();
    }
    return Ord(Rational(k * *a.value_));
  }

  friend bool operator==(const Ord& a, const Ord& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return *a.value_ == *b.value_;
  }
  friend std::strong_ordering operator<=>(const Ord& a, const Ord& b) {
    if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    const int c = cmp(*a.value_, *b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::optional<Rational> value_;
};

inline Ord min(const Ord& a, const Ord& b) { return a <= b ? a : b; }
inline Ord max(const Ord& a, const Ord& b) { return a >= b ? a : b; }

inline Ord parse_ord(std::string_view text) {
  if (text == "inf") return Ord::infinity();
  return Ord(parse_rational(text));
}

/// ord_p of a nonzero integer.
inline long ord_p(const PrimeContext& ctx, const Integer& n) {
  if (n == 0) fail(ErrorKind::domain, "ord_p of integer zero");
  if (!mpz_divisible_ui_p(n.get_mpz_t(), ctx.p())) return 0;
  Integer rest;
  const Integer p = ctx.prime();
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline Ord ord_p(const PrimeContext& ctx, const Rational& x) {
  if (x == 0) return Ord::infinity();
  return Ord(ord_p(ctx, x.get_num()) - ord_p(ctx, x.get_den()));
}

/// x with every factor of p removed, so that x = unit_part(x) * p^{ord_p(x)}.
inline Rational unit_part(const PrimeContext& ctx, const Rational& x) {
  if (x == 0) return x;
  return x / p_power(ctx, checked_long(ord_p(ctx, x).value(), "valuation"));
}

struct PowerTerm {
  Rational coef;
  Rational exp;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

namespace detail {

// Canonical form of a signed sum: one term per class of exponents mod 1,
// p-unit coefficients, exponents descending. Value zero <=> empty.
inline std::vector<PowerTerm> canonical_terms(const PrimeContext& ctx, const std::vector<PowerTerm>& raw) {
  std::map<Rational, Rational> by_class;  // fractional part -> sum of c * p^{floor}
  for (const auto& t : raw) {
    if (t.coef == 0) continue;
    const Rational fl = floor_of(t.exp);
    Rational frac = t.exp - fl;
    by_class[frac] += t.coef * p_power(ctx, checked_long(fl, "exponent floor"));
  }
  std::vector<PowerTerm> out;
  for (auto& [frac, c] : by_class) {
    if (c == 0) continue;
    const Rational v = ord_p(ctx, c).value();
    out.push_back({unit_part(ctx, c), frac + v});
  }
  std::sort(out.begin(), out.end(), [](const PowerTerm& a, const PowerTerm& b) { return a.exp > b.exp; });
  return out;
}

inline Rational pow_q(const Rational& x, unsigned long k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
  return r;
}

// Exact sign of a canonical signed sum. Powers of p with exponents in
// (1/m)Z are evaluated on a rational enclosure [lo, hi] of p^{1/m} that is
// bisected until the interval value excludes zero. A nonzero canonical sum
// has nonzero value, so the loop terminates.
inline int sign_of(const PrimeContext& ctx, const std::vector<PowerTerm>& terms) {
  if (terms.empty()) return 0;
  if (terms.size() == 1) return sgn(terms.front().coef);
  Integer m = 1;
  for (const auto& t : terms) m = lcm_of(m, t.exp.get_den());
  if (!m.fits_ulong_p()) fail(ErrorKind::domain, "exponent denominators too large");
  const unsigned long mm = m.get_ui();
  Rational kmin = terms.back().exp * Rational(m);
  std::vector<std::pair<Rational, unsigned long>> poly;  // coefficient, power of p^{1/m}
  for (const auto& t : terms) {
    const Rational k = t.exp * Rational(m) - kmin;
    poly.emplace_back(t.coef, static_cast<unsigned long>(checked_long(k, "scaled exponent")));
  }
  const Rational p(ctx.prime());
  Rational lo(1), hi(p);
  // Tighten the starting bracket from a floating estimate when it verifies.
  {
    const double est = std::pow(static_cast<double>(ctx.p()), 1.0 / static_cast<double>(mm));
    Rational l(est * (1.0 - 1e-12)), h(est * (1.0 + 1e-12));
    if (l > 1 && pow_q(l, mm) < p && pow_q(h, mm) > p) {
      lo = l;
      hi = h;
    }
  }
  for (int iter = 0; iter < 100000; ++iter) {
    Rational low_val(0), high_val(0);
    for (const auto& [c, k] : poly) {
      const Rational a = pow_q(lo, k), b = pow_q(hi, k);
      if (c > 0) {
        low_val += c * a;
        high_val += c * b;
      } else {
        low_val += c * b;
        high_val += c * a;
      }
    }
    if (low_val > 0) return 1;
    if (high_val < 0) return -1;
    Rational mid = (lo + hi) / 2;
    if (pow_q(mid, mm) < p)
      lo = mid;
    else
      hi = mid;
  }
  fail(ErrorKind::internal, "sign refinement did not terminate");
}

}  // namespace detail

/// A nonnegative real sum_i c_i p^{e_i} with c_i, e_i rational, kept in a
/// canonical form so that equal values have identical term lists.
class PPowerSum {
 public:
  explicit PPowerSum(const PrimeContext& ctx) : p_(ctx.p()) {}

  static PPowerSum zero(const PrimeContext& ctx) { return PPowerSum(ctx); }
  static PPowerSum power(const PrimeContext& ctx, const Rational& exp, const Rational& coef = 1) {
    return normalize(ctx, {{coef, exp}});
  }

  /// Merges, cancels and sorts; fails with "non-positive term" if the value is negative.
  static PPowerSum normalize(const PrimeContext& ctx, const std::vector<PowerTerm>& raw) {
    PPowerSum s(ctx);
    s.terms_ = detail::canonical_terms(ctx, raw);
    if (detail::sign_of(ctx, s.terms_) < 0) fail(ErrorKind::domain, "non-positive term");
    return s;
  }

  PrimeContext context() const { return PrimeContext(p_); }
  unsigned long p() const noexcept { return p_; }
  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  PPowerSum operator+(const PPowerSum& o) const {
    check_same(o);
    auto raw = terms_;
    raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
    return normalize(context(), raw);
  }
  PPowerSum scaled(const Rational& k) const {
    if (k < 0) fail(ErrorKind::domain, "non-positive term");
    auto raw = terms_;
    for (auto& t : raw) t.coef *= k;
    return normalize(context(), raw);
  }
  PPowerSum times_power(const Rational& e) const {
    auto raw = terms_;
    for (auto& t : raw) t.exp += e;
    return normalize(context(), raw);
  }

  /// Floating rendering for display only.
  long double approx() const {
    long double v = 0;
    for (const auto& t : terms_)
      v += static_cast<long double>(t.coef.get_d()) *
           std::pow(static_cast<long double>(p_), static_cast<long double>(t.exp.get_d()));
    return v;
  }
  std::string decimal(int significant = 12) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", significant, approx());
    return buf;
  }

  /// e.g. "2*3^(-1) + 3^(1/2)"; "0" for the empty sum.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += t.coef < 0 ? " - " : " + ";
      else if (t.coef < 0) out += "-";
      const Rational c = abs(t.coef);
      if (c != 1) out += c.get_str() + "*";
      out += std::to_string(p_) + "^(" + t.exp.get_str() + ")";
    }
    return out;
  }

  friend bool operator==(const PPowerSum&, const PPowerSum&) = default;

 private:
  void check_same(const PPowerSum& o) const {
    if (o.p_ != p_) fail(ErrorKind::domain, "PPowerSum primes differ");
  }

  unsigned long p_;
  std::vector<PowerTerm> terms_;
};

/// Exact comparison of the represented real values.
inline std::strong_ordering ppow_compare(const PPowerSum& a, const PPowerSum& b) {
  if (a.p() != b.p()) fail(ErrorKind::domain, "PPowerSum primes differ");
  if (a == b) return std::strong_ordering::equal;
  const PrimeContext ctx(a.p());
  auto raw = a.terms();
  for (const auto& t : b.terms()) raw.push_back({-t.coef, t.exp});
  const int s = detail::sign_of(ctx, detail::canonical_terms(ctx, raw));
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline const PPowerSum& max_of(const PPowerSum& a, const PPowerSum& b) {
  return ppow_compare(a, b) == std::strong_ordering::less ? b : a;
}

}  // namespace nalip
