#pragma once

// Piecewise-linear functions of a radius exponent t: lower envelopes of
// finitely many affine functions (tropical polynomials in min-plus form).

#include <algorithm>
#include <optional>
#include <vector>

#include "nalip/valued.hpp"

namespace nalip {

/// t -> at0 + slope * t
struct Affine {
  Rational at0;
  Rational slope;

  Rational operator()(const Rational& t) const { return at0 + slope * t; }

  friend Affine operator-(const Affine& a, const Affine& b) { return {a.at0 - b.at0, a.slope - b.slope}; }
  friend Affine operator+(const Affine& a, const Affine& b) { return {a.at0 + b.at0, a.slope + b.slope}; }
  friend Affine operator*(const Rational& k, const Affine& a) { return {k * a.at0, k * a.slope}; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// A closed range of t; an absent bound is -inf (lo) or +inf (hi).
struct TRange {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool contains(const Rational& t) const { return (!lo || *lo <= t) && (!hi || t <= *hi); }
  bool interior(const Rational& t) const { return (!lo || *lo < t) && (!hi || t < *hi); }

  /// Some point strictly inside; requires lo < hi.
  Rational sample() const {
    if (lo && hi) return (*lo + *hi) / 2;
    if (lo) return *lo + 1;
    if (hi) return *hi - 1;
    return Rational(0);
  }
};

/// min_i (at0_i + slope_i * t); the empty envelope is +inf everywhere.
class MinPlus {
 public:
  void add(const Affine& line) { lines_.push_back(line); }
  bool empty() const noexcept { return lines_.empty(); }
  const std::vector<Affine>& lines() const noexcept { return lines_; }

  Ord eval(const Rational& t) const {
    Ord best = Ord::infinity();
    for (const auto& l : lines_) best = min(best, Ord(l(t)));
    return best;
  }

  /// The affine piece realizing the minimum on a neighbourhood of an interior sample point.
  const Affine& active_at(const Rational& t) const {
    if (lines_.empty()) fail(ErrorKind::domain, "empty envelope has no active piece");
    const Affine* best = &lines_.front();
    for (const auto& l : lines_) {
      const int c = cmp(l(t), (*best)(t));
      if (c < 0 || (c == 0 && l.slope < best->slope)) best = &l;
    }
    return *best;
  }

  /// Kinks of the envelope strictly inside r, ascending.
  std::vector<Rational> breakpoints(const TRange& r) const {
    std::vector<Rational> out;
    if (lines_.size() < 2) return out;
    // Steeper lines are smaller toward -inf; walk the envelope left to right.
    std::vector<Affine> ls;
    {
      auto sorted = lines_;
      std::sort(sorted.begin(), sorted.end(), [](const Affine& a, const Affine& b) {
        return a.slope != b.slope ? a.slope > b.slope : a.at0 < b.at0;
      });
      for (const auto& l : sorted)
        if (ls.empty() || ls.back().slope != l.slope) ls.push_back(l);
    }
    std::size_t cur = 0;
    std::optional<Rational> t = r.lo;
    if (t) {
      for (std::size_t i = 1; i < ls.size(); ++i) {
        const int c = cmp(ls[i](*t), ls[cur](*t));
        if (c < 0 || (c == 0 && ls[i].slope < ls[cur].slope)) cur = i;
      }
    }
    for (;;) {
      std::optional<Rational> next;
      std::size_t next_idx = cur;
      for (std::size_t i = cur + 1; i < ls.size(); ++i) {
        const Rational x = (ls[i].at0 - ls[cur].at0) / (ls[cur].slope - ls[i].slope);
        if (t && x <= *t) continue;
        if (!next || x < *next || (x == *next && ls[i].slope < ls[next_idx].slope)) {
          next = x;
          next_idx = i;
        }
      }
      if (!next || (r.hi && *next >= *r.hi)) break;
      if (r.interior(*next)) out.push_back(*next);
      t = next;
      cur = next_idx;
    }
    return out;
  }

 private:
  std::vector<Affine> lines_;
};

/// Splits r at the given interior points (deduplicated) into consecutive closed cells.
inline std::vector<TRange> cells_of(const TRange& r, std::vector<Rational> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<TRange> out;
  std::optional<Rational> lo = r.lo;
  for (const auto& c : cuts) {
    if (!r.interior(c)) continue;
    out.push_back({lo, c});
    lo = c;
  }
  out.push_back({lo, r.hi});
  return out;
}

}  // namespace nalip
