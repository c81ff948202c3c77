#pragma once

// JSON encoding of every value type and report, and the map file format.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nalip/lipschitz.hpp"

namespace nalip {

using Json = nlohmann::ordered_json;

namespace io {

inline Json encode(const Rational& q) { return q.get_str(); }
inline Json encode(const Ord& t) { return t.to_string(); }
inline Json encode(const ProjPoint& z) { return z.to_string(); }

inline Rational decode_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(ErrorKind::parse, "expected a rational, got " + j.dump());
}

inline Ord decode_ord(const Json& j) {
  if (j.is_string()) return parse_ord(j.get<std::string>());
  return Ord(decode_rational(j));
}

inline ProjPoint decode_point(const Json& j) {
  if (j.is_string()) return parse_proj_point(j.get<std::string>());
  return ProjPoint(decode_rational(j));
}

inline Json encode(const PPowerSum& s) {
  Json arr = Json::array();
  for (const auto& t : s.terms()) arr.push_back({{"coef", encode(t.coef)}, {"exp", encode(t.exp)}});
  return arr;
}

inline PPowerSum decode_ppow(const PrimeContext& ctx, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::parse, "expected a term list");
  std::vector<PowerTerm> raw;
  for (const auto& t : j) raw.push_back({decode_rational(t.at("coef")), decode_rational(t.at("exp"))});
  return PPowerSum::normalize(ctx, raw);
}

/// A value with a rendering to 12 significant digits for display only.
inline Json encode_value(const PPowerSum& s) { return {{"terms", encode(s)}, {"decimal", s.decimal(12)}}; }

inline PPowerSum decode_value(const PrimeContext& ctx, const Json& j) { return decode_ppow(ctx, j.at("terms")); }

/// ord t rendered as p^(-t).
inline Json encode_ord_entry(const PrimeContext& ctx, const Ord& t) {
  const std::string shown = t.is_infinite() ? "0" : std::to_string(ctx.p()) + "^(" + Rational(-t.value()).get_str() + ")";
  return {{"ord", encode(t)}, {"value", shown}};
}

inline Json encode(const BerkPoint& x) {
  if (x.is_type_i()) return {{"type", "I"}, {"pt", encode(x.point())}};
  return {{"type", "II"}, {"center", encode(x.center())}, {"radius_ord", encode(x.radius_ord())}};
}

inline BerkPoint decode_berk(const PrimeContext& ctx, const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "I") return BerkPoint::type_i(decode_point(j.at("pt")));
  if (type == "II") return BerkPoint::type_ii(ctx, decode_rational(j.at("center")), decode_rational(j.at("radius_ord")));
  fail(ErrorKind::parse, "unknown point type " + type);
}

inline Json encode(const std::vector<WeightedPoint>& pts) {
  Json arr = Json::array();
  for (const auto& w : pts) arr.push_back(Json::array({encode(w.point), w.mult}));
  return arr;
}

inline std::vector<WeightedPoint> decode_weighted(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::parse, "expected a list of [point, multiplicity]");
  std::vector<WeightedPoint> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_number_integer())
      fail(ErrorKind::parse, "expected [point, multiplicity], got " + e.dump());
    out.push_back({decode_point(e[0]), e[1].get<int>()});
  }
  return out;
}

inline Json encode(const RationalMap& m) {
  Json j = {{"p", m.context().p()}};
  Json F = Json::array(), G = Json::array();
  for (const auto& c : m.F()) F.push_back(encode(c));
  for (const auto& c : m.G()) G.push_back(encode(c));
  j["coeffs"] = {{"F", F}, {"G", G}};
  if (m.factored())
    j["factored"] = {{"C", encode(m.factored()->C)}, {"zeros", encode(m.factored()->zeros)}, {"poles", encode(m.factored()->poles)}};
  return j;
}

/// Map file: {"p": N, "coeffs": {"F": [...], "G": [...]}} or {"p": N, "factored": {...}}.
/// When both are present they must describe the same map; the coefficients are kept as given.
inline RationalMap decode_map(const Json& j, std::optional<unsigned long> p_override = std::nullopt) {
  if (!j.is_object()) fail(ErrorKind::parse, "map file must be a JSON object");
  std::optional<unsigned long> p;
  if (j.contains("p")) {
    if (!j["p"].is_number_unsigned()) fail(ErrorKind::parse, "\"p\" must be a positive integer");
    p = j["p"].get<unsigned long>();
  }
  if (p && p_override && *p != *p_override)
    fail(ErrorKind::parse, "--p " + std::to_string(*p_override) + " does not match p = " + std::to_string(*p) + " in the input");
  if (!p) p = p_override;
  if (!p) fail(ErrorKind::parse, "no prime given (file has no \"p\" and no --p)");
  const PrimeContext ctx(*p);
  auto coeffs = [&](const Json& arr) {
    if (!arr.is_array()) fail(ErrorKind::parse, "coefficient list must be an array");
    std::vector<Rational> v;
    for (const auto& c : arr) v.push_back(decode_rational(c));
    return v;
  };
  if (j.contains("factored")) {
    const Json& f = j["factored"];
    FactoredForm ff{decode_rational(f.at("C")), decode_weighted(f.at("zeros")), decode_weighted(f.at("poles"))};
    RationalMap m = RationalMap::from_factored(ctx, ff);
    if (j.contains("coeffs")) {
      const RationalMap c =
          RationalMap::from_coefficients(ctx, coeffs(j["coeffs"].at("F")), coeffs(j["coeffs"].at("G")));
      // proportional coefficient vectors: v_i w_k = v_k w_i
      std::vector<Rational> v = c.F(), w = m.F();
      v.insert(v.end(), c.G().begin(), c.G().end());
      w.insert(w.end(), m.G().begin(), m.G().end());
      bool same = v.size() == w.size();
      for (std::size_t i = 0; same && i < v.size(); ++i)
        for (std::size_t k = i + 1; same && k < v.size(); ++k) same = v[i] * w[k] == v[k] * w[i];
      if (!same) fail(ErrorKind::parse, "coeffs and factored form describe different maps");
      return c.with_fibers(m.fibers(), m.factored());
    }
    return m;
  }
  if (j.contains("coeffs")) return RationalMap::from_coefficients(ctx, coeffs(j["coeffs"].at("F")), coeffs(j["coeffs"].at("G")));
  fail(ErrorKind::parse, "map file needs \"coeffs\" or \"factored\"");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
}

inline RationalMap load_map(const std::string& path, std::optional<unsigned long> p_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return decode_map(parse_json_text(ss.str()), p_override);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("malformed map file: ") + e.what());
  }
}

template <class T, class F>
Json optional_json(const std::optional<T>& v, F&& f) {
  return v ? Json(f(*v)) : Json(nullptr);
}

inline Json encode(const PrimeContext& ctx, const InvariantBundle& b) {
  auto entry = [&](const Ord& t) { return encode_ord_entry(ctx, t); };
  return {{"p", ctx.p()},
          {"gir", entry(b.gir)},
          {"rp", optional_json(b.rp, entry)},
          {"gpr", optional_json(b.gpr, entry)},
          {"gpr_argmin", optional_json(b.gpr_argmin, [](const BerkPoint& x) { return encode(x); })},
          {"res", entry(b.res)},
          {"b0_lower", optional_json(b.b0_lower, entry)},
          {"diagnostics", b.diagnostics}};
}

inline InvariantBundle decode_bundle(const PrimeContext& ctx, const Json& j) {
  auto ord = [&](const char* key) -> std::optional<Ord> {
    if (j.at(key).is_null()) return std::nullopt;
    return decode_ord(j.at(key).at("ord"));
  };
  InvariantBundle b;
  b.gir = *ord("gir");
  b.rp = ord("rp");
  b.gpr = ord("gpr");
  if (!j.at("gpr_argmin").is_null()) b.gpr_argmin = decode_berk(ctx, j.at("gpr_argmin"));
  b.res = *ord("res");
  b.b0_lower = ord("b0_lower");
  b.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return b;
}

inline Json encode(const Thm2Bound& t) {
  return {{"source", t.source == B0Source::rp_lower ? "rp-lower" : "user"},
          {"first", encode_value(t.first)},
          {"second", encode_value(t.second)},
          {"bound", encode_value(t.bound)},
          {"coarse", optional_json(t.coarse, [](const PPowerSum& s) { return encode_value(s); })}};
}

inline Thm2Bound decode_thm2(const PrimeContext& ctx, const Json& j) {
  const std::string src = j.at("source").get<std::string>();
  if (src != "rp-lower" && src != "user") fail(ErrorKind::parse, "unknown B0 source " + src);
  Thm2Bound t{decode_value(ctx, j.at("first")), decode_value(ctx, j.at("second")), decode_value(ctx, j.at("bound")),
              std::nullopt, src == "user" ? B0Source::user : B0Source::rp_lower};
  if (!j.at("coarse").is_null()) t.coarse = decode_value(ctx, j.at("coarse"));
  return t;
}

inline Json encode(const PointPair& pr) { return Json::array({encode(pr.first), encode(pr.second)}); }

inline PointPair decode_pair(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::parse, "expected a pair of points");
  return {decode_point(j[0]), decode_point(j[1])};
}

inline Json encode(const PrimeContext& ctx, const BoundReport& r) {
  auto val = [](const PPowerSum& s) { return encode_value(s); };
  return {{"p", ctx.p()},
          {"note", "decimal fields are display only"},
          {"lip_classical", optional_json(r.lip_classical, val)},
          {"thm1_classical", val(r.thm1.classical)},
          {"thm1_berk", val(r.thm1.berk)},
          {"thm1_berk_terms", {{"linear", val(r.thm1.berk_linear)}, {"power", val(r.thm1.berk_power)}}},
          {"thm2_with_rp", optional_json(r.thm2_with_rp, [](const Thm2Bound& t) { return encode(t); })},
          {"thm2_with_b0", optional_json(r.thm2_with_b0, [](const Thm2Bound& t) { return encode(t); })},
          {"mobius_exact", optional_json(r.mobius_exact, val)},
          {"sampled_max_ratio", optional_json(r.sampled_max_ratio, val)},
          {"witness", optional_json(r.witness, [](const PointPair& pr) { return encode(pr); })},
          {"diagnostics", r.diagnostics}};
}

inline BoundReport decode_report(const PrimeContext& ctx, const Json& j) {
  auto val = [&](const Json& v) -> std::optional<PPowerSum> {
    if (v.is_null()) return std::nullopt;
    return decode_value(ctx, v);
  };
  BoundReport r{val(j.at("lip_classical")),
                {*val(j.at("thm1_classical")), *val(j.at("thm1_berk")), *val(j.at("thm1_berk_terms").at("linear")),
                 *val(j.at("thm1_berk_terms").at("power"))},
                std::nullopt,
                std::nullopt,
                val(j.at("mobius_exact")),
                val(j.at("sampled_max_ratio")),
                std::nullopt,
                j.at("diagnostics").get<std::vector<std::string>>()};
  if (!j.at("thm2_with_rp").is_null()) r.thm2_with_rp = decode_thm2(ctx, j.at("thm2_with_rp"));
  if (!j.at("thm2_with_b0").is_null()) r.thm2_with_b0 = decode_thm2(ctx, j.at("thm2_with_b0"));
  if (!j.at("witness").is_null()) r.witness = decode_pair(j.at("witness"));
  return r;
}

inline Json encode(const RadialProfile& pr) {
  Json segs = Json::array();
  for (const auto& s : pr.segments)
    segs.push_back({{"t_lo", encode(s.t_lo)},
                    {"t_hi", s.t_hi ? encode(*s.t_hi) : Json("inf")},
                    {"coeff_ord", encode(s.coeff_ord)},
                    {"k", s.k}});
  return {{"center", encode(pr.center)},
          {"kind", pr.kind == ProfileKind::diam_G ? "diam_G" : "diam_infty"},
          {"segments", segs}};
}

inline RadialProfile decode_profile(const Json& j) {
  RadialProfile pr;
  pr.center = decode_rational(j.at("center"));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "diam_G" && kind != "diam_infty") fail(ErrorKind::parse, "unknown profile kind " + kind);
  pr.kind = kind == "diam_G" ? ProfileKind::diam_G : ProfileKind::diam_infty;
  for (const auto& s : j.at("segments")) {
    ProfileSegment seg{decode_rational(s.at("t_lo")), std::nullopt, decode_rational(s.at("coeff_ord")), s.at("k").get<long>()};
    if (s.at("t_hi") != "inf") seg.t_hi = decode_rational(s.at("t_hi"));
    pr.segments.push_back(seg);
  }
  return pr;
}

inline Json encode(const SampleResult& s) {
  return {{"pairs", s.pairs},
          {"max_ratio", encode_value(s.max_ratio)},
          {"argmax", optional_json(s.argmax, [](const PointPair& pr) { return encode(pr); })}};
}

}  // namespace io
}  // namespace nalip
