#pragma once

// Command dispatch for the nalip tool: each command loads one map file and
// writes a JSON document (or a flattened table of it) to the output stream.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nalip/io.hpp"

namespace nalip {

struct RunConfig {
  std::string command;  // invariants | bounds | profile | sample | verify
  std::string input;
  std::optional<unsigned long> p;
  std::uint64_t seed = 1;
  long n = 1000;
  Rational center{0};
  Rational t_min{0};
  std::optional<Rational> b0_ord;
  std::string format = "json";  // json | table
};

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 1,
  exit_degenerate = 2,
  exit_factored_required = 3,
  exit_verify_failed = 4,
  exit_internal = 5,
};

namespace cli {

struct Property {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::string detail;
};

inline bool leq(const PPowerSum& a, const PPowerSum& b) { return ppow_compare(a, b) != std::strong_ordering::greater; }

// Runs one check; an exception counts as a failure carrying its message.
template <class F>
Property property(const std::string& name, F&& body) {
  try {
    std::string detail;
    const std::optional<bool> ok = body(detail);
    if (!ok) return {name, "skipped", detail};
    return {name, *ok ? "pass" : "fail", detail};
  } catch (const Error& e) {
    return {name, "fail", e.what()};
  }
}

inline std::vector<Mobius> unimodular_samples(const PrimeContext& ctx) {
  const Rational p(ctx.prime());
  auto m = [](long a, long b, long c, long d) { return Mobius{Rational(a), Rational(b), Rational(c), Rational(d)}; };
  return {m(1, 1, 0, 1), m(0, 1, 1, 0), m(2, 1, 1, 1), Mobius{Rational(1), Rational(0), p, Rational(1)}, m(1, -3, 1, -2)};
}

inline std::vector<Property> verify_map(const RationalMap& map, const RunConfig& cfg) {
  const auto& ctx = map.context();
  std::vector<Property> props;
  std::optional<InvariantBundle> inv;
  props.push_back(property("invariant_chain", [&](std::string& d) -> std::optional<bool> {
    inv = bundle(map);
    d = "|Res| <= GPR <= RP <= 1 and GIR >= |Res|^(1/d)";
    return true;
  }));
  props.push_back(property("resultant_sylvester_vs_product", [&](std::string& d) -> std::optional<bool> {
    if (!map.factored()) {
      d = "no factored form";
      return std::nullopt;
    }
    const Ord a = resultant_ord(map), b = resultant_ord_product(map);
    d = a.to_string() + " vs " + b.to_string();
    return a == b;
  }));
  props.push_back(property("gir_minors_vs_pushforward", [&](std::string& d) -> std::optional<bool> {
    const Ord a = gir_minors(map), b = diam_G(ctx, push_forward(map, BerkPoint::gauss(ctx)));
    d = a.to_string() + " vs " + b.to_string();
    return a == b;
  }));
  props.push_back(property("gpr_argmin_maps_to_gauss", [&](std::string& d) -> std::optional<bool> {
    if (!inv || !inv->gpr_argmin) {
      d = "gpr absent";
      return std::nullopt;
    }
    d = inv->gpr_argmin->to_string();
    return push_forward(map, *inv->gpr_argmin) == BerkPoint::gauss(ctx);
  }));
  props.push_back(property("pushforward_chart_routes_agree", [&](std::string& d) -> std::optional<bool> {
    std::vector<BerkPoint> xs;
    for (long t = -2; t <= 3; ++t)
      for (const Rational& a : {Rational(0), Rational(1), Rational(1, ctx.p()), Rational(ctx.prime())})
        xs.push_back(BerkPoint::type_ii(ctx, a, Rational(t)));
    for (const auto& x : xs)
      if (!(push_forward(map, x) == push_forward_direct(map, x))) {
        d = "differ at " + x.to_string();
        return false;
      }
    d = std::to_string(xs.size()) + " points";
    return true;
  }));
  props.push_back(property("unimodular_invariance", [&](std::string& d) -> std::optional<bool> {
    for (const auto& g : unimodular_samples(ctx))
      for (const auto& m : {precompose(map, g), postcompose(g, map)}) {
        if (gir_minors(m) != gir_minors(map) || resultant_ord(m) != resultant_ord(map)) return false;
        if (map.fibers() && m.fibers() && gpr(m).gpr != gpr(map).gpr) return false;
      }
    d = "gir, res, gpr under pre/post-composition";
    return true;
  }));
  std::optional<BoundReport> rep;
  props.push_back(property("sampled_le_lip_le_thm1", [&](std::string& d) -> std::optional<bool> {
    rep = bound_report(map, {cfg.b0_ord, cfg.n, cfg.seed});
    if (!rep->lip_classical) {
      d = "lip absent; sampled <= 1/|Res| checked";
      return leq(*rep->sampled_max_ratio, rep->thm1.classical);
    }
    d = rep->sampled_max_ratio->to_string() + " <= " + rep->lip_classical->to_string() + " <= " +
        rep->thm1.classical.to_string();
    return leq(*rep->sampled_max_ratio, *rep->lip_classical) && leq(*rep->lip_classical, rep->thm1.classical);
  }));
  props.push_back(property("witness_attains_lip", [&](std::string& d) -> std::optional<bool> {
    if (!rep || !rep->witness) {
      d = "no witness";
      return std::nullopt;
    }
    d = rep->witness->first.to_string() + ", " + rep->witness->second.to_string();
    return *rep->sampled_max_ratio == *rep->lip_classical;
  }));
  props.push_back(property("segment_lip_le_bounds", [&](std::string& d) -> std::optional<bool> {
    if (!rep || !inv) return false;
    std::vector<Rational> centers{Rational(0), Rational(1), Rational(-1)};
    if (map.fibers())
      for (const auto& f : *map.fibers())
        for (const auto& w : f.points)
          if (!w.point.is_infinity() && ord_p(ctx, w.point.value()) >= Ord(0L)) centers.push_back(w.point.value());
    for (const auto& c : centers) {
      const PPowerSum s = segment_lip(ctx, radial_profile(map, c, Rational(0)));
      if (!leq(s, rep->thm1.berk)) {
        d = "center " + c.get_str() + ": " + s.to_string() + " > " + rep->thm1.berk.to_string();
        return false;
      }
      if (rep->thm2_with_rp && !leq(s, rep->thm2_with_rp->bound)) {
        d = "center " + c.get_str() + ": " + s.to_string() + " > " + rep->thm2_with_rp->bound.to_string();
        return false;
      }
    }
    d = std::to_string(centers.size()) + " centers";
    return true;
  }));
  props.push_back(property("mobius_values_agree", [&](std::string& d) -> std::optional<bool> {
    if (map.degree() != 1) {
      d = "degree " + std::to_string(map.degree());
      return std::nullopt;
    }
    d = mobius_exact(map).to_string();
    return true;
  }));
  props.push_back(property("json_round_trip", [&](std::string& d) -> std::optional<bool> {
    if (!inv || !rep) return false;
    const Json jb = io::encode(ctx, *inv), jr = io::encode(ctx, *rep), jm = io::encode(map);
    const bool ok = io::encode(ctx, io::decode_bundle(ctx, Json::parse(jb.dump()))) == jb &&
                    io::encode(ctx, io::decode_report(ctx, Json::parse(jr.dump()))) == jr &&
                    io::encode(io::decode_map(Json::parse(jm.dump()))) == jm;
    d = "bundle, bound report, map";
    return ok;
  }));
  return props;
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    if (j.contains("terms") && j.contains("decimal")) {
      rows.emplace_back(prefix, j["decimal"].get<std::string>());
      return;
    }
    if (j.contains("ord") && j.contains("value")) {
      rows.emplace_back(prefix, j["value"].get<std::string>() + "  (ord " + j["ord"].get<std::string>() + ")");
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "table") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows) out << k << std::string(w + 2 - k.size(), ' ') << v << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

inline int exit_code_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::domain: return exit_parse;
    case ErrorKind::degenerate: return exit_degenerate;
    case ErrorKind::factored_required: return exit_factored_required;
    case ErrorKind::internal: return exit_internal;
  }
  return exit_internal;
}

}  // namespace cli

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "table") fail(ErrorKind::parse, "unknown format " + cfg.format);
    const RationalMap map = io::load_map(cfg.input, cfg.p);
    const auto& ctx = map.context();
    Json doc;
    int code = exit_ok;
    if (cfg.command == "invariants") {
      doc = io::encode(ctx, bundle(map));
    } else if (cfg.command == "bounds") {
      doc = io::encode(ctx, bound_report(map, {cfg.b0_ord, cfg.n, cfg.seed}));
    } else if (cfg.command == "profile") {
      const RadialProfile g = radial_profile(map, cfg.center, cfg.t_min, ProfileKind::diam_G);
      const RadialProfile f = radial_profile(map, cfg.center, cfg.t_min, ProfileKind::diam_infty);
      doc = {{"p", ctx.p()},
             {"diam_G", io::encode(g)},
             {"diam_infty", io::encode(f)},
             {"segment_lip", io::encode_value(segment_lip(ctx, g))}};
    } else if (cfg.command == "sample") {
      if (!map.fibers()) fail(ErrorKind::factored_required, "factored form required: sample compares against 1/GPR");
      std::vector<PointPair> extra;
      Json witness;
      const GprResult g = gpr(map);
      const PPowerSum lip = lip_classical(ctx, g.gpr);
      const WitnessResult w = gpr_witness(map, g.argmin);
      if (w.pair) {
        extra.push_back(*w.pair);
        witness = io::encode(*w.pair);
      } else {
        witness = w.diagnostic;
      }
      const SampleResult s = sample_ratios(map, cfg.n, cfg.seed, extra);
      if (!cli::leq(s.max_ratio, lip)) fail(ErrorKind::internal, "sampled ratio exceeds 1/GPR");
      doc = {{"p", ctx.p()}, {"n", cfg.n}, {"seed", cfg.seed}, {"sample", io::encode(s)},
             {"lip_classical", io::encode_value(lip)}, {"witness", witness}};
    } else if (cfg.command == "verify") {
      Json props = Json::array();
      bool all = true;
      for (const auto& pr : cli::verify_map(map, cfg)) {
        props.push_back({{"name", pr.name}, {"status", pr.status}, {"detail", pr.detail}});
        all = all && pr.status != "fail";
      }
      doc = {{"p", ctx.p()}, {"all_pass", all}, {"properties", props}};
      if (!all) code = exit_verify_failed;
    } else {
      fail(ErrorKind::parse, "unknown command " + cfg.command);
    }
    cli::emit(doc, cfg.format, out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return cli::exit_code_of(e.kind());
  }
}

}  // namespace nalip
