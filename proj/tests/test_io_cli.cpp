#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nalip/cli.hpp"
#include "support.hpp"

using namespace nalip;
using namespace nalip::testing;

namespace {

std::string fixture(const std::string& name) { return std::string(NALIP_FIXTURES) + "/" + name; }

struct Ran {
  int code;
  std::string out;
  std::string err;
};

Ran run_cmd(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& file) {
  RunConfig c;
  c.command = command;
  c.input = file;
  c.n = 200;
  return c;
}

std::string temp_file(const std::string& text) {
  static int counter = 0;
  const std::string path = ::testing::TempDir() + "nalip_io_" + std::to_string(++counter) + ".json";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, InvariantsWorkedExample) {
  const Ran r = run_cmd(config("invariants", fixture("z2_minus_inv_p2_p3.json")));
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["gir"]["ord"], "4");
  EXPECT_EQ(j["rp"]["ord"], "1");
  EXPECT_EQ(j["gpr"]["ord"], "3");
  EXPECT_EQ(j["res"]["ord"], "8");
  EXPECT_EQ(j["b0_lower"]["ord"], "1");
}

TEST(Cli, BoundsMobiusAllEqual) {
  const Ran r = run_cmd(config("bounds", fixture("mobius_z_over_D_p5.json")));
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json j = Json::parse(r.out);
  const Json v = j["lip_classical"]["terms"];
  EXPECT_EQ(j["thm1_classical"]["terms"], v);
  EXPECT_EQ(j["thm1_berk"]["terms"], v);
  EXPECT_EQ(j["mobius_exact"]["terms"], v);
  EXPECT_EQ(j["thm2_with_rp"]["bound"]["terms"], v);
  EXPECT_EQ(j["sampled_max_ratio"]["terms"], v);
}

TEST(Cli, VerifyPassesOnFixtures) {
  for (const char* f : {"identity.json", "z2_minus_inv_p2_p5.json", "mobius_general_p3.json", "cz_over_cubic_k1_p5.json",
                        "cz3_over_quadratic_p5.json", "coeffs_only_quadratic.json"}) {
    const Ran r = run_cmd(config("verify", fixture(f)));
    EXPECT_EQ(r.code, exit_ok) << f << "\n" << r.out << r.err;
    EXPECT_TRUE(Json::parse(r.out)["all_pass"].get<bool>()) << f;
  }
}

TEST(Cli, ProfileAndSample) {
  RunConfig c = config("profile", fixture("cz_over_cubic_k1_p5.json"));
  c.t_min = 1;
  Ran r = run_cmd(c);
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(Json::parse(r.out)["segment_lip"]["decimal"], "3125");
  r = run_cmd(config("sample", fixture("z2_minus_inv_p2_p7.json")));
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["sample"]["max_ratio"]["terms"], j["lip_classical"]["terms"]);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cmd(config("invariants", fixture("no_such_file.json"))).code, exit_parse);
  EXPECT_EQ(run_cmd(config("invariants", temp_file("{not json"))).code, exit_parse);
  EXPECT_EQ(run_cmd(config("invariants", temp_file(R"({"p": 3, "coeffs": {"F": ["1", "x"], "G": ["0", "1"]}})"))).code,
            exit_parse);
  EXPECT_EQ(run_cmd(config("frobnicate", fixture("identity.json"))).code, exit_parse);
  RunConfig wrong_p = config("invariants", fixture("identity.json"));
  wrong_p.p = 5;
  const Ran mismatch = run_cmd(wrong_p);
  EXPECT_EQ(mismatch.code, exit_parse);
  EXPECT_NE(mismatch.err.find("does not match"), std::string::npos);
  EXPECT_EQ(run_cmd(config("invariants", temp_file(R"({"p": 4, "coeffs": {"F": ["1", "0"], "G": ["0", "1"]}})"))).code,
            exit_parse);
  // shared zero and pole; shared root of F and G
  EXPECT_EQ(run_cmd(config("invariants", temp_file(R"({"p": 3, "factored": {"C": "1", "zeros": [["2", 1]], "poles": [["2", 1]]}})")))
                .code,
            exit_degenerate);
  EXPECT_EQ(run_cmd(config("bounds", temp_file(R"({"p": 3, "coeffs": {"F": ["1", "-1"], "G": ["2", "-2"]}})"))).code,
            exit_degenerate);
  const Ran fr = run_cmd(config("sample", fixture("coeffs_only_quadratic.json")));
  EXPECT_EQ(fr.code, exit_factored_required);
  EXPECT_NE(fr.err.find("factored form required"), std::string::npos);
  EXPECT_EQ(run_cmd(config("verify", fixture("identity.json"))).code, exit_ok);
}

TEST(Cli, PFromFlagWhenFileOmitsIt) {
  RunConfig c = config("invariants", temp_file(R"({"coeffs": {"F": ["1", "0"], "G": ["0", "49"]}})"));
  EXPECT_EQ(run_cmd(c).code, exit_parse);
  c.p = 7;
  const Ran r = run_cmd(c);
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(Json::parse(r.out)["gpr"]["ord"], "2");
}

TEST(Cli, ByteDeterministic) {
  for (const char* cmd : {"invariants", "bounds", "profile", "sample", "verify"}) {
    RunConfig c = config(cmd, fixture("z2_minus_inv_p2_p3.json"));
    c.seed = 11;
    const Ran a = run_cmd(c), b = run_cmd(c);
    EXPECT_EQ(a.code, exit_ok) << cmd << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

TEST(Cli, TableFormat) {
  RunConfig c = config("invariants", fixture("z2_minus_inv_p2_p3.json"));
  c.format = "table";
  const Ran r = run_cmd(c);
  ASSERT_EQ(r.code, exit_ok);
  EXPECT_NE(r.out.find("gpr"), std::string::npos);
  EXPECT_NE(r.out.find("(ord 3)"), std::string::npos);
  c.format = "xml";
  EXPECT_EQ(run_cmd(c).code, exit_parse);
}

TEST(Io, MapRoundTrip) {
  for (const auto& m : corpus(601, 50)) {
    const Json j = io::encode(m);
    const RationalMap back = io::decode_map(Json::parse(j.dump()));
    EXPECT_EQ(back.F(), m.F());
    EXPECT_EQ(back.G(), m.G());
    EXPECT_EQ(io::encode(back), j);
  }
}

TEST(Io, CoeffsAndFactoredMustAgree) {
  const Json ok = Json::parse(R"({"p": 3, "coeffs": {"F": ["9", "0", "-1"], "G": ["0", "0", "9"]},
                                  "factored": {"C": "1", "zeros": [["1/3", 1], ["-1/3", 1]], "poles": [["inf", 2]]}})");
  const RationalMap m = io::decode_map(ok);
  EXPECT_TRUE(m.fibers());
  Json bad = ok;
  bad["coeffs"]["F"][2] = "1";
  EXPECT_THROW(io::decode_map(bad), Error);
}

TEST(Io, ReportRoundTrip) {
  int i = 0;
  for (const auto& m : corpus(611, 30)) {
    const auto& ctx = m.context();
    const InvariantBundle b = bundle(m);
    const Json jb = io::encode(ctx, b);
    EXPECT_EQ(io::encode(ctx, io::decode_bundle(ctx, Json::parse(jb.dump()))), jb);
    const BoundReport r = bound_report(m, {Rational(1), 100, static_cast<std::uint64_t>(++i)});
    const Json jr = io::encode(ctx, r);
    EXPECT_EQ(io::encode(ctx, io::decode_report(ctx, Json::parse(jr.dump()))), jr);
    const RadialProfile pr = radial_profile(m, Rational(0), Rational(0));
    EXPECT_EQ(io::decode_profile(Json::parse(io::encode(pr).dump())), pr);
  }
}

TEST(Io, ValueEncodings) {
  const PrimeContext ctx(3);
  const PPowerSum s = PPowerSum::normalize(ctx, {{Rational(2), Rational(-1)}, {Rational(1), Rational(1, 2)}});
  const Json j = io::encode(s);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["coef"], "1");
  EXPECT_EQ(j[0]["exp"], "1/2");
  EXPECT_EQ(io::decode_ppow(ctx, j), s);
  EXPECT_EQ(io::encode(Ord::infinity()), "inf");
  EXPECT_EQ(io::decode_ord(Json("-5/2")), Ord(Rational(-5, 2)));
  const BerkPoint x = BerkPoint::type_ii(ctx, Rational(1, 3), Rational(1));
  const Json jx = io::encode(x);
  EXPECT_EQ(jx["type"], "II");
  EXPECT_EQ(io::decode_berk(ctx, jx), x);
  EXPECT_EQ(io::decode_berk(ctx, io::encode(BerkPoint::type_i(ProjPoint::infinity()))), BerkPoint::type_i(ProjPoint::infinity()));
}
