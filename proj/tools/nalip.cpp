#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nalip/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Invariants and Lipschitz bounds of rational maps over Q_p"};
  app.require_subcommand(1);

  nalip::RunConfig cfg;
  std::optional<std::string> center, tmin, b0;
  std::optional<unsigned long> p;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "map file (JSON)")->required();
    sub->add_option("--p", p, "prime; must match the file when both are given");
    sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "sampler seed");
    sub->add_option("--n", cfg.n, "number of sampled pairs")->check(CLI::PositiveNumber);
  };

  auto* inv = app.add_subcommand("invariants", "GIR, RP, GPR and resultant");
  add_common(inv);
  auto* bounds = app.add_subcommand("bounds", "Lipschitz constant and bounds");
  add_common(bounds);
  add_sampling(bounds);
  bounds->add_option("--b0-ord", b0, "user B0 as an ord (B0 = p^-t)");
  auto* profile = app.add_subcommand("profile", "radial image profile along a disc center");
  add_common(profile);
  profile->add_option("--center", center, "disc center (rational)");
  profile->add_option("--tmin", tmin, "outermost radius ord (radius p^-tmin)");
  auto* sample = app.add_subcommand("sample", "sampled classical distortion ratios");
  add_common(sample);
  add_sampling(sample);
  auto* verify = app.add_subcommand("verify", "run the property checks on one map");
  add_common(verify);
  add_sampling(verify);
  verify->add_option("--b0-ord", b0, "user B0 as an ord (B0 = p^-t)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : nalip::exit_parse;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.p = p;
  try {
    if (center) cfg.center = nalip::parse_rational(*center);
    if (tmin) cfg.t_min = nalip::parse_rational(*tmin);
    if (b0) cfg.b0_ord = nalip::parse_rational(*b0);
  } catch (const nalip::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nalip::exit_parse;
  }
  return nalip::run(cfg, std::cout, std::cerr);
}
