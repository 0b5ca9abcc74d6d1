#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "entcap/cli.hpp"
#include "entcap/matcore.hpp"

namespace {

entcap::OutputFormat to_format(const std::string& name) {
  return name == "json" ? entcap::OutputFormat::jsonl
                        : entcap::OutputFormat::csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entcap: dense-coding capacities and entanglement measures for "
      "bipartite states"};
  app.require_subcommand(1);

  std::string state_file;
  std::string compute_measures = "ib,chi_star";
  std::string compute_out = "csv";
  bool compute_explicit = false;
  auto* compute =
      app.add_subcommand("compute", "Measures for one state spec");
  compute->add_option("--state", state_file, "JSON state-spec file")
      ->required()
      ->check(CLI::ExistingFile);
  compute->add_option("--measures", compute_measures,
                      "Comma list from {ib, chi, chi_star, er, sandwich}");
  compute->add_option("--out", compute_out, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  compute->add_flag("--explicit", compute_explicit,
                    "Build the eisert family explicitly instead of using "
                    "the closed forms");

  std::string suites = "all";
  int samples = -1;
  std::uint64_t seed = 42;
  std::string verify_out = "csv";
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option(
      "--suite", suites,
      "Comma list from {all, ib_le_er, fannes, continuity, convexity, "
      "eisert}");
  verify->add_option("--samples", samples,
                     "Override every suite's sample count")
      ->check(CLI::Range(0, 10000000));
  verify->add_option("--seed", seed, "Base seed for sampled checks");
  verify->add_option("--out", verify_out, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  entcap::SweepRequest sweep_request;
  std::string sweep_out = "csv";
  auto* sweep =
      app.add_subcommand("sweep", "Measures over a one-parameter grid");
  sweep->add_option("--family", sweep_request.family,
                    "isotropic | bell_diagonal | eisert")
      ->required();
  sweep->add_option("--d", sweep_request.d,
                    "Local dimension (isotropic only)");
  sweep->add_option("--param", sweep_request.parameter,
                    "Swept parameter: F | p | J")
      ->required();
  sweep->add_option("--from", sweep_request.from, "Grid start")->required();
  sweep->add_option("--to", sweep_request.to, "Grid end")->required();
  sweep->add_option("--step", sweep_request.step, "Grid step")->required();
  sweep->add_option("--measures", sweep_request.measures,
                    "Comma list from {ib, chi, chi_star, er}")
      ->required();
  sweep->add_option("--out", sweep_out, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string family_name;
  int family_j = 1;
  bool family_explicit = false;
  std::string family_out = "csv";
  auto* family =
      app.add_subcommand("family", "Family parameters and closed forms");
  family->add_option("--name", family_name, "Family name (eisert)")
      ->required();
  family->add_option("--J", family_j, "Half the number of pairs lost")
      ->required()
      ->check(CLI::Range(1, 1000000));
  family->add_flag("--explicit", family_explicit,
                   "Also build the state and cross-check its spectrum");
  family->add_option("--out", family_out, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compute) {
      std::ifstream in(state_file);
      if (!in) {
        std::cerr << "error: cannot read '" << state_file << "'\n";
        return 2;
      }
      std::ostringstream text;
      text << in.rdbuf();
      return entcap::cmd_compute(text.str(), compute_measures,
                                 compute_explicit, to_format(compute_out),
                                 std::cout, std::cerr);
    }
    if (*verify) {
      std::optional<int> samples_override;
      if (samples >= 0) samples_override = samples;
      return entcap::cmd_verify(suites, samples_override, seed,
                                to_format(verify_out), std::cout, std::cerr);
    }
    if (*sweep) {
      return entcap::cmd_sweep(sweep_request, to_format(sweep_out),
                               std::cout, std::cerr);
    }
    if (*family) {
      return entcap::cmd_family(family_name, family_j, family_explicit,
                                to_format(family_out), std::cout, std::cerr);
    }
  } catch (const entcap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
