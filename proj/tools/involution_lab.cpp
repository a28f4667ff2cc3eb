// involution-lab: run verification suites over group algebras with oriented involutions.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ilab/catalog.hpp"
#include "ilab/suites.hpp"

#ifndef ILAB_DEFAULT_FIXTURES
#define ILAB_DEFAULT_FIXTURES ""
#endif

namespace {

constexpr int kUsage = 3;

std::string default_fixtures() {
  if (const char* env = std::getenv("INVOLUTION_LAB_FIXTURES"); env && *env) return env;
  const std::string built_in = ILAB_DEFAULT_FIXTURES;
  return !built_in.empty() && std::filesystem::exists(built_in) ? built_in : std::string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in group algebras with oriented classical involutions"};
  app.require_subcommand(1);

  ilab::SuiteConfig cfg;
  cfg.fixtures = default_fixtures();
  std::string format = "json";
  std::string out_path;
  bool allow_inconclusive = false;
  bool timings = false;
  bool no_fixtures = false;
  unsigned characteristic = 0;

  std::string suites_help = "one of:";
  for (const auto& s : ilab::suite_names()) suites_help += " " + s;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, suites_help)->required();
  verify->add_option("--group", cfg.group, "catalog name or group spec (default: the suite's catalog contexts)");
  verify->add_option("--kernel", cfg.kernel, "kernel of the orientation: generator words or 'full'");
  auto* char_opt = verify->add_option("--char", characteristic, "field characteristic: 0 or an odd prime");
  verify->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--cap-order", cfg.cap_order, "largest group order to build")->capture_default_str();
  verify->add_option("--cap-series", cfg.cap_series, "most series terms to compute")->capture_default_str();
  verify->add_option("--cap-enum", cfg.cap_enum, "most symmetric elements to scan exhaustively")->capture_default_str();
  verify->add_option("--cap-rational", cfg.cap_rational, "largest group order over Q")->capture_default_str();
  verify->add_option("--samples", cfg.samples, "random pairs per context")->capture_default_str();
  verify->add_option("--unit-samples", cfg.unit_samples, "sampled symmetric units")->capture_default_str();
  verify->add_option("--witness-budget", cfg.witness_budget, "witness search nodes")->capture_default_str();
  verify->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  verify->add_option("--fixtures", cfg.fixtures, "expected values from the oracle");
  verify->add_flag("--no-fixtures", no_fixtures, "skip the oracle comparisons");
  verify->add_flag("--allow-inconclusive", allow_inconclusive, "exit 0 when cases are inconclusive");
  verify->add_flag("--timings", timings, "include per-case runtimes");
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  auto* cat = app.add_subcommand("catalog", "list built-in groups and their admissible kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (cat->parsed()) {
    std::cout << ilab::list_catalog();
    return 0;
  }

  if (char_opt->count() > 0) cfg.characteristic = characteristic;
  if (no_fixtures) cfg.fixtures.clear();
  ilab::Report report;
  try {
    report = ilab::run_suite(cfg);
  } catch (const ilab::SuiteError& e) {
    std::cerr << "involution-lab: " << e.what() << "\n";
    return kUsage;
  }
  const std::string text = format == "md" ? ilab::to_markdown(report, timings) : ilab::to_json(report, timings);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "involution-lab: cannot write " << out_path << "\n";
      return kUsage;
    }
  }
  return report.exit_code(allow_inconclusive);
}
