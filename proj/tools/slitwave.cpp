#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>

#include "slitwave/errors.hpp"
#include "slitwave/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIntegrity = 2, kIo = 3 };

std::set<slitwave::Output> parse_only(const std::vector<std::string>& names) {
  std::set<slitwave::Output> out;
  for (const auto& n : names) {
    const auto o = slitwave::parse_output(n);
    if (!o) throw slitwave::ConfigError("--only", 0, "unknown output '" + n + "'");
    out.insert(*o);
  }
  return out;
}

int run(const std::string& config_path, const std::string& out_dir, const std::vector<std::string>& only) {
  const slitwave::ScenarioConfig config = slitwave::load_config(config_path);
  slitwave::RunOptions options;
  if (!out_dir.empty()) options.output_dir = out_dir;
  if (!only.empty()) options.only = parse_only(only);
  const slitwave::RunManifest manifest = slitwave::run_scenario(config, options);
  for (const auto& f : manifest.files) fmt::print("wrote {} ({} rows)\n", f.path.generic_string(), f.rows);
  std::size_t soft_failures = 0;
  for (const auto& a : manifest.audits)
    if (!a.passed && !a.hard) {
      ++soft_failures;
      fmt::print(stderr, "warning: {} = {:.6g} exceeds {:g}\n", a.name, a.value, *a.limit);
    }
  if (!manifest.ok()) {
    for (const auto& c : manifest.failed_hard_checks) fmt::print(stderr, "error: integrity check failed: {}\n", c);
    return kIntegrity;
  }
  fmt::print("ok: {} files, {} audits, {} soft warnings\n", manifest.files.size(), manifest.audits.size(),
             soft_failures);
  return kOk;
}

int oracle(const std::string& config_path) {
  const slitwave::ScenarioConfig config = slitwave::load_config(config_path);
  bool all = true;
  for (const auto& c : slitwave::run_oracles(config)) {
    fmt::print("{:<40} {:.3e}  limit {:.0e}  {}\n", c.name, c.deviation, c.limit, c.passed() ? "ok" : "FAIL");
    all = all && c.passed();
  }
  return all ? kOk : kIntegrity;
}

int validate(const std::string& config_path) {
  const slitwave::ScenarioConfig config = slitwave::load_config(config_path);
  fmt::print("{}", config.echo());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atom double-slit wave field, momentum spectrum and phase-space maps"};
  app.set_version_flag("--version", slitwave::version());
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> only;

  auto* run_cmd = app.add_subcommand("run", "Compute the scenario and write CSV files plus manifest.txt");
  run_cmd->add_option("config", config_path, "Scenario file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--only", only, "Restrict outputs, e.g. --only spectrum,wigner")->delimiter(',');
  run_cmd->add_flag("--seedless-deterministic", "Accepted for compatibility; runs are always deterministic");

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare spectra against the closed-form aperture transforms");
  oracle_cmd->add_option("config", config_path, "Scenario file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file and print the resolved configuration");
  validate_cmd->add_option("config", config_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run_cmd) return run(config_path, out_dir, only);
    if (*oracle_cmd) return oracle(config_path);
    if (*validate_cmd) return validate(config_path);
  } catch (const slitwave::IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const slitwave::IntegrityError& e) {
    fmt::print(stderr, "error: {}: {}\n", e.check(), e.what());
    return kIntegrity;
  } catch (const slitwave::ConsistencyError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIntegrity;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  }
  return kValidation;
}
