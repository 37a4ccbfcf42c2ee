#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wstar/wstar.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVacuum = 3;

bool write_file(const std::filesystem::path& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

bool write_report(const wstar_report* report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return false;
  if (!write_file(dir / wstar_report_name(report), wstar_report_json(report))) return false;
  for (size_t i = 0; i < wstar_report_csv_count(report); ++i) {
    if (!write_file(dir / wstar_report_csv_name(report, i), wstar_report_csv(report, i))) return false;
  }
  return true;
}

int fail(const std::string& what, wstar_status status) {
  std::cerr << "wstar: " << what << ": " << wstar_status_string(status);
  const std::string detail = wstar_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return status == WSTAR_ERR_VACUUM_FORMATION ? kExitVacuum : kExitConfig;
}

int run(const std::string& command, const std::string& config, const std::string& out_dir,
        std::optional<std::uint64_t> seed) {
  wstar_scenario* scenario = nullptr;
  wstar_status st = wstar_scenario_from_file(config.c_str(), &scenario);
  if (st != WSTAR_OK) return fail("cannot load config", st);
  if (seed) wstar_scenario_set_seed(scenario, *seed);

  wstar_report* report = nullptr;
  if (command == "riemann") {
    st = wstar_run_riemann(scenario, &report);
  } else if (command == "verify") {
    st = wstar_run_verify(scenario, &report);
  } else {
    st = wstar_run_decompose(scenario, &report);
  }
  wstar_scenario_destroy(scenario);
  if (st != WSTAR_OK) {
    const int code = fail(command + " failed", st);
    // vacuum only has its own exit code for the Riemann command
    return command == "riemann" ? code : kExitConfig;
  }
  const bool written = write_report(report, out_dir);
  const bool passed = wstar_report_passed(report) != 0;
  wstar_report_destroy(report);
  if (!written) {
    std::cerr << "wstar: cannot write to " << out_dir << "\n";
    return kExitConfig;
  }
  if (command == "verify" && !passed) {
    std::cerr << "wstar: certification failed\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure-valued calculus and weak* solution certification for 1-D conservation laws"};
  app.require_subcommand(1);
  std::string config, out_dir = ".";
  std::optional<std::uint64_t> seed;
  for (const char* name : {"riemann", "verify", "decompose"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "scenario config (JSON)")->required();
    sub->add_option("--out-dir", out_dir, "directory for reports");
    sub->add_option("--seed", seed, "override the test-family seed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  return run(app.get_subcommands().front()->get_name(), config, out_dir, seed);
}
