// freemeixner: batch driver for the verification suites.
//
//   freemeixner verify --config run.json [--suite NAME]... [--degree N] [--depth N] [--out report.json] [--serial]
//   freemeixner demo [--out config.json]
//
// Exit status: 0 when every selected suite passes, 1 when any fails, 2 on a bad
// command line or configuration.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "freemeixner/config.hpp"
#include "freemeixner/runner.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

bool write_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for free Meixner generating functions"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::vector<std::string> suites;
  std::optional<int> degree, depth;
  bool serial = false;

  auto* verify = app.add_subcommand("verify", "Run the verification suites described by a JSON configuration");
  verify->add_option("--config", config_path, "Configuration file (JSON)")->required();
  verify->add_option("--suite", suites, "Restrict to these suites (repeatable)");
  verify->add_option("--degree", degree, "Override the configured degree");
  verify->add_option("--depth", depth, "Override the configured Fock depth");
  verify->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  verify->add_flag("--serial", serial, "Run suites one after another");

  std::string demo_out;
  auto* demo = app.add_subcommand("demo", "Write the default demonstration configuration");
  demo->add_option("--out", demo_out, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  if (*demo) return write_json(freemeixner::config_to_json(freemeixner::demo_config()), demo_out) ? kExitPass : kExitConfig;

  json raw;
  {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << config_path << "\n";
      return kExitConfig;
    }
    try {
      raw = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "error: " << config_path << " is not valid JSON: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  if (raw.is_object()) {
    if (!suites.empty()) raw["suites"] = suites;
    if (degree) raw["degree"] = *degree;
    if (depth) raw["depth"] = *depth;
  }

  freemeixner::RunConfig config;
  try {
    config = freemeixner::parse_config(raw);
  } catch (const freemeixner::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  freemeixner::RunOptions options;
  options.parallel = !serial;
  const freemeixner::RunReport report = freemeixner::run(config, options);
  std::cerr << freemeixner::report_summary(report);
  if (!write_json(freemeixner::report_to_json(report), out_path)) return kExitConfig;
  return report.all_passed() ? kExitPass : kExitFail;
}
