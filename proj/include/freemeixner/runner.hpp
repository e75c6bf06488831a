#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freemeixner/config.hpp"
#include "freemeixner/fock.hpp"
#include "freemeixner/report.hpp"

namespace freemeixner {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

enum class SuiteStatus { pass, fail, skipped };
std::string status_name(SuiteStatus s);

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::skipped;
  std::vector<VerificationReport> checks;
  std::optional<std::string> reason;  // set when the suite aborted with an error
  double seconds = 0;
};

struct RunReport {
  RunConfig config;
  std::vector<SuiteResult> suites;  // one per suite name, in suite_names() order
  nlohmann::json field;             // the operator field used, cell -> rows of "p/q"
  double seconds = 0;
  bool all_passed() const;
};

struct RunOptions {
  bool parallel = true;
};

RunReport run(const RunConfig& config, const RunOptions& options = {});

/// Runs one suite by name against an already validated configuration.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

/// Report JSON; the "timing" block is the only part that varies between identical runs.
nlohmann::json report_to_json(const RunReport& report);

/// One line per suite.
std::string report_summary(const RunReport& report);

/// Adjacently disjoint block patterns of total degree <= max_total over the cells
/// of the model, with small random step functions supported on each block's cells.
std::vector<FactorBlocks> factorization_patterns(const DiscreteSpace& space, int max_total, std::uint64_t seed);

}  // namespace freemeixner
