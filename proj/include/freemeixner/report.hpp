#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freemeixner {

/// Outcome of one verification routine.
///
/// measured is the largest observed violation (or gap), bound the tolerance or
/// certified bound it is compared against. Exact checks leave both at zero.
struct VerificationReport {
  std::string check;
  bool passed = true;
  std::size_t cases = 0;
  double measured = 0.0;
  double bound = 0.0;
  bool truncated = false;
  std::optional<std::string> counterexample;
  std::vector<std::pair<std::string, std::string>> notes;

  void record_failure(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }
};

/// Shortest-ish decimal for report text: "%.9g", so small gaps stay visible.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace freemeixner
