#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freemeixner/genfun.hpp"
#include "freemeixner/rational.hpp"
#include "freemeixner/space.hpp"

namespace freemeixner {

/// Invalid run configuration; pointer is the JSON pointer of the offending field.
class ConfigError : public Error {
public:
  ConfigError(std::string pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

private:
  std::string pointer_;
};

/// Suite names in report order.
const std::vector<std::string>& suite_names();

struct ZSpec {
  /// Explicit per-cell matrices (cell name -> g x g); cells not listed carry zero.
  std::map<std::string, RationalMatrix> matrices;
  /// Random generation when matrices is empty.
  std::uint64_t seed = 0;
  /// nullopt means 9/20 of the certified radius over all cells.
  std::optional<Rational> norm_cap;
  bool is_random() const { return matrices.empty(); }
};

struct RunConfig {
  std::vector<Cell> cells;
  std::size_t coefficient_dim = 1;
  ZSpec z;
  int degree = 5;
  int depth = 7;
  double tolerance = 1e-10;
  std::vector<std::string> suites;
};

/// Parses and validates; throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);

/// Canonical JSON form with rationals as "p/q" strings; parse_config accepts it back unchanged.
nlohmann::json config_to_json(const RunConfig& c);

/// Two cells with lambda = (1, -1), eta = 0, sigma = (1, 2), g = 2, degree 5, all suites.
RunConfig demo_config();

DiscreteSpace build_space(const RunConfig& c);

/// The operator field described by the z spec on the given space.
OperatorStepField build_field(const RunConfig& c, const DiscreteSpace& space);

}  // namespace freemeixner
