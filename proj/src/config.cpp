#include "freemeixner/config.hpp"

#include <algorithm>
#include <set>

#include "freemeixner/fock.hpp"

namespace freemeixner {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"genfun-formal", "genfun-numeric", "globality",     "moments",
                                                 "orthogonality", "factorization",  "bounds",        "1d"};
  return names;
}

namespace {

constexpr int kMaxDegree = 12;
constexpr int kMaxDepth = 20;
constexpr std::size_t kMaxCoefficientDim = 6;

std::string escape_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

Rational read_rational(const json& j, const std::string& ptr) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(ptr, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ConfigError(ptr, "expected a rational as a string such as \"3/4\" or \"0.25\", or an integer");
}

long read_int(const json& j, const std::string& ptr, long lo, long hi) {
  if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi)
    throw ConfigError(ptr, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

void reject_unknown(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError(ptr + "/" + escape_token(key), "unknown field");
}

const json& require(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.contains(key)) throw ConfigError(ptr + "/" + key, "missing required field");
  return obj.at(key);
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(j, "", {"space", "coefficient_dim", "z_spec", "degree", "depth", "tolerance", "suites"});
  RunConfig c;

  const json& space = require(j, "space", "");
  if (!space.is_object()) throw ConfigError("/space", "expected an object");
  reject_unknown(space, "/space", {"cells"});
  const json& cells = require(space, "cells", "/space");
  if (!cells.is_array() || cells.empty()) throw ConfigError("/space/cells", "expected a non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string ptr = "/space/cells/" + std::to_string(i);
    const json& cell = cells[i];
    if (!cell.is_object()) throw ConfigError(ptr, "expected an object");
    reject_unknown(cell, ptr, {"name", "sigma", "lambda", "eta"});
    const json& name = require(cell, "name", ptr);
    if (!name.is_string() || name.get<std::string>().empty()) throw ConfigError(ptr + "/name", "expected a non-empty string");
    Cell parsed{name.get<std::string>(), read_rational(require(cell, "sigma", ptr), ptr + "/sigma"),
                cell.contains("lambda") ? read_rational(cell.at("lambda"), ptr + "/lambda") : Rational(0),
                cell.contains("eta") ? read_rational(cell.at("eta"), ptr + "/eta") : Rational(0)};
    if (!names.insert(parsed.name).second) throw ConfigError(ptr + "/name", "duplicate cell name '" + parsed.name + "'");
    if (parsed.sigma <= 0) throw ConfigError(ptr + "/sigma", "sigma must be positive");
    if (parsed.eta < 0) throw ConfigError(ptr + "/eta", "eta must be non-negative");
    c.cells.push_back(std::move(parsed));
  }

  if (j.contains("coefficient_dim"))
    c.coefficient_dim = static_cast<std::size_t>(read_int(j.at("coefficient_dim"), "/coefficient_dim", 1, kMaxCoefficientDim));
  if (j.contains("degree")) c.degree = static_cast<int>(read_int(j.at("degree"), "/degree", 0, kMaxDegree));
  if (j.contains("depth")) c.depth = static_cast<int>(read_int(j.at("depth"), "/depth", 2, kMaxDepth));
  if (j.contains("tolerance")) {
    const json& t = j.at("tolerance");
    if (!t.is_number() || t.get<double>() <= 0) throw ConfigError("/tolerance", "expected a positive number");
    c.tolerance = t.get<double>();
  }

  if (j.contains("z_spec")) {
    const json& z = j.at("z_spec");
    if (!z.is_object()) throw ConfigError("/z_spec", "expected an object");
    reject_unknown(z, "/z_spec", {"seed", "norm_cap", "matrices"});
    if (z.contains("matrices")) {
      if (z.contains("seed") || z.contains("norm_cap"))
        throw ConfigError("/z_spec", "give either explicit matrices or seed/norm_cap, not both");
      const json& ms = z.at("matrices");
      if (!ms.is_object() || ms.empty()) throw ConfigError("/z_spec/matrices", "expected a non-empty object");
      const std::size_t g = c.coefficient_dim;
      for (const auto& [cell, rows] : ms.items()) {
        const std::string ptr = "/z_spec/matrices/" + escape_token(cell);
        if (!names.count(cell)) throw ConfigError(ptr, "no cell named '" + cell + "'");
        if (!rows.is_array() || rows.size() != g)
          throw ConfigError(ptr, "expected " + std::to_string(g) + " rows");
        std::vector<Rational> entries;
        for (std::size_t r = 0; r < g; ++r) {
          if (!rows[r].is_array() || rows[r].size() != g)
            throw ConfigError(ptr + "/" + std::to_string(r), "expected " + std::to_string(g) + " entries");
          for (std::size_t k = 0; k < g; ++k)
            entries.push_back(read_rational(rows[r][k], ptr + "/" + std::to_string(r) + "/" + std::to_string(k)));
        }
        c.z.matrices.emplace(cell, RationalMatrix(g, entries));
      }
    } else {
      if (z.contains("seed")) {
        const json& seed = z.at("seed");
        if (!seed.is_number_integer() || seed.get<long long>() < 0) throw ConfigError("/z_spec/seed", "expected a non-negative integer");
        c.z.seed = z.at("seed").get<std::uint64_t>();
      }
      if (z.contains("norm_cap")) {
        const json& cap = z.at("norm_cap");
        if (!(cap.is_string() && cap.get<std::string>() == "auto")) {
          const Rational v = read_rational(cap, "/z_spec/norm_cap");
          if (v <= 0) throw ConfigError("/z_spec/norm_cap", "norm cap must be positive");
          c.z.norm_cap = v;
        }
      }
    }
  }

  if (j.contains("suites")) {
    const json& s = j.at("suites");
    if (!s.is_array()) throw ConfigError("/suites", "expected an array of suite names");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string ptr = "/suites/" + std::to_string(i);
      if (!s[i].is_string()) throw ConfigError(ptr, "expected a suite name");
      const std::string name = s[i].get<std::string>();
      if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw ConfigError(ptr, "unknown suite '" + name + "'");
      if (!seen.insert(name).second) throw ConfigError(ptr, "suite '" + name + "' listed twice");
      c.suites.push_back(name);
    }
  }

  auto selected = [&](const char* name) { return std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end(); };
  if ((selected("genfun-numeric") || selected("orthogonality")) && c.degree + 2 > c.depth)
    throw ConfigError("/depth", "depth must be at least degree + 2 for the genfun-numeric and orthogonality suites");
  if (selected("globality"))
    for (std::size_t i = 0; i < c.cells.size(); ++i)
      if (c.cells[i].eta != 0)
        throw ConfigError("/space/cells/" + std::to_string(i) + "/eta",
                          "the globality suite requires eta = 0 on every cell");
  return c;
}

json config_to_json(const RunConfig& c) {
  json cells = json::array();
  for (const auto& cell : c.cells)
    cells.push_back({{"name", cell.name},
                     {"sigma", to_string(cell.sigma)},
                     {"lambda", to_string(cell.lambda)},
                     {"eta", to_string(cell.eta)}});
  json z;
  if (c.z.is_random()) {
    z["seed"] = c.z.seed;
    z["norm_cap"] = c.z.norm_cap ? to_string(*c.z.norm_cap) : "auto";
  } else {
    json ms = json::object();
    for (const auto& [name, m] : c.z.matrices) {
      json rows = json::array();
      for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(to_string(m(r, k)));
        rows.push_back(row);
      }
      ms[name] = rows;
    }
    z["matrices"] = ms;
  }
  return {{"space", {{"cells", cells}}},
          {"coefficient_dim", c.coefficient_dim},
          {"z_spec", z},
          {"degree", c.degree},
          {"depth", c.depth},
          {"tolerance", c.tolerance},
          {"suites", c.suites}};
}

RunConfig demo_config() {
  RunConfig c;
  c.cells = {{"a", Rational(1), Rational(1), Rational(0)}, {"b", Rational(2), Rational(-1), Rational(0)}};
  c.coefficient_dim = 2;
  c.z.seed = 2024;
  c.z.norm_cap = Rational(1, 25);
  c.degree = 5;
  c.depth = 7;
  c.suites = suite_names();
  return c;
}

DiscreteSpace build_space(const RunConfig& c) { return DiscreteSpace(c.cells); }

OperatorStepField build_field(const RunConfig& c, const DiscreteSpace& space) {
  if (!c.z.is_random()) {
    OperatorStepField z(space, c.coefficient_dim);
    for (const auto& [name, m] : c.z.matrices) z.set(space.index_of(name), m);
    return z;
  }
  Rational cap;
  if (c.z.norm_cap) {
    cap = *c.z.norm_cap;
  } else {
    std::vector<CellIndex> all;
    for (CellIndex j = 0; j < space.size(); ++j) all.push_back(j);
    cap = domain_radius(space, all) * Rational(9, 20);
  }
  return random_operator_field(space, c.coefficient_dim, c.z.seed, cap);
}

}  // namespace freemeixner
