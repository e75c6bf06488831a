#include "freemeixner/runner.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "freemeixner/meixner1d.hpp"
#include "freemeixner/partitions.hpp"
#include "freemeixner/symbolic.hpp"

namespace freemeixner {

using nlohmann::json;

std::string status_name(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::pass: return "pass";
    case SuiteStatus::fail: return "fail";
    case SuiteStatus::skipped: return "skipped";
  }
  return "unknown";
}

bool RunReport::all_passed() const {
  return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.status == SuiteStatus::fail; });
}

namespace {

constexpr int kOrthogonalityMaxDegree = 4;
constexpr int kFactorizationMaxDegree = 5;
constexpr int kNormMaxDegree = 4;

std::vector<CellIndex> all_cells(const DiscreteSpace& space) {
  std::vector<CellIndex> out;
  for (CellIndex j = 0; j < space.size(); ++j) out.push_back(j);
  return out;
}

std::vector<VerificationReport> suite_bounds(const RunConfig& c, const DiscreteSpace& space, const OperatorStepField& z) {
  const FockRep rep = FockRep::build(space, c.depth);
  std::vector<std::vector<CellIndex>> subsets;
  for (CellIndex j = 0; j < space.size(); ++j) subsets.push_back({j});
  if (space.size() > 1) subsets.push_back(all_cells(space));

  VerificationReport field;
  field.check = "field-norm";
  field.bound = 1.0;
  VerificationReport poly;
  poly.check = "polynomial-norm";
  poly.bound = 1.0;
  const int nmax = std::min({c.degree, c.depth - 1, kNormMaxDegree});
  poly.note("max_degree", std::to_string(nmax));

  std::mt19937_64 engine(c.z.seed ^ 0x5bd1e995ULL);
  for (const auto& subset : subsets) {
    const NormConstants nc = norm_constants(space, subset);
    const StepFunction chi = StepFunction::indicator(space, subset);
    const double x = operator_norm_estimate(smeared_field(rep, chi));
    ++field.cases;
    field.measured = std::max(field.measured, x / nc.c3);
    if (x > nc.c3 * (1 + 1e-12))
      field.record_failure("||<omega, chi_A>|| = " + format_double(x) + " > C3 = " + format_double(nc.c3));

    for (int n = 1; n <= nmax; ++n) {
      for (int variant = 0; variant < 2; ++variant) {
        std::vector<StepFunction> fs;
        for (int i = 0; i < n; ++i) {
          if (variant == 0) {
            fs.push_back(chi);
            continue;
          }
          // values in {-1, -1/2, 1/2, 1} on A: unit sup norm at most
          StepFunction f(space);
          for (auto j : subset) {
            const long k = static_cast<long>(engine() % 4);
            f.set(j, Rational(k < 2 ? -1 : 1, k % 2 == 0 ? 1 : 2));
          }
          fs.push_back(f);
        }
        const PolyOperator op = ortho_poly_operator(rep, fs, rep.prefix_size(rep.depth() - n));
        const double norm = operator_norm_estimate(op.matrix);
        const double bound = std::pow(nc.c4, n);
        ++poly.cases;
        poly.measured = std::max(poly.measured, norm / bound);
        if (norm > bound * (1 + 1e-12))
          poly.record_failure("degree " + std::to_string(n) + " pairing norm " + std::to_string(norm) +
                              " > C4^n = " + format_double(bound));
      }
    }
  }

  VerificationReport integral;
  integral.check = "integral-norm";
  integral.bound = 1.0;
  const IntegralOperator op = integral_simple(z, rep);
  integral.cases = 1;
  integral.measured = op.bound > 0 ? op.norm / op.bound : 0.0;
  if (!op.within_bound)
    integral.record_failure("||sum Z_j (x) X_j|| = " + format_double(op.norm) + " > " + format_double(op.bound));
  return {field, poly, integral};
}

std::vector<VerificationReport> suite_1d(const DiscreteSpace& space) {
  VerificationReport genfun, moments, annihilation;
  genfun.check = "1d-genfun";
  moments.check = "1d-moments";
  annihilation.check = "1d-annihilation";
  for (CellIndex j = 0; j < space.size(); ++j) {
    const JacobiParams p(space.lambda(j), space.eta(j), space.sigma(j));
    const auto polys = meixner_polys(12, p);
    const auto coeffs = genfun_1d_coefficients(12, p);
    for (int n = 0; n <= 12; ++n) {
      ++genfun.cases;
      if (!(polys[n] == coeffs[n]))
        genfun.record_failure("cell " + space.cell(j).name + ", n = " + std::to_string(n) + ": " + polys[n].str() +
                              " vs " + coeffs[n].str());
    }
    const auto cumulants = free_cumulants(p, 10);
    for (int n = 1; n <= 10; ++n) {
      ++moments.cases;
      const Rational a = vacuum_moment(n, p), b = moment_from_cumulants(cumulants, n);
      if (a != b)
        moments.record_failure("cell " + space.cell(j).name + ", n = " + std::to_string(n) + ": " + to_string(a) +
                               " vs " + to_string(b));
    }
    const VerificationReport r = verify_1d_annihilation(p, 8);
    annihilation.cases += r.cases;
    if (!r.passed) annihilation.record_failure("cell " + space.cell(j).name + ": " + r.counterexample.value_or(""));
  }
  return {genfun, moments, annihilation};
}

}  // namespace

std::vector<FactorBlocks> factorization_patterns(const DiscreteSpace& space, int max_total, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const std::size_t K = space.size();
  auto random_on = [&](const std::vector<CellIndex>& cells) {
    StepFunction f(space);
    for (auto j : cells) {
      long num = static_cast<long>(engine() % 5) - 2;
      if (num == 0) num = 1;
      f.set(j, Rational(num, 1 + static_cast<long>(engine() % 2)));
    }
    return f;
  };
  std::vector<CellIndex> even, odd;
  for (CellIndex j = 0; j < K; ++j) (j % 2 == 0 ? even : odd).push_back(j);

  std::vector<FactorBlocks> out;
  for (int total = 1; total <= max_total; ++total) {
    // compositions of total, encoded by the cut positions
    for (unsigned mask = 0; mask < (1u << (total - 1)); ++mask) {
      std::vector<int> sizes{1};
      for (int i = 0; i < total - 1; ++i) {
        if (mask & (1u << i))
          sizes.push_back(1);
        else
          ++sizes.back();
      }
      if (sizes.size() > 1 && K < 2) continue;
      for (int layout = 0; layout < (sizes.size() == 1 ? 1 : 2); ++layout) {
        FactorBlocks blocks;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
          std::vector<CellIndex> cells;
          if (sizes.size() == 1)
            cells = all_cells(space);
          else if (layout == 0)
            cells = b % 2 == 0 ? even : odd;
          else
            cells = {(b + mask) % K};
          std::vector<StepFunction> block;
          for (int i = 0; i < sizes[b]; ++i) block.push_back(random_on(cells));
          blocks.push_back(std::move(block));
        }
        out.push_back(std::move(blocks));
      }
    }
  }
  return out;
}

SuiteResult run_suite(const std::string& name, const RunConfig& c) {
  SuiteResult result;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const DiscreteSpace space = build_space(c);
    if (name == "genfun-formal") {
      result.checks.push_back(verify_genfun_formal(space, build_field(c, space), c.degree));
    } else if (name == "genfun-numeric") {
      const FockRep rep = FockRep::build(space, c.depth);
      NumericOptions options;
      options.degree = c.degree;
      options.form_tolerance = c.tolerance;
      result.checks.push_back(verify_genfun_numeric(space, build_field(c, space), rep, options));
    } else if (name == "globality") {
      result.checks.push_back(verify_globality(space, c.degree));
    } else if (name == "moments") {
      const FockRep rep = FockRep::build(space, c.depth);
      for (CellIndex j = 0; j < space.size(); ++j) result.checks.push_back(moment_crosscheck(rep, j, c.depth, c.tolerance));
    } else if (name == "orthogonality") {
      const FockRep rep = FockRep::build(space, c.depth);
      const int nmax = std::min({c.degree, c.depth - 2, kOrthogonalityMaxDegree});
      VerificationReport r = verify_chaos_orthogonality(rep, nmax, c.tolerance);
      r.note("max_degree", std::to_string(nmax));
      result.checks.push_back(std::move(r));
    } else if (name == "factorization") {
      const int total = std::min({c.degree, c.depth, kFactorizationMaxDegree});
      const FockRep rep = FockRep::build(space, std::max(c.depth, 2));
      VerificationReport summary;
      summary.check = "factorization";
      summary.bound = c.tolerance;
      summary.note("max_total_degree", std::to_string(total));
      for (const auto& blocks : factorization_patterns(space, total, c.z.seed)) {
        const VerificationReport r = verify_factorization(rep, blocks, c.tolerance);
        ++summary.cases;
        summary.measured = std::max(summary.measured, r.measured);
        if (!r.passed) summary.record_failure(r.counterexample.value_or("factorization failed"));
      }
      result.checks.push_back(std::move(summary));
    } else if (name == "bounds") {
      result.checks = suite_bounds(c, space, build_field(c, space));
    } else if (name == "1d") {
      result.checks = suite_1d(space);
    } else {
      throw StructuralError("unknown suite '" + name + "'");
    }
    result.status = SuiteStatus::pass;
    for (const auto& r : result.checks)
      if (!r.passed) result.status = SuiteStatus::fail;
  } catch (const Error& e) {
    result.status = SuiteStatus::fail;
    result.reason = e.what();
  } catch (const std::bad_alloc&) {
    result.status = SuiteStatus::fail;
    result.reason = "out of memory";
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  {
    const DiscreteSpace space = build_space(config);
    const OperatorStepField z = build_field(config, space);
    report.field = json::object();
    for (CellIndex j = 0; j < space.size(); ++j) {
      json rows = json::array();
      for (std::size_t r = 0; r < z.dim(); ++r) {
        json row = json::array();
        for (std::size_t k = 0; k < z.dim(); ++k) row.push_back(to_string(z.at(j)(r, k)));
        rows.push_back(row);
      }
      report.field[space.cell(j).name] = rows;
    }
  }

  std::vector<std::future<SuiteResult>> pending;
  for (const auto& name : suite_names()) {
    const bool selected = std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end();
    if (!selected) {
      SuiteResult skipped;
      skipped.name = name;
      report.suites.push_back(skipped);
      continue;
    }
    if (options.parallel) {
      pending.push_back(std::async(std::launch::async, [name, &config] { return run_suite(name, config); }));
      report.suites.push_back({});
    } else {
      report.suites.push_back(run_suite(name, config));
    }
  }
  if (options.parallel) {
    std::size_t k = 0;
    for (auto& s : report.suites)
      if (s.name.empty()) s = pending[k++].get();
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

json check_to_json(const VerificationReport& r) {
  json notes = json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  return {{"check", r.check},
          {"passed", r.passed},
          {"cases", r.cases},
          {"measured", r.measured},
          {"bound", r.bound},
          {"truncated", r.truncated},
          {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)},
          {"notes", notes}};
}

}  // namespace

json report_to_json(const RunReport& report) {
  json suites = json::array();
  json timing_suites = json::object();
  std::size_t passed = 0, failed = 0, skipped = 0;
  json free_algebra = nullptr;
  for (const auto& s : report.suites) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      checks.push_back(check_to_json(c));
      for (const auto& [k, v] : c.notes)
        if (k == "free_algebra_equal") free_algebra = v == "true";
    }
    suites.push_back({{"name", s.name},
                      {"status", status_name(s.status)},
                      {"reason", s.reason ? json(*s.reason) : json(nullptr)},
                      {"checks", checks}});
    if (s.status != SuiteStatus::skipped) timing_suites[s.name] = s.seconds;
    (s.status == SuiteStatus::pass ? passed : s.status == SuiteStatus::fail ? failed : skipped)++;
  }
  return {{"schema_version", kReportSchemaVersion},
          {"artifact", {{"name", "freemeixner"}, {"version", kArtifactVersion}}},
          {"config", config_to_json(report.config)},
          {"seed", report.config.z.seed},
          {"field", report.field},
          {"suites", suites},
          {"findings", {{"free_algebra_equal", free_algebra}}},
          {"summary",
           {{"status", failed == 0 ? "pass" : "fail"}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}}},
          {"timing", {{"total_seconds", report.seconds}, {"suites", timing_suites}}}};
}

std::string report_summary(const RunReport& report) {
  std::ostringstream os;
  for (const auto& s : report.suites) {
    os << s.name << ": " << status_name(s.status);
    if (s.status != SuiteStatus::skipped) {
      std::size_t cases = 0;
      for (const auto& c : s.checks) cases += c.cases;
      os << " (" << cases << " cases, " << s.seconds << " s)";
    }
    if (s.reason) os << " - " << *s.reason;
    for (const auto& c : s.checks)
      if (c.counterexample) os << "\n  " << c.check << ": " << *c.counterexample;
    os << "\n";
  }
  os << (report.all_passed() ? "all selected suites passed" : "some suites failed") << "\n";
  return os.str();
}

}  // namespace freemeixner
