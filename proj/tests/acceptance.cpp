// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "freemeixner/config.hpp"
#include "freemeixner/fock.hpp"
#include "freemeixner/genfun.hpp"
#include "freemeixner/meixner1d.hpp"
#include "freemeixner/partitions.hpp"
#include "freemeixner/runner.hpp"
#include "freemeixner/symbolic.hpp"
#include "test_util.hpp"

using namespace freemeixner;

namespace {

constexpr int kBatterySize = 24;
constexpr int kDegree = 8;
constexpr int kNumericDepth = 10;
constexpr int kFockDepth = 8;
constexpr double kTolerance = 1e-10;

struct Outcome {
  bool passed = true;
  std::size_t cases = 0;
  double worst = 0;  // largest measured/bound style ratio, when meaningful
  std::string detail;

  void fail(const std::string& what) {
    if (passed) detail = what;
    passed = false;
  }
  void absorb(const VerificationReport& r, const std::string& where) {
    cases += r.cases;
    if (!r.passed) fail(where + " " + r.check + ": " + r.counterexample.value_or("failed"));
  }
};

std::string note_of(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.notes)
    if (k == key) return v;
  return "";
}

// Quarter-grid sigma, small-denominator lambda and eta; g and the cell count cycle.
std::vector<RunConfig> battery() {
  testutil::RationalGen gen(20240917);
  std::vector<RunConfig> out;
  for (int i = 0; i < kBatterySize; ++i) {
    RunConfig c;
    const int cells = 1 + i % 3;
    for (int j = 0; j < cells; ++j) {
      Rational sigma(1 + static_cast<long>(gen.next(8)), 4);
      sigma.canonicalize();
      c.cells.push_back({"c" + std::to_string(j), sigma, gen.in(-2, 2), gen.in(0, 2)});
    }
    c.coefficient_dim = 1 + (i / 3) % 3;
    c.z.seed = 1000 + static_cast<std::uint64_t>(i);
    c.degree = kDegree;
    c.depth = kNumericDepth;
    c.tolerance = kTolerance;
    out.push_back(c);
  }
  return out;
}

std::string label(int i, const RunConfig& c) {
  std::ostringstream os;
  os << "[config " << i << ": " << c.cells.size() << " cells, g = " << c.coefficient_dim << "]";
  return os.str();
}

Outcome formal(const std::vector<RunConfig>& configs) {
  Outcome o;
  int free_equal = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const DiscreteSpace space = build_space(configs[i]);
    const VerificationReport r = verify_genfun_formal(space, build_field(configs[i], space), kDegree);
    o.absorb(r, label(static_cast<int>(i), configs[i]));
    free_equal += note_of(r, "free_algebra_equal") == "true";
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(free_equal) + "/" + std::to_string(configs.size()) +
              " equal in the free algebra";
  return o;
}

Outcome numeric(const std::vector<RunConfig>& configs, double& worst_form_gap, bool& forms_ok) {
  Outcome o;
  worst_form_gap = 0;
  forms_ok = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const DiscreteSpace space = build_space(configs[i]);
    const FockRep rep = FockRep::build(space, kNumericDepth);
    NumericOptions options;
    options.degree = kDegree;
    options.form_tolerance = kTolerance;
    try {
      const VerificationReport r = verify_genfun_numeric(space, build_field(configs[i], space), rep, options);
      o.absorb(r, label(static_cast<int>(i), configs[i]));
      if (r.bound > 0) o.worst = std::max(o.worst, r.measured / r.bound);
      const double gap = std::stod(note_of(r, "form_gap"));
      worst_form_gap = std::max(worst_form_gap, gap);
      if (!(gap <= kTolerance)) forms_ok = false;
    } catch (const Error& e) {
      o.fail(label(static_cast<int>(i), configs[i]) + " " + e.what());
      forms_ok = false;
    }
  }
  return o;
}

Outcome globality() {
  Outcome o;
  testutil::RationalGen gen(4);
  std::vector<DiscreteSpace> spaces;
  spaces.push_back(build_space(demo_config()));
  for (int t = 0; t < 5; ++t) {
    std::vector<Cell> cs;
    for (int j = 0; j < 2; ++j) cs.push_back({"c" + std::to_string(j), gen.positive(3), gen.in(-2, 2), Rational(0)});
    spaces.emplace_back(cs);
  }
  for (const auto& space : spaces) o.absorb(verify_globality(space, 5), "globality");

  // Golden expansion of the global operator on a degree-4 monomial pairing.
  for (const auto& space : spaces) {
    std::vector<StepFunction> f;
    for (int i = 0; i < 4; ++i) {
      StepFunction g(space);
      for (CellIndex j = 0; j < space.size(); ++j) g.set(j, gen.in(-2, 2));
      f.push_back(g);
    }
    auto avg = [&](const StepFunction& g) { return integrate(space, g); };
    auto prod = [](const StepFunction& a, const StepFunction& b) { return pointwise_product(a, b); };
    PolyElement expected = monomial_pairing(space, f);
    expected += monomial_pairing(space, {f[2], f[3]}) * avg(prod(f[0], f[1]));
    expected += monomial_pairing(space, {f[3]}) * avg(times_lambda(space, prod(prod(f[0], f[1]), f[2])));
    expected.add({}, avg(prod(f[0], f[1])) * avg(prod(f[2], f[3])));
    expected.add({}, avg(prod(f[0], f[3])) * avg(prod(f[1], f[2])));
    expected.add({}, avg(times_lambda(space, times_lambda(space, prod(prod(f[0], f[1]), prod(f[2], f[3]))))));
    ++o.cases;
    if (!(global_operator(space, monomial_pairing(space, f)) == expected)) o.fail("six-term expansion mismatch");
  }
  return o;
}

Outcome one_dimensional(const std::vector<RunConfig>& configs) {
  Outcome o;
  testutil::RationalGen gen(77);
  std::vector<JacobiParams> params;
  for (int t = 0; t < 40; ++t) params.emplace_back(gen.in(-3, 3, 6), gen.in(0, 3, 6), gen.positive(3, 6));
  for (const auto& c : configs)
    for (const auto& cell : c.cells) params.emplace_back(cell.lambda, cell.eta, cell.sigma);

  for (const auto& p : params) {
    const std::string where = "(lambda, eta, k) = (" + to_string(p.lambda) + ", " + to_string(p.eta) + ", " +
                              to_string(p.k) + ")";
    const auto polys = meixner_polys(12, p);
    const auto coeffs = genfun_1d_coefficients(12, p);
    for (int n = 0; n <= 12; ++n) {
      ++o.cases;
      if (!(polys[n] == coeffs[n])) o.fail(where + " polynomial " + std::to_string(n));
    }
    const auto kappa = free_cumulants(p, 10);
    for (int n = 1; n <= 10; ++n) {
      ++o.cases;
      if (vacuum_moment(n, p) != moment_from_cumulants(kappa, n)) o.fail(where + " moment " + std::to_string(n));
    }
    o.absorb(verify_1d_annihilation(p, 8), where);
  }
  return o;
}

Outcome orthogonality(const std::vector<RunConfig>& configs) {
  Outcome o;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const FockRep rep = FockRep::build(build_space(configs[i]), kFockDepth);
    const VerificationReport r = verify_chaos_orthogonality(rep, 4, kTolerance);
    o.absorb(r, label(static_cast<int>(i), configs[i]));
    o.worst = std::max(o.worst, r.measured);
  }
  return o;
}

Outcome factorization(const std::vector<RunConfig>& configs) {
  Outcome o;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const DiscreteSpace space = build_space(configs[i]);
    const FockRep rep = FockRep::build(space, kFockDepth);
    for (const auto& blocks : factorization_patterns(space, 5, configs[i].z.seed)) {
      const VerificationReport r = verify_factorization(rep, blocks, kTolerance);
      o.absorb(r, label(static_cast<int>(i), configs[i]));
      o.worst = std::max(o.worst, r.measured);
    }
  }
  return o;
}

Outcome norm_bounds(const std::vector<RunConfig>& configs) {
  Outcome o;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    RunConfig c = configs[i];
    c.depth = kFockDepth;
    const SuiteResult s = run_suite("bounds", c);
    if (s.reason) o.fail(label(static_cast<int>(i), c) + " " + *s.reason);
    for (const auto& r : s.checks) {
      o.absorb(r, label(static_cast<int>(i), c));
      o.worst = std::max(o.worst, r.measured);
    }
  }
  return o;
}

Outcome combinatorics() {
  Outcome o;
  // Catalan numbers from the product formula C_{n} = prod_{k=2}^{n} (n + k) / k.
  for (int n = 1; n <= 10; ++n) {
    Rational catalan = 1;
    for (int k = 2; k <= n; ++k) {
      Rational factor(n + k, k);
      factor.canonicalize();
      catalan *= factor;
    }
    ++o.cases;
    if (Rational(static_cast<long>(enumerate_nc(n).size())) != catalan)
      o.fail("|NC(" + std::to_string(n) + ")| = " + std::to_string(enumerate_nc(n).size()));
  }
  std::set<SetPartition> expected = {SetPartition::from_blocks(4, {{1, 2}, {3, 4}}),
                                     SetPartition::from_blocks(4, {{1, 4}, {2, 3}}),
                                     SetPartition::from_blocks(4, {{1, 2, 3, 4}})};
  const auto got = enumerate_nc_min2(4);
  ++o.cases;
  if (got.size() != 3 || std::set<SetPartition>(got.begin(), got.end()) != expected)
    o.fail("NC>=2(4) has " + std::to_string(got.size()) + " partitions");
  return o;
}

bool report(int number, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("aborted: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d %-26s %s  cases=%zu worst=%.3g time=%.2fs%s%s\n", number, name.c_str(),
              o.passed ? "PASS" : "FAIL", o.cases, o.worst, seconds, o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  return o.passed;
}

}  // namespace

int main() {
  const std::vector<RunConfig> configs = battery();
  bool ok = true;
  double form_gap = 0;
  bool forms_ok = false;

  ok &= report(1, "generating-function-formal", [&] { return formal(configs); });
  ok &= report(2, "generating-function-numeric", [&] { return numeric(configs, form_gap, forms_ok); });
  ok &= report(3, "resolvent-form-equivalence", [&] {
    Outcome o;
    o.cases = configs.size();
    o.worst = form_gap;
    if (!forms_ok) o.fail("form gap above " + std::to_string(kTolerance) + " or numeric run aborted");
    return o;
  });
  ok &= report(4, "globality", globality);
  ok &= report(5, "one-dimensional", [&] { return one_dimensional(configs); });
  ok &= report(6, "chaos-orthogonality", [&] { return orthogonality(configs); });
  ok &= report(7, "factorization", [&] { return factorization(configs); });
  ok &= report(8, "norm-bounds", [&] { return norm_bounds(configs); });
  ok &= report(9, "non-crossing-partitions", combinatorics);
  std::printf("%s\n", ok ? "ALL PASS" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
