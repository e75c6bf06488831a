#include "freemeixner/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "freemeixner/meixner1d.hpp"
#include "freemeixner/partitions.hpp"

namespace freemeixner {

std::size_t fock_dimension(std::size_t cells, int depth) {
  std::size_t total = 0, level = 1;
  for (int L = 0; L <= depth; ++L) {
    total += level;
    if (L < depth && level > (static_cast<std::size_t>(-1) / 2) / std::max<std::size_t>(cells, 1))
      return static_cast<std::size_t>(-1);
    level *= cells;
  }
  return total;
}

FockRep FockRep::build(const DiscreteSpace& space, int depth, std::size_t max_basis) {
  if (depth < 2) throw PreconditionError("Fock depth must be at least 2");
  const std::size_t K = space.size();
  const std::size_t total = fock_dimension(K, depth);
  if (total > max_basis)
    throw CapacityError("Fock basis of " + std::to_string(total) + " elements exceeds the cap of " +
                        std::to_string(max_basis));

  FockRep rep(space);
  rep.depth_ = depth;
  rep.level_.reserve(total);
  rep.parent_.reserve(total);
  rep.head_cell_.reserve(total);
  rep.head_power_.reserve(total);
  rep.children_.assign(total * K, npos);

  rep.level_.push_back(0);
  rep.parent_.push_back(npos);
  rep.head_cell_.push_back(0);
  rep.head_power_.push_back(0);
  for (std::size_t idx = 0; idx < rep.level_.size(); ++idx) {
    if (rep.level_[idx] == depth) continue;
    for (CellIndex j = 0; j < K; ++j) {
      const std::size_t child = rep.level_.size();
      rep.children_[idx * K + j] = child;
      rep.level_.push_back(rep.level_[idx] + 1);
      rep.parent_.push_back(idx);
      rep.head_cell_.push_back(j);
      rep.head_power_.push_back(rep.head_power_[idx] > 0 && rep.head_cell_[idx] == j ? rep.head_power_[idx] + 1 : 1);
    }
  }
  for (int L = 0; L <= depth; ++L) {
    auto end = std::upper_bound(rep.level_.begin(), rep.level_.end(), L);
    rep.level_end_.push_back(static_cast<std::size_t>(end - rep.level_.begin()));
  }

  for (CellIndex j = 0; j < K; ++j) {
    const double lambda = to_double(space.lambda(j));
    const double b1 = std::sqrt(to_double(space.sigma(j)));
    const double bn = std::sqrt(to_double(space.sigma(j) + space.eta(j)));
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(3 * total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const bool starts_with_j = rep.head_power_[idx] > 0 && rep.head_cell_[idx] == j;
      if (starts_with_j && lambda != 0.0) triplets.emplace_back(idx, idx, lambda);
      const std::size_t child = rep.children_[idx * K + j];
      if (child == npos) continue;
      const double weight = starts_with_j ? bn : b1;
      triplets.emplace_back(child, idx, weight);
      triplets.emplace_back(idx, child, weight);
    }
    SparseMatrix X(total, total);
    X.setFromTriplets(triplets.begin(), triplets.end());
    rep.fields_.push_back(std::move(X));
  }
  return rep;
}

std::size_t FockRep::prefix_size(int L) const {
  L = std::clamp(L, 0, depth_);
  return level_end_[L];
}

FockWord FockRep::word(std::size_t index) const {
  FockWord w;
  while (index != 0) {
    const int power = head_power_[index];
    w.emplace_back(head_cell_[index], power);
    for (int k = 0; k < power; ++k) index = parent_[index];
  }
  return w;
}

std::size_t FockRep::creation_target(std::size_t index, CellIndex j) const {
  return children_.at(index * space_.size() + j);
}

Vector FockRep::vacuum() const {
  Vector v = Vector::Zero(dim());
  v[0] = 1.0;
  return v;
}

SparseMatrix smeared_field(const FockRep& rep, const StepFunction& f) {
  if (f.space_id() != rep.space().id()) throw StructuralError("step function not defined on the model's space");
  SparseMatrix M(rep.dim(), rep.dim());
  for (CellIndex j = 0; j < rep.space().size(); ++j)
    if (f[j] != 0) M += rep.field(j) * to_double(f[j]);
  return M;
}

double vacuum_expectation(const FockRep& rep, const SparseMatrix& F) {
  (void)rep;
  return F.coeff(0, 0);
}

namespace {

template <class T>
T apply_field(const FockRep& rep, const StepFunction& f, const T& x) {
  T out = T::Zero(x.rows(), x.cols());
  for (CellIndex j = 0; j < rep.space().size(); ++j)
    if (f[j] != 0) out += (rep.field(j) * x) * to_double(f[j]);
  return out;
}

template <>
SparseMatrix apply_field(const FockRep& rep, const StepFunction& f, const SparseMatrix& x) {
  SparseMatrix out(x.rows(), x.cols());
  for (CellIndex j = 0; j < rep.space().size(); ++j)
    if (f[j] != 0) out += SparseMatrix(rep.field(j) * x) * to_double(f[j]);
  return out;
}

// <P^(n), f_1 (x) ... (x) f_n> applied to `base` via the step-function recursion.
template <class T>
T ortho_recursion(const FockRep& rep, const std::vector<StepFunction>& fs, const T& base) {
  const DiscreteSpace& space = rep.space();
  const std::size_t n = fs.size();
  if (n == 0) return base;
  if (n == 1) return apply_field(rep, fs[0], base);
  const std::vector<StepFunction> from2(fs.begin() + 1, fs.end());
  T r = apply_field(rep, fs[0], ortho_recursion(rep, from2, base));

  const StepFunction f01 = pointwise_product(fs[0], fs[1]);
  std::vector<StepFunction> merged = from2;
  merged[0] = times_lambda(space, f01);
  if (!merged[0].is_zero()) r -= ortho_recursion(rep, merged, base);

  const std::vector<StepFunction> from3(fs.begin() + 2, fs.end());
  const Rational mass = integrate(space, f01);
  if (mass != 0) r -= ortho_recursion(rep, from3, base) * to_double(mass);

  if (n >= 3) {
    std::vector<StepFunction> merged3 = from3;
    merged3[0] = times_eta(space, pointwise_product(f01, fs[2]));
    if (!merged3[0].is_zero()) r -= ortho_recursion(rep, merged3, base);
  }
  return r;
}

void check_functions(const FockRep& rep, const std::vector<StepFunction>& fs) {
  for (const auto& f : fs)
    if (f.space_id() != rep.space().id()) throw StructuralError("step function not defined on the model's space");
}

SparseMatrix column_identity(std::size_t rows, std::size_t cols) {
  SparseMatrix I(rows, cols);
  I.reserve(Eigen::VectorXi::Constant(static_cast<int>(cols), 1));
  for (std::size_t c = 0; c < cols; ++c) I.insert(c, c) = 1.0;
  I.makeCompressed();
  return I;
}

}  // namespace

PolyOperator ortho_poly_operator(const FockRep& rep, const std::vector<StepFunction>& fs, std::size_t columns) {
  check_functions(rep, fs);
  columns = std::min(columns, rep.dim());
  PolyOperator out;
  out.matrix = ortho_recursion(rep, fs, column_identity(rep.dim(), columns));
  out.matrix.prune(0.0);
  out.truncated = static_cast<int>(fs.size()) > rep.depth() - 2;
  return out;
}

Vector apply_ortho_poly(const FockRep& rep, const std::vector<StepFunction>& fs, const Vector& v) {
  check_functions(rep, fs);
  return ortho_recursion(rep, fs, v);
}

Vector apply_monomial(const FockRep& rep, const PolyElement& p, const Vector& v) {
  if (p.basis() != Basis::monomial) throw StructuralError("apply_monomial expects the monomial basis");
  p.check_cells(rep.space());
  Vector out = Vector::Zero(v.size());
  for (const auto& [w, c] : p.terms()) {
    Vector x = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = rep.field(*it) * x;
    out += x * to_double(c);
  }
  return out;
}

VerificationReport verify_chaos_orthogonality(const FockRep& rep, int nmax, double tol) {
  if (nmax < 0 || nmax > rep.depth() - 2) throw PreconditionError("chaos orthogonality needs 0 <= nmax <= depth - 2");
  const DiscreteSpace& space = rep.space();
  VerificationReport report;
  report.check = "orthogonality";
  report.bound = tol;

  struct Chaos {
    Word w;
    Vector v;
  };
  std::vector<std::vector<Chaos>> by_degree(nmax + 1);
  for (int n = 0; n <= nmax; ++n)
    for (const Word& w : all_words(space.size(), n)) {
      std::vector<StepFunction> fs;
      for (auto j : w) fs.push_back(StepFunction::indicator(space, j));
      by_degree[n].push_back({w, apply_ortho_poly(rep, fs, rep.vacuum())});
    }
  for (int n = 0; n <= nmax; ++n)
    for (int m = n + 1; m <= nmax; ++m)
      for (const auto& a : by_degree[n])
        for (const auto& b : by_degree[m]) {
          const double value = std::abs(a.v.dot(b.v));
          ++report.cases;
          if (value > report.measured) report.measured = value;
          if (value > tol)
            report.record_failure("<P" + word_string(a.w, &space) + " Omega, P" + word_string(b.w, &space) +
                                  " Omega> = " + format_double(value));
        }
  return report;
}

namespace {

std::set<CellIndex> block_support(const std::vector<StepFunction>& block) {
  std::set<CellIndex> cells;
  for (const auto& f : block)
    for (auto j : f.support()) cells.insert(j);
  return cells;
}

}  // namespace

VerificationReport verify_factorization(const FockRep& rep, const FactorBlocks& blocks, double tol) {
  const DiscreteSpace& space = rep.space();
  std::vector<StepFunction> all;
  std::vector<std::set<CellIndex>> supports;
  for (const auto& block : blocks) {
    if (block.empty()) throw PreconditionError("factorization blocks must be non-empty");
    check_functions(rep, block);
    supports.push_back(block_support(block));
    all.insert(all.end(), block.begin(), block.end());
  }
  for (std::size_t i = 0; i + 1 < supports.size(); ++i)
    for (auto j : supports[i])
      if (supports[i + 1].count(j))
        throw PreconditionError("blocks " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                " share cell " + space.cell(j).name);
  const int total = static_cast<int>(all.size());
  if (total > rep.depth()) throw PreconditionError("total degree exceeds the model depth");

  VerificationReport report;
  report.check = "factorization";
  report.bound = tol;
  report.cases = 1;

  PolyElement product = PolyElement::unit(Basis::monomial);
  for (const auto& block : blocks) product = multiply(product, ortho_pairing_by_recursion(space, block));
  if (!(ortho_pairing_by_recursion(space, all) == product)) {
    report.record_failure("symbolic factorization differs");
    return report;
  }

  const std::size_t columns = rep.prefix_size(rep.depth() - total);
  const SparseMatrix whole = ortho_poly_operator(rep, all, columns).matrix;
  SparseMatrix chained = column_identity(rep.dim(), columns);
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) chained = ortho_recursion(rep, *it, chained);
  const SparseMatrix diff = whole - chained;
  double scale = 1.0;
  for (int k = 0; k < whole.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(whole, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  report.measured = worst / scale;
  if (report.measured > tol) report.record_failure("numeric factorization gap " + format_double(report.measured));
  return report;
}

namespace {

struct CellSummary {
  Rational sigma_total = 0;
  Rational sup_abs_lambda = 0;
  Rational sup_eta = 0;
  Rational alpha_upper = 0;  // sup of the larger root modulus of x^2 - lambda x + eta
  Rational beta_upper = 0;   // sup of the smaller one
};

CellSummary summarize(const DiscreteSpace& space, const std::vector<CellIndex>& cells) {
  if (cells.empty()) throw PreconditionError("norm constants need a non-empty cell set");
  CellSummary s;
  for (auto j : cells) {
    const Rational& lambda = space.lambda(j);
    const Rational& eta = space.eta(j);
    s.sigma_total += space.sigma(j);
    s.sup_abs_lambda = std::max(s.sup_abs_lambda, abs(lambda));
    s.sup_eta = std::max(s.sup_eta, eta);
    const Rational disc = lambda * lambda - 4 * eta;
    Rational alpha, beta;
    if (disc >= 0) {
      alpha = (abs(lambda) + sqrt_upper(disc)) / 2;
      const Rational denom = abs(lambda) + sqrt_lower(disc);
      beta = eta == 0 ? Rational(0) : Rational(2 * eta / denom);
    } else {
      alpha = beta = sqrt_upper(eta);
    }
    s.alpha_upper = std::max(s.alpha_upper, alpha);
    s.beta_upper = std::max(s.beta_upper, beta);
  }
  return s;
}

Rational c3_of(const CellSummary& s) { return 2 * sqrt_upper(s.sigma_total) + 2 * s.sup_eta + s.sup_abs_lambda; }

// C (C3 + C sigma(A)) < (1 - alpha C)(1 - beta C), with both geometric series convergent.
bool radius_condition(const Rational& c, const Rational& c3, const CellSummary& s) {
  if (s.alpha_upper * c >= 1 || s.beta_upper * c >= 1) return false;
  return c * (c3 + c * s.sigma_total) < (1 - s.alpha_upper * c) * (1 - s.beta_upper * c);
}

Rational c6_lower(const CellSummary& s, const Rational& c3) {
  Rational lo = 0, hi = 1 / c3;
  for (int it = 0; it < 48; ++it) {
    Rational mid = (lo + hi) / 2;
    if (radius_condition(mid, c3, s))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

NormConstants norm_constants(const DiscreteSpace& space, const std::vector<CellIndex>& cells) {
  const CellSummary s = summarize(space, cells);
  NormConstants out;
  out.c3_upper = c3_of(s);
  out.c4_upper = 2 * sqrt_upper(s.sigma_total) + s.sigma_total + 2 * s.sup_eta + 3 * s.sup_abs_lambda;
  out.c6_lower = c6_lower(s, out.c3_upper);
  out.c5_lower = std::min(Rational(1 / out.c4_upper), out.c6_lower);
  const double root = std::sqrt(to_double(s.sigma_total));
  out.c3 = 2 * root + 2 * to_double(s.sup_eta) + to_double(s.sup_abs_lambda);
  out.c4 = 2 * root + to_double(s.sigma_total) + 2 * to_double(s.sup_eta) + 3 * to_double(s.sup_abs_lambda);
  out.c5 = to_double(out.c5_lower);
  return out;
}

Rational domain_radius(const DiscreteSpace& space, const std::vector<CellIndex>& cells) {
  return norm_constants(space, cells).c5_lower;
}

VerificationReport moment_crosscheck(const FockRep& rep, CellIndex j, int nmax, double tol) {
  if (nmax < 0 || nmax > rep.depth()) throw PreconditionError("moment check needs 0 <= nmax <= depth");
  const DiscreteSpace& space = rep.space();
  const JacobiParams params(space.lambda(j), space.eta(j), space.sigma(j));
  const std::vector<Rational> cumulants = free_cumulants(params, std::max(nmax, 2));
  VerificationReport report;
  report.check = "moments";
  report.bound = tol;
  Vector v = rep.vacuum();
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) v = rep.field(j) * v;
    const Rational path_moment = vacuum_moment(n, params);
    const Rational cumulant_moment = n == 0 ? Rational(1) : moment_from_cumulants(cumulants, n);
    const double gap = std::abs(v[0] - to_double(path_moment));
    ++report.cases;
    report.measured = std::max(report.measured, gap);
    if (path_moment != cumulant_moment)
      report.record_failure("cell " + space.cell(j).name + ", n = " + std::to_string(n) + ": path moment " +
                            to_string(path_moment) + " vs cumulant moment " + to_string(cumulant_moment));
    if (gap > tol * std::max(1.0, std::abs(to_double(path_moment))))
      report.record_failure("cell " + space.cell(j).name + ", n = " + std::to_string(n) + ": vacuum value " +
                            format_double(v[0]) + " vs " + to_string(path_moment));
  }
  return report;
}

double operator_norm_estimate(const SparseMatrix& M, std::size_t columns, int iterations) {
  columns = std::min<std::size_t>(columns, static_cast<std::size_t>(M.cols()));
  if (columns == 0 || M.nonZeros() == 0) return 0.0;
  const SparseMatrix A = M.leftCols(static_cast<Eigen::Index>(columns));
  Vector v(columns);
  for (std::size_t i = 0; i < columns; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  v.normalize();
  double estimate = (A * v).norm();
  for (int it = 0; it < iterations; ++it) {
    Vector u = A.transpose() * (A * v);
    const double n = u.norm();
    if (n == 0.0) break;
    v = u / n;
    estimate = std::max(estimate, (A * v).norm());
  }
  return estimate;
}

}  // namespace freemeixner
