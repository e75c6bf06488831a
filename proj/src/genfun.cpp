#include "freemeixner/genfun.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

namespace freemeixner {

RationalMatrix::RationalMatrix(std::size_t dim, std::vector<Rational> entries) : dim_(dim), a_(std::move(entries)) {
  if (a_.size() != dim * dim) throw StructuralError("matrix needs dim^2 entries");
  for (auto& x : a_) x.canonicalize();
}

RationalMatrix RationalMatrix::identity(std::size_t dim) {
  RationalMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
}

void RationalMatrix::require_dim(const RationalMatrix& o) const {
  if (o.dim_ != dim_)
    throw StructuralError("matrix dimensions " + std::to_string(dim_) + " and " + std::to_string(o.dim_) + " differ");
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  RationalMatrix r = *this;
  r += o;
  return r;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  require_dim(o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  require_dim(o);
  RationalMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  require_dim(o);
  RationalMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

bool RationalMatrix::operator<(const RationalMatrix& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return std::lexicographical_compare(a_.begin(), a_.end(), o.a_.begin(), o.a_.end());
}

Rational RationalMatrix::norm_upper() const {
  if (dim_ == 0) return 0;
  Rational frob = 0, col_max = 0, row_max = 0;
  for (const auto& x : a_) frob += x * x;
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational row = 0, col = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      row += abs((*this)(i, j));
      col += abs((*this)(j, i));
    }
    row_max = std::max(row_max, row);
    col_max = std::max(col_max, col);
  }
  return sqrt_upper(std::min(frob, Rational(row_max * col_max)));
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

double RationalMatrix::norm_estimate() const {
  if (dim_ == 0) return 0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(to_double()).singularValues()(0);
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? ", " : "") << to_string((*this)(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

OperatorStepField::OperatorStepField(const DiscreteSpace& space, std::size_t dim)
    : space_id_(space.id()), dim_(dim), values_(space.size(), RationalMatrix(dim)) {
  if (dim == 0) throw StructuralError("coefficient dimension must be positive");
}

OperatorStepField::OperatorStepField(const DiscreteSpace& space, std::size_t dim,
                                     const std::map<CellIndex, RationalMatrix>& values)
    : OperatorStepField(space, dim) {
  for (const auto& [j, m] : values) {
    space.cell(j);
    set(j, m);
  }
}

void OperatorStepField::set(CellIndex j, RationalMatrix m) {
  if (j >= values_.size()) throw StructuralError("unknown cell index " + std::to_string(j));
  if (m.dim() != dim_)
    throw StructuralError("cell matrix of dimension " + std::to_string(m.dim()) + " in a field of dimension " +
                          std::to_string(dim_));
  values_[j] = std::move(m);
}

std::vector<CellIndex> OperatorStepField::support() const {
  std::vector<CellIndex> s;
  for (CellIndex j = 0; j < values_.size(); ++j)
    if (!values_[j].is_zero()) s.push_back(j);
  return s;
}

bool OperatorStepField::is_zero() const { return support().empty(); }

Rational OperatorStepField::norm_upper() const {
  Rational n = 0;
  for (const auto& m : values_) n = std::max(n, m.norm_upper());
  return n;
}

double OperatorStepField::norm_estimate() const {
  double n = 0;
  for (const auto& m : values_) n = std::max(n, m.norm_estimate());
  return n;
}

OperatorStepField OperatorStepField::operator*(const Rational& s) const {
  OperatorStepField r = *this;
  for (auto& m : r.values_) m = m * s;
  return r;
}

OperatorStepField field_product(const OperatorStepField& a, const OperatorStepField& b) {
  if (a.space_id() != b.space_id()) throw StructuralError("operator fields live on different spaces");
  if (a.dim() != b.dim()) throw StructuralError("operator fields of different dimensions");
  OperatorStepField r = a;
  for (CellIndex j = 0; j < a.cells(); ++j) r.set(j, a.at(j) * b.at(j));
  return r;
}

RationalMatrix field_integral(const DiscreteSpace& space, const OperatorStepField& z) {
  if (z.space_id() != space.id()) throw StructuralError("operator field not defined on this space");
  RationalMatrix r(z.dim());
  for (CellIndex j = 0; j < z.cells(); ++j) r += z.at(j) * space.sigma(j);
  return r;
}

CoefficientAlgebraElement CoefficientAlgebraElement::unit(std::size_t dim) {
  CoefficientAlgebraElement e(dim);
  e.add({}, RationalMatrix::identity(dim));
  return e;
}

int CoefficientAlgebraElement::degree() const {
  int d = -1;
  for (const auto& [w, m] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

RationalMatrix CoefficientAlgebraElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? RationalMatrix(dim_) : it->second;
}

void CoefficientAlgebraElement::add(const Word& w, const RationalMatrix& m) {
  if (m.dim() != dim_) throw StructuralError("coefficient of the wrong dimension");
  if (m.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, m);
  if (!inserted) {
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoefficientAlgebraElement& CoefficientAlgebraElement::operator+=(const CoefficientAlgebraElement& o) {
  for (const auto& [w, m] : o.terms_) add(w, m);
  return *this;
}

CoefficientAlgebraElement& CoefficientAlgebraElement::operator-=(const CoefficientAlgebraElement& o) {
  for (const auto& [w, m] : o.terms_) add(w, m * Rational(-1));
  return *this;
}

CoefficientAlgebraElement CoefficientAlgebraElement::operator*(const CoefficientAlgebraElement& o) const {
  if (o.dim_ != dim_) throw StructuralError("coefficient dimensions differ");
  CoefficientAlgebraElement r(dim_);
  for (const auto& [wa, ma] : terms_)
    for (const auto& [wb, mb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ma * mb);
    }
  return r;
}

CoefficientAlgebraElement CoefficientAlgebraElement::operator*(const Rational& s) const {
  CoefficientAlgebraElement r(dim_);
  for (const auto& [w, m] : terms_) r.add(w, m * s);
  return r;
}

CoefficientAlgebraElement CoefficientAlgebraElement::left_matrix(const RationalMatrix& m) const {
  CoefficientAlgebraElement r(dim_);
  for (const auto& [w, c] : terms_) r.add(w, m * c);
  return r;
}

std::string CoefficientAlgebraElement::str(const DiscreteSpace* space) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, m] : terms_) {
    os << (first ? "" : " + ") << m.str() << "*X" << word_string(w, space);
    first = false;
  }
  return os.str();
}

CoefficientAlgebraElement smeared_pairing(const OperatorStepField& z) {
  CoefficientAlgebraElement e(z.dim());
  for (CellIndex j = 0; j < z.cells(); ++j) e.add({j}, z.at(j));
  return e;
}

namespace {

// (sum_j F_j (x) X_j) * e
CoefficientAlgebraElement field_times(const OperatorStepField& f, const CoefficientAlgebraElement& e) {
  CoefficientAlgebraElement r(e.dim());
  for (CellIndex j = 0; j < f.cells(); ++j) {
    if (f.at(j).is_zero()) continue;
    for (const auto& [w, m] : e.terms()) {
      Word jw;
      jw.reserve(w.size() + 1);
      jw.push_back(j);
      jw.insert(jw.end(), w.begin(), w.end());
      r.add(jw, f.at(j) * m);
    }
  }
  return r;
}

OperatorStepField cellwise_scale(const OperatorStepField& f, const DiscreteSpace& space, bool use_eta) {
  OperatorStepField r = f;
  for (CellIndex j = 0; j < f.cells(); ++j) r.set(j, f.at(j) * (use_eta ? space.eta(j) : space.lambda(j)));
  return r;
}

void check_fields(const DiscreteSpace& space, const std::vector<OperatorStepField>& fields) {
  for (const auto& f : fields) {
    if (f.space_id() != space.id()) throw StructuralError("operator field not defined on this space");
    if (f.dim() != fields.front().dim()) throw StructuralError("operator fields of different dimensions");
  }
}

CoefficientAlgebraElement ortho_pairing_Z_rec(const DiscreteSpace& space, const std::vector<OperatorStepField>& fs,
                                              std::size_t dim) {
  const std::size_t n = fs.size();
  if (n == 0) return CoefficientAlgebraElement::unit(dim);
  if (n == 1) return smeared_pairing(fs[0]);
  const std::vector<OperatorStepField> from2(fs.begin() + 1, fs.end());
  CoefficientAlgebraElement r = field_times(fs[0], ortho_pairing_Z_rec(space, from2, dim));

  const OperatorStepField f01 = field_product(fs[0], fs[1]);
  std::vector<OperatorStepField> merged = from2;
  merged[0] = cellwise_scale(f01, space, false);
  r -= ortho_pairing_Z_rec(space, merged, dim);

  const std::vector<OperatorStepField> from3(fs.begin() + 2, fs.end());
  r -= ortho_pairing_Z_rec(space, from3, dim).left_matrix(field_integral(space, f01));

  if (n >= 3) {
    std::vector<OperatorStepField> merged3 = from3;
    merged3[0] = cellwise_scale(field_product(f01, fs[2]), space, true);
    r -= ortho_pairing_Z_rec(space, merged3, dim);
  }
  return r;
}

// Every field reached by the recursion started from Z, Z, ..., Z is
// F_{a,b} = lambda^a eta^b Z^{1+a+2b} cell-wise, and every later slot holds Z.
// S(a, b, n) = <P^(n), F_{a,b} (*) Z^(*(n-1))> satisfies
//   S(a,b,n) = <omega, F_{a,b}> S(0,0,n-1) - S(a+1,b,n-1) - (int F_{a,b} Z) S(0,0,n-2) - [n>=3] S(a,b+1,n-2).
class PowerFields {
public:
  PowerFields(const DiscreteSpace& space, const OperatorStepField& z) : space_(space), z_(z) {}

  const OperatorStepField& field(int a, int b) {
    auto key = std::make_pair(a, b);
    if (auto it = fields_.find(key); it != fields_.end()) return it->second;
    OperatorStepField f(space_, z_.dim());
    for (CellIndex j = 0; j < z_.cells(); ++j)
      f.set(j, power(j, 1 + a + 2 * b) * (pow(space_.lambda(j), a) * pow(space_.eta(j), b)));
    return fields_.emplace(key, std::move(f)).first->second;
  }

  const RationalMatrix& integral(int a, int b) {
    auto key = std::make_pair(a, b);
    if (auto it = integrals_.find(key); it != integrals_.end()) return it->second;
    RationalMatrix m(z_.dim());
    for (CellIndex j = 0; j < z_.cells(); ++j)
      m += power(j, 2 + a + 2 * b) * (space_.sigma(j) * pow(space_.lambda(j), a) * pow(space_.eta(j), b));
    return integrals_.emplace(key, std::move(m)).first->second;
  }

  const DiscreteSpace& space() const { return space_; }
  const OperatorStepField& z() const { return z_; }

private:
  const RationalMatrix& power(CellIndex j, int m) {
    auto key = std::make_pair(j, m);
    if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    RationalMatrix p = m == 0 ? RationalMatrix::identity(z_.dim()) : power(j, m - 1) * z_.at(j);
    return powers_.emplace(key, std::move(p)).first->second;
  }

  const DiscreteSpace& space_;
  const OperatorStepField& z_;
  std::map<std::pair<int, int>, OperatorStepField> fields_;
  std::map<std::pair<int, int>, RationalMatrix> integrals_;
  std::map<std::pair<CellIndex, int>, RationalMatrix> powers_;
};

class SeriesMemo {
public:
  explicit SeriesMemo(PowerFields& fields) : fields_(fields) {}

  const CoefficientAlgebraElement& get(int a, int b, int n) {
    auto key = std::make_tuple(a, b, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::size_t dim = fields_.z().dim();
    CoefficientAlgebraElement r(dim);
    if (n == 0) {
      r = CoefficientAlgebraElement::unit(dim);
    } else if (n == 1) {
      r = smeared_pairing(fields_.field(a, b));
    } else {
      r = field_times(fields_.field(a, b), get(0, 0, n - 1));
      r -= get(a + 1, b, n - 1);
      r -= get(0, 0, n - 2).left_matrix(fields_.integral(a, b));
      if (n >= 3) r -= get(a, b + 1, n - 2);
    }
    return memo_.emplace(key, std::move(r)).first->second;
  }

private:
  PowerFields& fields_;
  std::map<std::tuple<int, int, int>, CoefficientAlgebraElement> memo_;
};

void check_field(const DiscreteSpace& space, const OperatorStepField& z) {
  if (z.space_id() != space.id()) throw StructuralError("operator field not defined on this space");
}

}  // namespace

CoefficientAlgebraElement ortho_pairing_Z(const DiscreteSpace& space, const std::vector<OperatorStepField>& fields) {
  if (fields.empty()) throw PreconditionError("ortho_pairing_Z needs at least one field to fix the dimension");
  check_fields(space, fields);
  return ortho_pairing_Z_rec(space, fields, fields.front().dim());
}

std::vector<CoefficientAlgebraElement> genfun_series_coefficients(const DiscreteSpace& space,
                                                                  const OperatorStepField& z, int degree) {
  if (degree < 0) throw PreconditionError("degree must be non-negative");
  check_field(space, z);
  PowerFields fields(space, z);
  SeriesMemo memo(fields);
  std::vector<CoefficientAlgebraElement> out;
  for (int n = 0; n <= degree; ++n) out.push_back(memo.get(0, 0, n));
  return out;
}

std::vector<CoefficientAlgebraElement> genfun_closed_coefficients(const DiscreteSpace& space,
                                                                  const OperatorStepField& z, int degree) {
  if (degree < 0) throw PreconditionError("degree must be non-negative");
  check_field(space, z);
  const std::size_t g = z.dim();
  // Per cell, (1 + lambda zZ + eta z^2 Z^2)^{-1} = sum_m B_m z^m with
  // B_0 = I, B_m = -lambda Z B_{m-1} - eta Z^2 B_{m-2}.
  std::vector<std::vector<RationalMatrix>> B(z.cells());
  for (CellIndex j = 0; j < z.cells(); ++j) {
    const RationalMatrix& Z = z.at(j);
    const RationalMatrix Z2 = Z * Z;
    B[j].push_back(RationalMatrix::identity(g));
    for (int m = 1; m < degree; ++m) {
      RationalMatrix next = Z * B[j][m - 1] * Rational(-space.lambda(j));
      if (m >= 2) next += Z2 * B[j][m - 2] * Rational(-space.eta(j));
      B[j].push_back(std::move(next));
    }
  }
  // A_m = sum_j Z_j B_{j,m-1} (x) X_j - sum_j sigma_j Z_j^2 B_{j,m-2} (x) 1
  std::vector<CoefficientAlgebraElement> A(degree + 1, CoefficientAlgebraElement(g));
  for (int m = 1; m <= degree; ++m)
    for (CellIndex j = 0; j < z.cells(); ++j) {
      const RationalMatrix& Z = z.at(j);
      A[m].add({j}, Z * B[j][m - 1]);
      if (m >= 2) A[m].add({}, Z * Z * B[j][m - 2] * Rational(-space.sigma(j)));
    }
  std::vector<CoefficientAlgebraElement> G;
  G.push_back(CoefficientAlgebraElement::unit(g));
  for (int n = 1; n <= degree; ++n) {
    CoefficientAlgebraElement gn(g);
    for (int m = 1; m <= n; ++m) gn += A[m] * G[n - m];
    G.push_back(std::move(gn));
  }
  return G;
}

Eigen::MatrixXd apply_element(const FockRep& rep, const CoefficientAlgebraElement& e, const Eigen::MatrixXd& v) {
  if (static_cast<std::size_t>(v.rows()) != rep.dim() || static_cast<std::size_t>(v.cols()) != e.dim())
    throw StructuralError("vector shape does not match the model and coefficient dimension");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v.rows(), v.cols());
  for (const auto& [w, m] : e.terms()) {
    Eigen::MatrixXd x = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = rep.field(*it) * x;
    out += x * m.to_double().transpose();
  }
  return out;
}

VerificationReport verify_genfun_formal(const DiscreteSpace& space, const OperatorStepField& z, int degree) {
  VerificationReport report;
  report.check = "genfun-formal";
  const auto series = genfun_series_coefficients(space, z, degree);
  const auto closed = genfun_closed_coefficients(space, z, degree);
  int first_bad = -1;
  for (int n = 0; n <= degree; ++n) {
    ++report.cases;
    if (!(series[n] == closed[n])) {
      first_bad = n;
      break;
    }
  }
  if (first_bad < 0) {
    report.note("free_algebra_equal", "true");
    return report;
  }

  report.note("free_algebra_equal", "false");
  CoefficientAlgebraElement diff = series[first_bad];
  diff -= closed[first_bad];
  const Word& w = diff.terms().begin()->first;
  const std::string witness = "degree " + std::to_string(first_bad) + ", word " + word_string(w, &space) +
                              ": series " + series[first_bad].coefficient(w).str() + " vs closed " +
                              closed[first_bad].coefficient(w).str();
  report.note("first_free_algebra_difference", witness);

  // Representation-level fallback.
  const FockRep rep = FockRep::build(space, degree + 2);
  double gap = 0;
  for (int n = first_bad; n <= degree; ++n) {
    CoefficientAlgebraElement d = series[n];
    d -= closed[n];
    for (std::size_t a = 0; a < z.dim(); ++a) {
      Eigen::MatrixXd v = Eigen::MatrixXd::Zero(rep.dim(), z.dim());
      v(0, a) = 1.0;
      gap = std::max(gap, apply_element(rep, d, v).norm());
    }
  }
  report.measured = gap;
  report.bound = 1e-10;
  report.note("representation_gap", format_double(gap));
  if (gap > report.bound) report.record_failure(witness);
  return report;
}

namespace {

// sum_t kron(M_t, X_t) in the layout index = a * dim + i.
SparseMatrix kron_sum(const std::vector<std::pair<Eigen::MatrixXd, const SparseMatrix*>>& terms, std::size_t dim,
                      std::size_t g) {
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t nnz = 0;
  for (const auto& [M, X] : terms) nnz += X->nonZeros() * g * g;
  triplets.reserve(nnz);
  for (const auto& [M, X] : terms)
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b) {
        const double m = M(a, b);
        if (m == 0.0) continue;
        for (int k = 0; k < X->outerSize(); ++k)
          for (SparseMatrix::InnerIterator it(*X, k); it; ++it)
            triplets.emplace_back(a * dim + it.row(), b * dim + it.col(), m * it.value());
      }
  SparseMatrix K(dim * g, dim * g);
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

SparseMatrix identity_kron(const Eigen::MatrixXd& M, std::size_t dim, std::size_t g) {
  SparseMatrix I(dim, dim);
  I.setIdentity();
  return kron_sum({{M, &I}}, dim, g);
}

Eigen::VectorXd solve(const SparseMatrix& M, const Eigen::VectorXd& rhs, double tol, int& iterations) {
  Eigen::BiCGSTAB<SparseMatrix> solver;
  solver.setTolerance(tol);
  solver.setMaxIterations(2000);
  solver.compute(M);
  Eigen::VectorXd x = solver.solve(rhs);
  iterations = std::max(iterations, static_cast<int>(solver.iterations()));
  const double residual = (M * x - rhs).norm();
  if (!std::isfinite(residual) || residual > 1e-11 * std::max(1.0, rhs.norm()))
    throw NumericalError("resolvent solve did not converge (residual " + format_double(residual) + ")");
  return x;
}

// Numeric twin of SeriesMemo acting on one vector of G (x) Fock.
class NumericSeries {
public:
  NumericSeries(const FockRep& rep, PowerFields& fields, const Eigen::MatrixXd& base)
      : rep_(rep), fields_(fields), base_(base) {}

  const Eigen::MatrixXd& get(int a, int b, int n) {
    auto key = std::make_tuple(a, b, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Eigen::MatrixXd r;
    if (n == 0) {
      r = base_;
    } else if (n == 1) {
      r = field_apply(fields_.field(a, b), base_);
    } else {
      r = field_apply(fields_.field(a, b), get(0, 0, n - 1));
      r -= get(a + 1, b, n - 1);
      r -= get(0, 0, n - 2) * fields_.integral(a, b).to_double().transpose();
      if (n >= 3) r -= get(a, b + 1, n - 2);
    }
    return memo_.emplace(key, std::move(r)).first->second;
  }

private:
  Eigen::MatrixXd field_apply(const OperatorStepField& f, const Eigen::MatrixXd& v) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v.rows(), v.cols());
    for (CellIndex j = 0; j < f.cells(); ++j)
      if (!f.at(j).is_zero()) out += (rep_.field(j) * v) * f.at(j).to_double().transpose();
    return out;
  }

  const FockRep& rep_;
  PowerFields& fields_;
  Eigen::MatrixXd base_;
  std::map<std::tuple<int, int, int>, Eigen::MatrixXd> memo_;
};

}  // namespace

IntegralOperator integral_simple(const OperatorStepField& z, const FockRep& rep) {
  check_field(rep.space(), z);
  IntegralOperator out;
  std::vector<std::pair<Eigen::MatrixXd, const SparseMatrix*>> terms;
  for (CellIndex j : z.support()) terms.emplace_back(z.at(j).to_double(), &rep.field(j));
  out.matrix = terms.empty() ? SparseMatrix(rep.dim() * z.dim(), rep.dim() * z.dim())
                             : kron_sum(terms, rep.dim(), z.dim());
  out.norm = operator_norm_estimate(out.matrix);
  if (!terms.empty()) out.bound = z.norm_upper().get_d() * norm_constants(rep.space(), z.support()).c3;
  out.within_bound = out.norm <= out.bound * (1 + 1e-12);
  return out;
}

VerificationReport verify_genfun_numeric(const DiscreteSpace& space, const OperatorStepField& z, const FockRep& rep,
                                           const NumericOptions& options) {
  check_field(space, z);
  if (!rep.space().same_geometry(space)) throw StructuralError("Fock model built on a different space");
  if (options.degree < 0) throw PreconditionError("degree must be non-negative");
  VerificationReport report;
  report.check = "genfun-numeric";
  const std::size_t g = z.dim();
  const std::size_t dim = rep.dim();
  const std::vector<CellIndex> support = z.support();

  double q = 0;
  if (!support.empty()) {
    const NormConstants nc = norm_constants(space, support);
    const Rational norm = z.norm_upper();
    if (!(norm * 2 < nc.c5_lower))
      throw PreconditionError("||Z|| <= " + to_string(norm) + " is not below half the radius " +
                              to_string(nc.c5_lower));
    q = norm.get_d() * nc.c4_upper.get_d();
    report.note("norm_upper", to_string(norm));
    report.note("c4", format_double(nc.c4));
    report.note("c5_lower", to_string(nc.c5_lower));
  }
  report.bound = std::pow(q, options.degree + 1) / (1 - q) + options.truncation_allowance;
  report.note("tail_ratio", format_double(q));

  // Psi_j = Z_j (I + lambda Z_j + eta Z_j^2)^{-1}, C Psi_j = Z_j Psi_j.
  std::vector<std::pair<Eigen::MatrixXd, const SparseMatrix*>> psi_terms;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(g, g);
  for (CellIndex j : support) {
    const Eigen::MatrixXd Z = z.at(j).to_double();
    const Eigen::MatrixXd denom = Eigen::MatrixXd::Identity(g, g) + space.lambda(j).get_d() * Z +
                                  space.eta(j).get_d() * Z * Z;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(denom);
    if (!lu.isInvertible()) throw NumericalError("1 + lambda Z + eta Z^2 is singular on cell " + space.cell(j).name);
    const Eigen::MatrixXd psi = Z * lu.inverse();
    psi_terms.emplace_back(psi, &rep.field(j));
    S += space.sigma(j).get_d() * Z * psi;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> f_lu(Eigen::MatrixXd::Identity(g, g) + S);
  if (!f_lu.isInvertible()) throw NumericalError("1 + int C Psi(Z) d sigma is singular");
  const Eigen::MatrixXd f = f_lu.inverse();

  SparseMatrix I(dim * g, dim * g);
  I.setIdentity();
  SparseMatrix resolvent_op = I;
  SparseMatrix factored_op = I;
  if (!psi_terms.empty()) {
    const SparseMatrix K1 = kron_sum(psi_terms, dim, g);
    resolvent_op = I - K1 + identity_kron(S, dim, g);
    auto f_terms = psi_terms;
    for (auto& t : f_terms) t.first = f * t.first;
    factored_op = I - kron_sum(f_terms, dim, g);
  }

  PowerFields fields(space, z);
  int iterations = 0;
  double form_gap = 0;
  for (std::size_t a = 0; a < g; ++a) {
    Eigen::MatrixXd base = Eigen::MatrixXd::Zero(dim, g);
    base(0, a) = 1.0;
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(base.data(), base.size());
    const Eigen::VectorXd x = solve(resolvent_op, b, options.solver_tolerance, iterations);

    const Eigen::MatrixXd fb = base * f.transpose();
    const Eigen::VectorXd y = solve(factored_op, Eigen::Map<const Eigen::VectorXd>(fb.data(), fb.size()),
                                    options.solver_tolerance, iterations);

    NumericSeries series(rep, fields, base);
    Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(dim, g);
    for (int n = 0; n <= options.degree; ++n) partial += series.get(0, 0, n);
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(partial.data(), partial.size());

    ++report.cases;
    report.measured = std::max(report.measured, (x - p).norm());
    form_gap = std::max(form_gap, (x - y).norm());
  }
  report.note("form_gap", format_double(form_gap));
  report.note("form_tolerance", format_double(options.form_tolerance));
  report.note("solver_iterations", std::to_string(iterations));
  report.note("fock_dim", std::to_string(dim));
  if (report.measured > report.bound)
    report.record_failure("resolvent and partial sum differ by " + format_double(report.measured) +
                          " > tail bound " + format_double(report.bound));
  if (form_gap > options.form_tolerance)
    report.record_failure("factored resolvent form differs by " + format_double(form_gap));
  return report;
}

OperatorStepField random_operator_field(const DiscreteSpace& space, std::size_t dim, std::uint64_t seed,
                                        const Rational& norm_cap) {
  if (norm_cap <= 0) throw PreconditionError("norm cap must be positive");
  std::mt19937_64 engine(seed);
  OperatorStepField z(space, dim);
  for (CellIndex j = 0; j < space.size(); ++j) {
    std::vector<Rational> entries;
    for (std::size_t k = 0; k < dim * dim; ++k) {
      const long num = static_cast<long>(engine() % 9) - 4;
      const long den = 1 + static_cast<long>(engine() % 4);
      Rational q(num, den);
      q.canonicalize();
      entries.push_back(q);
    }
    z.set(j, RationalMatrix(dim, entries));
  }
  const Rational norm = z.norm_upper();
  if (norm == 0) return z;
  const Rational ratio = norm / norm_cap;
  mpz_class m = ratio.get_num() / ratio.get_den();
  if (m < 1) m = 1;
  OperatorStepField scaled = z * Rational(mpz_class(1), m);
  while (scaled.norm_upper() > norm_cap) {
    ++m;
    scaled = z * Rational(mpz_class(1), m);
  }
  return scaled;
}

}  // namespace freemeixner
