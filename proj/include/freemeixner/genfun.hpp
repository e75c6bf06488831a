#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freemeixner/fock.hpp"
#include "freemeixner/rational.hpp"
#include "freemeixner/report.hpp"
#include "freemeixner/space.hpp"
#include "freemeixner/symbolic.hpp"

namespace freemeixner {

/// Dense square matrix over the rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, Rational(0)) {}
  RationalMatrix(std::size_t dim, std::vector<Rational> entries);  // row-major
  static RationalMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const std::vector<Rational>& entries() const { return a_; }
  bool is_zero() const;

  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator*(const Rational& s) const;
  RationalMatrix& operator+=(const RationalMatrix& o);
  bool operator==(const RationalMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }
  bool operator<(const RationalMatrix& o) const;

  /// Certified upper bound of the spectral norm: sqrt of min(Frobenius^2, ||.||_1 ||.||_inf).
  Rational norm_upper() const;
  double norm_estimate() const;  // largest singular value in binary64
  Eigen::MatrixXd to_double() const;
  std::string str() const;

private:
  void require_dim(const RationalMatrix& o) const;
  std::size_t dim_ = 0;
  std::vector<Rational> a_;
};

/// Simple operator-valued test field Z = sum_j Z_j chi_{cell j}, g x g rational blocks.
class OperatorStepField {
public:
  OperatorStepField(const DiscreteSpace& space, std::size_t dim);
  OperatorStepField(const DiscreteSpace& space, std::size_t dim, const std::map<CellIndex, RationalMatrix>& values);

  std::size_t dim() const { return dim_; }
  std::size_t cells() const { return values_.size(); }
  std::uint64_t space_id() const { return space_id_; }
  const RationalMatrix& at(CellIndex j) const { return values_.at(j); }
  void set(CellIndex j, RationalMatrix m);
  std::vector<CellIndex> support() const;
  bool is_zero() const;

  /// ||Z||_inf as a certified rational upper bound and a binary64 estimate.
  Rational norm_upper() const;
  double norm_estimate() const;

  OperatorStepField operator*(const Rational& s) const;
  bool operator==(const OperatorStepField& o) const { return dim_ == o.dim_ && values_ == o.values_; }

private:
  std::uint64_t space_id_;
  std::size_t dim_;
  std::vector<RationalMatrix> values_;
};

/// Cell-wise product Z1(t) Z2(t).
OperatorStepField field_product(const OperatorStepField& a, const OperatorStepField& b);

/// int Z d sigma = sum_j sigma_j Z_j
RationalMatrix field_integral(const DiscreteSpace& space, const OperatorStepField& z);

/// Element of (g x g matrices) (x) (free algebra on X_j): monomial word -> matrix coefficient.
class CoefficientAlgebraElement {
public:
  explicit CoefficientAlgebraElement(std::size_t dim) : dim_(dim) {}
  static CoefficientAlgebraElement unit(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::map<Word, RationalMatrix>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  RationalMatrix coefficient(const Word& w) const;

  void add(const Word& w, const RationalMatrix& m);
  CoefficientAlgebraElement& operator+=(const CoefficientAlgebraElement& o);
  CoefficientAlgebraElement& operator-=(const CoefficientAlgebraElement& o);
  CoefficientAlgebraElement operator*(const CoefficientAlgebraElement& o) const;
  CoefficientAlgebraElement operator*(const Rational& s) const;
  bool operator==(const CoefficientAlgebraElement& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  /// M * this, the matrix acting on the coefficient side.
  CoefficientAlgebraElement left_matrix(const RationalMatrix& m) const;

  std::string str(const DiscreteSpace* space = nullptr) const;

private:
  std::size_t dim_;
  std::map<Word, RationalMatrix> terms_;
};

/// <omega, Z> = sum_j Z_j (x) X_j
CoefficientAlgebraElement smeared_pairing(const OperatorStepField& z);

/// <P^(n)(omega), Z1 (*) ... (*) Zn> from the matrix-valued three-term recursion.
CoefficientAlgebraElement ortho_pairing_Z(const DiscreteSpace& space, const std::vector<OperatorStepField>& fields);

/// [1, <P^(1), Z>, ..., <P^(d), Z^(*d)>]
std::vector<CoefficientAlgebraElement> genfun_series_coefficients(const DiscreteSpace& space,
                                                                  const OperatorStepField& z, int degree);

/// z-coefficients 0..d of (1 - sum_j Psi_j(zZ_j) (x) X_j + sum_j sigma_j C Psi_j(zZ_j) (x) 1)^{-1}.
std::vector<CoefficientAlgebraElement> genfun_closed_coefficients(const DiscreteSpace& space,
                                                                  const OperatorStepField& z, int degree);

/// A coefficient-algebra element applied to a vector of G (x) Fock, the latter
/// stored as a (Fock dim) x g matrix whose column a is the e_a component.
Eigen::MatrixXd apply_element(const FockRep& rep, const CoefficientAlgebraElement& e, const Eigen::MatrixXd& v);

/// Degree-by-degree comparison of the two generating-function expansions. When the
/// free-algebra comparison fails, the difference is also evaluated in a Fock model
/// of depth degree + 2 and the outcome recorded as a representation-dependence note.
VerificationReport verify_genfun_formal(const DiscreteSpace& space, const OperatorStepField& z, int degree);

/// Kronecker-assembled sum_j Z_j (x) X_j with its measured norm against ||Z|| C3(supp Z).
struct IntegralOperator {
  SparseMatrix matrix;
  double norm = 0;
  double bound = 0;
  bool within_bound = true;
};
IntegralOperator integral_simple(const OperatorStepField& z, const FockRep& rep);

struct NumericOptions {
  int degree = 8;
  double truncation_allowance = 1e-9;
  double form_tolerance = 1e-10;
  double solver_tolerance = 1e-15;
};

/// Resummed resolvent against the degree-d partial sum of the orthogonal
/// expansion on e_a (x) Omega for every a, plus the factored resolvent form.
/// Requires ||Z||_inf < C5(supp Z) / 2.
VerificationReport verify_genfun_numeric(const DiscreteSpace& space, const OperatorStepField& z, const FockRep& rep,
                                           const NumericOptions& options = {});

/// Reproducible random field: entries p/q with |p| <= 4, q <= 4 on every cell,
/// divided by the least integer that brings norm_upper() to at most norm_cap.
OperatorStepField random_operator_field(const DiscreteSpace& space, std::size_t dim, std::uint64_t seed,
                                        const Rational& norm_cap);

}  // namespace freemeixner
