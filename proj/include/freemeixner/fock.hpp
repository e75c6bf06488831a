#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <utility>
#include <vector>

#include "freemeixner/rational.hpp"
#include "freemeixner/report.hpp"
#include "freemeixner/space.hpp"
#include "freemeixner/symbolic.hpp"

namespace freemeixner {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Basis element (j1,n1)(j2,n2)... of the truncated free-product space; empty is the vacuum.
using FockWord = std::vector<std::pair<CellIndex, int>>;

/// Truncated free product of the one-cell Jacobi towers.
///
/// Basis elements are alternating words with total level sum(n_i) <= depth, stored
/// level by level, so the elements of level <= L form an index prefix. Creation
/// beyond the depth is dropped; the field matrices are exactly symmetric.
class FockRep {
public:
  static constexpr std::size_t kDefaultMaxBasis = 4'000'000;

  static FockRep build(const DiscreteSpace& space, int depth, std::size_t max_basis = kDefaultMaxBasis);

  const DiscreteSpace& space() const { return space_; }
  int depth() const { return depth_; }
  std::size_t dim() const { return level_.size(); }
  int level(std::size_t index) const { return level_[index]; }
  /// Number of basis elements of level <= L (L clamped to [0, depth]).
  std::size_t prefix_size(int L) const;
  FockWord word(std::size_t index) const;
  /// Index of the element reached from `index` by one creation step in cell j, or npos at the boundary.
  std::size_t creation_target(std::size_t index, CellIndex j) const;

  const SparseMatrix& field(CellIndex j) const { return fields_.at(j); }
  Vector vacuum() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  FockRep(DiscreteSpace space) : space_(std::move(space)) {}
  DiscreteSpace space_;
  int depth_ = 0;
  std::vector<int> level_;
  std::vector<std::size_t> parent_;
  std::vector<CellIndex> head_cell_;
  std::vector<int> head_power_;
  std::vector<std::size_t> children_;
  std::vector<std::size_t> level_end_;
  std::vector<SparseMatrix> fields_;
};

/// Sum of alternating words sum_{L<=depth} cells^L.
std::size_t fock_dimension(std::size_t cells, int depth);

/// sum_j f_j X_j
SparseMatrix smeared_field(const FockRep& rep, const StepFunction& f);

/// <Omega, F Omega>
double vacuum_expectation(const FockRep& rep, const SparseMatrix& F);

/// Matrix of <P^(n)(omega), f1 (x) ... (x) fn> from the three-term recursion on
/// step functions, restricted to the first `columns` basis columns (all by
/// default). truncated is set when n > depth - 2.
struct PolyOperator {
  SparseMatrix matrix;
  bool truncated = false;
};
PolyOperator ortho_poly_operator(const FockRep& rep, const std::vector<StepFunction>& fs,
                                 std::size_t columns = FockRep::npos);

/// The same pairing applied to a single vector.
Vector apply_ortho_poly(const FockRep& rep, const std::vector<StepFunction>& fs, const Vector& v);

/// A monomial-basis element evaluated on a vector (words act right to left).
Vector apply_monomial(const FockRep& rep, const PolyElement& p, const Vector& v);

/// |<P^(n) Omega, P^(m) Omega>| <= tol for every pair of cell-indicator words
/// of degrees n != m <= nmax. Requires nmax <= depth - 2.
VerificationReport verify_chaos_orthogonality(const FockRep& rep, int nmax, double tol = 1e-10);

/// Consecutive groups of test functions; every function of a block is supported
/// in that block's cell set, and adjacent cell sets are disjoint.
using FactorBlocks = std::vector<std::vector<StepFunction>>;

/// <P, g1 (x) ... (x) gm> against the product of the block pairings, numerically
/// on basis columns below the truncation boundary and exactly in the symbolic model.
VerificationReport verify_factorization(const FockRep& rep, const FactorBlocks& blocks, double tol = 1e-10);

struct NormConstants {
  Rational c3_upper;
  Rational c4_upper;
  Rational c6_lower;
  Rational c5_lower;  // min(1 / c4_upper, c6_lower)
  double c3 = 0;
  double c4 = 0;
  double c5 = 0;
};

/// C3, C4, C5 for the cell subset A, as certified rational bounds plus doubles.
NormConstants norm_constants(const DiscreteSpace& space, const std::vector<CellIndex>& cells);

/// Certified lower bound for the analyticity radius C5(A).
Rational domain_radius(const DiscreteSpace& space, const std::vector<CellIndex>& cells);

/// Vacuum moments of X_j against the Motzkin-path and moment-cumulant oracles.
VerificationReport moment_crosscheck(const FockRep& rep, CellIndex j, int nmax, double tol = 1e-10);

/// Power-iteration estimate of the largest singular value of M restricted to its
/// first `columns` columns. A lower estimate of the true norm.
double operator_norm_estimate(const SparseMatrix& M, std::size_t columns = FockRep::npos, int iterations = 300);

}  // namespace freemeixner
