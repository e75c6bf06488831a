#pragma once

#include <map>
#include <string>
#include <vector>

#include "freemeixner/partitions.hpp"
#include "freemeixner/rational.hpp"
#include "freemeixner/report.hpp"
#include "freemeixner/space.hpp"

namespace freemeixner {

/// Sequence of cell indices (j1, ..., jn). In the monomial basis it stands for
/// <omega^{(x)n}, e_j1 (x) ... (x) e_jn> = X_j1 ... X_jn; in the orthogonal basis
/// for <P^(n)(omega), e_j1 (x) ... (x) e_jn>. The empty word is the unit.
using Word = std::vector<CellIndex>;

std::string word_string(const Word& w, const DiscreteSpace* space = nullptr);

enum class Basis { monomial, orthogonal };

/// Exact element of the polynomial algebra in omega over cell indicators.
class PolyElement {
public:
  explicit PolyElement(Basis basis) : basis_(basis) {}
  static PolyElement unit(Basis basis);
  static PolyElement word(Basis basis, Word w, Rational c = 1);

  Basis basis() const { return basis_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero
  Rational coefficient(const Word& w) const;

  void add(const Word& w, const Rational& c);
  PolyElement& operator+=(const PolyElement& o);
  PolyElement& operator-=(const PolyElement& o);
  PolyElement operator+(const PolyElement& o) const;
  PolyElement operator-(const PolyElement& o) const;
  PolyElement operator*(const Rational& s) const;
  bool operator==(const PolyElement& o) const { return basis_ == o.basis_ && terms_ == o.terms_; }

  /// Every letter is a cell of the space.
  void check_cells(const DiscreteSpace& space) const;

  std::string str(const DiscreteSpace* space = nullptr) const;

private:
  void require_basis(const PolyElement& o) const;
  Basis basis_;
  std::map<Word, Rational> terms_;
};

/// Noncommutative product of monomial-basis elements (word concatenation).
PolyElement multiply(const PolyElement& a, const PolyElement& b);

/// X_j * p re-expanded in the orthogonal basis.
PolyElement left_multiply_field(const DiscreteSpace& space, CellIndex j, const PolyElement& p);

/// Exact conversions between the monomial and orthogonal word bases, with a
/// per-word cache; reuse one instance across a battery.
class BasisConverter {
public:
  explicit BasisConverter(DiscreteSpace space);

  const DiscreteSpace& space() const { return space_; }
  const PolyElement& ortho_word_in_monomials(const Word& w);
  const PolyElement& monomial_word_in_orthos(const Word& w);
  PolyElement to_monomial(const PolyElement& p);
  PolyElement to_orthogonal(const PolyElement& p);

private:
  DiscreteSpace space_;
  std::map<Word, PolyElement> ortho_cache_;
  std::map<Word, PolyElement> mono_cache_;
};

PolyElement mono_to_ortho(const DiscreteSpace& space, const PolyElement& p);
PolyElement ortho_to_mono(const DiscreteSpace& space, const PolyElement& p);

/// D_j: drops a leading j from monomial words, kills everything else.
PolyElement free_derivative(CellIndex j, const PolyElement& p);

/// partial_j: drops a leading j from orthogonal words, kills everything else.
PolyElement annihilation(CellIndex j, const PolyElement& p);

/// The global operator 1 + sum_{n>=2} sum_{zeta in NC>=2(n)} int W^-(zeta) D_t1 ... D_tn
/// on a monomial-basis element. Requires eta = 0 on every cell.
PolyElement global_operator(const DiscreteSpace& space, const PolyElement& p);

/// partial_j against sum_k lambda_j^{k-1} (D_j G)^k on every monomial word of
/// length <= degree and every cell j, exactly. Requires eta = 0.
VerificationReport verify_globality(const DiscreteSpace& space, int degree);

/// <omega^{(x)n}, f1 (x) ... (x) fn> expanded over cell words.
PolyElement monomial_pairing(const DiscreteSpace& space, const std::vector<StepFunction>& fs);

/// <P^(n)(omega), f1 (x) ... (x) fn> in the orthogonal basis (multilinear expansion).
PolyElement ortho_pairing(const DiscreteSpace& space, const std::vector<StepFunction>& fs);

/// The same pairing computed in the monomial basis directly from the
/// three-term recursion on step functions.
PolyElement ortho_pairing_by_recursion(const DiscreteSpace& space, const std::vector<StepFunction>& fs);

/// All words of length exactly n over the cells of the space, lexicographic.
std::vector<Word> all_words(std::size_t cells, std::size_t n);

}  // namespace freemeixner
