#include <doctest.h>

#include "freemeixner/meixner1d.hpp"
#include "freemeixner/symbolic.hpp"
#include "test_util.hpp"

using namespace freemeixner;
using testutil::Q;

namespace {

DiscreteSpace two_cells_gauss_poisson() {
  return DiscreteSpace({{"a", Q("1"), Q("1"), Q("0")}, {"b", Q("2"), Q("-1"), Q("0")}});
}

DiscreteSpace random_space(testutil::RationalGen& gen, std::size_t cells, bool with_eta) {
  std::vector<Cell> cs;
  for (std::size_t j = 0; j < cells; ++j)
    cs.push_back({"c" + std::to_string(j), gen.positive(3), gen.in(-2, 2), with_eta ? gen.in(0, 2) : Rational(0)});
  return DiscreteSpace(cs);
}

StepFunction random_step(testutil::RationalGen& gen, const DiscreteSpace& space) {
  std::vector<Rational> v;
  for (std::size_t j = 0; j < space.size(); ++j) v.push_back(gen.in(-3, 3));
  return StepFunction(space, v);
}

PolyElement mono(const Word& w, Rational c = 1) { return PolyElement::word(Basis::monomial, w, c); }
PolyElement ortho(const Word& w, Rational c = 1) { return PolyElement::word(Basis::orthogonal, w, c); }

}  // namespace

TEST_CASE("orthogonal words of one letter follow the one-dimensional recursion") {
  testutil::RationalGen gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteSpace space = random_space(gen, 2, true);
    BasisConverter conv(space);
    for (CellIndex j = 0; j < space.size(); ++j) {
      const JacobiParams params(space.lambda(j), space.eta(j), space.sigma(j));
      for (std::size_t n = 0; n <= 7; ++n) {
        const Polynomial p = meixner_poly(n, params);
        PolyElement expected(Basis::monomial);
        for (std::size_t d = 0; d <= n; ++d) expected.add(Word(d, j), p.coeff(d));
        CHECK(conv.ortho_word_in_monomials(Word(n, j)) == expected);
      }
    }
  }
}

TEST_CASE("hand expansions in one cell") {
  const DiscreteSpace space({{"t", Q("3"), Q("0"), Q("0")}});
  // P(jj) = X^2 - sigma when lambda = 0
  CHECK(ortho_to_mono(space, ortho({0, 0})) == mono({0, 0}) - mono({}, 3));
  CHECK(mono_to_ortho(space, mono({0, 0})) == ortho({0, 0}) + ortho({}, 3));
  // partial (X^2 - sigma) = X
  const PolyElement p = mono({0, 0}) - mono({}, 3);
  CHECK(ortho_to_mono(space, annihilation(0, mono_to_ortho(space, p))) == mono({0}));
  CHECK(free_derivative(0, global_operator(space, p)) == mono({0}));
}

TEST_CASE("left multiplication by a field") {
  const DiscreteSpace space({{"a", Q("2"), Q("1/2"), Q("3")}, {"b", Q("1"), Q("0"), Q("0")}});
  CHECK(left_multiply_field(space, 0, PolyElement::unit(Basis::orthogonal)) == ortho({0}));
  CHECK(left_multiply_field(space, 0, ortho({1})) == ortho({0, 1}));
  CHECK(left_multiply_field(space, 0, ortho({0, 1})) ==
        ortho({0, 0, 1}) + ortho({0, 1}, Q("1/2")) + ortho({1}, Q("2")));
  CHECK(left_multiply_field(space, 0, ortho({0, 0})) ==
        ortho({0, 0, 0}) + ortho({0, 0}, Q("1/2")) + ortho({0}, Q("5")));
  CHECK_THROWS_AS(left_multiply_field(space, 0, mono({0})), StructuralError);
}

TEST_CASE("basis conversions are mutually inverse") {
  testutil::RationalGen gen(23);
  for (std::size_t cells = 1; cells <= 3; ++cells) {
    const DiscreteSpace space = random_space(gen, cells, true);
    BasisConverter conv(space);
    const std::size_t max_len = cells == 3 ? 6 : 7;
    for (std::size_t len = 0; len <= max_len; ++len)
      for (const Word& w : all_words(cells, len)) {
        CHECK(conv.to_orthogonal(conv.ortho_word_in_monomials(w)) == ortho(w));
        CHECK(conv.to_monomial(conv.monomial_word_in_orthos(w)) == mono(w));
      }
  }
}

TEST_CASE("conversions are triangular with unit leading term") {
  testutil::RationalGen gen(5);
  const DiscreteSpace space = random_space(gen, 3, true);
  BasisConverter conv(space);
  for (const Word& w : all_words(3, 4)) {
    const PolyElement p = conv.ortho_word_in_monomials(w);
    CHECK(p.coefficient(w) == 1);
    CHECK(p.degree() == 4);
    for (const auto& [v, c] : p.terms())
      if (v.size() == 4) CHECK(v == w);
  }
}

TEST_CASE("annihilation drops a matching head letter") {
  testutil::RationalGen gen(3);
  for (std::size_t len = 0; len <= 4; ++len)
    for (const Word& w : all_words(2, len))
      for (CellIndex j = 0; j < 2; ++j) {
        Word jw = w;
        jw.insert(jw.begin(), j);
        CHECK(annihilation(j, ortho(jw)) == ortho(w));
        CHECK(annihilation(1 - j, ortho(jw)).is_zero());
      }
  CHECK(annihilation(0, PolyElement::unit(Basis::orthogonal)).is_zero());
  CHECK(free_derivative(1, mono({1, 0, 1})) == mono({0, 1}));
  CHECK(free_derivative(0, mono({1, 0, 1})).is_zero());
  CHECK_THROWS_AS(annihilation(0, mono({0})), StructuralError);
}

TEST_CASE("orthogonal words factorize across distinct adjacent cells") {
  testutil::RationalGen gen(41);
  for (int trial = 0; trial < 5; ++trial) {
    const DiscreteSpace space = random_space(gen, 3, true);
    BasisConverter conv(space);
    for (std::size_t lu = 1; lu <= 3; ++lu)
      for (std::size_t lv = 1; lv <= 3; ++lv)
        for (const Word& u : all_words(3, lu))
          for (const Word& v : all_words(3, lv)) {
            if (u.back() == v.front()) continue;
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            CHECK(conv.ortho_word_in_monomials(uv) ==
                  multiply(conv.ortho_word_in_monomials(u), conv.ortho_word_in_monomials(v)));
          }
  }
}

TEST_CASE("orthogonal pairing agrees with the step-function recursion") {
  testutil::RationalGen gen(77);
  for (int trial = 0; trial < 12; ++trial) {
    const DiscreteSpace space = random_space(gen, 1 + gen.next(3), true);
    BasisConverter conv(space);
    for (std::size_t n = 0; n <= 5; ++n) {
      std::vector<StepFunction> fs;
      for (std::size_t i = 0; i < n; ++i) fs.push_back(random_step(gen, space));
      CHECK(conv.to_monomial(ortho_pairing(space, fs)) == ortho_pairing_by_recursion(space, fs));
    }
  }
}

TEST_CASE("global operator: trivial inputs") {
  const DiscreteSpace space = two_cells_gauss_poisson();
  CHECK(global_operator(space, PolyElement::unit(Basis::monomial)) == PolyElement::unit(Basis::monomial));
  CHECK(global_operator(space, mono({1})) == mono({1}));
  CHECK(global_operator(space, mono({0, 1})) == mono({0, 1}));
  CHECK(global_operator(space, mono({1, 1, 0})) == mono({1, 1, 0}) + mono({0}, 2));
}

TEST_CASE("global operator on a degree-4 pairing gives the six-term expansion") {
  testutil::RationalGen gen(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Cell> cs;
    for (int j = 0; j < 2; ++j) cs.push_back({"c" + std::to_string(j), gen.positive(3), gen.in(-2, 2), Rational(0)});
    const DiscreteSpace space(cs);
    std::vector<StepFunction> f;
    for (int i = 0; i < 4; ++i) f.push_back(random_step(gen, space));
    auto avg = [&](const StepFunction& g) { return integrate(space, g); };
    auto prod = [](const StepFunction& a, const StepFunction& b) { return pointwise_product(a, b); };

    const PolyElement lhs = global_operator(space, monomial_pairing(space, f));

    PolyElement expected = monomial_pairing(space, f);
    expected += monomial_pairing(space, {f[2], f[3]}) * avg(prod(f[0], f[1]));
    expected += monomial_pairing(space, {f[3]}) * avg(times_lambda(space, prod(prod(f[0], f[1]), f[2])));
    expected.add({}, avg(prod(f[0], f[1])) * avg(prod(f[2], f[3])));
    expected.add({}, avg(prod(f[0], f[3])) * avg(prod(f[1], f[2])));
    expected.add({}, avg(times_lambda(space, times_lambda(space, prod(prod(f[0], f[1]), prod(f[2], f[3]))))));
    CHECK(lhs == expected);
  }
}

TEST_CASE("global operator requires eta = 0") {
  const DiscreteSpace space({{"a", Q("1"), Q("0"), Q("1/2")}});
  CHECK_THROWS_AS(global_operator(space, mono({0, 0})), PreconditionError);
  CHECK_THROWS_AS(verify_globality(space, 3), PreconditionError);
}

TEST_CASE("globality holds exactly") {
  SUBCASE("two cells, lambda = (1,-1), sigma = (1,2), degree 5") {
    const VerificationReport r = verify_globality(two_cells_gauss_poisson(), 5);
    CHECK(r.passed);
    CHECK(r.cases == 2 * (1 + 2 + 4 + 8 + 16 + 32));
  }
  SUBCASE("random Gauss-Poisson spaces") {
    testutil::RationalGen gen(99);
    for (int trial = 0; trial < 6; ++trial) {
      const DiscreteSpace space = random_space(gen, 1 + trial % 3, false);
      const VerificationReport r = verify_globality(space, trial % 3 == 2 ? 3 : 4);
      CHECK_MESSAGE(r.passed, r.counterexample.value_or(""));
    }
  }
  SUBCASE("lambda = 0 reduces to a single term") {
    const DiscreteSpace space({{"a", Q("2"), Q("0"), Q("0")}, {"b", Q("1/2"), Q("0"), Q("0")}});
    BasisConverter conv(space);
    for (std::size_t len = 0; len <= 4; ++len)
      for (const Word& w : all_words(2, len))
        for (CellIndex j = 0; j < 2; ++j)
          CHECK(conv.to_monomial(annihilation(j, conv.to_orthogonal(mono(w)))) ==
                free_derivative(j, global_operator(space, mono(w))));
  }
}

TEST_CASE("a broken operator is caught by the globality check") {
  // With lambda != 0 the single-term form is wrong; the check must notice.
  const DiscreteSpace space({{"a", Q("1"), Q("1"), Q("0")}});
  BasisConverter conv(space);
  const PolyElement w = mono({0, 0});
  const PolyElement exact = conv.to_monomial(annihilation(0, conv.to_orthogonal(w)));
  CHECK_FALSE(exact == free_derivative(0, global_operator(space, w)));
}

TEST_CASE("mixing bases is a structural error") {
  CHECK_THROWS_AS(mono({0}) + ortho({0}), StructuralError);
  CHECK_THROWS_AS(multiply(mono({0}), ortho({0})), StructuralError);
  const DiscreteSpace space = two_cells_gauss_poisson();
  CHECK_THROWS_AS(global_operator(space, mono({0, 5})), StructuralError);
}
