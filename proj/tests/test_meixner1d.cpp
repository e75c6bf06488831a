#include <doctest.h>

#include "freemeixner/meixner1d.hpp"
#include "freemeixner/partitions.hpp"
#include "test_util.hpp"

using namespace freemeixner;
using testutil::Q;

namespace {

Polynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return Polynomial(v);
}

// Moment oracle: explicit powers of the truncated monic Jacobi matrix.
Rational jacobi_matrix_moment(std::size_t n, const JacobiParams& p) {
  const std::size_t dim = n + 1;
  std::vector<std::vector<Rational>> J(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t m = 0; m + 1 < dim; ++m) {
    J[m + 1][m] = 1;                                   // raise
    J[m][m + 1] = m == 0 ? p.k : p.k + p.eta;          // lower, weight c_{m+1}
  }
  for (std::size_t m = 1; m < dim; ++m) J[m][m] = p.lambda;
  std::vector<Rational> v(dim, Rational(0));
  v[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Rational> w(dim, Rational(0));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) w[r] += J[r][c] * v[c];
    v = w;
  }
  return v[0];
}

// Lagrange inversion: [z^n] g = (1/n) [w^{n-1}] (w / s(w))^n.
FormalSeries lagrange_inverse(const FormalSeries& s, std::size_t order) {
  std::vector<Rational> shifted(s.coeffs().begin() + 1, s.coeffs().end());
  FormalSeries s_over_w(order, shifted);
  const FormalSeries phi = s_over_w.reciprocal();
  FormalSeries power = FormalSeries::constant(order, 1);
  FormalSeries g(order);
  for (std::size_t n = 1; n <= order; ++n) {
    power = power * phi;
    g[n] = power[n - 1] / Rational(static_cast<long>(n));
  }
  return g;
}

Rational pairing(const Polynomial& a, const Polynomial& b, const std::vector<Rational>& moments) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) acc += a.coeffs()[i] * b.coeffs()[j] * moments[i + j];
  return acc;
}

JacobiParams random_params(testutil::RationalGen& gen) {
  return JacobiParams(gen.in(-2, 2), gen.in(0, 2), gen.positive(2));
}

}  // namespace

TEST_CASE("JacobiParams validation") {
  CHECK_THROWS_AS(JacobiParams(0, 0, 0), PreconditionError);
  CHECK_THROWS_AS(JacobiParams(0, -1, 1), PreconditionError);
}

TEST_CASE("meixner_poly") {
  CHECK(meixner_poly(0, {0, 0, 1}) == poly({1}));
  CHECK(meixner_poly(1, {3, 2, 1}) == poly({0, 1}));
  CHECK(meixner_poly(2, {0, 0, 1}) == poly({-1, 0, 1}));
  CHECK(meixner_poly(2, {1, 0, 2}) == poly({-2, -1, 1}));
  CHECK(meixner_poly(3, {0, 1, 1}) == poly({0, -3, 0, 1}));
  for (std::size_t n = 0; n < 8; ++n) CHECK(meixner_poly(n, {Q("1/3"), Q("1/2"), Q("2")}).is_monic());
}

TEST_CASE("vacuum_moment") {
  const JacobiParams semicircle(0, 0, 1);
  CHECK(vacuum_moment(2, semicircle) == 1);
  CHECK(vacuum_moment(4, semicircle) == 2);
  CHECK(vacuum_moment(6, semicircle) == 5);
  CHECK(vacuum_moment(3, JacobiParams(1, 0, 1)) == 1);
  for (std::size_t n = 1; n < 10; n += 2) CHECK(vacuum_moment(n, JacobiParams(0, Q("3/2"), Q("1/2"))) == 0);

  testutil::RationalGen gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(gen);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(vacuum_moment(n, p) == jacobi_matrix_moment(n, p));
  }
}

TEST_CASE("psi_series and c_compose_psi_series") {
  const std::size_t order = 6;
  CHECK(psi_series(0, 0, order) == FormalSeries::identity(order));
  CHECK(psi_series(1, 0, order) == FormalSeries(order, {0, 1, -1, 1, -1, 1, -1}));
  CHECK(psi_series(0, 1, order) == FormalSeries(order, {0, 1, 0, -1, 0, 1, 0}));

  CHECK(c_compose_psi_series(0, 0, order) == FormalSeries(order, {0, 0, 1}));
  CHECK(c_compose_psi_series(1, 0, order) == FormalSeries(order, {0, 0, 1, -1, 1, -1, 1}));

  testutil::RationalGen gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational lam = gen.in(-2, 2), eta = gen.in(0, 2);
    FormalSeries denom(order, {1, lam, eta});
    const auto psi = psi_series(lam, eta, order);
    const auto cpsi = c_compose_psi_series(lam, eta, order);
    CHECK(denom * psi == FormalSeries::identity(order));
    CHECK(denom * cpsi == FormalSeries(order, {0, 0, 1}));
    CHECK(cpsi[0] == 0);
    CHECK(cpsi[1] == 0);
  }
  CHECK_THROWS_AS(psi_series(0, 0, 0), PreconditionError);
}

TEST_CASE("series order mismatch fails loudly") {
  CHECK_THROWS_AS(FormalSeries::identity(3) + FormalSeries::identity(4), StructuralError);
  CHECK_THROWS_AS(FormalSeries::identity(3) * FormalSeries::identity(4), StructuralError);
}

TEST_CASE("series_compose_inverse") {
  const std::size_t order = 7;
  CHECK(series_compose_inverse(FormalSeries::identity(order), order) == FormalSeries::identity(order));

  const FormalSeries s(order, {0, 1, -1});
  CHECK(series_compose_inverse(s, order) == FormalSeries(order, {0, 1, 1, 2, 5, 14, 42, 132}));
  CHECK(series_compose_inverse(s, order) == lagrange_inverse(s, order));

  const Rational lam(-3, 2);
  FormalSeries expected(order);
  for (std::size_t m = 1; m <= order; ++m) expected[m] = pow(lam, static_cast<unsigned>(m - 1));
  CHECK(series_compose_inverse(psi_series(lam, 0, order), order) == expected);

  CHECK_THROWS_AS(series_compose_inverse(FormalSeries(order, {0, 0, 1}), order), SingularSeriesError);

  testutil::RationalGen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = psi_series(gen.in(-2, 2), gen.in(0, 2), order);
    const auto inv = series_compose_inverse(psi, order);
    CHECK(psi.compose(inv) == FormalSeries::identity(order));
    CHECK(inv.compose(psi) == FormalSeries::identity(order));
    CHECK(inv == lagrange_inverse(psi, order));
  }
}

TEST_CASE("free_cumulants") {
  const Rational k(5, 3);
  auto gauss = free_cumulants(JacobiParams(0, 0, k), 8);
  CHECK(gauss[0] == 0);
  CHECK(gauss[1] == k);
  for (std::size_t i = 2; i < gauss.size(); ++i) CHECK(gauss[i] == 0);

  const Rational lam(-2, 3);
  auto poisson = free_cumulants(JacobiParams(lam, 0, k), 8);
  CHECK(poisson[0] == 0);
  for (std::size_t n = 2; n <= 8; ++n) CHECK(poisson[n - 1] == k * pow(lam, static_cast<unsigned>(n - 2)));

  CHECK_THROWS_AS(free_cumulants(JacobiParams(0, 0, 1), 1), PreconditionError);
}

TEST_CASE("genfun_1d_coefficient") {
  const JacobiParams p(Q("3/2"), Q("1/4"), Q("2/3"));
  CHECK(genfun_1d_coefficient(0, p) == poly({1}));
  CHECK(genfun_1d_coefficient(1, p) == poly({0, 1}));
  CHECK(genfun_1d_coefficient(2, p) == Polynomial({-p.k, -p.lambda, 1}));
}

TEST_CASE("resolvent generating function reproduces the recursion up to degree 12") {
  testutil::RationalGen gen(1234);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(gen);
    const auto polys = meixner_polys(12, p);
    const auto coeffs = genfun_1d_coefficients(12, p);
    for (std::size_t n = 0; n <= 12; ++n) CHECK(coeffs[n] == polys[n]);
  }
}

TEST_CASE("moment-cumulant consistency up to order 10") {
  testutil::RationalGen gen(99);
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = random_params(gen);
    const auto kappa = free_cumulants(p, 10);
    for (int n = 1; n <= 10; ++n) CHECK(vacuum_moment(n, p) == moment_from_cumulants(kappa, n));
  }
}

TEST_CASE("recursion polynomials are orthogonal for the vacuum moments") {
  testutil::RationalGen gen(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_params(gen);
    std::vector<Rational> moments;
    for (std::size_t n = 0; n <= 12; ++n) moments.push_back(vacuum_moment(n, p));
    const auto polys = meixner_polys(6, p);
    for (std::size_t n = 0; n <= 6; ++n)
      for (std::size_t m = 0; m <= 6; ++m) {
        if (n == m) {
          CHECK(pairing(polys[n], polys[m], moments) > 0);
        } else {
          CHECK(pairing(polys[n], polys[m], moments) == 0);
        }
      }
  }
}

TEST_CASE("verify_1d_annihilation") {
  const JacobiParams gauss(0, 0, 1);
  // D (x^2 - 1) = x; the higher series terms vanish on degree 2.
  CHECK((meixner_poly(2, gauss).free_difference_quotient() == meixner_poly(1, gauss)));
  CHECK(verify_1d_annihilation(gauss, 0).passed);
  CHECK(verify_1d_annihilation(gauss, 1).passed);

  testutil::RationalGen gen(55);
  for (int trial = 0; trial < 8; ++trial) {
    const auto report = verify_1d_annihilation(random_params(gen), 8);
    CHECK(report.passed);
    CHECK(report.cases == 9);
  }
}
