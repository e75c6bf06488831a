#pragma once

#include <cstddef>
#include <vector>

#include "freemeixner/rational.hpp"
#include "freemeixner/report.hpp"
#include "freemeixner/series.hpp"

namespace freemeixner {

/// Parameters of a one-cell free Meixner recursion: diagonal lambda, first
/// off-diagonal weight k, later weights k + eta.
struct JacobiParams {
  Rational lambda;
  Rational eta;
  Rational k;

  JacobiParams(Rational lambda, Rational eta, Rational k);
};

/// Monic P^(n): P0 = 1, P1 = x, P2 = (x - lambda) x - k,
/// P(n+1) = (x - lambda) P(n) - (k + eta) P(n-1) for n >= 2.
Polynomial meixner_poly(std::size_t n, const JacobiParams& p);

/// All of P^(0..n), sharing one pass of the recursion.
std::vector<Polynomial> meixner_polys(std::size_t n, const JacobiParams& p);

/// <e0, J^n e0> for the monic Jacobi operator of the recursion, via weighted
/// Motzkin-path dynamic programming. Exact.
Rational vacuum_moment(std::size_t n, const JacobiParams& p);

/// z / (1 + lambda z + eta z^2) to the given order.
FormalSeries psi_series(const Rational& lambda, const Rational& eta, std::size_t order);

/// C_{lambda,eta}(Psi(z)) = z^2 / (1 + lambda z + eta z^2) to the given order.
FormalSeries c_compose_psi_series(const Rational& lambda, const Rational& eta, std::size_t order);

/// kappa_1..kappa_order of the orthogonality measure: coefficients of
/// k * C_{lambda,eta}(u), where C = (C o Psi) o Psi^{-1}. Index 0 holds kappa_1.
std::vector<Rational> free_cumulants(const JacobiParams& p, std::size_t order);

/// z^n coefficient of (1 - x Psi(z) + k C(Psi(z)))^{-1}, a polynomial in x.
Polynomial genfun_1d_coefficient(std::size_t n, const JacobiParams& p);

/// All z-coefficients 0..n of the same resolvent.
std::vector<Polynomial> genfun_1d_coefficients(std::size_t n, const JacobiParams& p);

/// Applies Psi_{lambda, eta + k}^{-1}(D), D the free difference quotient, to
/// P^(0..degree) and checks that P^(n) maps to P^(n-1) (and P^(0) to 0).
VerificationReport verify_1d_annihilation(const JacobiParams& p, std::size_t degree);

}  // namespace freemeixner
