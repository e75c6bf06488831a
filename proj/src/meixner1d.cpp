#include "freemeixner/meixner1d.hpp"

#include <string>

namespace freemeixner {

JacobiParams::JacobiParams(Rational lambda_, Rational eta_, Rational k_)
    : lambda(std::move(lambda_)), eta(std::move(eta_)), k(std::move(k_)) {
  if (k <= 0) throw PreconditionError("Jacobi parameter k must be positive");
  if (eta < 0) throw PreconditionError("Jacobi parameter eta must be non-negative");
}

std::vector<Polynomial> meixner_polys(std::size_t n, const JacobiParams& p) {
  std::vector<Polynomial> out;
  out.push_back(Polynomial::monomial(0));
  if (n == 0) return out;
  out.push_back(Polynomial::monomial(1));
  for (std::size_t m = 2; m <= n; ++m) {
    const Rational weight = m == 2 ? p.k : p.k + p.eta;
    const Polynomial& prev = out[m - 1];
    out.push_back(prev.shift_up() - prev * p.lambda - out[m - 2] * weight);
  }
  return out;
}

Polynomial meixner_poly(std::size_t n, const JacobiParams& p) { return meixner_polys(n, p).back(); }

Rational vacuum_moment(std::size_t n, const JacobiParams& p) {
  // paths[m] = weighted number of Motzkin prefixes ending at level m.
  std::vector<Rational> paths(n + 2, Rational(0));
  paths[0] = 1;
  auto down = [&](std::size_t level) { return level == 1 ? p.k : p.k + p.eta; };
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Rational> next(n + 2, Rational(0));
    for (std::size_t m = 0; m <= n; ++m) {
      if (paths[m] == 0) continue;
      next[m + 1] += paths[m];
      if (m >= 1) {
        next[m] += paths[m] * p.lambda;
        next[m - 1] += paths[m] * down(m);
      }
    }
    paths = std::move(next);
  }
  return paths[0];
}

FormalSeries psi_series(const Rational& lambda, const Rational& eta, std::size_t order) {
  if (order < 1) throw PreconditionError("psi_series needs order >= 1");
  FormalSeries denom(order);
  denom[0] = 1;
  denom[1] = lambda;
  if (order >= 2) denom[2] = eta;
  return FormalSeries::identity(order) * denom.reciprocal();
}

FormalSeries c_compose_psi_series(const Rational& lambda, const Rational& eta, std::size_t order) {
  if (order < 1) throw PreconditionError("c_compose_psi_series needs order >= 1");
  FormalSeries denom(order);
  denom[0] = 1;
  denom[1] = lambda;
  if (order >= 2) denom[2] = eta;
  FormalSeries num(order);
  if (order >= 2) num[2] = 1;
  return num * denom.reciprocal();
}

std::vector<Rational> free_cumulants(const JacobiParams& p, std::size_t order) {
  if (order < 2) throw PreconditionError("free_cumulants needs order >= 2");
  const FormalSeries psi = psi_series(p.lambda, p.eta, order);
  const FormalSeries cpsi = c_compose_psi_series(p.lambda, p.eta, order);
  const FormalSeries c = cpsi.compose(series_compose_inverse(psi, order)) * p.k;
  return std::vector<Rational>(c.coeffs().begin() + 1, c.coeffs().end());
}

std::vector<Polynomial> genfun_1d_coefficients(std::size_t n, const JacobiParams& p) {
  const std::size_t order = std::max<std::size_t>(n, 2);
  const FormalSeries psi = psi_series(p.lambda, p.eta, order);
  const FormalSeries cpsi = c_compose_psi_series(p.lambda, p.eta, order);
  // B(z) = x Psi(z) - k C(Psi(z)); G = sum_m B^m, so G_n = sum_{m=1}^{n} B_m G_{n-m}.
  std::vector<Polynomial> b(order + 1);
  for (std::size_t m = 1; m <= order; ++m)
    b[m] = Polynomial::monomial(1, psi[m]) - Polynomial::monomial(0, p.k * cpsi[m]);
  std::vector<Polynomial> g(n + 1);
  g[0] = Polynomial::monomial(0);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t m = 1; m <= i; ++m) g[i] = g[i] + b[m] * g[i - m];
  return g;
}

Polynomial genfun_1d_coefficient(std::size_t n, const JacobiParams& p) {
  return genfun_1d_coefficients(n, p).back();
}

VerificationReport verify_1d_annihilation(const JacobiParams& p, std::size_t degree) {
  VerificationReport report;
  report.check = "1d-annihilation";
  const auto polys = meixner_polys(degree, p);
  std::vector<Rational> inverse_coeffs;
  if (degree >= 1) {
    const FormalSeries psi = psi_series(p.lambda, p.eta + p.k, degree);
    inverse_coeffs = series_compose_inverse(psi, degree).coeffs();
  }
  for (std::size_t n = 0; n <= degree; ++n) {
    Polynomial image;
    Polynomial d_power = polys[n];
    for (std::size_t m = 1; m <= n; ++m) {
      d_power = d_power.free_difference_quotient();
      image = image + d_power * inverse_coeffs[m];
    }
    const Polynomial expected = n == 0 ? Polynomial() : polys[n - 1];
    ++report.cases;
    if (!(image == expected)) {
      report.record_failure("degree " + std::to_string(n) + ": got " + image.str() + ", expected " +
                            expected.str());
      report.note("first_failing_degree", std::to_string(n));
      break;
    }
  }
  return report;
}

}  // namespace freemeixner
