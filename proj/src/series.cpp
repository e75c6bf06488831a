#include "freemeixner/series.hpp"

#include <sstream>

namespace freemeixner {

FormalSeries::FormalSeries(std::size_t order) : order_(order), coeffs_(order + 1, Rational(0)) {}

FormalSeries::FormalSeries(std::size_t order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() > order_ + 1)
    throw StructuralError("series has more coefficients than its truncation order allows");
  coeffs_.resize(order_ + 1, Rational(0));
}

FormalSeries FormalSeries::identity(std::size_t order) {
  FormalSeries s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

FormalSeries FormalSeries::constant(std::size_t order, Rational c) {
  FormalSeries s(order);
  s.coeffs_[0] = std::move(c);
  return s;
}

void FormalSeries::require_same_order(const FormalSeries& o) const {
  if (o.order_ != order_)
    throw StructuralError("series order mismatch: " + std::to_string(order_) + " vs " +
                          std::to_string(o.order_));
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
  require_same_order(o);
  FormalSeries r = *this;
  for (std::size_t i = 0; i <= order_; ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
  require_same_order(o);
  FormalSeries r = *this;
  for (std::size_t i = 0; i <= order_; ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
  require_same_order(o);
  FormalSeries r(order_);
  for (std::size_t i = 0; i <= order_; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order_; ++j) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return r;
}

FormalSeries FormalSeries::operator*(const Rational& s) const {
  FormalSeries r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

bool FormalSeries::operator==(const FormalSeries& o) const {
  return order_ == o.order_ && coeffs_ == o.coeffs_;
}

FormalSeries FormalSeries::reciprocal() const {
  if (coeffs_[0] == 0) throw SingularSeriesError("reciprocal of a series with zero constant term");
  FormalSeries r(order_);
  r.coeffs_[0] = 1 / coeffs_[0];
  for (std::size_t n = 1; n <= order_; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * r.coeffs_[n - k];
    r.coeffs_[n] = -acc / coeffs_[0];
  }
  return r;
}

FormalSeries FormalSeries::compose(const FormalSeries& inner) const {
  require_same_order(inner);
  if (inner.coeffs_[0] != 0) throw PreconditionError("composition needs an inner series without constant term");
  // Horner: c_0 + inner*(c_1 + inner*(c_2 + ...))
  FormalSeries r = constant(order_, coeffs_[order_]);
  for (std::size_t k = order_; k-- > 0;) r = r * inner + constant(order_, coeffs_[k]);
  return r;
}

std::string FormalSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i <= order_; ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << to_string(coeffs_[i]) << ")z^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " + O(z^" << order_ + 1 << ")";
  return os.str();
}

FormalSeries series_compose_inverse(const FormalSeries& s, std::size_t order) {
  if (s.order() < order) throw StructuralError("series order below requested inversion order");
  if (s[0] != 0) throw SingularSeriesError("compositional inverse needs zero constant term");
  if (order >= 1 && s[1] == 0) throw SingularSeriesError("compositional inverse needs a nonzero linear term");
  std::vector<Rational> head(s.coeffs().begin(), s.coeffs().begin() + static_cast<long>(order) + 1);
  FormalSeries base(order, std::move(head));
  // Solve base(g(z)) = z one coefficient at a time: the z^n coefficient of
  // base(g) depends on g_n only through s_1 * g_n.
  FormalSeries g(order);
  if (order == 0) return g;
  g[1] = 1 / base[1];
  for (std::size_t n = 2; n <= order; ++n) {
    Rational residual = base.compose(g)[n];
    g[n] = -residual / base[1];
  }
  return g;
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, Rational c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::shift_up() const {
  if (is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::free_difference_quotient() const {
  if (coeffs_.size() <= 1) return {};
  return Polynomial(std::vector<Rational>(coeffs_.begin() + 1, coeffs_.end()));
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational r = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
  return r;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << to_string(coeffs_[i]) << ")x^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace freemeixner
