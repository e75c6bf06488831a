#include "freemeixner/rational.hpp"

#include <cctype>

namespace freemeixner {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// floor(sqrt(q * 4^bits)) as an integer, together with an exactness flag.
mpz_class scaled_isqrt(const Rational& q, unsigned bits, bool& exact) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  exact = (rn * rn == num) && (rd * rd == den);
  mpz_class scaled = num << (2 * bits);
  scaled /= den;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw StructuralError("empty rational literal");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q))
      throw StructuralError("malformed rational literal '" + s + "'");
    mpz_class den{std::string(q)};
    if (den == 0) throw StructuralError("zero denominator in '" + s + "'");
    value = Rational(mpz_class(std::string(p)), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty()))
      throw StructuralError("malformed decimal literal '" + s + "'");
    mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip));
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    value = Rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(body)) throw StructuralError("malformed rational literal '" + s + "'");
    value = Rational(mpz_class(std::string(body)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (q < 0) throw PreconditionError("sqrt of negative rational");
  bool exact = false;
  mpz_class root = scaled_isqrt(q, bits, exact);
  if (exact) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), q.get_den_mpz_t());
    return Rational(rn, rd);
  }
  Rational r(root + 1, mpz_class(1) << bits);
  r.canonicalize();
  return r;
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (q < 0) throw PreconditionError("sqrt of negative rational");
  bool exact = false;
  mpz_class root = scaled_isqrt(q, bits, exact);
  if (exact) return sqrt_upper(q, bits);
  Rational r(root, mpz_class(1) << bits);
  r.canonicalize();
  return r;
}

}  // namespace freemeixner
