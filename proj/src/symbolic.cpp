#include "freemeixner/symbolic.hpp"

#include <mutex>
#include <sstream>

namespace freemeixner {

std::string word_string(const Word& w, const DiscreteSpace* space) {
  if (w.empty()) return "()";
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    if (space)
      os << space->cell(w[i]).name;
    else
      os << w[i];
  }
  os << ")";
  return os.str();
}

PolyElement PolyElement::unit(Basis basis) { return word(basis, {}); }

PolyElement PolyElement::word(Basis basis, Word w, Rational c) {
  PolyElement p(basis);
  p.add(w, c);
  return p;
}

int PolyElement::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Rational PolyElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PolyElement::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void PolyElement::require_basis(const PolyElement& o) const {
  if (o.basis_ != basis_) throw StructuralError("mixing monomial and orthogonal basis elements");
}

PolyElement& PolyElement::operator+=(const PolyElement& o) {
  require_basis(o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

PolyElement& PolyElement::operator-=(const PolyElement& o) {
  require_basis(o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

PolyElement PolyElement::operator+(const PolyElement& o) const {
  PolyElement r = *this;
  r += o;
  return r;
}

PolyElement PolyElement::operator-(const PolyElement& o) const {
  PolyElement r = *this;
  r -= o;
  return r;
}

PolyElement PolyElement::operator*(const Rational& s) const {
  PolyElement r(basis_);
  if (s == 0) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
  return r;
}

void PolyElement::check_cells(const DiscreteSpace& space) const {
  for (const auto& [w, c] : terms_)
    for (auto j : w)
      if (j >= space.size()) throw StructuralError("word letter " + std::to_string(j) + " is not a cell");
}

std::string PolyElement::str(const DiscreteSpace* space) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    os << to_string(c) << (basis_ == Basis::monomial ? "*X" : "*P") << word_string(w, space);
    first = false;
  }
  return os.str();
}

PolyElement multiply(const PolyElement& a, const PolyElement& b) {
  if (a.basis() != Basis::monomial || b.basis() != Basis::monomial)
    throw StructuralError("products are taken in the monomial basis");
  PolyElement r(Basis::monomial);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

namespace {

Word tail(const Word& w) { return Word(w.begin() + 1, w.end()); }

Word prepend(CellIndex j, const Word& w) {
  Word r;
  r.reserve(w.size() + 1);
  r.push_back(j);
  r.insert(r.end(), w.begin(), w.end());
  return r;
}

PolyElement prepend_all(CellIndex j, const PolyElement& p) {
  PolyElement r(p.basis());
  for (const auto& [w, c] : p.terms()) r.add(prepend(j, w), c);
  return r;
}

}  // namespace

PolyElement left_multiply_field(const DiscreteSpace& space, CellIndex j, const PolyElement& p) {
  if (p.basis() != Basis::orthogonal) throw StructuralError("left_multiply_field expects the orthogonal basis");
  space.cell(j);
  p.check_cells(space);
  PolyElement r(Basis::orthogonal);
  for (const auto& [w, c] : p.terms()) {
    r.add(prepend(j, w), c);
    if (!w.empty() && w[0] == j) {
      r.add(w, c * space.lambda(j));
      r.add(tail(w), c * space.sigma(j));
      if (w.size() >= 2 && w[1] == j) r.add(tail(w), c * space.eta(j));
    }
  }
  return r;
}

BasisConverter::BasisConverter(DiscreteSpace space) : space_(std::move(space)) {}

const PolyElement& BasisConverter::ortho_word_in_monomials(const Word& w) {
  if (auto it = ortho_cache_.find(w); it != ortho_cache_.end()) return it->second;
  PolyElement result(Basis::monomial);
  if (w.empty()) {
    result = PolyElement::unit(Basis::monomial);
  } else {
    // P(j w') = X_j P(w') - [j = w'_1](lambda P(w') + sigma P(w'[1:])) - [j = w'_1 = w'_2] eta P(w'[1:])
    const CellIndex j = w[0];
    space_.cell(j);
    const Word rest = tail(w);
    result = prepend_all(j, ortho_word_in_monomials(rest));
    if (!rest.empty() && rest[0] == j) {
      const Word rest2 = tail(rest);
      result -= ortho_word_in_monomials(rest) * space_.lambda(j);
      Rational coeff = space_.sigma(j);
      if (rest.size() >= 2 && rest[1] == j) coeff += space_.eta(j);
      result -= ortho_word_in_monomials(rest2) * coeff;
    }
  }
  return ortho_cache_.emplace(w, std::move(result)).first->second;
}

const PolyElement& BasisConverter::monomial_word_in_orthos(const Word& w) {
  if (auto it = mono_cache_.find(w); it != mono_cache_.end()) return it->second;
  PolyElement result = w.empty() ? PolyElement::unit(Basis::orthogonal)
                                 : left_multiply_field(space_, w[0], monomial_word_in_orthos(tail(w)));
  return mono_cache_.emplace(w, std::move(result)).first->second;
}

PolyElement BasisConverter::to_monomial(const PolyElement& p) {
  if (p.basis() != Basis::orthogonal) throw StructuralError("to_monomial expects the orthogonal basis");
  PolyElement r(Basis::monomial);
  for (const auto& [w, c] : p.terms()) r += ortho_word_in_monomials(w) * c;
  return r;
}

PolyElement BasisConverter::to_orthogonal(const PolyElement& p) {
  if (p.basis() != Basis::monomial) throw StructuralError("to_orthogonal expects the monomial basis");
  PolyElement r(Basis::orthogonal);
  for (const auto& [w, c] : p.terms()) r += monomial_word_in_orthos(w) * c;
  return r;
}

PolyElement mono_to_ortho(const DiscreteSpace& space, const PolyElement& p) {
  return BasisConverter(space).to_orthogonal(p);
}

PolyElement ortho_to_mono(const DiscreteSpace& space, const PolyElement& p) {
  return BasisConverter(space).to_monomial(p);
}

namespace {

PolyElement drop_head(CellIndex j, const PolyElement& p) {
  PolyElement r(p.basis());
  for (const auto& [w, c] : p.terms())
    if (!w.empty() && w[0] == j) r.add(tail(w), c);
  return r;
}

const std::vector<SetPartition>& nc_min2_cached(int n) {
  static std::map<int, std::vector<SetPartition>> cache;
  static std::mutex guard;
  std::lock_guard lock(guard);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_nc_min2(n)).first;
  return it->second;
}

// Coefficient with which the n-fold head-drop D_t1 ... D_tn, integrated against
// sigma^{(x)n} W^-(zeta), maps the word w to w[n:]. D_tn acts first, so letter
// w_i is consumed by position n + 1 - i.
Rational kernel_action(const DiscreteSpace& space, const SetPartition& zeta, const Word& w) {
  const int n = zeta.size();
  Rational total = 0;
  std::vector<CellIndex> cells(zeta.block_count(), 0);
  // Enumerate every assignment of cells to blocks; kernel_weight supplies the
  // delta-collapsed integral and the head-drops test each letter.
  while (true) {
    bool match = true;
    for (int i = 1; i <= n && match; ++i) {
      const int position = n + 1 - i;
      match = w[i - 1] == cells[zeta.labels()[position - 1]];
    }
    if (match) total += kernel_weight(space, {zeta, cells});
    std::size_t b = 0;
    while (b < cells.size() && ++cells[b] == space.size()) cells[b++] = 0;
    if (b == cells.size()) break;
  }
  return total;
}

}  // namespace

PolyElement free_derivative(CellIndex j, const PolyElement& p) {
  if (p.basis() != Basis::monomial) throw StructuralError("free_derivative expects the monomial basis");
  return drop_head(j, p);
}

PolyElement annihilation(CellIndex j, const PolyElement& p) {
  if (p.basis() != Basis::orthogonal) throw StructuralError("annihilation expects the orthogonal basis");
  return drop_head(j, p);
}

PolyElement global_operator(const DiscreteSpace& space, const PolyElement& p) {
  if (!space.eta_vanishes()) throw PreconditionError("the global operator is defined for eta = 0 only");
  if (p.basis() != Basis::monomial) throw StructuralError("global_operator expects the monomial basis");
  p.check_cells(space);
  PolyElement r = p;
  for (const auto& [w, c] : p.terms()) {
    const int len = static_cast<int>(w.size());
    for (int n = 2; n <= len; ++n) {
      const Word rest(w.begin() + n, w.end());
      for (const auto& zeta : nc_min2_cached(n)) {
        const Rational weight = kernel_action(space, zeta, w);
        if (weight != 0) r.add(rest, c * weight);
      }
    }
  }
  return r;
}

std::vector<Word> all_words(std::size_t cells, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && ++w[i - 1] == cells) w[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

VerificationReport verify_globality(const DiscreteSpace& space, int degree) {
  if (!space.eta_vanishes()) throw PreconditionError("globality is stated for eta = 0 only");
  if (degree < 0) throw PreconditionError("degree must be non-negative");
  VerificationReport report;
  report.check = "globality";
  BasisConverter converter(space);
  for (CellIndex j = 0; j < space.size(); ++j) {
    for (int len = 0; len <= degree; ++len) {
      for (const Word& w : all_words(space.size(), static_cast<std::size_t>(len))) {
        const PolyElement mono = PolyElement::word(Basis::monomial, w);
        const PolyElement lhs = converter.to_monomial(annihilation(j, converter.to_orthogonal(mono)));

        PolyElement rhs(Basis::monomial);
        PolyElement power = mono;
        Rational lambda_power = 1;
        while (true) {
          power = free_derivative(j, global_operator(space, power));
          if (power.is_zero()) break;
          rhs += power * lambda_power;
          lambda_power *= space.lambda(j);
        }
        ++report.cases;
        if (!(lhs == rhs)) {
          report.record_failure("cell " + space.cell(j).name + ", word " + word_string(w, &space) +
                                ": partial gives " + lhs.str(&space) + ", series gives " + rhs.str(&space));
          return report;
        }
      }
    }
  }
  return report;
}

PolyElement monomial_pairing(const DiscreteSpace& space, const std::vector<StepFunction>& fs) {
  PolyElement r = PolyElement::unit(Basis::monomial);
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (it->space_id() != space.id()) throw StructuralError("step function not defined on this space");
    PolyElement next(Basis::monomial);
    for (CellIndex j = 0; j < space.size(); ++j)
      if ((*it)[j] != 0) next += prepend_all(j, r) * (*it)[j];
    r = std::move(next);
  }
  return r;
}

PolyElement ortho_pairing(const DiscreteSpace& space, const std::vector<StepFunction>& fs) {
  // Same multilinear expansion as monomial_pairing; only the basis label differs.
  const PolyElement mono = monomial_pairing(space, fs);
  PolyElement r(Basis::orthogonal);
  for (const auto& [w, c] : mono.terms()) r.add(w, c);
  return r;
}

PolyElement ortho_pairing_by_recursion(const DiscreteSpace& space, const std::vector<StepFunction>& fs) {
  const std::size_t n = fs.size();
  if (n == 0) return PolyElement::unit(Basis::monomial);
  if (n == 1) return monomial_pairing(space, fs);
  const std::vector<StepFunction> from2(fs.begin() + 1, fs.end());
  PolyElement r = multiply(monomial_pairing(space, {fs[0]}), ortho_pairing_by_recursion(space, from2));

  std::vector<StepFunction> merged = from2;
  merged[0] = times_lambda(space, pointwise_product(fs[0], fs[1]));
  r -= ortho_pairing_by_recursion(space, merged);

  const std::vector<StepFunction> from3(fs.begin() + 2, fs.end());
  r -= ortho_pairing_by_recursion(space, from3) * integrate(space, pointwise_product(fs[0], fs[1]));

  if (n >= 3) {
    std::vector<StepFunction> merged3 = from3;
    merged3[0] = times_eta(space, pointwise_product(pointwise_product(fs[0], fs[1]), fs[2]));
    r -= ortho_pairing_by_recursion(space, merged3);
  }
  return r;
}

}  // namespace freemeixner
