#include "freemeixner/space.hpp"

#include <atomic>
#include <set>

namespace freemeixner {

namespace {

std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

void require_same_space(const StepFunction& f, const StepFunction& g) {
  if (f.space_id() != g.space_id() || f.size() != g.size())
    throw StructuralError("step functions defined on different spaces");
}

}  // namespace

DiscreteSpace::DiscreteSpace(std::vector<Cell> cells) : cells_(std::move(cells)), id_(next_space_id()) {
  if (cells_.empty()) throw StructuralError("a space needs at least one cell");
  std::set<std::string> names;
  for (auto& c : cells_) {
    c.sigma.canonicalize();
    c.lambda.canonicalize();
    c.eta.canonicalize();
    if (!names.insert(c.name).second) throw StructuralError("duplicate cell id '" + c.name + "'");
    if (c.sigma <= 0) throw StructuralError("cell '" + c.name + "' has non-positive sigma");
    if (c.eta < 0) throw StructuralError("cell '" + c.name + "' has negative eta");
  }
}

const Cell& DiscreteSpace::cell(CellIndex j) const {
  if (j >= cells_.size()) throw StructuralError("unknown cell index " + std::to_string(j));
  return cells_[j];
}

CellIndex DiscreteSpace::index_of(const std::string& name) const {
  for (CellIndex j = 0; j < cells_.size(); ++j)
    if (cells_[j].name == name) return j;
  throw StructuralError("unknown cell id '" + name + "'");
}

bool DiscreteSpace::eta_vanishes() const {
  for (const auto& c : cells_)
    if (c.eta != 0) return false;
  return true;
}

bool DiscreteSpace::same_geometry(const DiscreteSpace& other) const {
  if (size() != other.size()) return false;
  for (CellIndex j = 0; j < size(); ++j) {
    const auto& a = cells_[j];
    const auto& b = other.cells_[j];
    if (a.name != b.name || a.sigma != b.sigma || a.lambda != b.lambda || a.eta != b.eta) return false;
  }
  return true;
}

StepFunction::StepFunction(const DiscreteSpace& space)
    : space_id_(space.id()), values_(space.size(), Rational(0)) {}

StepFunction::StepFunction(const DiscreteSpace& space, std::vector<Rational> values)
    : space_id_(space.id()), values_(std::move(values)) {
  if (values_.size() != space.size())
    throw StructuralError("step function has " + std::to_string(values_.size()) +
                          " values for a space of " + std::to_string(space.size()) + " cells");
  for (auto& v : values_) v.canonicalize();
}

StepFunction StepFunction::indicator(const DiscreteSpace& space, CellIndex j) {
  space.cell(j);
  StepFunction f(space);
  f.values_[j] = 1;
  return f;
}

StepFunction StepFunction::indicator(const DiscreteSpace& space, const std::vector<CellIndex>& cells) {
  StepFunction f(space);
  for (auto j : cells) {
    space.cell(j);
    f.values_[j] = 1;
  }
  return f;
}

void StepFunction::set(CellIndex j, Rational v) {
  if (j >= values_.size()) throw StructuralError("unknown cell index " + std::to_string(j));
  values_[j] = std::move(v);
  values_[j].canonicalize();
}

std::vector<CellIndex> StepFunction::support() const {
  std::vector<CellIndex> s;
  for (CellIndex j = 0; j < values_.size(); ++j)
    if (values_[j] != 0) s.push_back(j);
  return s;
}

bool StepFunction::is_zero() const { return support().empty(); }

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  require_same_space(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

StepFunction StepFunction::operator+(const StepFunction& other) const {
  StepFunction r = *this;
  r += other;
  return r;
}

StepFunction StepFunction::operator*(const Rational& scalar) const {
  StepFunction r = *this;
  for (auto& v : r.values_) v *= scalar;
  return r;
}

bool StepFunction::operator==(const StepFunction& other) const {
  return space_id_ == other.space_id_ && values_ == other.values_;
}

Rational integrate(const DiscreteSpace& space, const StepFunction& f) {
  if (f.space_id() != space.id() || f.size() != space.size())
    throw StructuralError("step function not defined on this space");
  Rational total = 0;
  for (CellIndex j = 0; j < space.size(); ++j) total += f[j] * space.sigma(j);
  return total;
}

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
  require_same_space(f, g);
  StepFunction r = f;
  for (CellIndex j = 0; j < f.size(); ++j) r.set(j, f[j] * g[j]);
  return r;
}

Rational sup_norm(const StepFunction& f) {
  Rational m = 0;
  for (const auto& v : f.values()) m = std::max(m, abs(v));
  return m;
}

StepFunction times_lambda(const DiscreteSpace& space, const StepFunction& f) {
  if (f.space_id() != space.id()) throw StructuralError("step function not defined on this space");
  StepFunction r = f;
  for (CellIndex j = 0; j < f.size(); ++j) r.set(j, f[j] * space.lambda(j));
  return r;
}

StepFunction times_eta(const DiscreteSpace& space, const StepFunction& f) {
  if (f.space_id() != space.id()) throw StructuralError("step function not defined on this space");
  StepFunction r = f;
  for (CellIndex j = 0; j < f.size(); ++j) r.set(j, f[j] * space.eta(j));
  return r;
}

}  // namespace freemeixner
