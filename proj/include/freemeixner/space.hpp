#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "freemeixner/rational.hpp"

namespace freemeixner {

using CellIndex = std::size_t;

/// One cell of the discretised underlying space with its measure and Meixner parameters.
struct Cell {
  std::string name;
  Rational sigma;   // measure of the cell, > 0
  Rational lambda;
  Rational eta;     // >= 0
};

/// Finite cell decomposition of the underlying space.
///
/// Immutable after construction. Each instance carries an identity token so that
/// step functions built on one space cannot silently be combined with another.
class DiscreteSpace {
public:
  explicit DiscreteSpace(std::vector<Cell> cells);

  std::size_t size() const { return cells_.size(); }
  const Cell& cell(CellIndex j) const;
  const std::vector<Cell>& cells() const { return cells_; }
  CellIndex index_of(const std::string& name) const;

  const Rational& sigma(CellIndex j) const { return cell(j).sigma; }
  const Rational& lambda(CellIndex j) const { return cell(j).lambda; }
  const Rational& eta(CellIndex j) const { return cell(j).eta; }

  bool eta_vanishes() const;
  std::uint64_t id() const { return id_; }

  /// Same cells and parameters (identity token ignored).
  bool same_geometry(const DiscreteSpace& other) const;

private:
  std::vector<Cell> cells_;
  std::uint64_t id_;
};

/// Scalar step function: one rational value per cell of its space.
class StepFunction {
public:
  StepFunction() = default;
  explicit StepFunction(const DiscreteSpace& space);
  StepFunction(const DiscreteSpace& space, std::vector<Rational> values);

  static StepFunction indicator(const DiscreteSpace& space, CellIndex j);
  static StepFunction indicator(const DiscreteSpace& space, const std::vector<CellIndex>& cells);

  std::size_t size() const { return values_.size(); }
  std::uint64_t space_id() const { return space_id_; }
  const Rational& operator[](CellIndex j) const { return values_.at(j); }
  void set(CellIndex j, Rational v);
  const std::vector<Rational>& values() const { return values_; }

  std::vector<CellIndex> support() const;
  bool is_zero() const;

  StepFunction& operator+=(const StepFunction& other);
  StepFunction operator+(const StepFunction& other) const;
  StepFunction operator*(const Rational& scalar) const;
  bool operator==(const StepFunction& other) const;

private:
  std::uint64_t space_id_ = 0;
  std::vector<Rational> values_;
};

/// sum_j f_j * sigma_j
Rational integrate(const DiscreteSpace& space, const StepFunction& f);

/// Cell-wise product; throws StructuralError when the functions live on different spaces.
StepFunction pointwise_product(const StepFunction& f, const StepFunction& g);

/// max_j |f_j|
Rational sup_norm(const StepFunction& f);

/// Cell-wise lambda * f and eta * f.
StepFunction times_lambda(const DiscreteSpace& space, const StepFunction& f);
StepFunction times_eta(const DiscreteSpace& space, const StepFunction& f);

}  // namespace freemeixner
