#pragma once

// The group algebra KG, its augmentation-ideal filtration
// KG = I^0 > I^1 > I^2 > ... > I^L = 0, and queries modulo I^k.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fmbasis/ff.hpp"
#include "fmbasis/grp.hpp"

namespace fmbasis::galg {

using ff::Scalar;
using grp::Index;
using Row = std::vector<Scalar>;

class Element;

class GroupAlgebra : public std::enable_shared_from_this<GroupAlgebra> {
 public:
  static std::shared_ptr<const GroupAlgebra> create(grp::Group group, ff::Field field);

  const grp::Group& group() const { return group_; }
  const ff::Field& field() const { return field_; }
  std::size_t dim() const { return group_.order(); }

  Element zero() const;
  Element one() const;
  /// The group element g as a basis vector.
  Element basis(Index g) const;
  /// g - 1
  Element aug(Index g) const;
  Element scalar(Scalar s) const;
  Element from_coeffs(Row coeffs) const;

  /// out = x * y (convolution through the Cayley table). out must not alias x or y.
  void multiply(std::span<const Scalar> x, std::span<const Scalar> y, std::span<Scalar> out) const;

  /// Same group table and field.
  bool compatible(const GroupAlgebra& other) const;

 private:
  GroupAlgebra(grp::Group group, ff::Field field);

  grp::Group group_;
  ff::Field field_;
};

class Element {
 public:
  Element(std::shared_ptr<const GroupAlgebra> alg, Row coeffs);

  const GroupAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const GroupAlgebra>& algebra_ptr() const { return alg_; }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  const Row& row() const { return coeffs_; }
  Scalar operator[](Index g) const { return coeffs_[g]; }

  bool is_zero() const;
  /// Sum of coefficients.
  Scalar augmentation() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;
  Element scaled(Scalar s) const;
  Element pow(unsigned k) const;

  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  friend bool operator==(const Element& a, const Element& b);

 private:
  void check_same(const Element& o) const;

  std::shared_ptr<const GroupAlgebra> alg_;
  Row coeffs_;
};

/// Row space kept in reduced row-echelon form (leftmost pivot, leading 1),
/// rows sorted by pivot column.
class Echelon {
 public:
  Echelon(const ff::Field& field, std::size_t width) : field_(&field), width_(width) {}

  /// Adds v to the span; returns false if v was already in it.
  bool insert(std::span<const Scalar> v);
  /// v minus its projection onto pivot columns (zero iff v is in the span).
  Row reduce(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  const ff::Field* field_;
  std::size_t width_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

struct LeadingQuotient {
  unsigned level = 0;
  /// Coordinates of the class in I^level / I^(level+1) against quotient_basis(level).
  Row coords;
};

class Filtration {
 public:
  Filtration(std::shared_ptr<const GroupAlgebra> alg, std::vector<Echelon> levels);

  const GroupAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const GroupAlgebra>& algebra_ptr() const { return alg_; }

  /// L, the first level with I^L = 0.
  unsigned length() const { return static_cast<unsigned>(levels_.size() - 1); }
  const Echelon& level(unsigned k) const { return levels_.at(k); }
  /// dims()[k] = dim I^k for k = 0..L.
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// dim I^k / I^(k+1) for k = 0..L-1.
  std::vector<std::size_t> quotient_dims() const;

  bool contains(std::span<const Scalar> x, unsigned k) const;
  /// Greatest k with x in I^k; nullopt for x = 0.
  std::optional<unsigned> level_of(std::span<const Scalar> x) const;
  std::optional<unsigned> level_of(const Element& x) const { return level_of(x.coeffs()); }
  bool congruent(const Element& x, const Element& y, unsigned k) const;

  /// Rows of the echelon basis of I^k whose pivots are not pivots of I^(k+1).
  const std::vector<Row>& quotient_basis(unsigned k) const { return quotient_bases_.at(k); }
  LeadingQuotient leading_quotient(const Element& x) const;

  /// Coordinates of x against the filtration-adapted basis
  /// quotient_basis(0) + quotient_basis(1) + ... ; adapted_level(i) is the level of entry i.
  Row adapted_coords(std::span<const Scalar> x) const;
  unsigned adapted_level(std::size_t i) const { return adapted_levels_[i]; }
  /// Offset of level k's block inside adapted coordinates.
  std::size_t adapted_offset(unsigned k) const { return adapted_offsets_.at(k); }

 private:
  std::shared_ptr<const GroupAlgebra> alg_;
  std::vector<Echelon> levels_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Row>> quotient_bases_;
  std::vector<unsigned> adapted_levels_;
  std::vector<std::size_t> adapted_offsets_;
  std::vector<Row> adapted_inverse_;  // x * adapted_inverse_ gives coordinates
};

/// Requires char K = p for the p-group G.
Filtration compute_filtration(const std::shared_ptr<const GroupAlgebra>& alg);

struct DimensionSubgroupReport {
  unsigned n = 1;
  std::vector<Index> members;
};

/// { g : g - 1 in I^n }
DimensionSubgroupReport dimension_subgroup(const Filtration& f, unsigned n);

}  // namespace fmbasis::galg
