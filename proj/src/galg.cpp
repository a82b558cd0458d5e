#include "fmbasis/galg.hpp"

#include <algorithm>

#include "fmbasis/error.hpp"

namespace fmbasis::galg {

GroupAlgebra::GroupAlgebra(grp::Group group, ff::Field field) : group_(std::move(group)), field_(std::move(field)) {}

std::shared_ptr<const GroupAlgebra> GroupAlgebra::create(grp::Group group, ff::Field field) {
  return std::shared_ptr<const GroupAlgebra>(new GroupAlgebra(std::move(group), std::move(field)));
}

Element GroupAlgebra::zero() const { return Element(shared_from_this(), Row(dim())); }

Element GroupAlgebra::one() const { return basis(group_.identity()); }

Element GroupAlgebra::basis(Index g) const {
  if (g >= dim()) fail(Errc::invalid_argument, "group element index out of range");
  Row r(dim());
  r[g] = field_.one();
  return Element(shared_from_this(), std::move(r));
}

Element GroupAlgebra::aug(Index g) const {
  if (g >= dim()) fail(Errc::invalid_argument, "group element index out of range");
  Row r(dim());
  r[g] = field_.add(r[g], field_.one());
  r[group_.identity()] = field_.sub(r[group_.identity()], field_.one());
  return Element(shared_from_this(), std::move(r));
}

Element GroupAlgebra::scalar(Scalar s) const {
  Row r(dim());
  r[group_.identity()] = s;
  return Element(shared_from_this(), std::move(r));
}

Element GroupAlgebra::from_coeffs(Row coeffs) const { return Element(shared_from_this(), std::move(coeffs)); }

void GroupAlgebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y, std::span<Scalar> out) const {
  const std::size_t n = dim();
  std::fill(out.begin(), out.end(), Scalar{});
  for (Index h = 0; h < n; ++h) {
    if (x[h].code == 0) continue;
    const auto row = group_.row(h);
    for (Index g = 0; g < n; ++g) {
      if (y[g].code == 0) continue;
      Scalar& slot = out[row[g]];
      slot = field_.add(slot, field_.mul(x[h], y[g]));
    }
  }
}

bool GroupAlgebra::compatible(const GroupAlgebra& other) const {
  return this == &other || (field_ == other.field_ && group_ == other.group_);
}

// ---------------------------------------------------------------------------

Element::Element(std::shared_ptr<const GroupAlgebra> alg, Row coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
  if (!alg_) fail(Errc::invalid_argument, "element without algebra");
  if (coeffs_.size() != alg_->dim())
    fail(Errc::invalid_argument, "element has " + std::to_string(coeffs_.size()) + " coefficients, expected " +
                                     std::to_string(alg_->dim()));
  for (Scalar s : coeffs_)
    if (!alg_->field().contains(s)) fail(Errc::invalid_argument, "coefficient outside the field");
}

void Element::check_same(const Element& o) const {
  if (!alg_->compatible(*o.alg_)) fail(Errc::mismatch, "elements belong to different group algebras");
}

bool Element::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Scalar s) { return s.code == 0; });
}

Scalar Element::augmentation() const {
  Scalar s{};
  for (Scalar c : coeffs_) s = alg_->field().add(s, c);
  return s;
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  Row r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = alg_->field().add(coeffs_[i], o.coeffs_[i]);
  return Element(alg_, std::move(r));
}

Element Element::operator-(const Element& o) const {
  check_same(o);
  Row r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = alg_->field().sub(coeffs_[i], o.coeffs_[i]);
  return Element(alg_, std::move(r));
}

Element Element::operator-() const {
  Row r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = alg_->field().neg(coeffs_[i]);
  return Element(alg_, std::move(r));
}

Element Element::operator*(const Element& o) const {
  check_same(o);
  Row r(coeffs_.size());
  alg_->multiply(coeffs_, o.coeffs_, r);
  return Element(alg_, std::move(r));
}

Element Element::scaled(Scalar s) const {
  if (!alg_->field().contains(s)) fail(Errc::mismatch, "scalar outside the field");
  Row r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = alg_->field().mul(coeffs_[i], s);
  return Element(alg_, std::move(r));
}

Element Element::pow(unsigned k) const {
  Element out = alg_->one();
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

bool operator==(const Element& a, const Element& b) {
  return a.alg_->compatible(*b.alg_) && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------------------

Row Echelon::reduce(std::span<const Scalar> v) const {
  Row r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c.code == 0) continue;
    const Row& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < width_; ++j)
      if (row[j].code) r[j] = field_->sub(r[j], field_->mul(c, row[j]));
  }
  return r;
}

bool Echelon::contains(std::span<const Scalar> v) const {
  const Row r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Scalar s) { return s.code == 0; });
}

bool Echelon::insert(std::span<const Scalar> v) {
  if (v.size() != width_) fail(Errc::internal, "echelon width mismatch");
  Row r = reduce(v);
  std::size_t piv = 0;
  while (piv < width_ && r[piv].code == 0) ++piv;
  if (piv == width_) return false;
  const Scalar scale = field_->inv(r[piv]);
  for (std::size_t j = piv; j < width_; ++j) r[j] = field_->mul(r[j], scale);
  for (Row& row : rows_) {
    const Scalar c = row[piv];
    if (c.code == 0) continue;
    for (std::size_t j = piv; j < width_; ++j)
      if (r[j].code) row[j] = field_->sub(row[j], field_->mul(c, r[j]));
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

// ---------------------------------------------------------------------------

Filtration::Filtration(std::shared_ptr<const GroupAlgebra> alg, std::vector<Echelon> levels)
    : alg_(std::move(alg)), levels_(std::move(levels)) {
  const ff::Field& K = alg_->field();
  const std::size_t n = alg_->dim();
  for (const Echelon& e : levels_) dims_.push_back(e.rank());
  if (levels_.empty() || dims_.front() != n || dims_.back() != 0)
    fail(Errc::internal, "filtration must run from KG down to zero");

  for (unsigned k = 0; k + 1 < levels_.size(); ++k) {
    const auto& next = levels_[k + 1].pivots();
    std::vector<Row> q;
    for (std::size_t i = 0; i < levels_[k].rank(); ++i)
      if (!std::binary_search(next.begin(), next.end(), levels_[k].pivots()[i])) q.push_back(levels_[k].rows()[i]);
    adapted_offsets_.push_back(adapted_levels_.size());
    for (std::size_t i = 0; i < q.size(); ++i) adapted_levels_.push_back(k);
    quotient_bases_.push_back(std::move(q));
  }
  adapted_offsets_.push_back(adapted_levels_.size());
  if (adapted_levels_.size() != n) fail(Errc::internal, "quotient bases do not span KG");

  // Invert the adapted basis matrix E (rows = basis vectors) by Gauss-Jordan on [E | I].
  std::vector<Row> aug;
  for (const auto& q : quotient_bases_)
    for (const Row& r : q) {
      Row row(2 * n);
      std::copy(r.begin(), r.end(), row.begin());
      aug.push_back(std::move(row));
    }
  for (std::size_t i = 0; i < n; ++i) aug[i][n + i] = K.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col].code == 0) ++piv;
    if (piv == n) fail(Errc::internal, "adapted basis is singular");
    std::swap(aug[col], aug[piv]);
    const Scalar s = K.inv(aug[col][col]);
    for (Scalar& c : aug[col]) c = K.mul(c, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug[i][col].code == 0) continue;
      const Scalar c = aug[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] = K.sub(aug[i][j], K.mul(c, aug[col][j]));
    }
  }
  // E^-1 is the right half; coords = x * E^-1.
  adapted_inverse_.assign(n, Row(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adapted_inverse_[i][j] = aug[i][n + j];
}

std::vector<std::size_t> Filtration::quotient_dims() const {
  std::vector<std::size_t> q;
  for (std::size_t k = 0; k + 1 < dims_.size(); ++k) q.push_back(dims_[k] - dims_[k + 1]);
  return q;
}

bool Filtration::contains(std::span<const Scalar> x, unsigned k) const {
  if (k >= levels_.size()) return std::all_of(x.begin(), x.end(), [](Scalar s) { return s.code == 0; });
  return levels_[k].contains(x);
}

std::optional<unsigned> Filtration::level_of(std::span<const Scalar> x) const {
  if (std::all_of(x.begin(), x.end(), [](Scalar s) { return s.code == 0; })) return std::nullopt;
  unsigned k = 0;
  while (k + 1 < levels_.size() && levels_[k + 1].contains(x)) ++k;
  return k;
}

bool Filtration::congruent(const Element& x, const Element& y, unsigned k) const {
  const Element d = x - y;
  return contains(d.coeffs(), k);
}

LeadingQuotient Filtration::leading_quotient(const Element& x) const {
  const auto lvl = level_of(x);
  if (!lvl) fail(Errc::invalid_argument, "leading_quotient of zero");
  const Row r = levels_[*lvl + 1].reduce(x.coeffs());
  const Echelon& cur = levels_[*lvl];
  const auto& next = levels_[*lvl + 1].pivots();
  LeadingQuotient out{*lvl, {}};
  for (std::size_t i = 0; i < cur.rank(); ++i)
    if (!std::binary_search(next.begin(), next.end(), cur.pivots()[i])) out.coords.push_back(r[cur.pivots()[i]]);
  return out;
}

Row Filtration::adapted_coords(std::span<const Scalar> x) const {
  const ff::Field& K = alg_->field();
  const std::size_t n = alg_->dim();
  Row c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].code == 0) continue;
    const Row& row = adapted_inverse_[i];
    for (std::size_t j = 0; j < n; ++j)
      if (row[j].code) c[j] = K.add(c[j], K.mul(x[i], row[j]));
  }
  return c;
}

Filtration compute_filtration(const std::shared_ptr<const GroupAlgebra>& alg) {
  const grp::Group& G = alg->group();
  const ff::Field& K = alg->field();
  if (K.characteristic() != G.prime())
    fail(Errc::unsupported, "field characteristic " + std::to_string(K.characteristic()) + " does not divide |G| = " +
                                std::to_string(G.order()) + "; the augmentation ideal is not nilpotent");
  const std::size_t n = G.order();
  std::vector<Echelon> levels;
  Echelon whole(K, n);
  for (Index g = 0; g < n; ++g) whole.insert(alg->basis(g).coeffs());
  levels.push_back(std::move(whole));

  Echelon aug(K, n);
  for (Index g = 1; g < n; ++g) aug.insert(alg->aug(g).coeffs());
  levels.push_back(std::move(aug));

  Row gm(n);
  while (levels.back().rank() > 0) {
    const Echelon& cur = levels.back();
    Echelon next(K, n);
    for (const Row& m : cur.rows())
      for (Index g = 1; g < n; ++g) {
        // (g - 1) m = g m - m
        const auto row = G.row(g);
        for (Index h = 0; h < n; ++h) gm[row[h]] = m[h];
        for (Index h = 0; h < n; ++h) gm[h] = K.sub(gm[h], m[h]);
        next.insert(gm);
      }
    if (next.rank() >= cur.rank()) fail(Errc::internal, "augmentation ideal powers did not decrease");
    levels.push_back(std::move(next));
  }
  return Filtration(alg, std::move(levels));
}

DimensionSubgroupReport dimension_subgroup(const Filtration& f, unsigned n) {
  if (n == 0) fail(Errc::invalid_argument, "dimension subgroups are indexed from n = 1");
  const GroupAlgebra& alg = f.algebra();
  DimensionSubgroupReport report{n, {}};
  for (Index g = 0; g < alg.dim(); ++g)
    if (f.contains(alg.aug(g).coeffs(), n)) report.members.push_back(g);
  return report;
}

}  // namespace fmbasis::galg
