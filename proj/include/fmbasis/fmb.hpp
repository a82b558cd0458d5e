#pragma once

// Filtered multiplicative bases: verification and the explicit constructions.
//
// B is a filtered multiplicative K-basis of KG when it is a basis, every
// product of two members is 0 or a member, and B meets each I^n in a basis
// of I^n.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fmbasis/galg.hpp"

namespace fmbasis::fmb {

struct Param {
  std::string name;
  ff::Scalar value;

  friend bool operator==(const Param&, const Param&) = default;
};

struct BasisCandidate {
  std::shared_ptr<const galg::GroupAlgebra> alg;
  std::vector<galg::Element> elements;
  std::vector<std::string> labels;
  std::vector<Param> params;

  std::size_t size() const { return elements.size(); }
  void add(std::string label, galg::Element e) {
    labels.push_back(std::move(label));
    elements.push_back(std::move(e));
  }
};

enum class WitnessKind {
  cardinality,  // |B| != |G|
  dependence,   // a vanishing linear combination of members
  closure,      // b_i * b_j neither 0 nor a member
  level_basis,  // B cap I^n is not a basis of I^n
  property_ii,  // distinct members outside I^k congruent mod I^k
};

const char* to_string(WitnessKind k);

struct Witness {
  WitnessKind kind = WitnessKind::cardinality;
  /// Member indices: the dependent support, the product pair (i, j), or the congruent pair.
  std::vector<std::size_t> members;
  /// Coefficients of a dependence, aligned with `members`.
  std::vector<ff::Scalar> coefficients;
  /// Filtration level n (level_basis) or k (property_ii).
  unsigned level = 0;
  std::size_t count = 0;
  std::size_t expected = 0;
  std::string message;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  bool informational = false;
  std::string detail;
  /// Per-level data where relevant (e.g. |B cap I^n| for n = 1..L).
  std::vector<std::size_t> values;
  std::vector<std::size_t> expected;
  std::optional<Witness> witness;
};

struct VerificationReport {
  bool pass = false;
  /// Stable order: cardinality_independence, closure, radical_levels, property_ii, property_iii.
  std::vector<CheckResult> checks;
  /// First failing witness among the verdict checks.
  std::optional<Witness> witness;
  std::vector<std::string> labels;
  /// Filtration level of each member (nullopt for a zero member).
  std::vector<std::optional<unsigned>> member_levels;
  std::vector<std::size_t> quotient_dims;

  const CheckResult& check(const std::string& name) const;
};

/// Full check of (a) cardinality and independence, (b) closure, (c) B cap I^n
/// a basis of I^n at every level; (d) property (II) and (e) generator count
/// are recorded but do not affect the verdict. A supplied filtration is used
/// after a consistency check; otherwise it is recomputed.
VerificationReport verify(const BasisCandidate& b, const galg::Filtration* precomputed = nullptr);

/// Re-evaluates a witness against the candidate; true if it still demonstrates the failure.
bool witness_holds(const BasisCandidate& b, const galg::Filtration& f, const Witness& w);

/// (g_1 - 1)^{n_1} ... (g_s - 1)^{n_s}, 0 <= n_i < |g_i|, over the designated generators.
BasisCandidate construct_abelian(const std::shared_ptr<const galg::GroupAlgebra>& alg);

/// All products b1 * b2 embedded in K[G1 x G2] (left factor fastest in the index).
BasisCandidate product_basis(const BasisCandidate& left, const BasisCandidate& right);

/// u = a + b, v = 1 + b; {1, v, u^i, v u^i, u^j v, v u^j v}.
BasisCandidate construct_dihedral(const std::shared_ptr<const galg::GroupAlgebra>& alg);

/// u = w(1+a) + (1+b) + w^2(1+a)(1+b), v = w^2(1+a) + (1+b) + w(1+a)(1+b) with w a
/// primitive cube root of unity; {1, u, v, uv, vu, uvu, vuv, uvuv}.
BasisCandidate construct_quaternion8(const std::shared_ptr<const galg::GroupAlgebra>& alg);

/// u = a + b, v = mu1 a + mu2 b + (mu1 + mu2), mu1 != mu2.
BasisCandidate construct_example16(const std::shared_ptr<const galg::GroupAlgebra>& alg, ff::Scalar mu1,
                                   ff::Scalar mu2);

/// By name: abelian, dihedral, quaternion8, example16 (params mu1, mu2; default 0, 1),
/// product (component-wise on a direct product), auto (chosen from the group spec).
BasisCandidate construct(const std::shared_ptr<const galg::GroupAlgebra>& alg, const std::string& name,
                         const std::vector<Param>& params = {});

/// {1} followed by the distinct nonzero words in `gens`, shortest first,
/// truncated to `max_members` in total. Labels are the words.
BasisCandidate closure_candidate(const std::vector<galg::Element>& gens, const std::vector<std::string>& names,
                                 std::size_t max_members);

galg::LeadingQuotient leading_quotient(const galg::Element& x, const galg::Filtration& f);

}  // namespace fmbasis::fmb
