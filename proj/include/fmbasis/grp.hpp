#pragma once

// Finite p-groups realized as validated Cayley tables.
//
// Elements are indexed by their normal forms: an exponent vector over the
// designated generators with the first generator varying fastest. Index 0 is
// always the identity. Generators are named a, b, c, ... in order.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fmbasis::grp {

using Index = std::uint32_t;

inline constexpr std::size_t kDefaultMaxOrder = 64;

/// <a, b | a^{p^n} = 1, b^{p^m} = a^{p^t}, b a b^-1 = a^r>
struct Metacyclic {
  unsigned p = 2;
  unsigned n = 1;
  unsigned m = 1;
  unsigned t = 1;
  long long r = 1;
};
/// a^{2^n} = b^2 = 1, b a b^-1 = a^-1.
struct Dihedral {
  unsigned n = 2;
};
/// a^{2^n} = b^2 = 1, b a b^-1 = a^{-1+2^{n-1}}.
struct Semidihedral {
  unsigned n = 3;
};
/// a^{2^n} = 1, b^2 = a^{2^{n-1}}, b a b^-1 = a^-1.
struct GeneralizedQuaternion {
  unsigned n = 3;
};
struct Quaternion8 {};
/// a^{2^n} = 1, b^2 = a^{2^{n-1}}, b a b^-1 = a^{-1+2^{n-1}}.
struct SemidihedralTwisted {
  unsigned n = 3;
};
/// Direct product of cyclic groups of the given prime-power orders.
struct Abelian {
  std::vector<unsigned> orders;
};
/// <a, b | a^4 = b^4 = 1, b a b^-1 = b^2 a^3, a b a^-1 = a^2 b^3, [a^2, b] = [b^2, a] = 1>
struct Example16 {};

struct GroupSpec;
struct DirectProduct {
  std::shared_ptr<const GroupSpec> left;
  std::shared_ptr<const GroupSpec> right;
};

struct GroupSpec {
  std::variant<Metacyclic, Dihedral, Semidihedral, GeneralizedQuaternion, Quaternion8, SemidihedralTwisted, Abelian,
               Example16, DirectProduct>
      variant;

  std::string literal() const;
};

GroupSpec product(GroupSpec left, GroupSpec right);

/// "dihedral(n=3)", "quaternion8", "semidihedral(n=3)", "genquaternion(n=3)",
/// "sdtwisted(n=3)", "metacyclic(p,n,m,t,r)", "abelian(4,2)", "example16",
/// "product(spec,spec)".
GroupSpec parse_group(std::string_view literal);

class Group {
 public:
  Group(GroupSpec spec, unsigned prime, std::size_t order, std::vector<Index> table, std::vector<Index> generators,
        std::vector<std::vector<unsigned>> normal_forms);

  const GroupSpec& spec() const { return spec_; }
  /// The prime p of this p-group.
  unsigned prime() const { return prime_; }
  std::size_t order() const { return order_; }
  Index identity() const { return 0; }
  Index mul(Index g, Index h) const { return table_[static_cast<std::size_t>(g) * order_ + h]; }
  /// Left translation h -> g h.
  std::span<const Index> row(Index g) const {
    return {table_.data() + static_cast<std::size_t>(g) * order_, order_};
  }
  Index inverse(Index g) const { return inverse_[g]; }
  Index power(Index g, long long k) const;

  std::span<const Index> generators() const { return generators_; }
  Index gen_a() const { return generators_.at(0); }
  std::optional<Index> gen_b() const {
    if (generators_.size() < 2) return std::nullopt;
    return generators_[1];
  }

  const std::vector<unsigned>& normal_form(Index g) const { return normal_forms_[g]; }
  const std::string& label(Index g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Index>& table() const { return table_; }

  bool is_abelian() const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.order_ == b.order_ && a.table_ == b.table_ && a.generators_ == b.generators_;
  }

 private:
  GroupSpec spec_;
  unsigned prime_;
  std::size_t order_;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  std::vector<Index> generators_;
  std::vector<std::vector<unsigned>> normal_forms_;
  std::vector<std::string> labels_;
};

struct BuildOptions {
  std::size_t max_order = kDefaultMaxOrder;
};

/// Metacyclic variants use the closed-form normal-form law; Example16 uses
/// word closure; products are built component-wise. Every result is validated.
Group build_group(const GroupSpec& spec, const BuildOptions& opts = {});

/// Independent route for two-generator presentations (metacyclic family and
/// Example16): close the set of normal forms a^i b^j under right
/// multiplication by letters, rewriting b a with a fixed collection rule.
Group build_by_word_closure(const GroupSpec& spec, const BuildOptions& opts = {});

/// Latin square, identity/inverse consistency, associativity (order <= 64) and
/// generation by the designated generators. Throws on violation.
void validate(const Group& g);

/// g h g^-1 h^-1
Index commutator(const Group& g, Index x, Index y);

unsigned element_order(const Group& g, Index x);

/// Subgroup generated by the given elements, sorted.
std::vector<Index> subgroup_closure(const Group& g, std::span<const Index> gens);

/// Format an exponent vector as "a^2*b" ("1" for the zero vector).
std::string format_word(std::span<const unsigned> exponents);

/// The metacyclic parameters behind a shortcut spec, if it is one.
std::optional<Metacyclic> as_metacyclic(const GroupSpec& spec);

}  // namespace fmbasis::grp
