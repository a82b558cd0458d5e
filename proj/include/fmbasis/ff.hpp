#pragma once

// Exact arithmetic in GF(p^k).
//
// A Scalar is stored as the integer sum c_i * p^i of its polynomial
// coefficients (c_0 is the constant term), always reduced. The serialized
// form is the degree-descending coefficient list [c_{k-1}, ..., c_0].

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fmbasis::ff {

struct Scalar {
  std::uint32_t code = 0;

  friend auto operator<=>(const Scalar&, const Scalar&) = default;
};

struct FieldSpec {
  unsigned characteristic = 2;
  unsigned degree = 1;
  // Monic modulus, degree-descending (c_k = 1, ..., c_0); empty when degree == 1.
  std::vector<unsigned> modulus;

  std::uint32_t size() const;
  std::string literal() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr std::uint64_t kDefaultFieldBound = 1u << 16;

bool is_prime(std::uint64_t n);

/// Trial division by every monic polynomial of degree 1..k/2 over Z_p.
/// `monic` is degree-descending with leading coefficient 1.
bool is_irreducible(unsigned p, std::span<const unsigned> monic);

/// Deterministic field choice: for k > 1 the modulus is the smallest monic
/// irreducible polynomial in lexicographic order of its lower coefficients.
FieldSpec make_field(unsigned p, unsigned k, std::uint64_t bound = kDefaultFieldBound);

FieldSpec make_field(unsigned p, unsigned k, std::vector<unsigned> modulus,
                     std::uint64_t bound = kDefaultFieldBound);

/// Accepts "gf(4)", "gf(2^2)", "gf(3)", "gf(2^4;modulus=1,1,0,0,1)".
FieldSpec parse_field(std::string_view literal);

class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t size() const { return q_; }

  Scalar zero() const { return Scalar{0}; }
  Scalar one() const { return Scalar{1}; }
  /// n * 1, reduced mod p.
  Scalar from_int(long long n) const;
  /// Throws unless code < size().
  Scalar element(std::uint32_t code) const;
  /// Degree-descending coefficients, length exactly k.
  Scalar from_coeffs(std::span<const unsigned> descending) const;
  std::vector<unsigned> coeffs(Scalar s) const;
  bool contains(Scalar s) const { return s.code < q_; }

  Scalar add(Scalar a, Scalar b) const {
    if (p_ == 2) return Scalar{a.code ^ b.code};
    if (!add_table_.empty()) return Scalar{add_table_[a.code * q_ + b.code]};
    return add_digits(a, b);
  }
  Scalar neg(Scalar a) const {
    if (p_ == 2) return a;
    return Scalar{neg_table_[a.code]};
  }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar mul(Scalar a, Scalar b) const {
    if (a.code == 0 || b.code == 0) return Scalar{0};
    return Scalar{exp_[log_[a.code] + log_[b.code]]};
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const;

  /// The first w in code order with w^3 = 1 and w != 1, if any.
  std::optional<Scalar> primitive_cube_root() const;

  std::string format(Scalar s) const;

  friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

 private:
  Scalar add_digits(Scalar a, Scalar b) const;
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;

  FieldSpec spec_;
  unsigned p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;  // length q
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> neg_table_;
};

}  // namespace fmbasis::ff
