#include "fmbasis/ff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "fmbasis/error.hpp"
#include "text.hpp"

namespace fmbasis::ff {

namespace {

// Polynomials below are ascending coefficient vectors over Z_p.
using Poly = std::vector<unsigned>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = (f[shift + i] + p - (lead * g[i]) % p) % p;
    trim(f);
  }
  return f;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(unsigned p, std::span<const unsigned> monic) {
  if (monic.empty() || monic.front() != 1) return false;
  const std::size_t k = monic.size() - 1;
  if (k == 0) return false;
  Poly f(monic.rbegin(), monic.rend());
  for (std::size_t d = 1; d <= k / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<unsigned>(d));
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g(d + 1);
      std::uint64_t rest = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(rest % p);
        rest /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t FieldSpec::size() const {
  return static_cast<std::uint32_t>(ipow(characteristic, degree));
}

std::string FieldSpec::literal() const {
  std::ostringstream out;
  out << "gf(";
  if (degree == 1) {
    out << characteristic;
  } else {
    out << characteristic << '^' << degree << ";modulus=";
    for (std::size_t i = 0; i < modulus.size(); ++i) out << (i ? "," : "") << modulus[i];
  }
  out << ')';
  return out.str();
}

namespace {

void check_size(unsigned p, unsigned k, std::uint64_t bound) {
  if (!is_prime(p)) fail(Errc::invalid_argument, "field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) fail(Errc::invalid_argument, "field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > bound)
      fail(Errc::unsupported, "field size " + std::to_string(p) + "^" + std::to_string(k) +
                                  " exceeds bound " + std::to_string(bound));
  }
}

}  // namespace

FieldSpec make_field(unsigned p, unsigned k, std::uint64_t bound) {
  check_size(p, k, bound);
  FieldSpec spec{p, k, {}};
  if (k == 1) return spec;
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t n = 0; n < count; ++n) {
    // Digit k-1-i of n is c_i, so numeric order is lexicographic on (c_{k-1}, ..., c_0).
    std::vector<unsigned> monic(k + 1);
    monic[0] = 1;
    std::uint64_t rest = n;
    for (unsigned i = 0; i < k; ++i) {
      monic[k - i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    if (is_irreducible(p, monic)) {
      spec.modulus = std::move(monic);
      return spec;
    }
  }
  fail(Errc::internal, "no irreducible polynomial found");
}

FieldSpec make_field(unsigned p, unsigned k, std::vector<unsigned> modulus, std::uint64_t bound) {
  check_size(p, k, bound);
  if (k == 1) {
    if (!modulus.empty() && !(modulus.size() == 2 && modulus[0] == 1))
      fail(Errc::invalid_argument, "prime field takes no modulus");
    return FieldSpec{p, 1, {}};
  }
  if (modulus.size() != k + 1 || modulus.front() != 1)
    fail(Errc::invalid_argument, "modulus must be monic of degree " + std::to_string(k));
  for (unsigned c : modulus)
    if (c >= p) fail(Errc::invalid_argument, "modulus coefficients must lie in [0, p)");
  if (!is_irreducible(p, modulus)) fail(Errc::invalid_argument, "modulus is reducible over Z_" + std::to_string(p));
  return FieldSpec{p, k, std::move(modulus)};
}

FieldSpec parse_field(std::string_view literal) {
  text::Cursor cur(literal);
  cur.skip_ws();
  if (!cur.consume_word("gf") && !cur.consume_word("GF"))
    fail(Errc::parse_error, "field literal must start with gf(: '" + std::string(literal) + "'");
  cur.expect('(');
  const std::uint64_t first = cur.integer();
  unsigned p = 0, k = 1;
  if (cur.consume('^')) {
    p = static_cast<unsigned>(first);
    k = static_cast<unsigned>(cur.integer());
  } else {
    // gf(q): factor q as a prime power.
    std::uint64_t q = first;
    if (q < 2) fail(Errc::invalid_argument, "field size must be at least 2");
    std::uint64_t d = 2;
    while (q % d) ++d;
    p = static_cast<unsigned>(d);
    k = 0;
    while (q % d == 0) {
      q /= d;
      ++k;
    }
    if (q != 1) fail(Errc::invalid_argument, "field size " + std::to_string(first) + " is not a prime power");
  }
  std::optional<std::vector<unsigned>> modulus;
  if (cur.consume(';')) {
    if (!cur.consume_word("modulus")) fail(Errc::parse_error, "expected modulus= in field literal");
    cur.expect('=');
    std::vector<unsigned> coeffs;
    do {
      coeffs.push_back(static_cast<unsigned>(cur.integer()));
    } while (cur.consume(','));
    modulus = std::move(coeffs);
  }
  cur.expect(')');
  cur.expect_end();
  if (modulus) return make_field(p, k, std::move(*modulus));
  return make_field(p, k);
}

// ---------------------------------------------------------------------------

Field::Field(FieldSpec spec) : spec_(std::move(spec)), p_(spec_.characteristic), k_(spec_.degree) {
  check_size(p_, k_, kDefaultFieldBound);
  if (k_ > 1 && (spec_.modulus.size() != k_ + 1 || !is_irreducible(p_, spec_.modulus)))
    fail(Errc::invalid_argument, "field modulus is not a monic irreducible of degree " + std::to_string(k_));
  q_ = spec_.size();

  if (p_ != 2 && q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(Scalar{a}, Scalar{b}).code;
  }
  neg_table_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t out = 0, scale = 1, rest = a;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint32_t c = rest % p_;
      rest /= p_;
      out += ((p_ - c) % p_) * scale;
      scale *= p_;
    }
    neg_table_[a] = out;
  }

  // Find a generator of the multiplicative group and build exp/log tables.
  const std::uint32_t n = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  log_.assign(q_, 0);
  for (std::uint32_t g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = slow_mul(x, g);
      ++order;
    } while (x != 1 && order <= n);
    if (order != n) continue;
    x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, g);
    }
    for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
    return;
  }
  fail(Errc::internal, "no primitive element found in " + spec_.literal());
}

Scalar Field::add_digits(Scalar a, Scalar b) const {
  std::uint32_t out = 0, scale = 1, x = a.code, y = b.code;
  for (unsigned i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Scalar{out};
}

std::uint32_t Field::slow_mul(std::uint32_t a, std::uint32_t b) const {
  Poly x(k_), y(k_);
  for (unsigned i = 0; i < k_; ++i) {
    x[i] = a % p_;
    a /= p_;
    y[i] = b % p_;
    b /= p_;
  }
  Poly z(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
  if (k_ > 1) {
    Poly g(spec_.modulus.rbegin(), spec_.modulus.rend());
    z = poly_mod(std::move(z), g, p_);
  } else {
    trim(z);
  }
  std::uint32_t out = 0, scale = 1;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out += z[i] * scale;
    scale *= p_;
  }
  return out;
}

Scalar Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Scalar{static_cast<std::uint32_t>(r)};
}

Scalar Field::element(std::uint32_t code) const {
  if (code >= q_) fail(Errc::invalid_argument, "scalar code " + std::to_string(code) + " outside " + spec_.literal());
  return Scalar{code};
}

Scalar Field::from_coeffs(std::span<const unsigned> descending) const {
  if (descending.size() != k_)
    fail(Errc::invalid_argument, "scalar of " + spec_.literal() + " needs exactly " + std::to_string(k_) +
                                     " coefficients");
  std::uint32_t out = 0;
  for (unsigned c : descending) {
    if (c >= p_) fail(Errc::invalid_argument, "scalar coefficient out of range [0, p)");
    out = out * p_ + c;
  }
  return Scalar{out};
}

std::vector<unsigned> Field::coeffs(Scalar s) const {
  std::vector<unsigned> out(k_);
  std::uint32_t rest = s.code;
  for (unsigned i = 0; i < k_; ++i) {
    out[k_ - 1 - i] = rest % p_;
    rest /= p_;
  }
  return out;
}

Scalar Field::inv(Scalar a) const {
  if (a.code == 0) fail(Errc::invalid_argument, "inversion of zero in " + spec_.literal());
  const std::uint32_t n = q_ - 1;
  return Scalar{exp_[(n - log_[a.code]) % n]};
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code == 0) return zero();
  const std::uint64_t n = q_ - 1;
  return Scalar{exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a.code]) * (e % n)) % n)]};
}

std::optional<Scalar> Field::primitive_cube_root() const {
  for (std::uint32_t c = 2; c < q_; ++c) {
    const Scalar w{c};
    if (pow(w, 3) == one()) return w;
  }
  return std::nullopt;
}

std::string Field::format(Scalar s) const {
  if (k_ == 1) return std::to_string(s.code);
  std::string out = "[";
  const auto c = coeffs(s);
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out + "]";
}

}  // namespace fmbasis::ff
