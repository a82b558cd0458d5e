#include "fmbasis/grp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "fmbasis/error.hpp"
#include "fmbasis/ff.hpp"
#include "text.hpp"

namespace fmbasis::grp {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

long long mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

// b^e mod m by repeated squaring; values stay below 2^32 for orders <= 2^16.
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_order(std::uint64_t order, const BuildOptions& opts) {
  if (order > opts.max_order)
    fail(Errc::unsupported, "group order " + std::to_string(order) + " exceeds bound " + std::to_string(opts.max_order));
}

// Normalized metacyclic parameters after validation.
struct MetacyclicLaw {
  unsigned p;
  std::uint64_t a_order;  // p^n
  std::uint64_t b_order;  // p^m, exponent bound for b in normal forms
  std::uint64_t b_power;  // p^t mod p^n: b^{p^m} = a^{b_power}
  std::uint64_t r;        // r mod p^n
};

MetacyclicLaw check_metacyclic(const Metacyclic& mc, const BuildOptions& opts) {
  if (!ff::is_prime(mc.p)) fail(Errc::invalid_argument, "metacyclic: p = " + std::to_string(mc.p) + " is not prime");
  if (mc.n == 0) fail(Errc::invalid_argument, "metacyclic: n must be at least 1");
  if (mc.n + mc.m > 20) fail(Errc::unsupported, "metacyclic: order p^(n+m) too large");
  check_order(ipow(mc.p, mc.n + mc.m), opts);
  MetacyclicLaw law;
  law.p = mc.p;
  law.a_order = ipow(mc.p, mc.n);
  law.b_order = ipow(mc.p, mc.m);
  law.b_power = mc.t >= mc.n ? 0 : ipow(mc.p, mc.t);
  law.r = static_cast<std::uint64_t>(mod(mc.r, static_cast<long long>(law.a_order)));
  const std::string pn = std::to_string(law.a_order);
  if (powmod(law.r, law.b_order, law.a_order) != 1 % law.a_order)
    fail(Errc::invalid_argument, "metacyclic: r^{p^m} = " + std::to_string(mc.r) + "^" + std::to_string(law.b_order) +
                                     " is not congruent to 1 mod " + pn);
  // p^t (r - 1) == 0 mod p^n
  const std::uint64_t lhs = (law.b_power % law.a_order) * ((law.r + law.a_order - 1) % law.a_order) % law.a_order;
  if (mc.t < mc.n && lhs != 0)
    fail(Errc::invalid_argument, "metacyclic: p^t (r - 1) = " + std::to_string(law.b_power) + "*(" +
                                     std::to_string(mc.r) + "-1) is not congruent to 0 mod " + pn);
  return law;
}

void check_named_n(const char* name, unsigned n, unsigned min_n) {
  if (n < min_n)
    fail(Errc::invalid_argument, std::string(name) + " requires n >= " + std::to_string(min_n));
}

Group build_metacyclic(const GroupSpec& spec, const Metacyclic& mc, const BuildOptions& opts) {
  const MetacyclicLaw law = check_metacyclic(mc, opts);
  const std::size_t A = law.a_order, B = law.b_order, order = A * B;
  std::vector<std::uint64_t> rpow(B);
  for (std::size_t j = 0; j < B; ++j) rpow[j] = powmod(law.r, j, A);
  std::vector<Index> table(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % A, j = x / A;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % A, l = y / A;
      // a^i b^j a^k b^l = a^{i + k r^j} b^{j + l}, then fold b^{p^m} = a^{p^t}.
      std::size_t ni = (i + k * rpow[j]) % A;
      std::size_t nj = j + l;
      if (nj >= B) {
        nj -= B;
        ni = (ni + law.b_power) % A;
      }
      table[x * order + y] = static_cast<Index>(ni + A * nj);
    }
  }
  std::vector<Index> gens;
  if (A > 1) gens.push_back(1);
  if (B > 1) gens.push_back(static_cast<Index>(A));
  std::vector<std::vector<unsigned>> forms(order);
  for (std::size_t x = 0; x < order; ++x) {
    if (B > 1)
      forms[x] = {static_cast<unsigned>(x % A), static_cast<unsigned>(x / A)};
    else
      forms[x] = {static_cast<unsigned>(x)};
  }
  Group g(spec, law.p, order, std::move(table), std::move(gens), std::move(forms));
  validate(g);
  if (element_order(g, g.gen_a()) != A)
    fail(Errc::invalid_argument, "metacyclic: a does not have order p^n (inconsistent presentation)");
  return g;
}

Group build_abelian(const GroupSpec& spec, const Abelian& ab, const BuildOptions& opts) {
  if (ab.orders.empty()) fail(Errc::invalid_argument, "abelian: at least one cyclic factor required");
  unsigned prime = 0;
  std::uint64_t order = 1;
  for (unsigned q : ab.orders) {
    if (q < 2) fail(Errc::invalid_argument, "abelian: cyclic orders must be at least 2");
    unsigned p = 2;
    while (q % p) ++p;
    std::uint64_t rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1) fail(Errc::invalid_argument, "abelian: order " + std::to_string(q) + " is not a prime power");
    if (prime && p != prime) fail(Errc::invalid_argument, "abelian: orders must be powers of a single prime");
    prime = p;
    order *= q;
    check_order(order, opts);
  }
  const std::size_t n = order, s = ab.orders.size();
  std::vector<std::vector<unsigned>> forms(n, std::vector<unsigned>(s));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t rest = x;
    for (std::size_t i = 0; i < s; ++i) {
      forms[x][i] = static_cast<unsigned>(rest % ab.orders[i]);
      rest /= ab.orders[i];
    }
  }
  auto index_of = [&](const std::vector<unsigned>& e) {
    std::size_t idx = 0, scale = 1;
    for (std::size_t i = 0; i < s; ++i) {
      idx += e[i] * scale;
      scale *= ab.orders[i];
    }
    return static_cast<Index>(idx);
  };
  std::vector<Index> table(n * n);
  std::vector<unsigned> e(s);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < s; ++i) e[i] = (forms[x][i] + forms[y][i]) % ab.orders[i];
      table[x * n + y] = index_of(e);
    }
  std::vector<Index> gens;
  std::size_t scale = 1;
  for (std::size_t i = 0; i < s; ++i) {
    gens.push_back(static_cast<Index>(scale));
    scale *= ab.orders[i];
  }
  Group g(spec, prime, n, std::move(table), std::move(gens), std::move(forms));
  validate(g);
  return g;
}

// Collection data for two-generator presentations with normal forms a^i b^j:
// a^A = 1, b^B = a^z, the rewrite b a -> a^x b^y, and b^C central.
struct Collector {
  std::size_t A, B;
  std::size_t z, x, y;
  unsigned prime;
  std::size_t C;
};

std::optional<Collector> collector_for(const GroupSpec& spec, const BuildOptions& opts) {
  if (std::holds_alternative<Example16>(spec.variant)) {
    // From b a b^-1 = b^2 a^3 with a^2, b^2 central: b a = b^2 a^3 b = a^3 b^3.
    return Collector{4, 4, 0, 3, 3, 2, 2};
  }
  if (auto mc = as_metacyclic(spec)) {
    const MetacyclicLaw law = check_metacyclic(*mc, opts);
    return Collector{law.a_order, law.b_order, law.b_power, law.r, 1, law.p, law.b_order};
  }
  return std::nullopt;
}

Group collect(const GroupSpec& spec, const Collector& c, const BuildOptions& opts) {
  check_order(static_cast<std::uint64_t>(c.A) * c.B, opts);
  const std::size_t states = c.A * c.B;
  // memo[state * 2 + letter]; kPending marks an expansion in progress.
  constexpr Index kUnknown = ~Index{0};
  constexpr Index kPending = ~Index{0} - 1;
  std::vector<Index> memo(states * 2, kUnknown);
  auto pack = [&](std::size_t i, std::size_t j) { return static_cast<Index>(i + c.A * j); };

  std::function<Index(Index, int)> act = [&](Index s, int letter) -> Index {
    Index& slot = memo[static_cast<std::size_t>(s) * 2 + letter];
    if (slot == kPending) fail(Errc::invalid_argument, "word closure: rewriting does not terminate");
    if (slot != kUnknown) return slot;
    slot = kPending;
    const std::size_t i = s % c.A, j = s / c.A;
    Index out;
    if (letter == 1) {
      out = j + 1 < c.B ? pack(i, j + 1) : pack((i + c.z) % c.A, 0);
    } else if (j == 0) {
      out = pack((i + 1) % c.A, 0);
    } else {
      // a^i b^j a = a^i (b^r a) b^{j-r} with r = j mod C and b^{j-r} central;
      // b^r a = b^{r-1} (a^x b^y).
      const std::size_t r = j % c.C;
      Index t = pack(1, 0);
      if (r > 0) {
        t = pack(0, r - 1);
        for (std::size_t k = 0; k < c.x; ++k) t = act(t, 0);
        for (std::size_t k = 0; k < c.y; ++k) t = act(t, 1);
      }
      for (std::size_t k = r; k < j; ++k) t = act(t, 1);
      out = pack((i + t % c.A) % c.A, t / c.A);
    }
    memo[static_cast<std::size_t>(s) * 2 + letter] = out;
    return out;
  };

  // Close {1} under right multiplication by a and b.
  std::vector<char> seen(states, 0);
  std::vector<Index> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int letter = 0; letter < 2; ++letter) {
      const Index t = act(queue[head], letter);
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  if (queue.size() != states)
    fail(Errc::invalid_argument, "word closure reached " + std::to_string(queue.size()) + " of " +
                                     std::to_string(states) + " normal forms");

  std::vector<Index> table(states * states);
  for (Index xs = 0; xs < states; ++xs)
    for (Index ys = 0; ys < states; ++ys) {
      Index t = xs;
      for (std::size_t k = 0; k < ys % c.A; ++k) t = act(t, 0);
      for (std::size_t k = 0; k < ys / c.A; ++k) t = act(t, 1);
      table[static_cast<std::size_t>(xs) * states + ys] = t;
    }
  std::vector<std::vector<unsigned>> forms(states);
  for (std::size_t s = 0; s < states; ++s) {
    if (c.B > 1)
      forms[s] = {static_cast<unsigned>(s % c.A), static_cast<unsigned>(s / c.A)};
    else
      forms[s] = {static_cast<unsigned>(s)};
  }
  std::vector<Index> gens{1};
  if (c.B > 1) gens.push_back(static_cast<Index>(c.A));
  Group g(spec, c.prime, states, std::move(table), std::move(gens), std::move(forms));
  validate(g);
  return g;
}

void check_example16_relations(const Group& g) {
  const Index a = g.gen_a(), b = *g.gen_b();
  auto conj = [&](Index x, Index y) { return g.mul(g.mul(x, y), g.inverse(x)); };
  const Index a2 = g.power(a, 2), b2 = g.power(b, 2);
  const bool ok = g.power(a, 4) == 0 && g.power(b, 4) == 0 && conj(b, a) == g.mul(b2, g.power(a, 3)) &&
                  conj(a, b) == g.mul(a2, g.power(b, 3)) && commutator(g, a2, b) == 0 && commutator(g, b2, a) == 0;
  if (!ok) fail(Errc::internal, "example16: table violates a defining relation");
}

Group build_product(const GroupSpec& spec, const DirectProduct& dp, const BuildOptions& opts) {
  if (!dp.left || !dp.right) fail(Errc::invalid_argument, "product: missing factor");
  const Group L = build_group(*dp.left, opts);
  const Group R = build_group(*dp.right, opts);
  if (L.prime() != R.prime()) fail(Errc::invalid_argument, "product: factors are p-groups for different primes");
  const std::size_t nl = L.order(), nr = R.order(), n = nl * nr;
  check_order(n, opts);
  std::vector<Index> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Index>(L.mul(x % nl, y % nl) + nl * R.mul(x / nl, y / nl));
  std::vector<Index> gens;
  for (Index g : L.generators()) gens.push_back(g);
  for (Index g : R.generators()) gens.push_back(static_cast<Index>(nl * g));
  std::vector<std::vector<unsigned>> forms(n);
  for (std::size_t x = 0; x < n; ++x) {
    forms[x] = L.normal_form(x % nl);
    const auto& rf = R.normal_form(x / nl);
    forms[x].insert(forms[x].end(), rf.begin(), rf.end());
  }
  Group g(spec, L.prime(), n, std::move(table), std::move(gens), std::move(forms));
  validate(g);
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_word(std::span<const unsigned> exponents) {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += static_cast<char>('a' + i);
    if (exponents[i] != 1) out += '^' + std::to_string(exponents[i]);
  }
  return out.empty() ? "1" : out;
}

Group::Group(GroupSpec spec, unsigned prime, std::size_t order, std::vector<Index> table, std::vector<Index> generators,
             std::vector<std::vector<unsigned>> normal_forms)
    : spec_(std::move(spec)),
      prime_(prime),
      order_(order),
      table_(std::move(table)),
      generators_(std::move(generators)),
      normal_forms_(std::move(normal_forms)) {
  if (table_.size() != order_ * order_) fail(Errc::internal, "group table has wrong size");
  inverse_.assign(order_, 0);
  for (Index g = 0; g < order_; ++g)
    for (Index h = 0; h < order_; ++h)
      if (mul(g, h) == 0) {
        inverse_[g] = h;
        break;
      }
  labels_.reserve(order_);
  for (const auto& nf : normal_forms_) labels_.push_back(format_word(nf));
}

Index Group::power(Index g, long long k) const {
  if (k < 0) {
    g = inverse(g);
    k = -k;
  }
  Index out = identity();
  for (long long i = 0; i < k; ++i) out = mul(out, g);
  return out;
}

bool Group::is_abelian() const {
  for (Index g = 0; g < order_; ++g)
    for (Index h = g + 1; h < order_; ++h)
      if (mul(g, h) != mul(h, g)) return false;
  return true;
}

void validate(const Group& g) {
  const std::size_t n = g.order();
  std::vector<char> seen(n);
  for (Index x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Index y = 0; y < n; ++y) {
      const Index z = g.mul(x, y);
      if (z >= n || seen[z]) fail(Errc::invalid_argument, "group table is not a Latin square (row " + std::to_string(x) + ")");
      seen[z] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Index y = 0; y < n; ++y) {
      const Index z = g.mul(y, x);
      if (seen[z]) fail(Errc::invalid_argument, "group table is not a Latin square (column " + std::to_string(x) + ")");
      seen[z] = 1;
    }
    if (g.mul(0, x) != x || g.mul(x, 0) != x) fail(Errc::invalid_argument, "index 0 is not the identity");
    if (g.mul(x, g.inverse(x)) != 0 || g.mul(g.inverse(x), x) != 0)
      fail(Errc::invalid_argument, "inverse table inconsistent");
  }
  if (n <= kDefaultMaxOrder) {
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) {
        const Index xy = g.mul(x, y);
        for (Index z = 0; z < n; ++z)
          if (g.mul(xy, z) != g.mul(x, g.mul(y, z)))
            fail(Errc::invalid_argument, "group table is not associative (inconsistent presentation)");
      }
  }
  if (subgroup_closure(g, g.generators()).size() != n)
    fail(Errc::invalid_argument, "designated generators do not generate the group");
}

Index commutator(const Group& g, Index x, Index y) {
  return g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y)));
}

unsigned element_order(const Group& g, Index x) {
  unsigned k = 1;
  for (Index y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

std::vector<Index> subgroup_closure(const Group& g, std::span<const Index> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Index> members{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (Index s : gens) {
      const Index t = g.mul(members[head], s);
      if (!seen[t]) {
        seen[t] = 1;
        members.push_back(t);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::optional<Metacyclic> as_metacyclic(const GroupSpec& spec) {
  return std::visit(
      overloaded{
          [](const Metacyclic& m) -> std::optional<Metacyclic> { return m; },
          [](const Dihedral& d) -> std::optional<Metacyclic> {
            check_named_n("dihedral", d.n, 2);
            return Metacyclic{2, d.n, 1, d.n, -1};
          },
          [](const Semidihedral& d) -> std::optional<Metacyclic> {
            check_named_n("semidihedral", d.n, 3);
            return Metacyclic{2, d.n, 1, d.n, -1 + (1ll << (d.n - 1))};
          },
          [](const GeneralizedQuaternion& d) -> std::optional<Metacyclic> {
            check_named_n("genquaternion", d.n, 2);
            return Metacyclic{2, d.n, 1, d.n - 1, -1};
          },
          [](const Quaternion8&) -> std::optional<Metacyclic> { return Metacyclic{2, 2, 1, 1, -1}; },
          [](const SemidihedralTwisted& d) -> std::optional<Metacyclic> {
            check_named_n("sdtwisted", d.n, 3);
            return Metacyclic{2, d.n, 1, d.n - 1, -1 + (1ll << (d.n - 1))};
          },
          [](const auto&) -> std::optional<Metacyclic> { return std::nullopt; },
      },
      spec.variant);
}

Group build_group(const GroupSpec& spec, const BuildOptions& opts) {
  if (auto mc = as_metacyclic(spec)) return build_metacyclic(spec, *mc, opts);
  return std::visit(overloaded{
                        [&](const Abelian& ab) { return build_abelian(spec, ab, opts); },
                        [&](const Example16&) {
                          Group g = build_by_word_closure(spec, opts);
                          check_example16_relations(g);
                          return g;
                        },
                        [&](const DirectProduct& dp) { return build_product(spec, dp, opts); },
                        [&](const auto&) -> Group { fail(Errc::internal, "unhandled group spec"); },
                    },
                    spec.variant);
}

Group build_by_word_closure(const GroupSpec& spec, const BuildOptions& opts) {
  auto c = collector_for(spec, opts);
  if (!c) fail(Errc::unsupported, "word closure supports two-generator presentations only");
  return collect(spec, *c, opts);
}

// ---------------------------------------------------------------------------

GroupSpec product(GroupSpec left, GroupSpec right) {
  return GroupSpec{DirectProduct{std::make_shared<const GroupSpec>(std::move(left)),
                                 std::make_shared<const GroupSpec>(std::move(right))}};
}

std::string GroupSpec::literal() const {
  return std::visit(
      overloaded{
          [](const Metacyclic& m) {
            std::ostringstream o;
            o << "metacyclic(" << m.p << ',' << m.n << ',' << m.m << ',' << m.t << ',' << m.r << ')';
            return o.str();
          },
          [](const Dihedral& d) { return "dihedral(n=" + std::to_string(d.n) + ")"; },
          [](const Semidihedral& d) { return "semidihedral(n=" + std::to_string(d.n) + ")"; },
          [](const GeneralizedQuaternion& d) { return "genquaternion(n=" + std::to_string(d.n) + ")"; },
          [](const Quaternion8&) { return std::string("quaternion8"); },
          [](const SemidihedralTwisted& d) { return "sdtwisted(n=" + std::to_string(d.n) + ")"; },
          [](const Abelian& a) {
            std::string s = "abelian(";
            for (std::size_t i = 0; i < a.orders.size(); ++i) s += (i ? "," : "") + std::to_string(a.orders[i]);
            return s + ")";
          },
          [](const Example16&) { return std::string("example16"); },
          [](const DirectProduct& d) { return "product(" + d.left->literal() + "," + d.right->literal() + ")"; },
      },
      variant);
}

namespace {

unsigned named_n(text::Cursor& cur) {
  cur.expect('(');
  if (!cur.at_digit()) {
    if (cur.identifier() != "n") cur.error("expected n=");
    cur.expect('=');
  }
  const auto n = static_cast<unsigned>(cur.integer());
  cur.expect(')');
  return n;
}

GroupSpec parse_spec(text::Cursor& cur) {
  const std::string name = cur.identifier();
  if (name == "dihedral") return GroupSpec{Dihedral{named_n(cur)}};
  if (name == "semidihedral") return GroupSpec{Semidihedral{named_n(cur)}};
  if (name == "genquaternion") return GroupSpec{GeneralizedQuaternion{named_n(cur)}};
  if (name == "sdtwisted") return GroupSpec{SemidihedralTwisted{named_n(cur)}};
  if (name == "quaternion8" || name == "q8") {
    if (cur.consume('(')) cur.expect(')');
    return GroupSpec{Quaternion8{}};
  }
  if (name == "example16") {
    if (cur.consume('(')) cur.expect(')');
    return GroupSpec{Example16{}};
  }
  if (name == "metacyclic") {
    cur.expect('(');
    Metacyclic m;
    m.p = static_cast<unsigned>(cur.integer());
    cur.expect(',');
    m.n = static_cast<unsigned>(cur.integer());
    cur.expect(',');
    m.m = static_cast<unsigned>(cur.integer());
    cur.expect(',');
    m.t = static_cast<unsigned>(cur.integer());
    cur.expect(',');
    m.r = cur.signed_integer();
    cur.expect(')');
    return GroupSpec{m};
  }
  if (name == "abelian" || name == "cyclic") {
    cur.expect('(');
    Abelian a;
    do {
      a.orders.push_back(static_cast<unsigned>(cur.integer()));
    } while (cur.consume(','));
    cur.expect(')');
    if (name == "cyclic" && a.orders.size() != 1) cur.error("cyclic takes one order");
    return GroupSpec{a};
  }
  if (name == "product") {
    cur.expect('(');
    GroupSpec left = parse_spec(cur);
    cur.expect(',');
    GroupSpec right = parse_spec(cur);
    cur.expect(')');
    return product(std::move(left), std::move(right));
  }
  cur.error("unknown group '" + name + "'");
}

}  // namespace

GroupSpec parse_group(std::string_view literal) {
  text::Cursor cur(literal);
  GroupSpec spec = parse_spec(cur);
  cur.expect_end();
  return spec;
}

}  // namespace fmbasis::grp
