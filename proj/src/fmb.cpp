#include "fmbasis/fmb.hpp"

#include <algorithm>
#include <map>

#include "fmbasis/error.hpp"

namespace fmbasis::fmb {

using galg::Element;
using galg::Filtration;
using galg::Row;

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::cardinality: return "cardinality";
    case WitnessKind::dependence: return "dependence";
    case WitnessKind::closure: return "closure";
    case WitnessKind::level_basis: return "level_basis";
    case WitnessKind::property_ii: return "property_ii";
  }
  return "unknown";
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  fail(Errc::invalid_argument, "no check named " + name);
}

namespace {

bool is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](ff::Scalar s) { return s.code == 0; });
}

// Finds the first member that depends on earlier ones; returns the relation.
std::optional<Witness> find_dependence(const BasisCandidate& b) {
  const ff::Field& K = b.alg->field();
  const std::size_t n = b.alg->dim(), m = b.size();
  struct Tracked {
    Row v;
    Row combo;
    std::size_t pivot;
  };
  std::vector<Tracked> rows;
  for (std::size_t i = 0; i < m; ++i) {
    Row v = b.elements[i].row();
    Row combo(m);
    combo[i] = K.one();
    for (const Tracked& t : rows) {
      const ff::Scalar c = v[t.pivot];
      if (c.code == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = K.sub(v[j], K.mul(c, t.v[j]));
      for (std::size_t j = 0; j < m; ++j) combo[j] = K.sub(combo[j], K.mul(c, t.combo[j]));
    }
    std::size_t piv = 0;
    while (piv < n && v[piv].code == 0) ++piv;
    if (piv == n) {
      Witness w;
      w.kind = WitnessKind::dependence;
      for (std::size_t j = 0; j < m; ++j)
        if (combo[j].code) {
          w.members.push_back(j);
          w.coefficients.push_back(combo[j]);
        }
      w.message = "member '" + b.labels[i] + "' is a linear combination of earlier members";
      return w;
    }
    const ff::Scalar s = K.inv(v[piv]);
    for (auto& x : v) x = K.mul(x, s);
    for (auto& x : combo) x = K.mul(x, s);
    rows.push_back({std::move(v), std::move(combo), piv});
  }
  return std::nullopt;
}

CheckResult named(std::string name, bool informational = false) {
  CheckResult c;
  c.name = std::move(name);
  c.informational = informational;
  return c;
}

std::size_t rank_of(const BasisCandidate& b, const std::vector<std::size_t>& idx) {
  galg::Echelon e(b.alg->field(), b.alg->dim());
  for (std::size_t i : idx) e.insert(b.elements[i].coeffs());
  return e.rank();
}

}  // namespace

VerificationReport verify(const BasisCandidate& b, const Filtration* precomputed) {
  if (!b.alg) fail(Errc::invalid_argument, "candidate has no algebra");
  if (b.elements.empty()) fail(Errc::invalid_argument, "empty basis candidate");
  if (b.labels.size() != b.elements.size()) fail(Errc::invalid_argument, "labels and elements differ in length");
  for (const Element& e : b.elements)
    if (!e.algebra().compatible(*b.alg)) fail(Errc::mismatch, "candidate mixes group algebras");

  std::optional<Filtration> own;
  if (precomputed) {
    if (!precomputed->algebra().compatible(*b.alg)) fail(Errc::mismatch, "filtration belongs to another algebra");
    const auto& d = precomputed->dims();
    if (d.size() < 2 || d[0] != b.alg->dim() || d[1] + 1 != b.alg->dim())
      fail(Errc::invalid_argument, "supplied filtration is inconsistent with the algebra");
  } else {
    own.emplace(galg::compute_filtration(b.alg));
  }
  const Filtration& f = precomputed ? *precomputed : *own;
  const std::size_t order = b.alg->dim(), m = b.size();
  const unsigned L = f.length();

  VerificationReport rep;
  rep.labels = b.labels;
  rep.quotient_dims = f.quotient_dims();
  for (const Element& e : b.elements) rep.member_levels.push_back(f.level_of(e));

  // (a) cardinality and independence
  {
    CheckResult c = named("cardinality_independence");
    c.values = {m};
    c.expected = {order};
    if (m != order) {
      c.passed = false;
      Witness w;
      w.kind = WitnessKind::cardinality;
      w.count = m;
      w.expected = order;
      w.message = "candidate has " + std::to_string(m) + " members, |G| = " + std::to_string(order);
      c.witness = w;
    }
    if (auto dep = find_dependence(b)) {
      c.passed = false;
      if (!c.witness) c.witness = dep;
      c.detail = dep->message;
    }
    rep.checks.push_back(std::move(c));
  }

  // (b) closure: every ordered product is 0 or a member
  {
    CheckResult c = named("closure");
    std::map<Row, std::size_t> index;
    for (std::size_t i = 0; i < m; ++i) index.emplace(b.elements[i].row(), i);
    Row prod(order);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        b.alg->multiply(b.elements[i].coeffs(), b.elements[j].coeffs(), prod);
        if (is_zero(prod) || index.count(prod)) continue;
        ++bad;
        if (!c.witness) {
          Witness w;
          w.kind = WitnessKind::closure;
          w.members = {i, j};
          w.message = "product " + b.labels[i] + " * " + b.labels[j] + " is neither 0 nor a member";
          c.witness = w;
        }
      }
    c.passed = bad == 0;
    c.values = {bad};
    c.expected = {0};
    if (bad) c.detail = std::to_string(bad) + " products fall outside the candidate";
    rep.checks.push_back(std::move(c));
  }

  // (c) B cap I^n is a basis of I^n for n = 1..L-1
  {
    CheckResult c = named("radical_levels");
    for (unsigned n = 1; n < L; ++n) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (rep.member_levels[i] && *rep.member_levels[i] >= n) idx.push_back(i);
      const std::size_t want = f.dims()[n];
      c.values.push_back(idx.size());
      c.expected.push_back(want);
      if ((idx.size() != want || rank_of(b, idx) != want) && !c.witness) {
        c.passed = false;
        Witness w;
        w.kind = WitnessKind::level_basis;
        w.level = n;
        w.count = idx.size();
        w.expected = want;
        w.members = idx;
        w.message = "B cap I^" + std::to_string(n) + " has " + std::to_string(idx.size()) +
                    " members but dim I^" + std::to_string(n) + " = " + std::to_string(want);
        c.witness = w;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // (d) property (II): distinct members outside I^k are not congruent mod I^k
  {
    CheckResult c = named("property_ii", true);
    c.values.assign(L, 0);
    c.expected.assign(L, 0);
    for (unsigned k = L; k >= 1; --k) {
      std::map<Row, std::size_t> seen;
      for (std::size_t i = 0; i < m; ++i) {
        const auto lvl = rep.member_levels[i];
        if (!lvl || *lvl >= k) continue;
        Row key = k < L ? f.level(k).reduce(b.elements[i].coeffs()) : b.elements[i].row();
        auto [it, inserted] = seen.emplace(std::move(key), i);
        if (inserted) continue;
        ++c.values[k - 1];
        if (!c.witness) {
          Witness w;
          w.kind = WitnessKind::property_ii;
          w.members = {it->second, i};
          w.level = k;
          w.message = b.labels[it->second] + " and " + b.labels[i] + " lie outside I^" + std::to_string(k) +
                      " but are congruent mod I^" + std::to_string(k);
          c.witness = w;
        }
      }
    }
    c.passed = !c.witness;
    rep.checks.push_back(std::move(c));
  }

  // (e) property (III): members in I \ I^2 (the generators)
  {
    CheckResult c = named("property_iii", true);
    std::size_t count = 0;
    for (const auto& lvl : rep.member_levels)
      if (lvl && *lvl == 1) ++count;
    const std::size_t want = rep.quotient_dims.size() > 1 ? rep.quotient_dims[1] : 0;
    c.values = {count};
    c.expected = {want};
    c.passed = count == want;
    c.detail = std::to_string(count) + " members in I \\ I^2, dim I/I^2 = " + std::to_string(want);
    rep.checks.push_back(std::move(c));
  }

  rep.pass = true;
  for (const auto& c : rep.checks) {
    if (c.informational || c.passed) continue;
    rep.pass = false;
    if (!rep.witness) rep.witness = c.witness;
  }
  return rep;
}

bool witness_holds(const BasisCandidate& b, const Filtration& f, const Witness& w) {
  const ff::Field& K = b.alg->field();
  auto member = [&](std::size_t i) -> const Element& {
    if (i >= b.size()) fail(Errc::invalid_argument, "witness refers to a missing member");
    return b.elements.at(i);
  };
  switch (w.kind) {
    case WitnessKind::cardinality: return b.size() != b.alg->dim();
    case WitnessKind::dependence: {
      if (w.members.empty() || w.members.size() != w.coefficients.size()) return false;
      Element acc = b.alg->zero();
      for (std::size_t i = 0; i < w.members.size(); ++i) {
        if (w.coefficients[i].code == 0) return false;
        acc = acc + member(w.members[i]).scaled(w.coefficients[i]);
      }
      return acc.is_zero();
    }
    case WitnessKind::closure: {
      if (w.members.size() != 2) return false;
      const Element p = member(w.members[0]) * member(w.members[1]);
      if (p.is_zero()) return false;
      return std::none_of(b.elements.begin(), b.elements.end(), [&](const Element& e) { return e == p; });
    }
    case WitnessKind::level_basis: {
      galg::Echelon e(K, b.alg->dim());
      std::size_t count = 0;
      for (const Element& x : b.elements) {
        const auto lvl = f.level_of(x);
        if (lvl && *lvl >= w.level) {
          ++count;
          e.insert(x.coeffs());
        }
      }
      const std::size_t want = w.level < f.dims().size() ? f.dims()[w.level] : 0;
      return count != want || e.rank() != want;
    }
    case WitnessKind::property_ii: {
      if (w.members.size() != 2) return false;
      const Element& x = member(w.members[0]);
      const Element& y = member(w.members[1]);
      if (x == y) return false;
      if (f.contains(x.coeffs(), w.level) || f.contains(y.coeffs(), w.level)) return false;
      return f.congruent(x, y, w.level);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

// Compresses a letter sequence like u,u,v into "u^2*v".
std::string word_label(const std::vector<std::size_t>& letters, const std::vector<std::string>& names) {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += '*';
    out += names[letters[i]];
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

// Evaluates a word written as "u*v^2*u" over the named elements.
Element eval_word(const std::string& word, const std::map<std::string, Element>& vars, const Element& one) {
  Element acc = one;
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t end = word.find('*', pos);
    if (end == std::string::npos) end = word.size();
    std::string tok = word.substr(pos, end - pos);
    unsigned exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      exp = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
      tok = tok.substr(0, caret);
    }
    if (tok != "1") acc = acc * vars.at(tok).pow(exp);
    pos = end + 1;
  }
  return acc;
}

void require_char(const galg::GroupAlgebra& alg, unsigned p, const char* what) {
  if (alg.field().characteristic() != p)
    fail(Errc::invalid_argument, std::string(what) + " requires a field of characteristic " + std::to_string(p));
}

std::optional<grp::Metacyclic> normalized_metacyclic(const grp::GroupSpec& spec) {
  auto mc = grp::as_metacyclic(spec);
  if (!mc) return std::nullopt;
  const long long A = 1ll << std::min(mc->n, 30u);
  if (mc->p == 2) {
    mc->r = ((mc->r % A) + A) % A;
    if (mc->t > mc->n) mc->t = mc->n;
  }
  return mc;
}

BasisCandidate from_words(const std::shared_ptr<const galg::GroupAlgebra>& alg, const std::vector<std::string>& words,
                          const std::map<std::string, Element>& vars) {
  BasisCandidate b{alg, {}, {}, {}};
  const Element one = alg->one();
  for (const auto& w : words) b.add(w, eval_word(w, vars, one));
  return b;
}

}  // namespace

BasisCandidate construct_abelian(const std::shared_ptr<const galg::GroupAlgebra>& alg) {
  const grp::Group& G = alg->group();
  if (!G.is_abelian()) fail(Errc::invalid_argument, "construct_abelian: group " + G.spec().literal() + " is not abelian");
  require_char(*alg, G.prime(), "construct_abelian");
  const auto gens = G.generators();
  std::vector<unsigned> orders;
  std::size_t total = 1;
  for (grp::Index g : gens) {
    orders.push_back(grp::element_order(G, g));
    total *= orders.back();
  }
  if (total != G.order())
    fail(Errc::invalid_argument, "construct_abelian: designated generators are not a direct decomposition");

  std::vector<std::vector<Element>> powers(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    powers[i].push_back(alg->one());
    const Element x = alg->aug(gens[i]);
    for (unsigned e = 1; e < orders[i]; ++e) powers[i].push_back(powers[i].back() * x);
  }
  BasisCandidate b{alg, {}, {}, {}};
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    Element e = alg->one();
    std::string label;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const unsigned n = static_cast<unsigned>(rest % orders[i]);
      rest /= orders[i];
      if (n == 0) continue;
      e = e * powers[i][n];
      if (!label.empty()) label += '*';
      label += "(" + std::string(1, static_cast<char>('a' + i)) + "-1)";
      if (n > 1) label += "^" + std::to_string(n);
    }
    b.add(label.empty() ? "1" : label, std::move(e));
  }
  return b;
}

BasisCandidate product_basis(const BasisCandidate& left, const BasisCandidate& right) {
  if (!left.alg || !right.alg) fail(Errc::invalid_argument, "product_basis: candidate without algebra");
  if (!(left.alg->field() == right.alg->field())) fail(Errc::mismatch, "product_basis: field mismatch");
  grp::Group G = grp::build_group(grp::product(left.alg->group().spec(), right.alg->group().spec()));
  auto alg = galg::GroupAlgebra::create(std::move(G), left.alg->field());
  const ff::Field& K = alg->field();
  const std::size_t nl = left.alg->dim();
  BasisCandidate b{alg, {}, {}, {}};
  for (std::size_t j = 0; j < right.size(); ++j)
    for (std::size_t i = 0; i < left.size(); ++i) {
      Row r(alg->dim());
      const auto x = left.elements[i].coeffs();
      const auto y = right.elements[j].coeffs();
      for (std::size_t h = 0; h < y.size(); ++h) {
        if (y[h].code == 0) continue;
        for (std::size_t g = 0; g < x.size(); ++g)
          if (x[g].code) r[g + nl * h] = K.mul(x[g], y[h]);
      }
      const std::string& l = left.labels[i];
      const std::string& rl = right.labels[j];
      std::string label = l == "1" && rl == "1" ? "1" : l + " (x) " + rl;
      b.add(std::move(label), alg->from_coeffs(std::move(r)));
    }
  for (const auto& p : left.params) b.params.push_back({"left." + p.name, p.value});
  for (const auto& p : right.params) b.params.push_back({"right." + p.name, p.value});
  return b;
}

BasisCandidate construct_dihedral(const std::shared_ptr<const galg::GroupAlgebra>& alg) {
  const auto mc = normalized_metacyclic(alg->group().spec());
  if (!mc || mc->p != 2 || mc->m != 1 || mc->t != mc->n || mc->n < 2 || mc->r != (1ll << mc->n) - 1)
    fail(Errc::invalid_argument, "construct_dihedral: group " + alg->group().spec().literal() + " is not dihedral");
  require_char(*alg, 2, "construct_dihedral");
  const unsigned half = 1u << (mc->n - 1);
  const grp::Index a = alg->group().gen_a(), bb = *alg->group().gen_b();
  const Element u = alg->basis(a) + alg->basis(bb);
  const Element v = alg->one() + alg->basis(bb);
  std::vector<std::string> words{"1", "v"};
  auto upow = [](unsigned i) { return i == 1 ? std::string("u") : "u^" + std::to_string(i); };
  for (unsigned i = 1; i <= half; ++i) words.push_back(upow(i));
  for (unsigned i = 1; i <= half; ++i) words.push_back("v*" + upow(i));
  for (unsigned j = 1; j < half; ++j) words.push_back(upow(j) + "*v");
  for (unsigned j = 1; j < half; ++j) words.push_back("v*" + upow(j) + "*v");
  BasisCandidate b = from_words(alg, words, {{"u", u}, {"v", v}});
  b.params = {{"alpha", alg->field().one()}, {"beta", alg->field().one()}};
  return b;
}

BasisCandidate construct_quaternion8(const std::shared_ptr<const galg::GroupAlgebra>& alg) {
  const auto mc = normalized_metacyclic(alg->group().spec());
  if (!mc || mc->p != 2 || mc->n != 2 || mc->m != 1 || mc->t != 1 || mc->r != 3)
    fail(Errc::invalid_argument,
         "construct_quaternion8: group " + alg->group().spec().literal() + " is not the quaternion group of order 8");
  require_char(*alg, 2, "construct_quaternion8");
  const ff::Field& K = alg->field();
  const auto w = K.primitive_cube_root();
  if (!w) fail(Errc::invalid_argument, K.spec().literal() + " contains no primitive cube root of unity");
  const grp::Index a = alg->group().gen_a(), bb = *alg->group().gen_b();
  const Element x = alg->aug(a), y = alg->aug(bb);
  const ff::Scalar w2 = K.mul(*w, *w);
  const Element xy = x * y;
  const Element u = x.scaled(*w) + y + xy.scaled(w2);
  const Element v = x.scaled(w2) + y + xy.scaled(*w);
  BasisCandidate b = from_words(alg, {"1", "u", "v", "u*v", "v*u", "u*v*u", "v*u*v", "u*v*u*v"}, {{"u", u}, {"v", v}});
  b.params = {{"omega", *w}};
  return b;
}

BasisCandidate construct_example16(const std::shared_ptr<const galg::GroupAlgebra>& alg, ff::Scalar mu1,
                                   ff::Scalar mu2) {
  if (!std::holds_alternative<grp::Example16>(alg->group().spec().variant))
    fail(Errc::invalid_argument, "construct_example16: group " + alg->group().spec().literal() + " is not example16");
  require_char(*alg, 2, "construct_example16");
  const ff::Field& K = alg->field();
  if (!K.contains(mu1) || !K.contains(mu2)) fail(Errc::invalid_argument, "construct_example16: mu outside the field");
  if (mu1 == mu2) fail(Errc::invalid_argument, "construct_example16: requires mu1 != mu2");
  const grp::Index a = alg->group().gen_a(), bb = *alg->group().gen_b();
  const Element u = alg->basis(a) + alg->basis(bb);
  const Element v = alg->basis(a).scaled(mu1) + alg->basis(bb).scaled(mu2) + alg->scalar(K.add(mu1, mu2));
  BasisCandidate b = from_words(alg,
                                {"1", "u", "v", "u*v", "v*u", "v^2", "u*v*u", "u*v^2", "v*u*v", "v^3", "u*v*u*v",
                                 "u*v^3", "v*u*v^2", "u*v*u*v^2", "v*u*v^3", "u*v*u*v^3"},
                                {{"u", u}, {"v", v}});
  b.params = {{"mu1", mu1}, {"mu2", mu2}};
  return b;
}

namespace {

std::optional<ff::Scalar> find_param(const std::vector<Param>& params, const std::string& name) {
  for (const auto& p : params)
    if (p.name == name) return p.value;
  return std::nullopt;
}

std::vector<Param> strip_prefix(const std::vector<Param>& params, const std::string& prefix) {
  std::vector<Param> out;
  for (const auto& p : params)
    if (p.name.rfind(prefix, 0) == 0) out.push_back({p.name.substr(prefix.size()), p.value});
  return out;
}

std::string auto_name(const grp::GroupSpec& spec, const grp::Group& g) {
  if (std::holds_alternative<grp::DirectProduct>(spec.variant)) return "product";
  if (std::holds_alternative<grp::Example16>(spec.variant)) return "example16";
  if (g.is_abelian()) return "abelian";
  if (const auto mc = normalized_metacyclic(spec); mc && mc->p == 2) {
    if (mc->m == 1 && mc->t == mc->n && mc->n >= 2 && mc->r == (1ll << mc->n) - 1) return "dihedral";
    if (mc->n == 2 && mc->m == 1 && mc->t == 1 && mc->r == 3) return "quaternion8";
  }
  fail(Errc::unsupported, "no explicit construction for " + spec.literal());
}

}  // namespace

BasisCandidate construct(const std::shared_ptr<const galg::GroupAlgebra>& alg, const std::string& name,
                         const std::vector<Param>& params) {
  const std::string n = name == "auto" ? auto_name(alg->group().spec(), alg->group()) : name;
  if (n == "abelian") return construct_abelian(alg);
  if (n == "dihedral") return construct_dihedral(alg);
  if (n == "quaternion8") return construct_quaternion8(alg);
  if (n == "example16")
    return construct_example16(alg, find_param(params, "mu1").value_or(alg->field().zero()),
                               find_param(params, "mu2").value_or(alg->field().one()));
  if (n == "product") {
    const auto* dp = std::get_if<grp::DirectProduct>(&alg->group().spec().variant);
    if (!dp) fail(Errc::invalid_argument, "construct product: " + alg->group().spec().literal() + " is not a product");
    auto side = [&](const grp::GroupSpec& spec, const std::string& prefix) {
      auto a = galg::GroupAlgebra::create(grp::build_group(spec), alg->field());
      return construct(a, "auto", strip_prefix(params, prefix));
    };
    BasisCandidate p = product_basis(side(*dp->left, "left."), side(*dp->right, "right."));
    if (!p.alg->compatible(*alg)) fail(Errc::internal, "product basis landed in a different algebra");
    BasisCandidate out{alg, {}, {}, p.params};
    for (std::size_t i = 0; i < p.size(); ++i) out.add(p.labels[i], alg->from_coeffs(p.elements[i].row()));
    return out;
  }
  fail(Errc::invalid_argument, "unknown construction '" + name + "'");
}

BasisCandidate closure_candidate(const std::vector<Element>& gens, const std::vector<std::string>& names,
                                 std::size_t max_members) {
  if (gens.empty()) fail(Errc::invalid_argument, "closure_candidate: no generators");
  if (names.size() != gens.size()) fail(Errc::invalid_argument, "closure_candidate: one name per generator");
  const auto& alg = gens.front().algebra_ptr();
  BasisCandidate b{alg, {}, {}, {}};
  std::map<Row, std::size_t> seen;
  std::vector<std::vector<std::size_t>> words;
  auto offer = [&](Element e, std::vector<std::size_t> letters) {
    if (b.size() >= max_members || e.is_zero() || seen.count(e.row())) return;
    seen.emplace(e.row(), b.size());
    b.add(word_label(letters, names), std::move(e));
    words.push_back(std::move(letters));
  };
  offer(alg->one(), {});
  for (std::size_t i = 0; i < gens.size(); ++i) offer(gens[i], {i});
  for (std::size_t head = 1; head < b.size() && b.size() < max_members; ++head)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto letters = words[head];
      letters.push_back(i);
      offer(b.elements[head] * gens[i], std::move(letters));
    }
  return b;
}

galg::LeadingQuotient leading_quotient(const Element& x, const Filtration& f) { return f.leading_quotient(x); }

}  // namespace fmbasis::fmb
