// Acceptance run: one PASS/FAIL line per criterion, followed by details.
//
//   fmbasis_acceptance [--jobs N] [--expect-fail 3,5]
//
// Without --expect-fail the exit status is 0 only if every criterion passes.
// With it, the status is 0 exactly when the failing set equals the given list,
// so a known-red criterion stays visible without masking regressions.

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fmbasis/error.hpp"
#include "fmbasis/expr.hpp"
#include "fmbasis/fmb.hpp"
#include "fmbasis/search.hpp"
#include "oracles.hpp"

using namespace fmbasis;
using galg::Element;
using Alg = std::shared_ptr<const galg::GroupAlgebra>;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
  }
  void note(const std::string& what) { notes.push_back("        " + what); }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << s << " s";
  return o.str();
}

Alg algebra(const std::string& g, const std::string& k, std::size_t max_order = 64) {
  return galg::GroupAlgebra::create(grp::build_group(grp::parse_group(g), {max_order}),
                                    ff::Field(ff::parse_field(k)));
}

Element E(const Alg& A, const std::string& s) { return expr::parse_element(A, s); }

Element random_in_level(const galg::Filtration& F, unsigned k, std::mt19937& rng) {
  const auto& A = F.algebra_ptr();
  const auto& K = A->field();
  std::uniform_int_distribution<std::uint32_t> d(0, K.size() - 1);
  Element x = A->zero();
  for (const auto& row : F.level(k).rows()) x += A->from_coeffs(row).scaled(K.element(d(rng)));
  return x;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? sep : "") << v[i];
  return o.str();
}

// ---- 1 ----------------------------------------------------------------------

Outcome dihedral_positive() {
  Outcome out;
  for (unsigned n : {2u, 3u, 4u}) {
    const auto t0 = Clock::now();
    const auto A = algebra("dihedral(n=" + std::to_string(n) + ")", "gf(2)");
    const auto rep = fmb::verify(fmb::construct(A, "dihedral"));
    const bool abc = rep.check("cardinality_independence").passed && rep.check("closure").passed &&
                     rep.check("radical_levels").passed;
    const double dt = since(t0);
    out.require(rep.pass && abc && dt < 5, "dihedral(n=" + std::to_string(n) + ") over GF(2): verify " +
                                               (rep.pass ? "passes" : "fails") + " in " + fmt(dt));
  }
  return out;
}

// ---- 2 ----------------------------------------------------------------------

Outcome quaternion_positive(unsigned jobs) {
  Outcome out;
  const auto t0 = Clock::now();
  const auto rep = fmb::verify(fmb::construct(algebra("quaternion8", "gf(4)"), "quaternion8"));
  out.require(rep.pass, "quaternion8 over GF(4): constructed basis verifies");
  std::string msg;
  try {
    fmb::construct(algebra("quaternion8", "gf(2)"), "quaternion8");
  } catch (const Error& e) {
    msg = e.what();
  }
  out.require(!msg.empty(), "quaternion8 over GF(2): constructor errors (" + msg + ")");
  search::SearchConfig cfg;
  cfg.jobs = jobs;
  const auto s = search::search_fmb(grp::build_group(grp::parse_group("quaternion8")), ff::parse_field("gf(2)"), cfg);
  out.require(s.exhausted && s.found.empty(), "quaternion8 over GF(2): structured search exhausted=" +
                                                  std::string(s.exhausted ? "true" : "false") +
                                                  ", found=" + std::to_string(s.found.size()) +
                                                  ", space=" + s.space_size);
  const double dt = since(t0);
  out.require(dt < 60, "combined runtime " + fmt(dt) + " (< 60 s)");
  return out;
}

// ---- 3 and 4: exact identities -------------------------------------------

// u^2 - uvu against the stated closed form; u^2 == uvu mod I^4; neither in I^4.
void identity_check(Outcome& out, const std::string& group, const std::string& u_expr, const std::string& rhs_expr) {
  const auto A = algebra(group, "gf(2)");
  const auto F = galg::compute_filtration(A);
  const auto u = E(A, u_expr), v = E(A, "1+b");
  const auto u2 = u * u, uvu = u * v * u;
  const auto diff = u2 - uvu;
  out.require(diff == E(A, rhs_expr) && !diff.is_zero(), group + ": u^2 - uvu = " + rhs_expr + " != 0 exactly");
  out.require(F.congruent(u2, uvu, 4), group + ": u^2 == uvu mod I^4");
  out.require(!F.contains(u2.coeffs(), 4) && !F.contains(uvu.coeffs(), 4), group + ": u^2, uvu not in I^4");
}

Outcome semidihedral_negative(unsigned jobs) {
  Outcome out;
  const auto t0 = Clock::now();
  search::SearchConfig cfg;
  cfg.jobs = jobs;
  cfg.record_all = true;
  const auto s =
      search::search_fmb(grp::build_group(grp::parse_group("semidihedral(n=3)")), ff::parse_field("gf(2)"), cfg);
  const double dt = since(t0);
  out.require(s.exhausted, "semidihedral(n=3) over GF(2): search exhausted, covered " + s.covered + " of " +
                               s.space_size + " tuples in " + fmt(dt));
  out.require(s.found.empty(), "found = empty set (found " + std::to_string(s.found.size()) + ")");
  if (!s.found.empty()) {
    const auto& G = s.found.front().alg->group();
    const oracle::Table T{G.order(), G.table()};
    const auto levels = oracle::power_levels(T, 2);
    std::size_t confirmed = 0;
    for (const auto& b : s.found) {
      std::vector<oracle::Vec> rows;
      for (const auto& e : b.elements) {
        oracle::Vec v;
        for (auto c : e.row()) v.push_back(c.code);
        rows.push_back(v);
      }
      confirmed += oracle::is_fmb(T, 2, levels, rows);
    }
    out.note(std::to_string(confirmed) + " of " + std::to_string(s.found.size()) +
             " found bases confirmed by the independent definition check; an example:");
    const auto& b = s.found.front();
    for (std::size_t i = 1; i <= 2 && i < b.size(); ++i) {
      std::vector<std::string> terms;
      const auto& row = b.elements[i].row();
      for (grp::Index g = 0; g < row.size(); ++g)
        if (row[g].code) terms.push_back(G.label(g));
      out.note("  " + b.labels[i] + " = " + join(terms, " + "));
    }
  }
  out.require(dt < 3600, "runtime " + fmt(dt) + " (< 1 h)");
  identity_check(out, "semidihedral(n=3)", "a+b", "(1+a)^4*(1+b)+(1+a)^4");
  return out;
}

Outcome genquaternion_negative() {
  Outcome out;
  const auto t0 = Clock::now();
  identity_check(out, "genquaternion(n=3)", "(1+a)+(1+b)", "(1+a)^4+(1+a)^4*(1+b)");
  const auto A = algebra("genquaternion(n=3)", "gf(2)");
  const auto cand = fmb::closure_candidate({E(A, "(1+a)+(1+b)"), E(A, "1+b")}, {"u", "v"}, A->dim());
  const auto F = galg::compute_filtration(A);
  const auto rep = fmb::verify(cand, &F);
  const auto& p2 = rep.check("property_ii");
  std::string w = "none";
  bool holds = false;
  if (p2.witness) {
    w = p2.witness->message;
    holds = p2.witness->kind == fmb::WitnessKind::property_ii && fmb::witness_holds(cand, F, *p2.witness);
  }
  out.require(!rep.pass, "word closure of {u, v} (" + std::to_string(cand.size()) + " members) fails verify");
  out.require(holds, "property (II) witness: " + w);
  const double dt = since(t0);
  out.require(dt < 5, "runtime " + fmt(dt) + " (< 5 s)");
  return out;
}

// ---- 5 ----------------------------------------------------------------------

Outcome example16_positive() {
  Outcome out;
  const auto t0 = Clock::now();
  for (const char* k : {"gf(2)", "gf(4)"}) {
    const auto A = algebra("example16", k);
    const auto F = galg::compute_filtration(A);
    const auto& K = A->field();
    std::vector<std::string> bad, good;
    for (std::uint32_t m1 = 0; m1 < K.size(); ++m1)
      for (std::uint32_t m2 = 0; m2 < K.size(); ++m2) {
        if (m1 == m2) continue;
        const auto b = fmb::construct_example16(A, K.element(m1), K.element(m2));
        const std::string tag = "(" + K.format(K.element(m1)) + "," + K.format(K.element(m2)) + ")";
        (b.size() == 16 && fmb::verify(b, &F).pass ? good : bad).push_back(tag);
      }
    out.require(bad.empty(), std::string("example16 over ") + k + ": " + std::to_string(good.size()) + " of " +
                                 std::to_string(good.size() + bad.size()) + " ordered pairs verify");
    if (!good.empty()) out.note("verify: " + join(good));
    if (!bad.empty()) out.note("fail:   " + join(bad));
    if (std::string(k) == "gf(2)") {
      const auto q = F.quotient_dims();
      out.require(q.size() > 2 && q[2] == 3, "dim I^2/I^3 = " + std::to_string(q.size() > 2 ? q[2] : 0) +
                                                 " (quotient dims " + join(q) + ")");
    }
  }
  const double dt = since(t0);
  out.require(dt < 30, "runtime " + fmt(dt) + " (< 30 s)");
  return out;
}

// ---- 6 ----------------------------------------------------------------------

struct Coeffs {
  ff::Scalar a1, a2, b1, b2;
};

// Pairs u, v in I with prescribed classes mod I^2 and random tails in I^2.
struct Draw {
  Coeffs c;
  Element u, v;
};

Draw draw(const galg::Filtration& F, std::mt19937& rng) {
  const auto& A = F.algebra_ptr();
  const auto& K = A->field();
  std::uniform_int_distribution<std::uint32_t> d(0, K.size() - 1);
  Coeffs c{K.element(d(rng)), K.element(d(rng)), K.element(d(rng)), K.element(d(rng))};
  const auto x = E(A, "a-1"), y = E(A, "b-1");
  return {c, x.scaled(c.a1) + y.scaled(c.a2) + random_in_level(F, 2, rng),
          x.scaled(c.b1) + y.scaled(c.b2) + random_in_level(F, 2, rng)};
}

struct Suite {
  std::string name;
  std::vector<std::string> groups;
  // Given the draw, the four right-hand sides for uv, vu, u^2, v^2.
  std::function<std::array<Element, 4>(const Alg&, const Coeffs&)> rhs;
};

std::array<Element, 4> generic_rhs(const Alg& A, const Coeffs& c) {
  const auto& K = A->field();
  const auto& G = A->group();
  const auto x = E(A, "a-1"), y = E(A, "b-1");
  const auto cm = A->aug(grp::commutator(G, *G.gen_b(), G.gen_a()));
  auto m = [&](ff::Scalar p, ff::Scalar q) { return K.mul(p, q); };
  auto s = [&](ff::Scalar p, ff::Scalar q) { return K.add(p, q); };
  const auto x2 = x * x, y2 = y * y, xy = x * y;
  const auto two = K.from_int(2);
  return {x2.scaled(m(c.a1, c.b1)) + y2.scaled(m(c.a2, c.b2)) + xy.scaled(s(m(c.a1, c.b2), m(c.a2, c.b1))) +
              cm.scaled(m(c.a2, c.b1)),
          x2.scaled(m(c.a1, c.b1)) + y2.scaled(m(c.a2, c.b2)) + xy.scaled(s(m(c.a1, c.b2), m(c.a2, c.b1))) +
              cm.scaled(m(c.a1, c.b2)),
          x2.scaled(m(c.a1, c.a1)) + y2.scaled(m(c.a2, c.a2)) + xy.scaled(m(two, m(c.a1, c.a2))) +
              cm.scaled(m(c.a1, c.a2)),
          x2.scaled(m(c.b1, c.b1)) + y2.scaled(m(c.b2, c.b2)) + xy.scaled(m(two, m(c.b1, c.b2))) +
              cm.scaled(m(c.b1, c.b2))};
}

// Characteristic 2 throughout: 1 + a = a - 1.
std::array<Element, 4> rhs_involution(const Alg& A, const Coeffs& c) {
  const auto& K = A->field();
  auto m = [&](ff::Scalar p, ff::Scalar q) { return K.mul(p, q); };
  auto s = [&](ff::Scalar p, ff::Scalar q) { return K.add(p, q); };
  const auto x2 = E(A, "(1+a)^2"), xy = E(A, "(1+a)*(1+b)");
  const auto delta = s(m(c.a1, c.b2), m(c.a2, c.b1));
  return {x2.scaled(m(c.b1, s(c.a1, c.a2))) + xy.scaled(delta), x2.scaled(m(c.a1, s(c.b1, c.b2))) + xy.scaled(delta),
          x2.scaled(m(c.a1, s(c.a1, c.a2))), x2.scaled(m(c.b1, s(c.b1, c.b2)))};
}

std::array<Element, 4> rhs_higher_b(const Alg& A, const Coeffs& c) {
  const auto& K = A->field();
  auto m = [&](ff::Scalar p, ff::Scalar q) { return K.mul(p, q); };
  const auto y2 = E(A, "(1+b)^2");
  auto r = rhs_involution(A, c);
  r[0] += y2.scaled(m(c.a2, c.b2));
  r[1] += y2.scaled(m(c.a2, c.b2));
  r[2] += y2.scaled(m(c.a2, c.a2));
  r[3] += y2.scaled(m(c.b2, c.b2));
  return r;
}

std::array<Element, 4> rhs_example16(const Alg& A, const Coeffs& c) {
  const auto& K = A->field();
  auto m = [&](ff::Scalar p, ff::Scalar q) { return K.mul(p, q); };
  auto s = [&](ff::Scalar p, ff::Scalar q) { return K.add(p, q); };
  const auto x2 = E(A, "(1+a)^2"), y2 = E(A, "(1+b)^2"), xy = E(A, "(1+a)*(1+b)");
  const auto delta = s(m(c.a1, c.b2), m(c.a2, c.b1));
  return {x2.scaled(m(s(c.a1, c.a2), c.b1)) + xy.scaled(delta) + y2.scaled(m(c.a2, s(c.b1, c.b2))),
          x2.scaled(m(c.a1, s(c.b1, c.b2))) + xy.scaled(delta) + y2.scaled(m(c.b2, s(c.a1, c.a2))),
          x2.scaled(m(s(c.a1, c.a2), c.a1)) + y2.scaled(m(c.a2, s(c.a1, c.a2))),
          (x2.scaled(c.b1) + y2.scaled(c.b2)).scaled(s(c.b1, c.b2))};
}

Outcome congruences() {
  Outcome out;
  std::mt19937 rng(20240601);

  // (gh - 1) = (g - 1)(h - 1) + (g - 1) + (h - 1), exact in every group.
  const std::vector<std::string> all = {"dihedral(n=2)",        "dihedral(n=3)",         "dihedral(n=4)",
                                        "quaternion8",          "semidihedral(n=3)",     "genquaternion(n=3)",
                                        "sdtwisted(n=3)",       "example16",             "metacyclic(2,2,2,2,3)",
                                        "metacyclic(2,2,2,1,3)", "product(cyclic(2),cyclic(4))", "abelian(3,3)"};
  {
    std::size_t fails = 0, total = 0;
    for (const auto& g : all) {
      const auto G = grp::build_group(grp::parse_group(g));
      const auto A = galg::GroupAlgebra::create(G, ff::Field(ff::parse_field(G.prime() == 2 ? "gf(2)" : "gf(3)")));
      std::uniform_int_distribution<grp::Index> d(0, static_cast<grp::Index>(G.order() - 1));
      for (int it = 0; it < 1000; ++it, ++total) {
        const auto x = d(rng), y = d(rng);
        if (A->aug(G.mul(x, y)) != A->aug(x) * A->aug(y) + A->aug(x) + A->aug(y)) ++fails;
      }
    }
    out.require(fails == 0, "(gh-1) = (g-1)(h-1)+(g-1)+(h-1): " + std::to_string(total - fails) + "/" + std::to_string(total) +
                                " random pairs exact over " + std::to_string(all.size()) + " groups");
  }

  const std::vector<Suite> suites = {
      {"uv, vu, u^2, v^2 via the commutator c = [b,a]",
       {"dihedral(n=2)", "dihedral(n=3)", "quaternion8", "semidihedral(n=3)", "genquaternion(n=3)", "sdtwisted(n=3)",
        "example16", "metacyclic(2,2,2,2,3)", "metacyclic(2,2,2,1,3)", "abelian(4,2)"},
       generic_rhs},
      {"b^2 = 1 family",
       {"dihedral(n=2)", "dihedral(n=3)", "dihedral(n=4)", "semidihedral(n=3)", "semidihedral(n=4)"},
       rhs_involution},
      {"m > 1 family",
       {"metacyclic(2,2,2,2,3)", "metacyclic(2,3,2,3,3)", "metacyclic(2,3,2,3,7)", "metacyclic(2,2,2,1,3)",
        "metacyclic(2,3,2,2,3)", "metacyclic(2,3,2,2,7)"},
       rhs_higher_b},
      {"example16 products", {"example16"}, rhs_example16},
  };
  const char* names[4] = {"uv", "vu", "u^2", "v^2"};
  for (const auto& suite : suites) {
    std::size_t fails = 0, total = 0;
    std::vector<std::string> where;
    for (const auto& g : suite.groups) {
      const auto A = algebra(g, "gf(4)");
      const auto F = galg::compute_filtration(A);
      for (int it = 0; it < 200; ++it) {
        const auto dr = draw(F, rng);
        const auto r = suite.rhs(A, dr.c);
        const Element lhs[4] = {dr.u * dr.v, dr.v * dr.u, dr.u * dr.u, dr.v * dr.v};
        for (int k = 0; k < 4; ++k, ++total)
          if (!F.congruent(lhs[k], r[k], 3)) {
            ++fails;
            if (where.size() < 4) where.push_back(g + " " + names[k]);
          }
      }
    }
    out.require(fails == 0, suite.name + " mod I^3 over GF(4): " + std::to_string(total - fails) + "/" +
                                std::to_string(total) + " congruences hold (" + std::to_string(suite.groups.size()) +
                                " groups x 200 draws)");
    for (const auto& w : where) out.note("first failures: " + w);
  }

  // Powers of u = a + b in the dihedral algebras.
  {
    std::size_t fails = 0, total = 0;
    for (unsigned n : {2u, 3u, 4u}) {
      const auto A = algebra("dihedral(n=" + std::to_string(n) + ")", "gf(2)");
      const auto F = galg::compute_filtration(A);
      const auto u = E(A, "a+b"), x = E(A, "1+a"), y = E(A, "1+b");
      for (unsigned i = 1; i <= (1u << (n - 1)); ++i, ++total) {
        Element rhs = x.pow(2 * i - 1) + x.pow(2 * i - 2) * y;
        if (i % 2 == 0) rhs += x.pow(2 * i) + x.pow(2 * i - 1) * y;
        if (!F.congruent(u.pow(i), rhs, 2 * i + 1)) ++fails;
      }
    }
    out.require(fails == 0, "dihedral u^i mod I^{2i+1}: " + std::to_string(total - fails) + "/" + std::to_string(total) +
                                " cases for dihedral n = 2, 3, 4");
  }
  return out;
}

// ---- 7 ----------------------------------------------------------------------

Outcome oracle_equivalence(unsigned jobs) {
  Outcome out;
  const auto t0 = Clock::now();
  for (const char* g : {"cyclic(2)", "cyclic(4)", "cyclic(8)", "abelian(2,2)", "product(cyclic(2),cyclic(4))",
                        "dihedral(n=2)", "quaternion8"}) {
    const auto r = search::oracle_equivalence(grp::build_group(grp::parse_group(g)), ff::parse_field("gf(2)"), jobs);
    out.require(r.equal && r.structured.exhausted && r.brute.exhausted,
                std::string(g) + ": structured " + std::to_string(r.structured.found.size()) + " = brute_pairs " +
                    std::to_string(r.brute.found.size()) + " canonical bases");
  }
  const double dt = since(t0);
  out.require(dt < 120, "runtime " + fmt(dt) + " (< 2 min)");
  return out;
}

// ---- 8 ----------------------------------------------------------------------

Outcome filtration_integrity() {
  Outcome out;
  const std::vector<std::string> catalog = {
      "cyclic(2)",          "cyclic(4)",          "cyclic(8)",          "cyclic(16)",          "abelian(2,2)",
      "abelian(4,2)",       "abelian(2,2,2)",     "abelian(4,4)",       "abelian(3,3)",        "abelian(9,3)",
      "dihedral(n=2)",      "dihedral(n=3)",      "dihedral(n=4)",      "quaternion8",         "semidihedral(n=3)",
      "semidihedral(n=4)",  "genquaternion(n=3)", "genquaternion(n=4)", "sdtwisted(n=3)",      "sdtwisted(n=4)",
      "example16",          "metacyclic(2,2,2,2,3)", "metacyclic(2,2,2,1,3)", "metacyclic(3,2,1,2,4)",
      "product(cyclic(2),cyclic(4))", "product(dihedral(n=2),cyclic(2))", "product(quaternion8,cyclic(2))"};
  std::size_t ok_sum = 0, ok_jennings = 0, ok_d2 = 0;
  for (const auto& g : catalog) {
    const auto G = grp::build_group(grp::parse_group(g));
    const auto A = galg::GroupAlgebra::create(G, ff::Field(ff::parse_field(G.prime() == 2 ? "gf(2)" : "gf(3)")));
    const auto F = galg::compute_filtration(A);
    const auto q = F.quotient_dims();
    const bool sum = std::accumulate(q.begin(), q.end(), std::size_t{0}) == G.order();
    const bool jen = q == oracle::jennings_series({G.order(), G.table()}, G.prime());
    bool d2 = true;
    if (G.gen_b()) {
      const auto D2 = galg::dimension_subgroup(F, 2).members;
      d2 = std::count(D2.begin(), D2.end(), grp::commutator(G, *G.gen_b(), G.gen_a())) == 1;
    }
    ok_sum += sum;
    ok_jennings += jen;
    ok_d2 += d2;
    if (!sum || !jen || !d2) out.note(g + ": quotient dims " + join(q) + " mismatch");
  }
  const std::string of = "/" + std::to_string(catalog.size()) + " catalog groups";
  out.require(ok_sum == catalog.size(), "quotient dims sum to |G|: " + std::to_string(ok_sum) + of);
  out.require(ok_jennings == catalog.size(),
              "Jennings generating function matches: " + std::to_string(ok_jennings) + of);
  out.require(ok_d2 == catalog.size(), "D_2(G) contains [b,a]: " + std::to_string(ok_d2) + of);

  const auto q8 = galg::compute_filtration(algebra("quaternion8", "gf(2)")).quotient_dims();
  const std::vector<std::size_t> computed(q8.begin() + 1, q8.end());
  const std::vector<std::size_t> stated{2, 2, 2, 2};
  out.require(computed == std::vector<std::size_t>{2, 2, 2, 1}, "quaternion8 dim I^j/I^{j+1}, j = 1..4: computed (" +
                                                                     join(computed) + ")");
  out.note("FLAGGED DISCREPANCY: stated value is (" + join(stated) + "); the computed (" + join(computed) +
           ") is confirmed by the Jennings series (1+x)^2(1+x^2) and is the one used");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> expect_fail;
  app.add_option("--jobs", jobs, "worker threads for searches");
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "dihedral positive case", dihedral_positive},
      {2, "quaternion-8 positive case", [&] { return quaternion_positive(jobs); }},
      {3, "semidihedral negative case", [&] { return semidihedral_negative(jobs); }},
      {4, "generalized quaternion negative case", genquaternion_negative},
      {5, "order-16 non-metacyclic example", example16_positive},
      {6, "congruence suites", congruences},
      {7, "oracle equivalence", [&] { return oracle_equivalence(jobs); }},
      {8, "filtration integrity", filtration_integrity},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << fmt(since(t0))
              << ")\n";
    for (const auto& n : o.notes) std::cout << "        " << n << "\n";
    std::cout.flush();
    if (!o.pass) failed.insert(c.id);
  }

  std::cout << "\n" << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass\n";
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (app.count("--expect-fail")) {
    if (failed == expected) {
      std::cout << "failing set matches the expected list {" << join(expect_fail) << "}\n";
      return 0;
    }
    std::cout << "failing set differs from the expected list {" << join(expect_fail) << "}\n";
    return 1;
  }
  return failed.empty() ? 0 : 1;
}
