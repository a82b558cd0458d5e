#include "fmbasis/expr.hpp"

#include <optional>

#include "fmbasis/error.hpp"
#include "text.hpp"

namespace fmbasis::expr {

namespace {

using galg::Element;

ff::Scalar scalar_literal(const ff::Field& K, text::Cursor& cur) {
  if (cur.consume('[')) {
    std::vector<unsigned> coeffs;
    do {
      coeffs.push_back(static_cast<unsigned>(cur.integer()));
    } while (cur.consume(','));
    cur.expect(']');
    return K.from_coeffs(coeffs);
  }
  return K.from_int(static_cast<long long>(cur.integer()));
}

class Parser {
 public:
  Parser(const std::shared_ptr<const galg::GroupAlgebra>& alg, std::string_view text) : alg_(alg), cur_(text) {}

  Element run() {
    Element e = expr();
    cur_.expect_end();
    return e;
  }

 private:
  Element expr() {
    Element acc = term();
    for (;;) {
      if (cur_.consume('+'))
        acc = acc + term();
      else if (cur_.consume('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Element term() {
    Element acc = power();
    while (cur_.consume('*')) acc = acc * power();
    return acc;
  }

  Element power() {
    std::optional<grp::Index> group_elem;
    Element base = unary(group_elem);
    if (!cur_.consume('^')) return base;
    const long long e = cur_.signed_integer();
    if (e >= 0) return base.pow(static_cast<unsigned>(e));
    if (!group_elem) cur_.error("negative exponent on a non-group element");
    return alg_->basis(alg_->group().power(*group_elem, e));
  }

  // group_elem is set when the parsed primary is a bare group element.
  Element unary(std::optional<grp::Index>& group_elem) {
    if (cur_.consume('-')) {
      std::optional<grp::Index> ignored;
      return -unary(ignored);
    }
    return primary(group_elem);
  }

  Element primary(std::optional<grp::Index>& group_elem) {
    const char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(');
      Element e = expr();
      cur_.expect(')');
      return e;
    }
    if (c == '[' || cur_.at_digit()) {
      const ff::Scalar s = scalar_literal(alg_->field(), cur_);
      if (s == alg_->field().one()) group_elem = alg_->group().identity();
      return alg_->scalar(s);
    }
    if (c >= 'a' && c <= 'z') {
      const std::string name = cur_.identifier();
      if (name.size() != 1) cur_.error("unknown symbol '" + name + "'");
      const std::size_t idx = static_cast<std::size_t>(name[0] - 'a');
      const auto gens = alg_->group().generators();
      if (idx >= gens.size()) cur_.error("group has no generator '" + name + "'");
      group_elem = gens[idx];
      return alg_->basis(gens[idx]);
    }
    cur_.error("expected an element expression");
  }

  std::shared_ptr<const galg::GroupAlgebra> alg_;
  text::Cursor cur_;
};

}  // namespace

Element parse_element(const std::shared_ptr<const galg::GroupAlgebra>& alg, std::string_view text) {
  return Parser(alg, text).run();
}

ff::Scalar parse_scalar(const ff::Field& field, std::string_view text) {
  text::Cursor cur(text);
  const ff::Scalar s = scalar_literal(field, cur);
  cur.expect_end();
  return s;
}

}  // namespace fmbasis::expr
