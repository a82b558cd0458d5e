#include <gtest/gtest.h>

#include "fmbasis/error.hpp"
#include "fmbasis/expr.hpp"
#include "fmbasis/serialize.hpp"

using namespace fmbasis;
using io::json;

namespace {

std::shared_ptr<const galg::GroupAlgebra> algebra(const char* g, const char* k) {
  return galg::GroupAlgebra::create(grp::build_group(grp::parse_group(g)), ff::Field(ff::parse_field(k)));
}

}  // namespace

TEST(SerializeTest, Scalars) {
  const ff::Field K2(ff::parse_field("gf(2)")), K4(ff::parse_field("gf(4)"));
  EXPECT_EQ(io::scalar_to_json(K2, ff::Scalar{1}), json(1));
  EXPECT_EQ(io::scalar_to_json(K4, ff::Scalar{2}), json::parse("[1,0]"));
  for (std::uint32_t c = 0; c < 4; ++c)
    EXPECT_EQ(io::scalar_from_json(K4, io::scalar_to_json(K4, ff::Scalar{c})).code, c);
  EXPECT_THROW(io::scalar_from_json(K4, json::parse("[1,0,1]")), Error);
  EXPECT_EQ(io::scalar_from_json(K2, json(3)).code, 1u);
  EXPECT_THROW(io::scalar_from_json(K4, json(4)), Error);
}

TEST(SerializeTest, FieldAndGroup) {
  const auto spec = ff::parse_field("gf(8)");
  EXPECT_EQ(io::field_from_json(io::field_to_json(spec)), spec);
  const auto G = grp::build_group(grp::parse_group("example16"));
  const auto j = io::group_to_json(G);
  EXPECT_EQ(j["order"], 16);
  EXPECT_EQ(io::group_from_json(j), G);
  auto bad = j;
  bad["table"][0][1] = 2;
  EXPECT_THROW(io::group_from_json(bad), Error);
}

TEST(SerializeTest, ElementAndFiltration) {
  const auto A = algebra("quaternion8", "gf(4)");
  const auto x = expr::parse_element(A, "[1,0]*(1+a)^2 + b");
  EXPECT_EQ(io::element_from_json(A, io::element_to_json(x)), x);
  const auto F = galg::compute_filtration(A);
  const auto j = io::filtration_to_json(F);
  EXPECT_EQ(j["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(j["quotient_dims"], json::parse("[1,2,2,2,1]"));
  const auto back = io::filtration_from_json(A, j);
  EXPECT_EQ(back.dims(), F.dims());
  EXPECT_EQ(io::filtration_to_json(back), j);
}

TEST(SerializeTest, BasisRoundTrip) {
  const auto A = algebra("example16", "gf(4)");
  const auto b = fmb::construct_example16(A, ff::Scalar{2}, ff::Scalar{3});
  const auto j = io::basis_to_json(b);
  EXPECT_EQ(j["members"].size(), 16u);
  EXPECT_EQ(j["params"][0]["name"], "mu1");
  const auto back = io::basis_from_json(json::parse(j.dump()));
  ASSERT_EQ(back.size(), b.size());
  EXPECT_EQ(back.labels, b.labels);
  EXPECT_EQ(back.params, b.params);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(back.elements[i].row(), b.elements[i].row());
  const auto shared = io::basis_from_json(j, A);
  EXPECT_EQ(shared.alg, A);
  EXPECT_EQ(io::basis_to_json(back), j);
}

TEST(SerializeTest, ReportRoundTrip) {
  const auto A = algebra("dihedral(n=2)", "gf(2)");
  auto b = fmb::construct_dihedral(A);
  b.elements[3] = b.elements[1];
  const auto rep = fmb::verify(b);
  const auto j = io::report_to_json(rep);
  EXPECT_EQ(j["pass"], false);
  const auto back = io::report_from_json(j);
  EXPECT_EQ(io::report_to_json(back), j);
  ASSERT_TRUE(back.witness.has_value());
  EXPECT_EQ(back.witness->kind, rep.witness->kind);
}

TEST(SerializeTest, SearchRoundTrip) {
  search::SearchConfig c;
  c.record_all = true;
  const auto r = search::search_fmb(grp::build_group(grp::parse_group("cyclic(4)")), ff::parse_field("gf(2)"), c);
  const auto j = io::search_to_json(r);
  EXPECT_EQ(j["shard"]["count"], 1);
  EXPECT_EQ(j["enumeration"], search::kEnumerationVersion);
  const auto back = io::search_from_json(j);
  EXPECT_EQ(io::search_to_json(back), j);
}

TEST(SerializeTest, RejectsWrongSchema) {
  const auto A = algebra("cyclic(2)", "gf(2)");
  auto j = io::basis_to_json(fmb::construct_abelian(A));
  j["schema_version"] = 99;
  EXPECT_THROW(io::basis_from_json(j), Error);
  j["schema_version"] = io::kSchemaVersion;
  j["members"][0]["coeffs"] = json::array({1});
  EXPECT_THROW(io::basis_from_json(j), Error);
}
