#include <gtest/gtest.h>

#include <set>

#include "fmbasis/error.hpp"
#include "fmbasis/search.hpp"

using namespace fmbasis;

namespace {

grp::Group group(const char* g) { return grp::build_group(grp::parse_group(g)); }
const ff::FieldSpec kGF2 = ff::parse_field("gf(2)");

std::set<std::vector<galg::Row>> rows_of(const search::SearchReport& r) {
  std::set<std::vector<galg::Row>> out;
  for (const auto& b : r.found) {
    std::vector<galg::Row> rows;
    for (const auto& e : b.elements) rows.push_back(e.row());
    out.insert(rows);
  }
  return out;
}

search::SearchConfig all() {
  search::SearchConfig c;
  c.record_all = true;
  return c;
}

}  // namespace

TEST(SearchTest, StrategyNames) {
  EXPECT_EQ(search::parse_strategy("structured"), search::Strategy::structured);
  EXPECT_EQ(search::parse_strategy("brute_pairs"), search::Strategy::brute_pairs);
  EXPECT_EQ(search::parse_strategy("brute-pairs"), search::Strategy::brute_pairs);
  EXPECT_STREQ(search::to_string(search::Strategy::brute_pairs), "brute_pairs");
  EXPECT_THROW(search::parse_strategy("dfs"), Error);
}

TEST(SearchTest, OracleAgreesOnSmallGroups) {
  const std::vector<std::pair<const char*, std::size_t>> expected = {
      {"cyclic(2)", 1}, {"cyclic(4)", 4}, {"abelian(2,2)", 12}, {"quaternion8", 0}};
  for (auto [g, count] : expected) {
    const auto r = search::oracle_equivalence(group(g), kGF2);
    EXPECT_TRUE(r.equal) << g;
    EXPECT_TRUE(r.structured.exhausted) << g;
    EXPECT_TRUE(r.brute.exhausted) << g;
    EXPECT_EQ(r.structured.found.size(), count) << g;
  }
}

TEST(SearchTest, FoundBasesAreCanonicalAndVerify) {
  const auto r = search::search_fmb(group("dihedral(n=2)"), kGF2, all());
  ASSERT_TRUE(r.exhausted);
  EXPECT_EQ(r.found.size(), 1024u);
  EXPECT_EQ(r.space_size, r.covered);
  for (std::size_t i = 0; i < r.found.size(); i += 97) {
    const auto& b = r.found[i];
    EXPECT_TRUE(fmb::verify(b).pass);
    EXPECT_EQ(b.labels[0], "1");
    EXPECT_EQ(b.labels[1], "w1");
    const auto again = search::canonicalize(b);
    for (std::size_t j = 0; j < b.size(); ++j) EXPECT_EQ(again.elements[j], b.elements[j]);
  }
}

TEST(SearchTest, CanonicalizeIsOrderIndependent) {
  const auto A = galg::GroupAlgebra::create(group("dihedral(n=2)"), ff::Field(kGF2));
  const auto b = fmb::construct_dihedral(A);
  auto shuffled = b;
  std::reverse(shuffled.elements.begin(), shuffled.elements.end());
  std::reverse(shuffled.labels.begin(), shuffled.labels.end());
  const auto c1 = search::canonicalize(b), c2 = search::canonicalize(shuffled);
  ASSERT_EQ(c1.size(), c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i) EXPECT_EQ(c1.elements[i], c2.elements[i]);
  EXPECT_TRUE(c1.params.empty());
  EXPECT_EQ(c1.elements[0], A->one());
}

TEST(SearchTest, ShardsPartitionTheSpace) {
  const auto G = group("dihedral(n=2)");
  const auto full = search::search_fmb(G, kGF2, all());
  std::set<std::vector<galg::Row>> merged;
  std::uint64_t frames = 0;
  for (unsigned i = 0; i < 3; ++i) {
    auto c = all();
    c.shard_index = i;
    c.shard_count = 3;
    const auto r = search::search_fmb(G, kGF2, c);
    EXPECT_TRUE(r.exhausted);
    EXPECT_EQ(r.shard_index, i);
    frames += r.frames;
    for (auto& x : rows_of(r)) merged.insert(x);
  }
  EXPECT_EQ(frames, full.frames);
  EXPECT_EQ(merged, rows_of(full));
}

TEST(SearchTest, ParallelRunsAreDeterministic) {
  const auto G = group("product(cyclic(2),cyclic(4))");
  auto c = all();
  const auto one = search::search_fmb(G, kGF2, c);
  c.jobs = 3;
  const auto three = search::search_fmb(G, kGF2, c);
  EXPECT_EQ(one.found.size(), 3072u);
  EXPECT_EQ(rows_of(one), rows_of(three));
  EXPECT_EQ(one.examined, three.examined);
  EXPECT_EQ(one.pruned, three.pruned);
}

TEST(SearchTest, FirstHitStopsEarly) {
  const auto r = search::search_fmb(group("dihedral(n=3)"), kGF2, {});
  EXPECT_EQ(r.found.size(), 1u);
  EXPECT_TRUE(fmb::verify(r.found[0]).pass);
}

TEST(SearchTest, NegativeCasesExhaust) {
  const auto q = search::search_fmb(group("quaternion8"), kGF2, {});
  EXPECT_TRUE(q.exhausted);
  EXPECT_TRUE(q.found.empty());
  EXPECT_EQ(q.space_size, q.covered);
  const auto g = search::search_fmb(group("genquaternion(n=3)"), kGF2, {});
  EXPECT_TRUE(g.exhausted);
  EXPECT_TRUE(g.found.empty());
  EXPECT_EQ(g.space_size, "402653184");
}

TEST(SearchTest, BudgetLeavesSpaceUncovered) {
  search::SearchConfig c;
  c.budget = 10;
  const auto r = search::search_fmb(group("genquaternion(n=3)"), kGF2, c);
  EXPECT_FALSE(r.exhausted);
  EXPECT_GT(r.incomplete_frames, 0u);
  EXPECT_NE(r.covered, r.space_size);
}

TEST(SearchTest, RejectsUnsupportedRequests) {
  search::SearchConfig c;
  c.strategy = search::Strategy::brute_pairs;
  EXPECT_THROW(search::search_fmb(group("dihedral(n=3)"), kGF2, c), Error);
  EXPECT_THROW(search::search_fmb(group("cyclic(4)"), ff::parse_field("gf(4)"), c), Error);
  search::SearchConfig s;
  s.shard_index = 2;
  s.shard_count = 2;
  EXPECT_THROW(search::search_fmb(group("cyclic(4)"), kGF2, s), Error);
  EXPECT_THROW(search::search_fmb(group("dihedral(n=4)"), kGF2, {}), Error);
  EXPECT_THROW(search::oracle_equivalence(group("dihedral(n=3)"), kGF2), Error);
}

TEST(SearchTest, ExtensionFieldSearch) {
  const auto r = search::search_fmb(group("quaternion8"), ff::parse_field("gf(4)"), {});
  ASSERT_EQ(r.found.size(), 1u);
  EXPECT_TRUE(fmb::verify(r.found[0]).pass);
}
