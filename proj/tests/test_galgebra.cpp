#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "brauerlift/chartable.hpp"
#include "brauerlift/galgebra.hpp"
#include "fixtures.hpp"

using namespace brauerlift;

namespace {

BoundTable fixture_table(const PermGroup& G, const std::string& name, u64 p) {
  return bind_table(G, conjugacy_classes(G), read_character_table_file(fixture_path(name + ".csv")), p);
}

std::set<std::set<std::string>> as_sets(const std::vector<std::vector<std::string>>& v) {
  std::set<std::set<std::string>> out;
  for (auto& b : v) out.insert(std::set<std::string>(b.begin(), b.end()));
  return out;
}

// Oracle for small centers: all idempotents e = e^2 among F_q-combinations of class sums.
int brute_block_count(const PermGroup& G, u64 p) {
  GaloisRing k(smallest_irreducible(p, 1), 1);
  auto C = conjugacy_classes(G);
  CommAlgebra Z = center(G, C, k);
  int n = Z.n;
  u64 total = ipow(p, n);
  int idem = 0;
  for (u64 idx = 0; idx < total; ++idx) {
    Vec v(n);
    u64 t = idx;
    for (int i = 0; i < n; ++i) {
      v[i] = k.from_int(static_cast<long long>(t % p));
      t /= p;
    }
    if (Z.mul(v, v) == v) ++idem;
  }
  int blocks = 0;
  while ((1 << blocks) < idem) ++blocks;
  return blocks;
}

}  // namespace

TEST(Galgebra, Psl27Blocks) {
  auto G = fixture_group("psl27");
  for (u64 q : {49u, 7u}) {
    auto B = block_idempotents_mod_p(G, field_for_q(7, q));
    ASSERT_EQ(B.size(), 2) << q;
    auto part = block_partition_of_characters(B, fixture_table(G, "psl27", 7));
    EXPECT_EQ(as_sets(part), (std::set<std::set<std::string>>{{"1", "3", "3bar", "6", "8"}, {"7"}}));
    EXPECT_EQ(std::set<std::string>(part[0].begin(), part[0].end()),
              (std::set<std::string>{"1", "3", "3bar", "6", "8"}));
  }
}

TEST(Galgebra, BlockCountsAgainstBruteForce) {
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("a4"), field_for_q(3, 3)).size(), 2);
  EXPECT_EQ(brute_block_count(fixture_group("a4"), 3), 2);
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("borel21"), field_for_q(7, 7)).size(), 1);
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("c7"), field_for_q(7, 7)).size(), 1);
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("s3"), field_for_q(3, 3)).size(), 1);
  EXPECT_EQ(brute_block_count(fixture_group("s3"), 3), 1);
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("s3"), field_for_q(5, 5)).size(), 3);
  EXPECT_EQ(brute_block_count(fixture_group("s3"), 5), 3);
  EXPECT_EQ(block_idempotents_mod_p(fixture_group("trivial"), field_for_q(5, 5)).size(), 1);
}

TEST(Galgebra, A4Partition) {
  auto G = fixture_group("a4");
  auto B = block_idempotents_mod_p(G, field_for_q(3, 3));
  auto part = block_partition_of_characters(B, fixture_table(G, "a4", 3));
  EXPECT_EQ(as_sets(part), (std::set<std::set<std::string>>{{"1", "w", "wbar"}, {"3"}}));
}

TEST(Galgebra, LiftedBlocksAreOrthogonalIdempotents) {
  auto G = fixture_group("psl27");
  auto B = lift_blocks(G, block_idempotents_mod_p(G, field_for_q(7, 49)), 6);
  GroupAlgebra A(G, B.ring);
  Vec sum = A.zero();
  for (auto& b : B.blocks) {
    EXPECT_EQ(A.mul(b.idem, b.idem), b.idem);
    EXPECT_TRUE(A.is_central(b.idem));
    sum = A.add(sum, b.idem);
  }
  EXPECT_EQ(sum, A.one());
  EXPECT_TRUE(A.is_zero(A.mul(B.blocks[0].idem, B.blocks[1].idem)));
  auto Bp = block_idempotents_mod_p(G, field_for_q(7, 49));
  for (int i = 0; i < B.size(); ++i) EXPECT_EQ(A.reduce(B.blocks[i].idem, 1), Bp.blocks[i].idem);
  // Ranks: principal 1+64+36+9+9 = 119, Steinberg 49.
  EXPECT_EQ(block_rank(A, B.blocks[0].idem), 119);
  EXPECT_EQ(block_rank(A, B.blocks[1].idem), 49);
}

TEST(Galgebra, DefectGroups) {
  auto G = fixture_group("psl27");
  auto B = block_idempotents_mod_p(G, field_for_q(7, 49));
  annotate_defects(G, B);
  EXPECT_EQ(B.blocks[0].defect, 1);
  EXPECT_EQ(B.blocks[0].defect_group->order(), 7);
  EXPECT_EQ(B.blocks[1].defect, 0);
  EXPECT_EQ(normalizer(G, *B.blocks[0].defect_group).order(), 21);
  for (auto name : {"a4", "s3", "borel21", "c7"}) {
    auto H = fixture_group(name);
    u64 p = std::string(name) == "a4" || std::string(name) == "s3" ? 3 : 7;
    auto BH = block_idempotents_mod_p(H, field_for_q(p, p));
    annotate_defects(H, BH);
    EXPECT_EQ(static_cast<u64>(BH.principal().defect_group->order()), static_cast<u64>(sylow_subgroup(H, p).order()));
  }
  auto S3 = fixture_group("s3");
  auto B5 = block_idempotents_mod_p(S3, field_for_q(5, 5));
  annotate_defects(S3, B5);
  for (auto& b : B5.blocks) EXPECT_EQ(b.defect, 0);
}

TEST(Galgebra, BrauerCorrespondent) {
  auto G = fixture_group("psl27");
  auto B = block_idempotents_mod_p(G, field_for_q(7, 49));
  auto D = defect_group(G, B.ring, B.blocks[0].idem);
  auto c = brauer_correspondent(G, B.ring, B.blocks[0].idem, D.group);
  EXPECT_EQ(c.normalizer.H.order(), 21);
  EXPECT_EQ(c.blocks.size(), 1);
  EXPECT_TRUE(c.blocks.blocks[c.block].is_principal);
  auto A4 = fixture_group("a4");
  auto BA = block_idempotents_mod_p(A4, field_for_q(3, 3));
  auto DA = defect_group(A4, BA.ring, BA.principal().idem);
  auto ca = brauer_correspondent(A4, BA.ring, BA.principal().idem, DA.group);
  EXPECT_EQ(ca.normalizer.H.order(), 3);
  EXPECT_EQ(ca.blocks.size(), 1);
  // D normal: G = N_G(D) and b' = b.
  auto B21 = fixture_group("borel21");
  auto BB = block_idempotents_mod_p(B21, field_for_q(7, 7));
  auto DB = defect_group(B21, BB.ring, BB.principal().idem);
  auto cb = brauer_correspondent(B21, BB.ring, BB.principal().idem, DB.group);
  EXPECT_EQ(cb.normalizer.H.order(), 21);
}

TEST(Galgebra, TableChecks) {
  auto G = fixture_group("borel21");
  auto B = block_idempotents_mod_p(G, field_for_q(7, 7));
  auto part = block_partition_of_characters(B, fixture_table(G, "borel21", 7));
  ASSERT_EQ(part.size(), 1u);
  EXPECT_EQ(part[0].size(), 5u);
  auto T = read_character_table_file(fixture_path("psl27.csv"));
  T.values[1][4] = {{0, 1}};
  EXPECT_THROW(bind_table(fixture_group("psl27"), conjugacy_classes(fixture_group("psl27")), T, 7), TableMismatch);
  auto Tr = fixture_group("trivial");
  auto BT = block_idempotents_mod_p(Tr, field_for_q(5, 5));
  auto pt = block_partition_of_characters(BT, fixture_table(Tr, "trivial", 5));
  EXPECT_EQ(pt, (std::vector<std::vector<std::string>>{{"1"}}));
}
