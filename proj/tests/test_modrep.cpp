#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "brauerlift/pims.hpp"
#include "fixtures.hpp"

using namespace brauerlift;

namespace {

GaloisRing field(u64 p, int d = 1) { return GaloisRing(smallest_irreducible(p, d), 1); }

BoundTable fixture_table(const PermGroup& G, const std::string& name, u64 p) {
  return bind_table(G, conjugacy_classes(G), read_character_table_file(fixture_path(name + ".csv")), p);
}

std::multiset<std::string> ms(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// True iff some relabeling of rows/columns turns A into B.
bool same_up_to_permutation(const std::vector<std::vector<int>>& A, const std::vector<std::vector<int>>& B) {
  if (A.size() != B.size()) return false;
  std::vector<int> perm(A.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    bool ok = true;
    for (size_t i = 0; i < A.size() && ok; ++i)
      for (size_t j = 0; j < A.size() && ok; ++j) ok = A[perm[i]][perm[j]] == B[i][j];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

PermGroup cyclic2() { return enumerate_group(2, {parse_cycles("(1 2)", 2)}); }

}  // namespace

TEST(ModuleBasics, RegularModuleSatisfiesRelations) {
  auto G = fixture_group("a4");
  std::mt19937_64 rng(3);
  EXPECT_TRUE(check_relations(G, regular_module(G, field(2)), 20, rng));
  RepModule bad = trivial_module(G, field(2));
  bad.gens[0] = Mat(1, 1);
  EXPECT_FALSE(check_relations(G, bad, 5, rng));
}

TEST(ModuleRadical, CyclicGroup) {
  auto G = fixture_group("c7");
  EXPECT_EQ(module_radical(regular_module(G, field(7))).cols, 6);
  EXPECT_EQ(module_radical(trivial_module(G, field(7))).cols, 0);
  auto S3 = fixture_group("s3");
  EXPECT_EQ(module_radical(regular_module(S3, field(5))).cols, 0);  // semisimple
}

TEST(ModuleIso, SignVersusTrivial) {
  auto C2 = cyclic2();
  auto k = field(7);
  std::mt19937_64 rng(4);
  auto triv = trivial_module(C2, k);
  auto sign = linear_module(k, {k.neg(k.one())});
  EXPECT_TRUE(hom_space(triv, sign).empty());
  EXPECT_FALSE(module_iso(triv, sign, rng).iso);
  auto self = module_iso(sign, sign, rng);
  EXPECT_TRUE(self.iso);
}

TEST(ModuleIso, PermutedBasis) {
  auto G = fixture_group("s3");
  auto k = field(3);
  std::mt19937_64 rng(5);
  auto M = regular_module(G, k);
  Mat P(6, 6);
  std::vector<int> sigma{3, 0, 5, 1, 2, 4};
  for (int i = 0; i < 6; ++i) P(sigma[i], i) = k.one();
  auto N = conjugate_module(M, P);
  auto r = module_iso(M, N, rng);
  ASSERT_TRUE(r.iso);
  for (size_t s = 0; s < M.gens.size(); ++s)
    EXPECT_EQ(mul(k, r.witness, M.gens[s]), mul(k, N.gens[s], r.witness));
}

TEST(Decompose, RegularModules) {
  std::mt19937_64 rng(6);
  auto S3 = fixture_group("s3");
  auto parts = decompose(regular_module(S3, field(3)), rng);
  ASSERT_EQ(parts.size(), 2u);
  for (auto& s : parts) {
    EXPECT_EQ(s.module.dim, 3);
    EXPECT_EQ(s.multiplicity, 1);
  }
  // A4 in characteristic 2: over F_2 the two nontrivial simples fuse.
  auto A4 = fixture_group("a4");
  EXPECT_EQ(decompose(regular_module(A4, field(2)), rng).size(), 2u);
  auto over4 = decompose(regular_module(A4, field(2, 2)), rng);
  EXPECT_EQ(over4.size(), 3u);
  for (auto& s : over4) EXPECT_EQ(s.module.dim, 4);
}

TEST(Decompose, KrullSchmidtAcrossSeeds) {
  auto A4 = fixture_group("a4");
  auto M = direct_sum(regular_module(A4, field(3)), trivial_module(A4, field(3)));
  std::mt19937_64 r1(11), r2(12);
  auto a = decompose(M, r1), b = decompose(M, r2);
  ASSERT_EQ(a.size(), b.size());
  std::mt19937_64 rng(13);
  for (auto& x : a) {
    bool matched = false;
    for (auto& y : b)
      if (x.multiplicity == y.multiplicity && module_iso(x.module, y.module, rng).iso) matched = true;
    EXPECT_TRUE(matched);
  }
}

TEST(Decompose, OverGaloisRing) {
  auto S3 = fixture_group("s3");
  GaloisRing R(smallest_irreducible(3, 1), 3);
  std::mt19937_64 rng(7);
  auto parts = decompose(regular_module(S3, R), rng);
  ASSERT_EQ(parts.size(), 2u);
  for (auto& s : parts) {
    EXPECT_EQ(mul(R, s.idempotent, s.idempotent), s.idempotent);
    EXPECT_EQ(s.module.dim, 3);
    EXPECT_TRUE(is_projective(S3, s.module));
  }
}

TEST(Projective, SylowFreeness) {
  auto C7 = fixture_group("c7");
  EXPECT_TRUE(is_projective(C7, regular_module(C7, field(7))));
  EXPECT_FALSE(is_projective(C7, trivial_module(C7, field(7))));
  auto G = fixture_group("psl27");
  auto k = field(7);
  auto B = block_idempotents_mod_p(G, k.spec());
  std::mt19937_64 rng(8);
  GroupAlgebra A(G, k);
  auto pr = primitive_decomposition(group_algebra_ops(A), B.blocks[1].idem, rng);
  EXPECT_TRUE(is_projective(G, ideal_module(G, k, pr[0])));
  EXPECT_FALSE(is_projective(G, trivial_module(G, k)));
}

TEST(Pims, Psl27PrincipalAndSteinberg) {
  auto G = fixture_group("psl27");
  auto k = field(7);
  auto B = block_idempotents_mod_p(G, k.spec());
  std::mt19937_64 rng(9);
  auto P0 = pims_and_cartan(G, k, B.blocks[0].idem, rng);
  auto P1 = pims_and_cartan(G, k, B.blocks[1].idem, rng);
  std::multiset<int> heads;
  for (auto* P : {&P0, &P1})
    for (auto& pc : P->pims) heads.insert(pc.head);
  EXPECT_EQ(heads, (std::multiset<int>{7, 1, 5, 3}));
  EXPECT_TRUE(same_up_to_permutation(P0.cartan, {{2, 1, 0}, {1, 2, 1}, {0, 1, 3}}));
  EXPECT_EQ(P1.cartan, (std::vector<std::vector<int>>{{1}}));
  int total = 0;
  for (auto* P : {&P0, &P1})
    for (auto& pc : P->pims) total += pc.dim * pc.head;
  EXPECT_EQ(total, 168);
  EXPECT_EQ(P0.block_dim, 119);

  // C = D^T D with D from the ordinary constituents of the lifted PIMs.
  auto T = fixture_table(G, "psl27", 7);
  GaloisRing R(k.spec(), 4);
  std::vector<std::map<std::string, int>> D;
  std::set<std::multiset<std::string>> chars;
  for (auto& pc : P0.pims) {
    auto labels = lattice_char_decomposition(G, R, pc.idem, T);
    chars.insert(ms(labels));
    std::map<std::string, int> col;
    for (auto& l : labels) ++col[l];
    D.push_back(col);
  }
  EXPECT_EQ(chars, (std::set<std::multiset<std::string>>{{"1", "6"}, {"6", "8"}, {"8", "3", "3bar"}}));
  for (size_t i = 0; i < D.size(); ++i)
    for (size_t j = 0; j < D.size(); ++j) {
      int dot = 0;
      for (auto& [l, c] : D[i])
        if (D[j].count(l)) dot += c * D[j].at(l);
      EXPECT_EQ(P0.cartan[i][j], dot);
    }
  EXPECT_EQ(ms(lattice_char_decomposition(G, R, P1.pims[0].idem, T)), (std::multiset<std::string>{"7"}));
}

TEST(Pims, A4PrincipalBlockInCharacteristic3) {
  auto G = fixture_group("a4");
  auto k = field(3);
  auto B = block_idempotents_mod_p(G, k.spec());
  std::mt19937_64 rng(10);
  auto P = pims_and_cartan(G, k, B.principal().idem, rng);
  EXPECT_EQ(P.cartan, (std::vector<std::vector<int>>{{3}}));
}

TEST(Lattice, TrivialGroup) {
  auto G = fixture_group("trivial");
  auto T = fixture_table(G, "trivial", 7);
  GaloisRing R(smallest_irreducible(7, 1), 3);
  RepModule M{R, 4, {}};
  auto labels = module_char_decomposition(G, M, T);
  EXPECT_EQ(labels, (std::vector<std::string>(4, T.table.labels[0])));
}

TEST(BrauerTree, Psl27PathAndBorelStar) {
  std::mt19937_64 rng(14);
  auto k = field(7);
  auto G = fixture_group("psl27");
  auto B = block_idempotents_mod_p(G, k.spec());
  auto TG = fixture_table(G, "psl27", 7);
  auto tree = brauer_tree(G, k, B.blocks[0].idem, rng, &TG);
  EXPECT_EQ(tree.edges.size(), 3u);
  EXPECT_EQ(tree.vertices, 4);
  EXPECT_EQ(tree.multiplicity, 2);
  std::map<int, int> degree;
  for (auto& e : tree.edges) ++degree[e.v], ++degree[e.w];
  EXPECT_EQ(degree[tree.exceptional], 1);  // exceptional end vertex
  std::set<std::multiset<std::string>> labels;
  for (auto& l : tree.labels) labels.insert(ms(l));
  EXPECT_EQ(labels, (std::set<std::multiset<std::string>>{{"1"}, {"6"}, {"8"}, {"3", "3bar"}}));
  EXPECT_EQ(ms(tree.labels[tree.exceptional]), (std::multiset<std::string>{"3", "3bar"}));

  auto steinberg = brauer_tree(G, k, B.blocks[1].idem, rng);
  EXPECT_EQ(steinberg.edges.size(), 1u);
  EXPECT_EQ(steinberg.multiplicity, 1);

  auto Bo = fixture_group("borel21");
  auto BB = block_idempotents_mod_p(Bo, k.spec());
  ASSERT_EQ(BB.size(), 1);
  auto TB = fixture_table(Bo, "borel21", 7);
  auto star = brauer_tree(Bo, k, BB.blocks[0].idem, rng, &TB);
  EXPECT_EQ(star.edges.size(), 3u);
  EXPECT_EQ(star.multiplicity, 2);
  std::map<int, int> sdeg;
  for (auto& e : star.edges) ++sdeg[e.v], ++sdeg[e.w];
  EXPECT_EQ(sdeg[star.exceptional], 3);  // exceptional center
  EXPECT_EQ(ms(star.labels[star.exceptional]), (std::multiset<std::string>{"psi", "psibar"}));
  EXPECT_NE(tree_dot(star).find("style=filled"), std::string::npos);
}

TEST(BrauerTree, NonCyclicDefectRejected) {
  auto G = fixture_group("a4");
  auto k = field(2);
  auto B = block_idempotents_mod_p(G, k.spec());
  std::mt19937_64 rng(15);
  EXPECT_THROW(brauer_tree(G, k, B.principal().idem, rng), NotCyclicDefect);
}

TEST(BrauerTree, RoundTripOnRandomTrees) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    BrauerTree T;
    T.vertices = n + 1;
    for (int e = 0; e < n; ++e) T.edges.push_back({static_cast<int>(rng() % (e + 1)), e + 1, e});
    T.multiplicity = 1 + static_cast<int>(rng() % 4);
    T.exceptional = T.multiplicity > 1 ? static_cast<int>(rng() % (n + 1)) : -1;
    auto C = tree_cartan(T);
    if (n == 1 && C[0][0] == 1) continue;
    auto R = brauer_tree_from_cartan(C);
    ASSERT_EQ(tree_cartan(R), C) << "trial " << trial;
    EXPECT_EQ(R.multiplicity, T.multiplicity);
  }
}

TEST(BrauerTree, AmbiguousCartanReported) {
  EXPECT_THROW(brauer_tree_from_cartan({{2, 2}, {2, 2}}), TreeReconstructionAmbiguous);
}
