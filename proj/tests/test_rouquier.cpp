#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "brauerlift/tilting.hpp"
#include "fixtures.hpp"

using namespace brauerlift;

namespace {

FieldSpec prime_field(u64 p) { return smallest_irreducible(p, 1); }

// Trace of x -> b x b' on R[G], read as an integer: the rank of the idempotent image.
int trace_rank(const RouquierContext& c) {
  GroupAlgebra A(*c.G, c.R);
  Elem t{};
  for (int g = 0; g < c.n(); ++g) t = c.R.add(t, A.mul(A.mul(c.b, A.basis(g)), c.bpG)[g]);
  return static_cast<int>(t.c[0]);
}

bool is_idempotent(const RouquierContext& c, const Vec& e) { return c.gmul(e, e) == e; }

struct PslCase {
  PermGroup G = fixture_group("psl27");
  RouquierContext c;
  N0Result n0;
  BuildResult built;
  std::vector<Vec> P;
};

// PSL2(7), principal block at p = 7, N = 4, built once by search.
const PslCase& psl() {
  static std::unique_ptr<PslCase> cs;
  if (!cs) {
    cs = std::make_unique<PslCase>();
    cs->c = rouquier_context(cs->G, prime_field(7), 4, 0);
    std::mt19937_64 rng(1);
    cs->n0 = extract_N0(cs->c, rng);
    cs->built = build_complex(cs->c, cs->n0, Strategy::Search, -1, -1, rng);
    std::mt19937_64 rng2(1);
    cs->P = lifted_pims(cs->G, cs->c.R, cs->c.b, rng2);
  }
  return *cs;
}

}  // namespace

TEST(InductionBimodule, RankMatchesTraceAndIsProjectiveOnEachSide) {
  for (auto [name, p] : {std::pair<const char*, u64>{"a4", 3}, {"s3", 3}, {"c7", 7}}) {
    PermGroup G = fixture_group(name);
    auto c = rouquier_context(G, prime_field(p), 3, 0);
    Bimodule V = induction_bimodule(c);
    EXPECT_EQ(V.rank(), trace_rank(c)) << name;
    EXPECT_TRUE(V.left_projective) << name;
    EXPECT_TRUE(V.right_projective) << name;
  }
}

TEST(InductionBimodule, PslPrincipalBlock) {
  const auto& cs = psl();
  Bimodule V = induction_bimodule(cs.c);
  EXPECT_EQ(V.rank(), trace_rank(cs.c));
  EXPECT_TRUE(V.left_projective);
  EXPECT_TRUE(V.right_projective);
  EXPECT_FALSE(V.bimodule_projective);
}

TEST(ExtractN0, NormalDefectGroupGivesWholeBimodule) {
  PermGroup G = fixture_group("s3");
  auto c = rouquier_context(G, prime_field(3), 3, 0);
  EXPECT_EQ(c.m(), c.n());
  std::mt19937_64 rng(2);
  auto n0 = extract_N0(c, rng);
  EXPECT_TRUE(n0.complement.empty());
  EXPECT_EQ(n0.N0.rank(), induction_bimodule(c).rank());
}

TEST(ExtractN0, UniqueNonProjectiveSummand) {
  for (auto [name, p] : {std::pair<const char*, u64>{"a4", 3}, {"c7", 7}}) {
    PermGroup G = fixture_group(name);
    auto c = rouquier_context(G, prime_field(p), 3, 0);
    std::mt19937_64 rng(3);
    auto n0 = extract_N0(c, rng);
    EXPECT_TRUE(is_idempotent(c, n0.c0)) << name;
    EXPECT_FALSE(n0.N0.bimodule_projective) << name;
    int total = n0.N0.rank();
    for (auto& m : n0.complement) {
      EXPECT_TRUE(m.bimodule_projective) << name;
      total += m.rank();
    }
    EXPECT_EQ(total, induction_bimodule(c).rank()) << name;
  }
}

TEST(ExtractN0, PslSummandsAddUp) {
  const auto& cs = psl();
  EXPECT_TRUE(is_idempotent(cs.c, cs.n0.c0));
  int total = cs.n0.N0.rank();
  for (auto& m : cs.n0.complement) {
    EXPECT_TRUE(m.bimodule_projective);
    total += m.rank();
  }
  EXPECT_EQ(total, induction_bimodule(cs.c).rank());
}

TEST(BuildComplex, DegenerateCaseHasNoProjectiveTerm) {
  PermGroup G = fixture_group("s3");
  auto c = rouquier_context(G, prime_field(3), 3, 0);
  std::mt19937_64 rng(4);
  auto n0 = extract_N0(c, rng);
  auto r = build_complex(c, n0, Strategy::Search, -1, -1, rng);
  EXPECT_FALSE(r.complex.has_projective_term);
  EXPECT_TRUE(r.report.verdict);
  EXPECT_EQ(r.report.C.homology[1], r.report.C.expected_h0);
}

TEST(BuildComplex, A4SearchReturnsVerifiedComplex) {
  PermGroup G = fixture_group("a4");
  auto c = rouquier_context(G, prime_field(3), 4, 0);
  std::mt19937_64 rng(5);
  auto n0 = extract_N0(c, rng);
  auto r = build_complex(c, n0, Strategy::Search, -1, -1, rng);
  EXPECT_TRUE(r.report.verdict);
  EXPECT_TRUE(verify_tilting(c, r.complex).verdict);
}

TEST(BuildComplex, PslSearchFindsSixEightEdgeWithHomRankFive) {
  const auto& cs = psl();
  ASSERT_TRUE(cs.built.report.verdict) << detail::format_log(cs.built.log);
  const auto& M = cs.built.complex;
  ASSERT_TRUE(M.has_projective_term);
  // P is the PIM of dimension 14 with 5-dimensional head: the 6-8 edge.
  GroupAlgebra A(cs.G, cs.c.R);
  std::vector<Vec> span;
  for (int g = 0; g < cs.c.n(); ++g) span.push_back(A.mul(A.basis(g), M.e));
  EXPECT_EQ(rank_mod_p(cs.c.R, vectors_as_columns(span, cs.c.n())), 14);
  EXPECT_EQ(cs.built.hom_rank, 5);
  EXPECT_EQ(static_cast<int>(hom_lattice(cs.c, M.e, cs.c.embed(M.f)).size()), 5);
  EXPECT_TRUE(differential_surjective(cs.c, M.f, M.s));
}

TEST(VerifyTilting, PslReportRanks) {
  const auto& r = psl().built.report;
  EXPECT_EQ(r.N, 4);
  EXPECT_EQ(r.C.homology[0], 0);
  EXPECT_EQ(r.C.homology[2], 0);
  EXPECT_EQ(r.C.homology[1], 119);  // rank of the principal block
  EXPECT_EQ(r.Cp.homology[0], 0);
  EXPECT_EQ(r.Cp.homology[2], 0);
  EXPECT_EQ(r.Cp.homology[1], 21);  // rank of the Borel block
  EXPECT_TRUE(r.C.h0_iso);
  EXPECT_TRUE(r.Cp.h0_iso);
}

TEST(VerifyTilting, BrokenDifferentialFails) {
  const auto& cs = psl();
  auto r = verify_tilting(cs.c, broken_differential(cs.c, cs.built.complex));
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(r.C.homology[0] > 0 || r.C.homology[2] > 0);
  EXPECT_TRUE(r.Cp.homology[0] > 0 || r.Cp.homology[2] > 0);
  TwoTermComplex zero = cs.built.complex;
  for (auto& x : zero.s) x = Elem{};
  EXPECT_FALSE(verify_tilting(cs.c, zero).verdict);
}

TEST(VerifyTilting, PrecisionMonotone) {
  const auto& cs = psl();
  for (int M = 1; M < 4; ++M) {
    auto c = reduce_context(cs.c, M);
    auto r = verify_tilting(c, reduce_complex(cs.c, cs.built.complex, M));
    EXPECT_TRUE(r.verdict) << "precision " << M;
    EXPECT_EQ(r.N, M);
  }
}

TEST(Dualize, DifferentialIsAdjointUnderTracePairings) {
  PermGroup G = fixture_group("s3");
  auto c = rouquier_context(G, prime_field(3), 3, 0);
  std::mt19937_64 rng(6);
  auto n0 = extract_N0(c, rng);
  auto P = lifted_pims(G, c.R, c.b, rng);
  auto Q = lifted_pims(c.H.H, c.R, c.bp, rng);
  GroupAlgebra A(G, c.R), AH(c.H.H, c.R);
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = 0; j < Q.size(); ++j) {
      auto L = hom_lattice(c, P[i], c.embed(Q[j]), &n0.c0);
      if (L.empty()) continue;
      auto M = make_complex(c, n0, P[i], Q[j], L[0], "adjoint");
      DualComplex D = dualize(c, M);
      for (int trial = 0; trial < 5; ++trial) {
        Vec u = A.mul(A.basis(static_cast<int>(rng() % c.n())), P[i]);
        Vec v = AH.mul(Q[j], AH.basis(static_cast<int>(rng() % c.m())));
        Vec y = A.mul(n0.c0, A.basis(static_cast<int>(rng() % c.n())));
        Elem lhs = trace_G(c, A.mul(differential(c, M, u, v), y));
        Elem rhs{};
        for (auto& [l, r] : D.apply(y)) rhs = c.R.add(rhs, c.R.mul(trace_G(c, A.mul(r, u)), trace_H(c, AH.mul(v, l))));
        EXPECT_EQ(lhs, rhs);
      }
    }
}

TEST(Dualize, MissingFlagsThrow) {
  TwoTermComplex M;
  RouquierContext c;
  EXPECT_THROW(dualize(c, M), FlagMissing);
}

TEST(StableEquivalence, PassesOnFixtures) {
  for (auto [name, p] : {std::pair<const char*, u64>{"a4", 3}, {"s3", 3}, {"c7", 7}}) {
    PermGroup G = fixture_group(name);
    auto c = rouquier_context(G, prime_field(p), 2, 0);
    std::mt19937_64 rng(7);
    auto r = stable_equiv_check(c, rng);
    EXPECT_TRUE(r.passes()) << name;
  }
}

TEST(StableEquivalence, PslPassesAndIsImpliedByTilting) {
  const auto& cs = psl();
  std::mt19937_64 rng(8);
  auto r = stable_equiv_check(cs.c, rng);
  EXPECT_EQ(r.rank, 119);
  ASSERT_EQ(r.nonprojective.size(), 1u);
  EXPECT_EQ(r.nonprojective[0], 21);
  if (cs.built.report.verdict) EXPECT_TRUE(r.passes());
}
