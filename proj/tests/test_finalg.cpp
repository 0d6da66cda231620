#include <gtest/gtest.h>

#include <random>

#include "brauerlift/finalg.hpp"
#include "brauerlift/galgebra.hpp"
#include "fixtures.hpp"

using namespace brauerlift;

namespace {

MatrixAlgebra regular_algebra(const PermGroup& G, const GaloisRing& k) {
  GroupAlgebra A(G, k);
  std::vector<Mat> gens;
  for (int i = 0; i < static_cast<int>(G.generators().size()); ++i) gens.push_back(A.left_matrix(A.basis(G.generator_index(i))));
  return generated_algebra(k, gens, A.dim());
}

// Oracle: a lies in J(A) iff a*b is nilpotent for every b; count such a by exhaustion.
int brute_radical_dim(const PermGroup& G, u64 p) {
  GaloisRing k(smallest_irreducible(p, 1), 1);
  GroupAlgebra A(G, k);
  int n = A.dim();
  u64 total = ipow(p, n);
  auto elem = [&](u64 idx) {
    Vec v(n);
    for (int i = 0; i < n; ++i, idx /= p) v[i] = k.from_int(static_cast<long long>(idx % p));
    return v;
  };
  u64 count = 0;
  for (u64 a = 0; a < total; ++a) {
    Vec va = elem(a);
    bool in = true;
    for (u64 b = 0; b < total && in; ++b) {
      Vec x = A.mul(va, elem(b));
      in = A.is_zero(A.pow(x, n));
    }
    count += in;
  }
  int d = 0;
  for (; count > 1; count /= p) ++d;
  return d;
}

AlgebraOps group_ops(const GroupAlgebra& A) {
  AlgebraOps ops{A.ring(), A.dim(), [&A](const Vec& x, const Vec& y) { return A.mul(x, y); }, {}};
  for (int g = 0; g < A.dim(); ++g) ops.spanning.push_back(A.basis(g));
  return ops;
}

}  // namespace

TEST(Radical, CyclicGroupAugmentationIdeal) {
  auto G = fixture_group("c7");
  for (u64 q : {7, 49}) {
    GaloisRing k(field_for_q(7, q), 1);
    EXPECT_EQ(radical(regular_algebra(G, k)).size(), 6u) << q;
  }
}

TEST(Radical, MatchesNilpotencyOracle) {
  auto S3 = fixture_group("s3");
  GaloisRing k3(smallest_irreducible(3, 1), 1);
  int d = static_cast<int>(radical(regular_algebra(S3, k3)).size());
  EXPECT_EQ(d, brute_radical_dim(S3, 3));
  EXPECT_EQ(d, 4);
  GaloisRing k5(smallest_irreducible(5, 1), 1);
  EXPECT_EQ(radical(regular_algebra(S3, k5)).size(), 0u);
}

TEST(Radical, IsNilpotentIdeal) {
  auto A4 = fixture_group("a4");
  GaloisRing k(smallest_irreducible(2, 1), 1);
  auto alg = regular_algebra(A4, k);
  auto J = radical(alg);
  ASSERT_FALSE(J.empty());
  // J^n = 0 for n = dim J + 1, checked on products of basis elements.
  std::vector<Mat> power = J;
  for (size_t t = 0; t < J.size() && !power.empty(); ++t) {
    std::vector<Mat> next;
    for (auto& a : power)
      for (auto& b : J) {
        Mat c = mul(k, a, b);
        if (!is_zero(k, c)) next.push_back(c);
      }
    if (next.size() > 200) next.resize(200);
    power = next;
  }
  EXPECT_TRUE(power.empty());
}

TEST(LocalTest, FieldAndMatrixAlgebra) {
  auto C7 = fixture_group("c7");
  GaloisRing k7(smallest_irreducible(7, 1), 1);
  auto info = local_info(regular_algebra(C7, k7));
  EXPECT_TRUE(info.local);
  EXPECT_EQ(info.semisimple_dim, 1);
  auto S3 = fixture_group("s3");
  EXPECT_FALSE(local_info(regular_algebra(S3, GaloisRing(smallest_irreducible(3, 1), 1))).local);
}

TEST(Splitting, GroupAlgebraBlocks) {
  auto G = fixture_group("psl27");
  GaloisRing k(smallest_irreducible(7, 1), 1);
  auto B = block_idempotents_mod_p(G, k.spec());
  GroupAlgebra A(G, k);
  auto ops = group_ops(A);
  std::mt19937_64 rng(1);
  auto pr = primitive_decomposition(ops, B.blocks[0].idem, rng);
  EXPECT_EQ(pr.size(), 9u);  // 1 + 5 + 3 copies of the PIMs
  Vec sum = A.zero();
  for (size_t i = 0; i < pr.size(); ++i) {
    EXPECT_EQ(A.mul(pr[i], pr[i]), pr[i]);
    for (size_t j = 0; j < pr.size(); ++j)
      if (i != j) EXPECT_TRUE(A.is_zero(A.mul(pr[i], pr[j])));
    sum = A.add(sum, pr[i]);
  }
  EXPECT_EQ(sum, B.blocks[0].idem);
  EXPECT_EQ(primitive_decomposition(ops, B.blocks[1].idem, rng).size(), 7u);
}

TEST(Splitting, LiftOrthogonalFamily) {
  auto G = fixture_group("s3");
  GaloisRing k(smallest_irreducible(3, 1), 1), R(smallest_irreducible(3, 1), 4);
  GroupAlgebra A(G, k), AR(G, R);
  auto ops = group_ops(A);
  std::mt19937_64 rng(2);
  auto pr = primitive_decomposition(ops, A.one(), rng);
  ASSERT_EQ(pr.size(), 2u);
  auto mulR = [&](const Vec& x, const Vec& y) { return AR.mul(x, y); };
  auto lifted = lift_orthogonal(mulR, R, AR.one(), pr);
  EXPECT_EQ(AR.mul(lifted[0], lifted[0]), lifted[0]);
  EXPECT_EQ(AR.mul(lifted[1], lifted[1]), lifted[1]);
  EXPECT_TRUE(AR.is_zero(AR.mul(lifted[0], lifted[1])));
  EXPECT_EQ(AR.add(lifted[0], lifted[1]), AR.one());
}
