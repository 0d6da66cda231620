#include <gtest/gtest.h>

#include <random>

#include "brauerlift/coeff.hpp"
#include "brauerlift/matrix.hpp"

using namespace brauerlift;

namespace {

// Exhaustive inverse in Z/m for the oracle.
u64 brute_inverse(u64 x, u64 m) {
  for (u64 y = 0; y < m; ++y)
    if (x * y % m == 1) return y;
  return 0;
}

}  // namespace

TEST(Coeff, SmallestIrreducible) {
  EXPECT_EQ(smallest_irreducible(7, 1).f, (std::vector<u64>{0}));
  // x^2 + 1 is irreducible mod 7 because -1 is a non-square.
  EXPECT_EQ(smallest_irreducible(7, 2).f, (std::vector<u64>{1, 0}));
  // x^2 + 1 splits mod 5; x^2 + 2 does not.
  EXPECT_EQ(smallest_irreducible(5, 2).f, (std::vector<u64>{2, 0}));
  EXPECT_EQ(smallest_irreducible(2, 3).f, (std::vector<u64>{1, 1, 0}));
}

TEST(Coeff, ChooseFieldFromOrders) {
  EXPECT_EQ(choose_coefficient_field({1, 7}, 7).q(), 7u);
  EXPECT_EQ(choose_coefficient_field({1, 2, 3}, 3).q(), 3u);
  EXPECT_EQ(choose_coefficient_field({1, 2, 3, 4, 7}, 7).q(), 49u);
}

TEST(Coeff, InvertExamples) {
  GaloisRing R(smallest_irreducible(7, 1), 2);
  EXPECT_EQ(R.inv(R.one()), R.one());
  EXPECT_EQ(R.inv(R.from_int(3)), R.from_int(33));
  EXPECT_EQ(brute_inverse(3, 49), 33u);
  EXPECT_THROW(R.inv(R.from_int(14)), NotAUnit);
  EXPECT_THROW(R.inv(R.zero()), NotAUnit);
}

TEST(Coeff, ReducePrecision) {
  GaloisRing R(smallest_irreducible(7, 2), 4);
  Elem x = R.from_coeffs({1000, 2000});
  Elem r = reduce_precision(R, x, 1);
  EXPECT_EQ(r.c[0], 1000u % 7);
  EXPECT_EQ(r.c[1], 2000u % 7);
  EXPECT_THROW(reduce_precision(R, x, 5), PrecisionTooHigh);
  EXPECT_EQ(R.reduce_to(R.reduce_to(x, 3), 2), R.reduce_to(x, 2));
}

TEST(Coeff, HenselScalar) {
  GaloisRing R(smallest_irreducible(7, 1), 2);
  Mat e(1, 1);
  e(0, 0) = R.from_int(8);
  Mat out = hensel_idempotent(R, e);
  EXPECT_EQ(out(0, 0), R.one());
  Mat z(1, 1);
  EXPECT_EQ(hensel_idempotent(R, z), z);
}

TEST(Coeff, HenselPerturbedProjection) {
  GaloisRing R(smallest_irreducible(7, 1), 2);
  Mat e(2, 2);
  e(0, 0) = R.one();
  e(0, 1) = R.from_int(7 * 3);
  e(1, 0) = R.from_int(7 * 5);
  Mat out = hensel_idempotent(R, e);
  EXPECT_EQ(mul(R, out, out), out);
  EXPECT_EQ(reduce_precision(R, out, 1), reduce_precision(R, e, 1));
  // trace 1: conjugate of diag(1,0)
  EXPECT_EQ(R.add(out(0, 0), out(1, 1)), R.one());
}

TEST(Coeff, RootOfUnity) {
  GaloisRing R(smallest_irreducible(7, 2), 5);
  Elem z = R.root_of_unity(4);
  EXPECT_EQ(R.pow(z, 4), R.one());
  EXPECT_NE(R.pow(z, 2), R.one());
  GaloisRing S(smallest_irreducible(7, 1), 3);
  EXPECT_THROW(S.root_of_unity(4), Error);
}

TEST(Coeff, KernelAndSolve) {
  GaloisRing R(smallest_irreducible(5, 1), 3);
  Mat A(2, 3);
  A(0, 0) = R.from_int(1);
  A(0, 1) = R.from_int(5);
  A(1, 2) = R.from_int(2);
  Mat K = kernel(R, A);
  ASSERT_EQ(K.cols, 1);
  EXPECT_TRUE(is_zero(R, mul(R, A, K)));
  Mat B(2, 1);
  B(0, 0) = R.from_int(3);
  B(1, 0) = R.from_int(4);
  auto X = solve(R, A, B);
  ASSERT_TRUE(X);
  EXPECT_EQ(mul(R, A, *X), B);
  Mat P(1, 1);
  P(0, 0) = R.from_int(5);
  EXPECT_FALSE(echelon(R, P).split);
  EXPECT_EQ(rank_mod_p(R, P), 0);
}
