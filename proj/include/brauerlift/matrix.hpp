#pragma once

// Dense matrices over a GaloisRing and elimination over the chain ring GR(p^N).
//
// Elimination only ever pivots on units. A matrix whose image is a direct
// summand ("split") is reduced completely this way; otherwise the residual
// block is divisible by p and is reported through Echelon::split.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "brauerlift/coeff.hpp"

namespace brauerlift {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Elem> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Elem& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Elem& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  Elem* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const Elem* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
  bool operator==(const Mat&) const = default;
};

inline Mat identity(const GaloisRing& R, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = R.one();
  return m;
}

inline Mat transpose(const Mat& A) {
  Mat t(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) t(j, i) = A(i, j);
  return t;
}

inline Mat add(const GaloisRing& R, const Mat& A, const Mat& B) {
  Mat C(A.rows, A.cols);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = R.add(A.a[k], B.a[k]);
  return C;
}

inline Mat sub(const GaloisRing& R, const Mat& A, const Mat& B) {
  Mat C(A.rows, A.cols);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = R.sub(A.a[k], B.a[k]);
  return C;
}

inline Mat scale(const GaloisRing& R, const Mat& A, const Elem& s) {
  Mat C(A.rows, A.cols);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = R.mul(A.a[k], s);
  return C;
}

namespace detail {

// dst[j] += s * src[j] for j in [0, n).
inline void axpy(const GaloisRing& R, Elem* dst, const Elem& s, const Elem* src, int n) {
  if (R.is_zero(s)) return;
  if (R.degree() == 1) {
    const u64 m = R.modulus();
    const u64 sv = s.c[0];
    for (int j = 0; j < n; ++j) {
      if (!src[j].c[0]) continue;
      u64 v = dst[j].c[0] + R.mulmod(sv, src[j].c[0]);
      dst[j].c[0] = v >= m ? v - m : v;
    }
    return;
  }
  for (int j = 0; j < n; ++j)
    if (!R.is_zero(src[j])) dst[j] = R.add(dst[j], R.mul(s, src[j]));
}

/// Addition and multiplication tables of a residue field with q <= 256.
struct SmallField {
  int q = 0;
  std::vector<uint8_t> add, mul, inv, neg;
};

inline int encode_small(const GaloisRing& k, const Elem& x) {
  int v = 0;
  for (int i = k.degree() - 1; i >= 0; --i) v = v * static_cast<int>(k.p()) + static_cast<int>(x.c[i]);
  return v;
}

inline const SmallField& small_field(const GaloisRing& k) {
  static std::map<std::pair<u64, std::vector<u64>>, SmallField> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k.p(), k.spec().f);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SmallField F;
  F.q = static_cast<int>(k.q());
  std::vector<Elem> el(F.q);
  for (int v = 0; v < F.q; ++v) {
    int t = v;
    for (int i = 0; i < k.degree(); ++i) {
      el[v].c[i] = static_cast<u64>(t % static_cast<int>(k.p()));
      t /= static_cast<int>(k.p());
    }
  }
  F.add.resize(F.q * F.q);
  F.mul.resize(F.q * F.q);
  F.inv.resize(F.q);
  F.neg.resize(F.q);
  for (int a = 0; a < F.q; ++a) {
    F.neg[a] = static_cast<uint8_t>(encode_small(k, k.neg(el[a])));
    for (int b = 0; b < F.q; ++b) {
      F.add[a * F.q + b] = static_cast<uint8_t>(encode_small(k, k.add(el[a], el[b])));
      F.mul[a * F.q + b] = static_cast<uint8_t>(encode_small(k, k.mul(el[a], el[b])));
      if (F.mul[a * F.q + b] == 1) F.inv[a] = static_cast<uint8_t>(b);
    }
  }
  return cache.emplace(key, std::move(F)).first->second;
}

inline Elem decode_small(const GaloisRing& k, int v) {
  Elem e;
  for (int i = 0; i < k.degree(); ++i) {
    e.c[i] = static_cast<u64>(v % static_cast<int>(k.p()));
    v /= static_cast<int>(k.p());
  }
  return e;
}

inline Mat mul_small_field(const GaloisRing& k, const Mat& A, const Mat& B) {
  const SmallField& F = small_field(k);
  const int q = F.q;
  std::vector<uint8_t> a(A.a.size()), b(B.a.size()), c(static_cast<size_t>(A.rows) * B.cols, 0);
  for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<uint8_t>(encode_small(k, A.a[i]));
  for (size_t i = 0; i < b.size(); ++i) b[i] = static_cast<uint8_t>(encode_small(k, B.a[i]));
  for (int i = 0; i < A.rows; ++i) {
    uint8_t* ci = c.data() + static_cast<size_t>(i) * B.cols;
    for (int t = 0; t < A.cols; ++t) {
      uint8_t x = a[static_cast<size_t>(i) * A.cols + t];
      if (!x) continue;
      const uint8_t* mx = F.mul.data() + x * q;
      const uint8_t* bt = b.data() + static_cast<size_t>(t) * B.cols;
      for (int j = 0; j < B.cols; ++j)
        if (bt[j]) ci[j] = F.add[ci[j] * q + mx[bt[j]]];
    }
  }
  Mat C(A.rows, B.cols);
  for (size_t i = 0; i < c.size(); ++i) C.a[i] = decode_small(k, c[i]);
  return C;
}

}  // namespace detail

inline Mat mul(const GaloisRing& R, const Mat& A, const Mat& B) {
  if (R.N() == 1 && R.q() <= 256 && static_cast<long long>(A.rows) * A.cols * B.cols > 4096)
    return detail::mul_small_field(R, A, B);
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) detail::axpy(R, C.row(i), A(i, k), B.row(k), B.cols);
  return C;
}

inline std::vector<Elem> mul_vec(const GaloisRing& R, const Mat& A, const std::vector<Elem>& v) {
  std::vector<Elem> out(A.rows);
  for (int i = 0; i < A.rows; ++i) {
    Elem s{};
    const Elem* r = A.row(i);
    for (int j = 0; j < A.cols; ++j)
      if (!R.is_zero(v[j]) && !R.is_zero(r[j])) s = R.add(s, R.mul(r[j], v[j]));
    out[i] = s;
  }
  return out;
}

inline bool is_zero(const GaloisRing& R, const Mat& A) {
  for (auto& e : A.a)
    if (!R.is_zero(e)) return false;
  return true;
}

inline Mat hstack(const Mat& A, const Mat& B) {
  Mat C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    std::copy(A.row(i), A.row(i) + A.cols, C.row(i));
    std::copy(B.row(i), B.row(i) + B.cols, C.row(i) + A.cols);
  }
  return C;
}

inline Mat vstack(const Mat& A, const Mat& B) {
  Mat C(A.rows + B.rows, A.rows ? A.cols : B.cols);
  std::copy(A.a.begin(), A.a.end(), C.a.begin());
  std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
  return C;
}

inline Mat columns(const Mat& A, const std::vector<int>& idx) {
  Mat C(A.rows, static_cast<int>(idx.size()));
  for (int i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < idx.size(); ++k) C(i, static_cast<int>(k)) = A(i, idx[k]);
  return C;
}

inline Mat rows_of(const Mat& A, const std::vector<int>& idx) {
  Mat C(static_cast<int>(idx.size()), A.cols);
  for (size_t k = 0; k < idx.size(); ++k)
    std::copy(A.row(idx[k]), A.row(idx[k]) + A.cols, C.row(static_cast<int>(k)));
  return C;
}

inline Mat reduce_precision(const GaloisRing& R, const Mat& A, int M) {
  Mat C(A.rows, A.cols);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = R.reduce_to(A.a[k], M);
  return C;
}

/// Reduced row echelon form with unit pivots.
struct Echelon {
  Mat R;                     // reduced matrix
  std::vector<int> pivcols;  // pivot column of row i, i < rank
  int rank = 0;              // rank modulo p
  bool split = true;         // true iff the non-pivot rows vanish exactly
};

/// Row-reduce the first `ncols` columns of A (all columns by default).
inline Echelon echelon(const GaloisRing& R, Mat A, int ncols = -1) {
  if (ncols < 0) ncols = A.cols;
  Echelon E;
  int r = 0;
  int first_skipped = -1;  // skipped columns may hold non-units that still need eliminating
  for (int j = 0; j < ncols && r < A.rows; ++j) {
    int piv = -1;
    for (int i = r; i < A.rows; ++i)
      if (R.is_unit(A(i, j))) {
        piv = i;
        break;
      }
    if (piv < 0) {
      if (first_skipped < 0) first_skipped = j;
      continue;
    }
    if (piv != r)
      std::swap_ranges(A.row(piv), A.row(piv) + A.cols, A.row(r));
    const int lo = first_skipped < 0 ? j : first_skipped;
    Elem inv = R.inv(A(r, j));
    Elem* pr = A.row(r);
    for (int k = lo; k < A.cols; ++k) pr[k] = R.mul(pr[k], inv);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || R.is_zero(A(i, j))) continue;
      Elem f = R.neg(A(i, j));
      detail::axpy(R, A.row(i) + lo, f, pr + lo, A.cols - lo);
    }
    E.pivcols.push_back(j);
    ++r;
  }
  E.rank = r;
  for (int i = r; i < A.rows && E.split; ++i)
    for (int j = 0; j < ncols; ++j)
      if (!R.is_zero(A(i, j))) {
        E.split = false;
        break;
      }
  E.R = std::move(A);
  return E;
}

namespace detail {

inline int rank_small_field(const GaloisRing& k, const Mat& A) {
  const SmallField& F = small_field(k);
  const int q = F.q, rows = A.rows, cols = A.cols;
  std::vector<uint8_t> M(static_cast<size_t>(rows) * cols);
  for (size_t i = 0; i < M.size(); ++i) M[i] = static_cast<uint8_t>(encode_small(k, A.a[i]));
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (M[static_cast<size_t>(i) * cols + j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    uint8_t* pr = M.data() + static_cast<size_t>(piv) * cols;
    if (piv != r) std::swap_ranges(pr, pr + cols, M.data() + static_cast<size_t>(r) * cols);
    pr = M.data() + static_cast<size_t>(r) * cols;
    const uint8_t* mi = F.mul.data() + F.inv[pr[j]] * q;
    for (int t = j; t < cols; ++t) pr[t] = mi[pr[t]];
    for (int i = r + 1; i < rows; ++i) {
      uint8_t* ri = M.data() + static_cast<size_t>(i) * cols;
      if (!ri[j]) continue;
      const uint8_t* mf = F.mul.data() + F.neg[ri[j]] * q;
      for (int t = j; t < cols; ++t)
        if (pr[t]) ri[t] = F.add[ri[t] * q + mf[pr[t]]];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

inline int rank_mod_p(const GaloisRing& R, const Mat& A) {
  GaloisRing k = R.residue_field();
  if (k.q() <= 256) return detail::rank_small_field(k, reduce_precision(R, A, 1));
  return echelon(k, reduce_precision(R, A, 1)).rank;
}

/// Basis (as columns) of ker A. Requires the image of A to be split.
inline Mat kernel(const GaloisRing& R, const Mat& A) {
  Echelon E = echelon(R, A);
  if (!E.split) throw NotSplit("kernel of a non-split map");
  std::vector<char> is_piv(A.cols, 0);
  for (int c : E.pivcols) is_piv[c] = 1;
  std::vector<int> free;
  for (int j = 0; j < A.cols; ++j)
    if (!is_piv[j]) free.push_back(j);
  Mat K(A.cols, static_cast<int>(free.size()));
  for (size_t t = 0; t < free.size(); ++t) {
    int fj = free[t];
    K(fj, static_cast<int>(t)) = R.one();
    for (int i = 0; i < E.rank; ++i) K(E.pivcols[i], static_cast<int>(t)) = R.neg(E.R(i, fj));
  }
  return K;
}

/// Solve A X = B. Returns nullopt if some column of B is not in the image.
/// Requires A split.
inline std::optional<Mat> solve(const GaloisRing& R, const Mat& A, const Mat& B) {
  Echelon E = echelon(R, hstack(A, B), A.cols);
  if (!E.split) {
    // Non-pivot rows of the A part vanish iff A is split; check that separately.
    for (int i = E.rank; i < E.R.rows; ++i)
      for (int j = 0; j < A.cols; ++j)
        if (!R.is_zero(E.R(i, j))) throw NotSplit("solve with a non-split matrix");
  }
  for (int i = E.rank; i < E.R.rows; ++i)
    for (int j = A.cols; j < E.R.cols; ++j)
      if (!R.is_zero(E.R(i, j))) return std::nullopt;
  Mat X(A.cols, B.cols);
  for (int i = 0; i < E.rank; ++i)
    for (int j = 0; j < B.cols; ++j) X(E.pivcols[i], j) = E.R(i, A.cols + j);
  return X;
}

/// Columns of A forming a basis of its (split) image.
inline Mat image(const GaloisRing& R, const Mat& A) {
  Echelon E = echelon(R, A);
  if (!E.split) throw NotSplit("image of a non-split map");
  return columns(A, E.pivcols);
}

inline std::optional<Mat> inverse(const GaloisRing& R, const Mat& A) {
  if (A.rows != A.cols) return std::nullopt;
  Echelon E = echelon(R, hstack(A, identity(R, A.rows)), A.cols);
  if (E.rank < A.rows) return std::nullopt;
  Mat X(A.rows, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.rows; ++j) X(E.pivcols[i], j) = E.R(i, A.cols + j);
  return X;
}

/// Quotient of R^k by a split submodule spanned by the columns of S:
/// coordinates `keep` complement the submodule; q(v) = v_keep - M v_J.
struct Quotient {
  std::vector<int> keep, J;
  Mat M;  // |keep| x |J|
  int dim() const { return static_cast<int>(keep.size()); }
  std::vector<Elem> apply(const GaloisRing& R, const std::vector<Elem>& v) const {
    std::vector<Elem> out(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
      Elem s = v[keep[i]];
      for (size_t t = 0; t < J.size(); ++t) s = R.sub(s, R.mul(M(static_cast<int>(i), static_cast<int>(t)), v[J[t]]));
      out[i] = s;
    }
    return out;
  }
};

inline Quotient quotient_by(const GaloisRing& R, const Mat& S, int k) {
  Quotient Q;
  Echelon E = echelon(R, transpose(S));
  if (!E.split) throw NotSplit("quotient by a non-split submodule");
  Q.J = E.pivcols;
  std::vector<char> in_j(k, 0);
  for (int j : Q.J) in_j[j] = 1;
  for (int j = 0; j < k; ++j)
    if (!in_j[j]) Q.keep.push_back(j);
  Mat Sbasis = columns(S, echelon(R, S).pivcols);
  Mat SJ = rows_of(Sbasis, Q.J);
  Mat SK = rows_of(Sbasis, Q.keep);
  auto inv = inverse(R, SJ);
  if (!inv) throw NotSplit("submodule coordinates not invertible");
  Q.M = mul(R, SK, *inv);
  return Q;
}

/// One Newton step e' = 3e^2 - 2e^3 for a square matrix.
inline Mat hensel_step(const GaloisRing& R, const Mat& e) {
  Mat e2 = mul(R, e, e);
  Mat e3 = mul(R, e2, e);
  Mat out(e.rows, e.cols);
  for (size_t k = 0; k < e.a.size(); ++k) out.a[k] = R.sub(R.scale(e2.a[k], 3), R.scale(e3.a[k], 2));
  return out;
}

/// Iterate e' = 3e^2 - 2e^3 to an exact idempotent, given e^2 = e mod p^m.
inline Mat hensel_idempotent(const GaloisRing& R, Mat e, int m = 1) {
  for (int prec = m; prec < R.N(); prec *= 2) e = hensel_step(R, e);
  Mat e2 = mul(R, e, e);
  while (!(e2 == e)) {
    e = hensel_step(R, e);
    e2 = mul(R, e, e);
  }
  return e;
}

inline Mat random_matrix(const GaloisRing& R, int r, int c, std::mt19937_64& rng) {
  Mat m(r, c);
  std::uniform_int_distribution<u64> dist(0, R.modulus() - 1);
  for (auto& e : m.a)
    for (int i = 0; i < R.degree(); ++i) e.c[i] = dist(rng);
  return m;
}

inline Elem random_elem(const GaloisRing& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, R.modulus() - 1);
  Elem e;
  for (int i = 0; i < R.degree(); ++i) e.c[i] = dist(rng);
  return e;
}

}  // namespace brauerlift
