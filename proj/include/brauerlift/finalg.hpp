#pragma once

// Finite-dimensional algebras over F_q: radicals (iterated trace kernels),
// locality tests, and splitting into primitive orthogonal idempotents.

#include <functional>
#include <random>
#include <vector>

#include "brauerlift/algebra.hpp"

namespace brauerlift {

/// Subalgebra of M_n(k) spanned by `basis` (closed under products), k = F_q.
struct MatrixAlgebra {
  GaloisRing k;
  int n = 0;
  std::vector<Mat> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

// F_q = F_p[a]/f acting on itself: matrix of multiplication by x over F_p.
inline Mat mult_matrix_fp(const GaloisRing& k, const Elem& x) {
  int d = k.degree();
  Mat m(d, d);
  for (int t = 0; t < d; ++t) {
    Elem bt{};
    bt.c[t] = 1;
    Elem prod = k.mul(x, bt);
    for (int s = 0; s < d; ++s) m(s, t).c[0] = prod.c[s];
  }
  return m;
}

// Restriction of scalars: n x n over F_q -> nd x nd over F_p.
inline Mat restrict_scalars(const GaloisRing& k, const Mat& A) {
  int d = k.degree();
  if (d == 1) return A;
  Mat out(A.rows * d, A.cols * d);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) {
      Mat b = mult_matrix_fp(k, A(i, j));
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) out(i * d + s, j * d + t) = b(s, t);
    }
  return out;
}

// Trace of M^e over Z/m, for an integer matrix with entries < m.
inline u64 trace_power(const Mat& M, u64 e, const GaloisRing& Zm) {
  Mat R = identity(Zm, M.rows), B = M;
  while (e) {
    if (e & 1) R = mul(Zm, R, B);
    e >>= 1;
    if (e) B = mul(Zm, B, B);
  }
  u64 t = 0;
  for (int i = 0; i < R.rows; ++i) t = (t + R(i, i).c[0]) % Zm.modulus();
  return t;
}

}  // namespace detail

/// Coordinates of matrices in the span of a basis (columns = flattened basis).
class SpanSolver {
 public:
  SpanSolver(const GaloisRing& k, const std::vector<Mat>& basis) : k_(k) {
    if (basis.empty()) return;
    B_ = Mat(static_cast<int>(basis[0].a.size()), static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
      for (size_t i = 0; i < basis[j].a.size(); ++i) B_(static_cast<int>(i), static_cast<int>(j)) = basis[j].a[i];
  }
  Vec coords(const Mat& x) const {
    Mat v(static_cast<int>(x.a.size()), 1);
    v.a = x.a;
    auto s = solve(k_, B_, v);
    if (!s) throw Error("NotInSpan", "element outside the algebra");
    return s->a;
  }

 private:
  GaloisRing k_;
  Mat B_;
};

/// Jacobson radical of a matrix algebra over F_q, as a list of matrices.
inline std::vector<Mat> radical(const MatrixAlgebra& A) {
  const GaloisRing& k = A.k;
  const u64 p = k.p();
  GaloisRing fp(FieldSpec{p, {0}}, 1);
  // F_p-basis of A as integer-liftable matrices.
  std::vector<Mat> fb;
  for (auto& b : A.basis)
    for (int t = 0; t < k.degree(); ++t) {
      Elem at{};
      at.c[t] = 1;
      fb.push_back(detail::restrict_scalars(k, scale(k, b, at)));
    }
  int n = A.n * k.degree();
  int l = 0;
  for (u64 pp = p; pp <= static_cast<u64>(n); pp *= p) ++l;
  std::vector<Mat> I = fb;  // basis of I_{i-1}
  for (int i = 0; i <= l && !I.empty(); ++i) {
    GaloisRing Zm(FieldSpec{p, {0}}, i + 1);
    u64 pi = ipow(p, i);
    Mat G(static_cast<int>(fb.size()), static_cast<int>(I.size()));
    for (size_t a = 0; a < I.size(); ++a)
      for (size_t b = 0; b < fb.size(); ++b) {
        Mat prod = mul(fp, I[a], fb[b]);
        u64 t = detail::trace_power(prod, pi, Zm);
        if (t % pi) throw Error("RadicalFailure", "trace not divisible");
        G(static_cast<int>(b), static_cast<int>(a)).c[0] = (t / pi) % p;
      }
    Mat K = kernel(fp, G);
    std::vector<Mat> next;
    for (int c = 0; c < K.cols; ++c) {
      Mat m(n, n);
      for (size_t a = 0; a < I.size(); ++a) {
        Elem lam = K(static_cast<int>(a), c);
        if (!fp.is_zero(lam)) m = add(fp, m, scale(fp, I[a], lam));
      }
      next.push_back(m);
    }
    I = std::move(next);
  }
  // Back to F_q: J is an F_q-subspace; recover F_q matrices from the block form.
  std::vector<Mat> out;
  int d = k.degree();
  std::vector<Mat> cand;
  for (auto& m : I) {
    Mat q(A.n, A.n);
    for (int r = 0; r < A.n; ++r)
      for (int c = 0; c < A.n; ++c) {
        // multiplication by x has first column = coefficients of x
        Elem e{};
        for (int s = 0; s < d; ++s) e.c[s] = m(r * d + s, c * d).c[0];
        q(r, c) = e;
      }
    cand.push_back(q);
  }
  // F_q-basis of the span.
  if (cand.empty()) return out;
  Mat S(static_cast<int>(cand[0].a.size()), static_cast<int>(cand.size()));
  for (size_t j = 0; j < cand.size(); ++j)
    for (size_t i = 0; i < cand[j].a.size(); ++i) S(static_cast<int>(i), static_cast<int>(j)) = cand[j].a[i];
  for (int c : echelon(k, S).pivcols) out.push_back(cand[c]);
  return out;
}

/// Algebra generated (with identity) by a set of n x n matrices over F_q.
inline MatrixAlgebra generated_algebra(const GaloisRing& k, const std::vector<Mat>& gens, int n) {
  MatrixAlgebra A{k, n, {}};
  Mat S(n * n, 0);
  auto try_add = [&](const Mat& m) {
    Mat col(n * n, 1);
    col.a = m.a;
    Mat T = hstack(S, col);
    if (echelon(k, T).rank > S.cols) {
      S = T;
      A.basis.push_back(m);
      return true;
    }
    return false;
  };
  try_add(identity(k, n));
  for (size_t i = 0; i < A.basis.size(); ++i)
    for (auto& g : gens) try_add(mul(k, A.basis[i], g));
  return A;
}

/// Left regular representation of an abstract algebra given by a basis of
/// ambient vectors and a product.
struct AbstractAlgebra {
  GaloisRing k;
  std::vector<Vec> basis;
  std::function<Vec(const Vec&, const Vec&)> mul;
};

inline Mat vectors_as_columns(const std::vector<Vec>& vs, int ambient) {
  Mat M(ambient, static_cast<int>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j)
    for (int i = 0; i < ambient; ++i) M(i, static_cast<int>(j)) = vs[j][i];
  return M;
}

inline MatrixAlgebra regular_representation(const AbstractAlgebra& E) {
  int m = static_cast<int>(E.basis.size());
  MatrixAlgebra out{E.k, m, {}};
  if (m == 0) return out;
  int amb = static_cast<int>(E.basis[0].size());
  Mat B = vectors_as_columns(E.basis, amb);
  for (int a = 0; a < m; ++a) {
    std::vector<Vec> prods;
    for (int b = 0; b < m; ++b) prods.push_back(E.mul(E.basis[a], E.basis[b]));
    auto X = solve(E.k, B, vectors_as_columns(prods, amb));
    if (!X) throw Error("NotClosed", "basis not closed under product");
    out.basis.push_back(*X);
  }
  return out;
}

/// dim_{F_q} of A/J(A), and whether A/J(A) is a field (i.e. A is local).
struct LocalInfo {
  int semisimple_dim = 0;
  bool local = false;
};

inline LocalInfo local_info(const MatrixAlgebra& A) {
  LocalInfo info;
  auto J = radical(A);
  info.semisimple_dim = A.dim() - static_cast<int>(J.size());
  // Quotient S = A/J: basis = elements of A outside J (complement by echelon).
  const GaloisRing& k = A.k;
  int nn = A.n * A.n;
  Mat JB(nn, static_cast<int>(J.size()));
  for (size_t j = 0; j < J.size(); ++j)
    for (int i = 0; i < nn; ++i) JB(i, static_cast<int>(j)) = J[j].a[i];
  std::vector<Mat> comp;
  Mat cur = JB;
  for (auto& b : A.basis) {
    Mat col(nn, 1);
    col.a = b.a;
    Mat T = hstack(cur, col);
    if (echelon(k, T).rank > cur.cols) {
      cur = T;
      comp.push_back(b);
    }
  }
  // Commutative modulo J?
  auto in_J = [&](const Mat& m) {
    Mat col(nn, 1);
    col.a = m.a;
    return J.empty() ? is_zero(k, m) : solve(k, JB, col).has_value();
  };
  for (size_t a = 0; a < comp.size(); ++a)
    for (size_t b = a + 1; b < comp.size(); ++b)
      if (!in_J(sub(k, mul(k, comp[a], comp[b]), mul(k, comp[b], comp[a])))) return info;
  // Commutative semisimple: a field iff x -> x^q has a 1-dimensional fixed space.
  int s = static_cast<int>(comp.size());
  Mat all = hstack(JB, [&] {
    Mat C(nn, s);
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < nn; ++i) C(i, j) = comp[j].a[i];
    return C;
  }());
  Mat F(s, s);
  for (int j = 0; j < s; ++j) {
    Mat y = identity(k, A.n), base = comp[j];
    for (u64 e = k.q(); e; e >>= 1) {
      if (e & 1) y = mul(k, y, base);
      if (e > 1) base = mul(k, base, base);
    }
    Mat col(nn, 1);
    col.a = y.a;
    auto c = solve(k, all, col);
    if (!c) throw Error("NotClosed", "power left the algebra");
    for (int i = 0; i < s; ++i) F(i, j) = (*c)(static_cast<int>(J.size()) + i, 0);
    F(j, j) = k.sub(F(j, j), k.one());
  }
  info.local = kernel(k, F).cols == 1;
  return info;
}

/// Product and random elements for splitting idempotents of an ambient algebra.
struct AlgebraOps {
  GaloisRing k;  // a field
  int ambient = 0;
  std::function<Vec(const Vec&, const Vec&)> mul;
  std::vector<Vec> spanning;  // spans the whole algebra
};

/// Basis of the corner e A e.
inline std::vector<Vec> corner_basis(const AlgebraOps& A, const Vec& e, const Vec* f = nullptr) {
  const Vec& right = f ? *f : e;
  std::vector<Vec> prods;
  for (auto& s : A.spanning) prods.push_back(A.mul(A.mul(e, s), right));
  Mat M = vectors_as_columns(prods, A.ambient);
  std::vector<Vec> out;
  for (int c : echelon(A.k, M).pivcols) out.push_back(prods[c]);
  return out;
}

inline Vec random_combination(const GaloisRing& k, const std::vector<Vec>& basis, int ambient, std::mt19937_64& rng) {
  Vec v(ambient);
  for (auto& b : basis) {
    Elem c = random_elem(k, rng);
    for (int i = 0; i < ambient; ++i)
      if (!k.is_zero(b[i])) v[i] = k.add(v[i], k.mul(c, b[i]));
  }
  return v;
}

/// Idempotents of the commutative algebra k[x] inside the corner with unit e.
inline std::vector<Vec> split_by_element(const AlgebraOps& A, const Vec& e, const Vec& x) {
  const GaloisRing& k = A.k;
  std::vector<Vec> powers{e};
  Mat P = vectors_as_columns(powers, A.ambient);
  Mat coeff;
  for (;;) {
    Vec nxt = A.mul(powers.back(), x);
    Mat col = vectors_as_columns({nxt}, A.ambient);
    auto c = solve(k, P, col);
    if (c) {
      coeff = *c;  // x^d = sum coeff_i x^i
      break;
    }
    powers.push_back(nxt);
    P = hstack(P, col);
  }
  int d = static_cast<int>(powers.size());
  if (d == 1) return {e};
  // k[x] = k[t]/(minpoly), multiplied as polynomials.
  auto polymul = [&](const Vec& a, const Vec& b) {
    Vec prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
      if (k.is_zero(a[i])) continue;
      for (int j = 0; j < d; ++j) prod[i + j] = k.add(prod[i + j], k.mul(a[i], b[j]));
    }
    for (int top = 2 * d - 2; top >= d; --top) {
      Elem c = prod[top];
      if (k.is_zero(c)) continue;
      prod[top] = Elem{};
      for (int i = 0; i < d; ++i) prod[top - d + i] = k.add(prod[top - d + i], k.mul(c, coeff(i, 0)));
    }
    prod.resize(d);
    return prod;
  };
  Vec one(d);
  one[0] = k.one();
  std::vector<Vec> out;
  for (auto& id : primitive_idempotents(k, d, one, polymul)) {
    Vec v(A.ambient);
    for (int i = 0; i < d; ++i)
      if (!k.is_zero(id[i]))
        for (int t = 0; t < A.ambient; ++t) v[t] = k.add(v[t], k.mul(id[i], powers[i][t]));
    out.push_back(v);
  }
  return out;
}

inline AbstractAlgebra corner_algebra(const AlgebraOps& A, const Vec& e) {
  return AbstractAlgebra{A.k, corner_basis(A, e), A.mul};
}

/// Decompose the idempotent e into primitive orthogonal idempotents of A.
/// Random splitting; a corner that resists `tries` attempts is certified local
/// by the radical test, never assumed.
inline std::vector<Vec> primitive_decomposition(const AlgebraOps& A, const Vec& e, std::mt19937_64& rng,
                                                int tries = 6, int max_tries = 60) {
  std::vector<Vec> done, todo{e};
  while (!todo.empty()) {
    Vec f = todo.back();
    todo.pop_back();
    auto basis = corner_basis(A, f);
    if (basis.size() <= 1) {
      done.push_back(f);
      continue;
    }
    bool split = false, certified_local = false;
    for (int t = 0; t < max_tries && !split; ++t) {
      if (t == tries) {
        auto info = local_info(regular_representation(AbstractAlgebra{A.k, basis, A.mul}));
        if (info.local) {
          certified_local = true;
          break;
        }
      }
      Vec x = random_combination(A.k, basis, A.ambient, rng);
      auto parts = split_by_element(A, f, x);
      if (parts.size() > 1) {
        for (auto& p : parts) todo.push_back(p);
        split = true;
      }
    }
    if (split) continue;
    if (!certified_local) throw SplittingFailed("corner algebra neither split nor local");
    done.push_back(f);
  }
  return done;
}

/// Hensel-lift an idempotent of A (given mod p) into an algebra over GR(p^N).
inline Vec lift_idempotent_general(const std::function<Vec(const Vec&, const Vec&)>& mul, const GaloisRing& R,
                                   Vec e) {
  for (int guard = 0; guard < 64; ++guard) {
    Vec e2 = mul(e, e);
    if (e2 == e) return e;
    Vec e3 = mul(e2, e);
    for (size_t i = 0; i < e.size(); ++i) e[i] = R.sub(R.scale(e2[i], 3), R.scale(e3[i], 2));
  }
  throw Error("HenselFailure", "idempotent iteration did not converge");
}

/// Lift an orthogonal family of idempotents summing to `unit` (mod p) to
/// GR(p^N), keeping orthogonality: each lift lives in the complement corner.
inline std::vector<Vec> lift_orthogonal(const std::function<Vec(const Vec&, const Vec&)>& mul, const GaloisRing& R,
                                        const Vec& unit, const std::vector<Vec>& family) {
  std::vector<Vec> out;
  Vec rest = unit;
  for (size_t i = 0; i < family.size(); ++i) {
    if (i + 1 == family.size()) {
      out.push_back(rest);
      break;
    }
    Vec x = mul(mul(rest, family[i]), rest);
    Vec e = lift_idempotent_general(mul, R, x);
    out.push_back(e);
    for (size_t t = 0; t < rest.size(); ++t) rest[t] = R.sub(rest[t], e[t]);
  }
  return out;
}

}  // namespace brauerlift
