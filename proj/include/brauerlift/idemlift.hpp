#pragma once

// Lifting along surjections of finite GR(p^N)-algebras: units, conjugating
// units, primitive idempotents, and idempotents of double Burnside algebras.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brauerlift/finalg.hpp"
#include "brauerlift/spans.hpp"

namespace brauerlift {

/// Free GR(p^N)-algebra of rank n given by structure constants:
/// b_i b_j = sum_k consts[i][j][k] b_k (stored sparsely).
struct FiniteAlgebra {
  GaloisRing R;
  int n = 0;
  std::vector<std::vector<std::vector<std::pair<int, Elem>>>> consts;
  Vec unit;

  Vec zero() const { return Vec(n); }
  Vec basis(int i) const {
    Vec v(n);
    v[i] = R.one();
    return v;
  }
  Vec mul(const Vec& x, const Vec& y) const {
    Vec out(n);
    for (int i = 0; i < n; ++i) {
      if (R.is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (R.is_zero(y[j])) continue;
        Elem c = R.mul(x[i], y[j]);
        for (auto& [k, s] : consts[i][j]) out[k] = R.add(out[k], R.mul(c, s));
      }
    }
    return out;
  }
  Vec add(const Vec& x, const Vec& y) const {
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = R.add(x[i], y[i]);
    return out;
  }
  Vec sub(const Vec& x, const Vec& y) const {
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = R.sub(x[i], y[i]);
    return out;
  }
  std::function<Vec(const Vec&, const Vec&)> product() const {
    return [this](const Vec& x, const Vec& y) { return mul(x, y); };
  }
  /// The same algebra at precision M <= N.
  FiniteAlgebra at_precision(int M) const {
    FiniteAlgebra out{R.at_precision(M), n, consts, reduce(unit, M)};
    for (auto& row : out.consts)
      for (auto& cell : row) {
        std::vector<std::pair<int, Elem>> kept;
        for (auto& [k, s] : cell) {
          Elem r = R.reduce_to(s, M);
          if (!out.R.is_zero(r)) kept.emplace_back(k, r);
        }
        cell = std::move(kept);
      }
    return out;
  }
  Vec reduce(const Vec& x, int M = 1) const {
    Vec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = R.reduce_to(x[i], M);
    return out;
  }
  /// Matrix of left multiplication by x.
  Mat left_matrix(const Vec& x) const {
    Mat L(n, n);
    for (int j = 0; j < n; ++j) {
      Vec c = mul(x, basis(j));
      for (int i = 0; i < n; ++i) L(i, j) = c[i];
    }
    return L;
  }
  /// Two-sided inverse, or nullopt if x is not a unit.
  std::optional<Vec> inverse(const Vec& x) const {
    auto Li = brauerlift::inverse(R, left_matrix(x));
    if (!Li) return std::nullopt;
    Vec v = mul_vec(R, *Li, unit);
    if (mul(x, v) != unit || mul(v, x) != unit) return std::nullopt;
    return v;
  }
  AlgebraOps ops_mod_p() const {
    FiniteAlgebra k = at_precision(1);
    AlgebraOps ops{k.R, n, [k](const Vec& x, const Vec& y) { return k.mul(x, y); }, {}};
    for (int i = 0; i < n; ++i) ops.spanning.push_back(basis(i));
    return ops;
  }
};

/// Structure constants from any product on coordinate vectors.
inline FiniteAlgebra algebra_from_product(const GaloisRing& R, int n, const Vec& unit,
                                          const std::function<Vec(const Vec&, const Vec&)>& mul) {
  FiniteAlgebra A{R, n, {}, unit};
  A.consts.assign(n, std::vector<std::vector<std::pair<int, Elem>>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec c = mul(A.basis(i), A.basis(j));
      for (int k = 0; k < n; ++k)
        if (!R.is_zero(c[k])) A.consts[i][j].emplace_back(k, c[k]);
    }
  return A;
}

/// Subalgebra of m x m matrices with the given basis (closed under product).
inline FiniteAlgebra matrix_algebra(const GaloisRing& R, const std::vector<Mat>& basis) {
  int n = static_cast<int>(basis.size()), mm = basis[0].rows * basis[0].cols;
  Mat B(mm, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < mm; ++i) B(i, j) = basis[j].a[i];
  auto coords = [&](const Mat& X) {
    Mat col(mm, 1);
    col.a = X.a;
    auto c = solve(R, B, col);
    if (!c) throw Error("NotClosed", "matrix outside the algebra");
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (*c)(i, 0);
    return v;
  };
  auto to_mat = [&](const Vec& v) {
    Mat X(basis[0].rows, basis[0].cols);
    for (int j = 0; j < n; ++j)
      if (!R.is_zero(v[j])) X = add(R, X, scale(R, basis[j], v[j]));
    return X;
  };
  Vec unit = coords(identity(R, basis[0].rows));
  return algebra_from_product(R, n, unit, [&](const Vec& x, const Vec& y) { return coords(mul(R, to_mat(x), to_mat(y))); });
}

/// Algebra homomorphism between coordinate spaces: f(x) = F x.
struct AlgebraMap {
  const FiniteAlgebra* src = nullptr;
  const FiniteAlgebra* dst = nullptr;
  Mat F;  // dst.n x src.n
  Vec operator()(const Vec& x) const { return mul_vec(src->R, F, x); }
};

inline void require_surjective(const AlgebraMap& f) {
  if (rank_mod_p(f.src->R, f.F) < f.dst->n) throw NotSurjective("map has rank below " + std::to_string(f.dst->n) + " mod p");
}

/// Primitive orthogonal idempotents summing to 1 in A, exact at precision N.
inline std::vector<Vec> primitive_unit_decomposition(const FiniteAlgebra& A, std::mt19937_64& rng) {
  auto ops = A.ops_mod_p();
  auto fam = primitive_decomposition(ops, A.reduce(A.unit), rng);
  return lift_orthogonal(A.product(), A.R, A.unit, fam);
}

/// A unit a of A with f(a) = b. Mod p: a = e x e + c where c sums the primitive
/// idempotents killed by f and e = 1 - c; then a p-adic correction in p ker f.
inline Vec lift_unit(const AlgebraMap& f, const Vec& b, std::mt19937_64& rng) {
  const FiniteAlgebra& A = *f.src;
  const FiniteAlgebra& B = *f.dst;
  const GaloisRing& R = A.R;
  require_surjective(f);
  if (!B.inverse(b)) throw NotAUnit("target is not a unit");
  // Right inverse of F: F G = 1.
  auto G = solve(R, f.F, identity(R, B.n));
  if (!G) throw NotSurjective("no right inverse");
  Vec x = mul_vec(R, *G, b);
  Vec c = A.zero();
  for (auto& e : primitive_unit_decomposition(A, rng))
    if (B.reduce(f(e)) == B.zero()) c = A.add(c, e);
  Vec e = A.sub(A.unit, c);
  Vec a = A.add(A.mul(A.mul(e, x), e), c);
  // f(a) = b mod p; correct by G (b - f(a)), which lies in p A.
  Vec d = B.sub(b, f(a));
  a = A.add(a, mul_vec(R, *G, d));
  if (f(a) != b) throw Error("LiftFailure", "unit lift misses the target");
  if (!A.inverse(a)) throw NotAUnit("lifted element is not a unit");
  return a;
}

namespace detail {

/// Mod p: x in i A j and y in j A i with x y = i and y x = j, if found.
inline std::optional<std::pair<Vec, Vec>> corner_iso(const FiniteAlgebra& k, const Vec& i, const Vec& j,
                                                     std::mt19937_64& rng, int tries) {
  std::vector<Vec> ij, ji;
  for (int t = 0; t < k.n; ++t) {
    ij.push_back(k.mul(k.mul(i, k.basis(t)), j));
    ji.push_back(k.mul(k.mul(j, k.basis(t)), i));
  }
  Mat target = vectors_as_columns({i}, k.n);
  for (int attempt = 0; attempt < tries; ++attempt) {
    Vec x = random_combination(k.R, ij, k.n, rng);
    std::vector<Vec> cols;
    for (auto& v : ji) cols.push_back(k.mul(x, v));
    auto sol = solve(k.R, vectors_as_columns(cols, k.n), target);
    if (!sol) continue;
    Vec y(k.n);
    for (size_t t = 0; t < ji.size(); ++t)
      for (int s = 0; s < k.n; ++s) y[s] = k.R.add(y[s], k.R.mul((*sol)(static_cast<int>(t), 0), ji[t][s]));
    if (k.mul(y, x) == j) return std::pair{x, y};
  }
  return std::nullopt;
}

inline int left_ideal_rank(const FiniteAlgebra& k, const Vec& e) {
  std::vector<Vec> v;
  for (int t = 0; t < k.n; ++t) v.push_back(k.mul(k.basis(t), e));
  return echelon(k.R, vectors_as_columns(v, k.n)).rank;
}

}  // namespace detail

/// A unit u with u j u^-1 = i, built as u = phi(i) + psi(1 - i) from
/// isomorphisms A i -> A j and A(1 - i) -> A(1 - j) found mod p, then made exact.
inline Vec conjugating_unit(const FiniteAlgebra& A, const Vec& i, const Vec& j, std::mt19937_64& rng,
                            int tries = 64) {
  if (A.mul(i, i) != i || A.mul(j, j) != j) throw NotAnIdempotent("conjugating_unit needs idempotents");
  FiniteAlgebra k = A.at_precision(1);
  Vec ib = A.reduce(i), jb = A.reduce(j);
  Vec ic = k.sub(k.unit, ib), jc = k.sub(k.unit, jb);
  int ri = detail::left_ideal_rank(k, ib), rj = detail::left_ideal_rank(k, jb);
  if (ri != rj) throw NotConjugate("dim A i = " + std::to_string(ri) + " but dim A j = " + std::to_string(rj));
  auto top = detail::corner_iso(k, ib, jb, rng, tries);
  if (!top) throw NotConjugate("no isomorphism A i -> A j in " + std::to_string(tries) + " samples");
  auto bottom = detail::corner_iso(k, ic, jc, rng, tries);
  if (!bottom) throw NotConjugate("no isomorphism A(1-i) -> A(1-j) in " + std::to_string(tries) + " samples");
  Vec u0 = k.add(top->first, bottom->first);  // u0 j = i u0 mod p
  // Exact: u = i u0 j + (1 - i) u0 (1 - j) satisfies i u = u j and u = u0 mod p.
  Vec ci = A.sub(A.unit, i), cj = A.sub(A.unit, j);
  Vec u = A.add(A.mul(A.mul(i, u0), j), A.mul(A.mul(ci, u0), cj));
  auto v = A.inverse(u);
  if (!v) throw NotAUnit("conjugating element is not a unit");
  if (A.mul(A.mul(u, j), *v) != i) throw Error("LiftFailure", "u j u^-1 != i");
  return u;
}

/// Whether the idempotent e of A is primitive: e A e mod p is local.
inline bool is_primitive(const FiniteAlgebra& A, const Vec& e) {
  auto ops = A.ops_mod_p();
  Vec eb = A.reduce(e);
  if (eb == Vec(A.n)) return false;
  return local_info(regular_representation(corner_algebra(ops, eb))).local;
}

struct LiftWitness {
  Vec idem;
  std::optional<Vec> unit;  // a with idem = a e_i a^-1
  std::vector<std::string> trace;
};

/// A primitive idempotent e of A with f(e) = target: decompose 1, push forward,
/// match a summand to B target, conjugate by a lifted unit.
inline LiftWitness lift_primitive_idempotent(const AlgebraMap& f, const Vec& target, std::mt19937_64& rng) {
  const FiniteAlgebra& A = *f.src;
  const FiniteAlgebra& B = *f.dst;
  require_surjective(f);
  if (!is_primitive(B, target)) throw NotPrimitive("target idempotent is not primitive");
  LiftWitness w;
  auto family = primitive_unit_decomposition(A, rng);
  w.trace.push_back("decomposed 1 into " + std::to_string(family.size()) + " primitive idempotents");
  for (size_t t = 0; t < family.size(); ++t) {
    Vec img = f(family[t]);
    if (B.reduce(img) == Vec(B.n)) continue;
    Vec u;
    try {
      u = conjugating_unit(B, target, img, rng);
    } catch (const NotConjugate&) {
      continue;
    }
    w.trace.push_back("summand " + std::to_string(t) + " matches the target");
    if (img == target) {
      w.idem = family[t];
    } else {
      Vec a = lift_unit(f, u, rng);
      w.idem = A.mul(A.mul(a, family[t]), *A.inverse(a));
      w.unit = a;
      w.trace.push_back("conjugated by a lifted unit");
    }
    if (f(w.idem) != target || A.mul(w.idem, w.idem) != w.idem) throw Error("LiftFailure", "lift check failed");
    if (!is_primitive(A, w.idem)) throw NotPrimitive("lift is not primitive");
    return w;
  }
  throw NoCandidateFound("no summand of 1 maps to a conjugate of the target");
}

/// Double Burnside algebra on X: basis spans of the p-only span space, over
/// GR(p^N), product a b = (first b, then a); its linearization to End(R[X]).
struct BurnsideWitnessData {
  SpanSpace S;
  FiniteAlgebra Abar;                 // completed Burnside algebra, unit eps_1 Delta
  FiniteAlgebra Bbar;                 // equivariant endomorphisms, orbit basis
  Mat F;                              // linearization, Bbar.n x Abar.n
  std::vector<int> orbit_rep_point;   // a point (x, y) of each X x X orbit
  AlgebraMap map() const { return AlgebraMap{&Abar, &Bbar, F}; }
};

inline std::unique_ptr<BurnsideWitnessData> burnside_algebras(const GSet& X, const GaloisRing& R) {
  const PermGroup& K = *X.G;
  auto out = std::make_unique<BurnsideWitnessData>();
  out->S = span_space(X, X, R.p());
  const SpanSpace& S = out->S;
  int n = S.size(), no = static_cast<int>(S.orbits.size());
  // Unit: for each x-orbit, eps_1 [Stab/Stab] on the p-subgroup basis of Burn(Stab).
  Vec unit(n);
  for (int r : X.reps) {
    const Subgroup& st = X.stabilizer(r);
    auto B = burnside_ring(K, st);
    auto cb = completed_basis(B, R);
    const auto& coords = cb.coords[B.size() - 1];
    for (size_t i = 0; i < cb.classes.size(); ++i) {
      int b = S.locate(B.classes.reps[cb.classes[i]], r, r);
      unit[b] = R.add(unit[b], coords[i]);
    }
  }
  std::vector<std::vector<std::map<int, long long>>> table(n, std::vector<std::map<int, long long>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = compose_basis(S, b, S, a, S);
  out->Abar = FiniteAlgebra{R, n, {}, unit};
  out->Abar.consts.assign(n, std::vector<std::vector<std::pair<int, Elem>>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (auto [c, m] : table[a][b])
        if (!R.is_zero(R.from_int(m))) out->Abar.consts[a][b].emplace_back(c, R.from_int(m));
  // Bbar: orbit indicator matrices; (O1 O2)(rep of O) = #{y : (x,y) in O2... } by counting.
  out->orbit_rep_point.resize(no);
  for (int o = 0; o < no; ++o) out->orbit_rep_point[o] = S.point(S.orbits[o].x, S.orbits[o].y);
  int N = X.size;
  auto orbit_at = [&](int row, int col) { return S.orbit_of[S.point(col, row)]; };  // entry (y, x)
  Vec bunit(no);
  for (int x = 0; x < N; ++x) bunit[orbit_at(x, x)] = R.one();
  out->Bbar = FiniteAlgebra{R, no, {}, bunit};
  out->Bbar.consts.assign(no, std::vector<std::vector<std::pair<int, Elem>>>(no));
  for (int o = 0; o < no; ++o) {
    int col = S.orbits[o].x, row = S.orbits[o].y;
    std::map<std::pair<int, int>, long long> cnt;  // (O1, O2) -> entry (row, col) of M_O1 M_O2
    for (int mid = 0; mid < N; ++mid) ++cnt[{orbit_at(row, mid), orbit_at(mid, col)}];
    for (auto [pr, m] : cnt) out->Bbar.consts[pr.first][pr.second].emplace_back(o, R.from_int(m));
  }
  out->F = Mat(no, n);
  for (int b = 0; b < n; ++b) {
    const auto& o = S.orbits[S.basis[b].orbit];
    out->F(S.basis[b].orbit, b) = R.from_int(o.stab.order() / S.subgroup(b).order());
  }
  if (rank_mod_p(R, out->F) < no)
    throw NotSurjective("linearization is not onto the equivariant endomorphisms mod p");
  return out;
}

/// Coordinates of an equivariant matrix (|X| x |X|, entry (y, x)) on the orbit basis.
inline Vec equivariant_coords(const BurnsideWitnessData& D, const Mat& e0) {
  const SpanSpace& S = D.S;
  int N = S.X->size;
  Vec v(S.orbits.size());
  for (size_t o = 0; o < S.orbits.size(); ++o) v[o] = e0(S.orbits[o].y, S.orbits[o].x);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (e0(y, x) != v[S.orbit_of[S.point(x, y)]]) throw Error("NotEquivariant", "matrix is not K-equivariant");
  return v;
}

struct BurnsideWitness {
  std::vector<Elem> coeffs;  // on the p-only span basis
  int summands = 0;          // primitive idempotents of the completed algebra used
};

namespace detail {

inline BurnsideWitness witness_from_family(const BurnsideWitnessData& D, const std::vector<Vec>& family,
                                          std::vector<char>& used, const Mat& e0, std::mt19937_64& rng) {
  const FiniteAlgebra& A = D.Abar;
  const FiniteAlgebra& B = D.Bbar;
  AlgebraMap f = D.map();
  Vec target = equivariant_coords(D, e0);
  if (B.mul(target, target) != target) throw NotAnIdempotent("e0 is not idempotent");
  BurnsideWitness w;
  if (B.reduce(target) == B.zero()) {
    w.coeffs = A.zero();  // an idempotent that is 0 mod p is 0
    return w;
  }
  // Greedy Krull-Schmidt matching of the primitive summands of target.
  FiniteAlgebra k = B.at_precision(1);
  auto tparts = primitive_decomposition(B.ops_mod_p(), B.reduce(target), rng);
  Vec sel = A.zero();
  for (auto& tp : tparts) {
    bool found = false;
    for (size_t t = 0; t < family.size() && !found; ++t) {
      if (used[t]) continue;
      Vec img = k.reduce(f(family[t]));
      if (img == k.zero() || left_ideal_rank(k, img) != left_ideal_rank(k, tp)) continue;
      if (!corner_iso(k, tp, img, rng, 64)) continue;
      used[t] = 1;
      sel = A.add(sel, family[t]);
      found = true;
    }
    if (!found) throw NoCandidateFound("a summand of e0 has no preimage summand");
  }
  w.summands = static_cast<int>(tparts.size());
  Vec img = f(sel);
  if (img != target) {
    Vec u = conjugating_unit(B, target, img, rng);
    Vec a = lift_unit(f, u, rng);
    sel = A.mul(A.mul(a, sel), *A.inverse(a));
  }
  if (f(sel) != target || A.mul(sel, sel) != sel) throw Error("LiftFailure", "Burnside witness check failed");
  w.coeffs = sel;
  return w;
}

}  // namespace detail

/// An idempotent of the completed double Burnside algebra linearizing to e0.
inline BurnsideWitness burnside_witness(const BurnsideWitnessData& D, const Mat& e0, std::mt19937_64& rng) {
  auto family = primitive_unit_decomposition(D.Abar, rng);
  std::vector<char> used(family.size(), 0);
  return detail::witness_from_family(D, family, used, e0, rng);
}

/// Witnesses for orthogonal targets drawn from one decomposition of 1; they are
/// orthogonal whenever no conjugation step is needed (e.g. central targets).
inline std::vector<BurnsideWitness> burnside_witnesses(const BurnsideWitnessData& D, const std::vector<Mat>& targets,
                                                       std::mt19937_64& rng) {
  auto family = primitive_unit_decomposition(D.Abar, rng);
  std::vector<char> used(family.size(), 0);
  std::vector<BurnsideWitness> out;
  for (auto& e0 : targets) out.push_back(detail::witness_from_family(D, family, used, e0, rng));
  return out;
}

}  // namespace brauerlift
