#pragma once

// The two-term complex M0, its dual, and verification that M0 is a two-sided
// tilting complex: C = M0 (x)_{A'} M0^v and C' = M0^v (x)_A M0 have homology
// concentrated in degree 0, isomorphic to A and A' respectively.

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brauerlift/rouquier.hpp"

namespace brauerlift {

/// N0' = R[G]e (x)_R f R[H] in degree 1, N0 = R[G]c0 in degree 0, d(u (x) v) = u s v.
struct TwoTermComplex {
  Vec c0, e, f, s;  // e, c0, s in R[G]; f in R[H]
  bool has_projective_term = true;
  bool left_projective = false, right_projective = false;  // flags of both terms
  std::string description;
};

namespace detail {

/// v . g and g . v for a group element g, as permutations of coordinates.
inline Vec rmul_g(const PermGroup& G, const Vec& v, int g) {
  Vec out(v.size());
  for (int x = 0; x < static_cast<int>(v.size()); ++x) out[G.mul(x, g)] = v[x];
  return out;
}
inline Vec lmul_g(const PermGroup& G, int g, const Vec& v) {
  Vec out(v.size());
  for (int x = 0; x < static_cast<int>(v.size()); ++x) out[G.mul(g, x)] = v[x];
  return out;
}

/// A free submodule of an ambient R^a with fast coordinates via pivot rows.
struct Piece {
  std::vector<Vec> basis;
  std::vector<int> J;
  Mat Jinv;
  int dim() const { return static_cast<int>(basis.size()); }
  Vec coords(const GaloisRing& R, const Vec& v) const {
    Vec out(basis.size());
    for (int i = 0; i < dim(); ++i) {
      Elem s{};
      for (int t = 0; t < dim(); ++t) s = R.add(s, R.mul(Jinv(i, t), v[J[t]]));
      out[i] = s;
    }
    return out;
  }
};

inline Piece make_piece(const GaloisRing& R, const std::vector<Vec>& span, int ambient) {
  Piece P;
  P.basis = span_basis(R, span, ambient);
  if (P.basis.empty()) return P;
  Mat B = vectors_as_columns(P.basis, ambient);
  P.J = echelon(R, transpose(B)).pivcols;
  auto inv = inverse(R, rows_of(B, P.J));
  if (!inv) throw NotSplit("piece coordinates not invertible");
  P.Jinv = *inv;
  return P;
}

/// Span of {x g} (left = false) or {g x} (left = true) over the group.
inline Piece group_translates(const GroupAlgebra& A, const std::function<Vec(int)>& gen) {
  std::vector<Vec> span;
  for (int g = 0; g < A.dim(); ++g) span.push_back(gen(g));
  return make_piece(A.ring(), span, A.dim());
}

/// acc += a (x) b (x) c, in Kronecker coordinates.
inline void kron_add(const GaloisRing& R, Vec& acc, const Vec& a, const Vec& b, const Vec& c, int off = 0,
                     const Elem* scale = nullptr) {
  int nb = static_cast<int>(b.size()), nc = static_cast<int>(c.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (R.is_zero(a[i])) continue;
    Elem ai = scale ? R.mul(*scale, a[i]) : a[i];
    for (int j = 0; j < nb; ++j) {
      if (R.is_zero(b[j])) continue;
      Elem ab = R.mul(ai, b[j]);
      Elem* dst = acc.data() + off + (static_cast<int>(i) * nb + j) * nc;
      for (int k = 0; k < nc; ++k)
        if (!R.is_zero(c[k])) dst[k] = R.add(dst[k], R.mul(ab, c[k]));
    }
  }
}

inline bool is_zero_vec(const GaloisRing& R, const Vec& v) {
  for (auto& x : v)
    if (!R.is_zero(x)) return false;
  return true;
}

inline Vec unit_vec(const GaloisRing& R, int n, int i) {
  Vec v(n);
  v[i] = R.one();
  return v;
}

}  // namespace detail

/// Projectivity flags of M0: N0 from the extraction, N0' free on both sides.
inline TwoTermComplex make_complex(const RouquierContext& c, const N0Result& n0, const Vec& e, const Vec& f,
                                   const Vec& s, std::string description) {
  TwoTermComplex M;
  M.c0 = n0.c0;
  M.e = e;
  M.f = f;
  M.s = s;
  M.has_projective_term = !e.empty();
  M.left_projective = n0.N0.left_projective;
  M.right_projective = n0.N0.right_projective;
  M.description = std::move(description);
  (void)c;
  return M;
}

/// Image of u (x) v under d, for u in R[G]e and v in f R[H].
inline Vec differential(const RouquierContext& c, const TwoTermComplex& M, const Vec& u, const Vec& v) {
  return c.gmul(c.gmul(u, M.s), c.embed(v));
}

/// The dual complex: c0 R[G] in degree 0 and R[H]f (x)_R e R[G] in degree -1.
struct DualComplex {
  const RouquierContext* ctx = nullptr;
  const TwoTermComplex* M = nullptr;
  /// d^v(y) = sum_h h^-1 f (x) s h y, as a list of pure tensors.
  std::vector<std::pair<Vec, Vec>> apply(const Vec& y) const {
    const auto& c = *ctx;
    GroupAlgebra AH(c.H.H, c.R);
    std::vector<std::pair<Vec, Vec>> out;
    for (int hi = 0; hi < c.m(); ++hi) {
      Vec left = AH.mul(AH.basis(c.H.H.inv(hi)), M->f);
      Vec right = detail::lmul_g(*c.G, c.H.to_parent[hi], y);
      out.emplace_back(std::move(left), c.gmul(M->s, right));
    }
    return out;
  }
};

inline DualComplex dualize(const RouquierContext& c, const TwoTermComplex& M) {
  if (!M.left_projective || !M.right_projective)
    throw FlagMissing("dualizing needs both terms projective on each side");
  return DualComplex{&c, &M};
}

/// Trace forms t_G(x) and t_H(x): coefficient of the identity.
inline Elem trace_G(const RouquierContext& c, const Vec& x) { return x[c.G->identity()]; }
inline Elem trace_H(const RouquierContext& c, const Vec& x) { return x[c.H.H.identity()]; }


struct SideReport {
  std::array<int, 3> ranks{};     // degrees 1, 0, -1
  std::array<int, 3> homology{};  // ranks modulo p of H_1, H_0, H_-1
  int expected_h0 = 0;            // rank of A (resp. A')
  bool cycle = false;             // the unit element is a cycle
  bool central = false;           // and commutes with the group generators
  bool h0_iso = false;            // and generates H_0 freely
  bool ok() const { return homology[0] == 0 && homology[2] == 0 && homology[1] == expected_h0 && h0_iso; }
};

struct TiltingReport {
  SideReport C, Cp;  // M0 (x)_{A'} M0^v over G, and M0^v (x)_A M0 over H
  bool verdict = false;
  int N = 0;
};

namespace detail {

inline int rank_of_columns(const GaloisRing& R, const std::vector<Vec>& cols, int rows) {
  if (cols.empty() || rows == 0) return 0;
  return rank_mod_p(R, vectors_as_columns(cols, rows));
}

/// Shared data for both sides.
struct TiltData {
  const RouquierContext& c;
  const TwoTermComplex& M;
  GroupAlgebra A, AH;
  Vec fG;
  std::vector<Vec> hinv_f;  // h^-1 f in R[H], indexed by h in H
  TiltData(const RouquierContext& ctx, const TwoTermComplex& m)
      : c(ctx), M(m), A(*ctx.G, ctx.R), AH(ctx.H.H, ctx.R) {
    if (!M.has_projective_term) return;
    fG = c.embed(M.f);
    for (int h = 0; h < c.m(); ++h) hinv_f.push_back(AH.mul(AH.basis(c.H.H.inv(h)), M.f));
  }
  int hG(int h) const { return c.H.to_parent[h]; }
};

inline void finish_side(const GaloisRing& R, SideReport& S, int rank_d1, int rank_d0) {
  S.homology = {S.ranks[0] - rank_d1, S.ranks[1] - rank_d1 - rank_d0, S.ranks[2] - rank_d0};
  (void)R;
}

}  // namespace detail

/// C' = M0^v (x)_A M0 over H: c0Ae (x) fA' | c0Ac0 + A'f (x) eAe (x) fA' | A'f (x) eAc0.
inline SideReport verify_H_side(const RouquierContext& c, const TwoTermComplex& M) {
  using namespace detail;
  const GaloisRing& R = c.R;
  TiltData T(c, M);
  const auto& A = T.A;
  const auto& AH = T.AH;
  const int m = c.m();
  SideReport S;
  S.expected_h0 = block_rank(AH, c.bp);
  Piece Pcac = group_translates(A, [&](int g) { return A.mul(A.mul(M.c0, A.basis(g)), M.c0); });
  if (!M.has_projective_term) {
    S.ranks = {0, Pcac.dim(), 0};
    S.homology = {0, Pcac.dim(), 0};
    S.cycle = S.central = true;
    std::vector<Vec> Z;
    for (int h = 0; h < m; ++h) Z.push_back(Pcac.coords(R, lmul_g(*c.G, T.hG(h), M.c0)));
    S.h0_iso = rank_of_columns(R, Z, Pcac.dim()) == Pcac.dim();
    return S;
  }
  Piece Pcae = group_translates(A, [&](int g) { return A.mul(A.mul(M.c0, A.basis(g)), M.e); });
  Piece Pfa = group_translates(AH, [&](int h) { return AH.mul(M.f, AH.basis(h)); });
  Piece Paf = group_translates(AH, [&](int h) { return AH.mul(AH.basis(h), M.f); });
  Piece Peae = group_translates(A, [&](int g) { return A.mul(A.mul(M.e, A.basis(g)), M.e); });
  Piece Peac = group_translates(A, [&](int g) { return A.mul(A.mul(M.e, A.basis(g)), M.c0); });
  const int da = Pcac.dim(), db = Paf.dim() * Peae.dim() * Pfa.dim();
  const int d1 = Pcae.dim() * Pfa.dim(), d0 = da + db, dm = Paf.dim() * Peac.dim();
  S.ranks = {d1, d0, dm};
  std::vector<Vec> cAf;
  for (int h = 0; h < m; ++h) cAf.push_back(Paf.coords(R, T.hinv_f[h]));
  // s h as elements of R[G].
  std::vector<Vec> sh;
  for (int h = 0; h < m; ++h) sh.push_back(rmul_g(*c.G, M.s, T.hG(h)));

  // d1(w (x) v) = (w s v, sum_h h^-1 f (x) s h w (x) v).
  std::vector<Vec> D1;
  for (int i = 0; i < Pcae.dim(); ++i) {
    const Vec& w = Pcae.basis[i];
    Vec ws = A.mul(w, M.s);
    std::vector<Vec> shw;
    for (int h = 0; h < m; ++h) shw.push_back(Peae.coords(R, A.mul(sh[h], w)));
    for (int l = 0; l < Pfa.dim(); ++l) {
      Vec col(d0);
      Vec a = Pcac.coords(R, A.mul(ws, c.embed(Pfa.basis[l])));
      std::copy(a.begin(), a.end(), col.begin());
      Vec ul = unit_vec(R, Pfa.dim(), l);
      for (int h = 0; h < m; ++h) kron_add(R, col, cAf[h], shw[h], ul, da);
      D1.push_back(std::move(col));
    }
  }
  // d0(z) = sum_h h^-1 f (x) s h z;  d0(v' (x) x (x) v) = -v' (x) x s v.
  auto d0_a = [&](const Vec& z) {
    Vec out(dm);
    Vec one = unit_vec(R, 1, 0);
    for (int h = 0; h < m; ++h) kron_add(R, out, cAf[h], Peac.coords(R, A.mul(sh[h], z)), one);
    return out;
  };
  std::vector<Vec> D0;
  for (int i = 0; i < da; ++i) D0.push_back(d0_a(Pcac.basis[i]));
  Elem minus = R.neg(R.one());
  Vec one1 = unit_vec(R, 1, 0);
  for (int a = 0; a < Paf.dim(); ++a)
    for (int x = 0; x < Peae.dim(); ++x) {
      Vec xs = A.mul(Peae.basis[x], M.s);
      for (int l = 0; l < Pfa.dim(); ++l) {
        Vec out(dm);
        kron_add(R, out, unit_vec(R, Paf.dim(), a), Peac.coords(R, A.mul(xs, c.embed(Pfa.basis[l]))), one1, 0, &minus);
        D0.push_back(std::move(out));
      }
    }
  int r1 = rank_of_columns(R, D1, d0), r0 = rank_of_columns(R, D0, dm);
  finish_side(R, S, r1, r0);

  // Unit element z' = c0 + eps sum_h h^-1 f (x) e (x) f h, translated by k in H on either side.
  Vec ce = Peae.coords(R, M.e);
  auto unit_elem = [&](int left, int right, const Elem& eps) {
    Vec out(d0);
    Vec a = Pcac.coords(R, rmul_g(*c.G, lmul_g(*c.G, T.hG(left), M.c0), T.hG(right)));
    std::copy(a.begin(), a.end(), out.begin());
    for (int h = 0; h < m; ++h) {
      Vec l = Paf.coords(R, AH.mul(AH.basis(left), T.hinv_f[h]));
      Vec r = Pfa.coords(R, AH.mul(AH.mul(M.f, AH.basis(h)), AH.basis(right)));
      kron_add(R, out, l, ce, r, da, &eps);
    }
    return out;
  };
  auto apply_d0 = [&](const Vec& z) {
    Vec out(dm);
    for (int i = 0; i < d0; ++i) {
      if (R.is_zero(z[i])) continue;
      for (int r = 0; r < dm; ++r) out[r] = R.add(out[r], R.mul(z[i], D0[i][r]));
    }
    return out;
  };
  int idH = c.H.H.identity();
  for (Elem eps : {R.one(), R.neg(R.one())}) {
    Vec z = unit_elem(idH, idH, eps);
    if (!is_zero_vec(R, apply_d0(z))) continue;
    S.cycle = true;
    S.central = true;
    for (size_t k = 0; k < c.H.H.generators().size(); ++k) {
      int h = c.H.H.generator_index(static_cast<int>(k));
      if (unit_elem(h, idH, eps) != unit_elem(idH, h, eps)) S.central = false;
    }
    std::vector<Vec> cols = D1;
    for (int h = 0; h < m; ++h) cols.push_back(unit_elem(h, idH, eps));
    S.h0_iso = S.central && rank_of_columns(R, cols, d0) == d0 - dm;
    break;
  }
  return S;
}

namespace detail {

/// R[G] (x)_{R[H]} R[G] as the free module R[G]^{[G:H]}: x (x) h rho_j -> x h in slot j.
struct CosetTensor {
  const PermGroup* G;
  int n = 0, k = 0;
  std::vector<int> reps, coset, hpart;  // G = disjoint union of H rho_j; g = hpart[g] rho_{coset[g]}
  CosetTensor(const RouquierContext& c) : G(c.G), n(c.n()) {
    coset.assign(n, -1);
    hpart.assign(n, -1);
    for (int g = 0; g < n; ++g) {
      if (coset[g] >= 0) continue;
      reps.push_back(g);
      for (int hi = 0; hi < c.m(); ++hi) {
        int h = c.H.to_parent[hi], x = G->mul(h, g);
        coset[x] = k;
        hpart[x] = h;
      }
      ++k;
    }
  }
  int size() const { return k * n; }
  void add_pure(const GaloisRing& R, Vec& acc, const Vec& x, const Vec& y, int off = 0) const {
    for (int g = 0; g < n; ++g) {
      if (R.is_zero(y[g])) continue;
      int base = off + coset[g] * n, h = hpart[g];
      for (int t = 0; t < n; ++t)
        if (!R.is_zero(x[t])) acc[base + G->mul(t, h)] = R.add(acc[base + G->mul(t, h)], R.mul(y[g], x[t]));
    }
  }
  Vec left(const Vec& z, int g, int off = 0) const {  // g . z on the first block of z
    Vec out = z;
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < n; ++t) out[off + j * n + G->mul(g, t)] = z[off + j * n + t];
    return out;
  }
  Vec right(const Vec& z, int g, int off = 0) const {  // z . g
    Vec out = z;
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < n; ++t) out[off + j * n + t] = Elem{};
    for (int j = 0; j < k; ++j) {
      int x = G->mul(reps[j], g), kk = coset[x], h = hpart[x];
      for (int t = 0; t < n; ++t) out[off + kk * n + G->mul(t, h)] = z[off + j * n + t];
    }
    return out;
  }
};

}  // namespace detail

/// C = M0 (x)_{A'} M0^v over G: Ae (x) fc0A | Ac0 (x)_H c0A + Ae (x) fA'f (x) eA | Ac0f (x) eA.
inline SideReport verify_G_side(const RouquierContext& c, const TwoTermComplex& M) {
  using namespace detail;
  const GaloisRing& R = c.R;
  TiltData T(c, M);
  const auto& A = T.A;
  const auto& AH = T.AH;
  const PermGroup& G = *c.G;
  const int n = c.n(), m = c.m();
  CosetTensor CT(c);
  SideReport S;
  S.expected_h0 = block_rank(A, c.b);
  // Ac0 (x)_H c0A is spanned by t c0 (x) c0 rho_j; it is a summand of the ambient, so its
  // rank is the rank mod p of that spanning set.
  Piece Pc0 = group_translates(A, [&](int g) { return lmul_g(G, g, M.c0); });
  std::vector<Vec> cut_span;
  for (int i = 0; i < Pc0.dim(); ++i)
    for (int j = 0; j < CT.k; ++j) {
      Vec z(CT.size());
      CT.add_pure(R, z, Pc0.basis[i], rmul_g(G, M.c0, CT.reps[j]));
      cut_span.push_back(std::move(z));
    }
  const int da = rank_of_columns(R, cut_span, CT.size());
  cut_span.clear();
  // Unit element z = sum_j rho_j^-1 c0 (x) c0 rho_j, translated on either side.
  auto unit_a = [&](int off, int size) {
    Vec z(size);
    for (int j = 0; j < CT.k; ++j)
      CT.add_pure(R, z, lmul_g(G, G.inv(CT.reps[j]), M.c0), rmul_g(G, M.c0, CT.reps[j]), off);
    return z;
  };
  if (!M.has_projective_term) {
    S.ranks = {0, da, 0};
    S.homology = {0, da, 0};
    Vec z = unit_a(0, CT.size());
    S.cycle = true;
    S.central = true;
    for (size_t t = 0; t < G.generators().size(); ++t) {
      int g = G.generator_index(static_cast<int>(t));
      if (CT.left(z, g) != CT.right(z, g)) S.central = false;
    }
    std::vector<Vec> cols;
    for (int g = 0; g < n; ++g) cols.push_back(CT.left(z, g));
    S.h0_iso = S.central && rank_of_columns(R, cols, CT.size()) == da;
    return S;
  }
  Piece Pe = group_translates(A, [&](int g) { return lmul_g(G, g, M.e); });
  Piece Pfc = group_translates(A, [&](int g) { return rmul_g(G, A.mul(T.fG, M.c0), g); });
  Piece Pfaf = group_translates(AH, [&](int h) { return AH.mul(AH.mul(M.f, AH.basis(h)), M.f); });
  Piece Pea = group_translates(A, [&](int g) { return rmul_g(G, M.e, g); });
  Piece Pacf = group_translates(A, [&](int g) { return lmul_g(G, g, A.mul(M.c0, T.fG)); });
  const int amb = CT.size(), db = Pe.dim() * Pfaf.dim() * Pea.dim();
  const int d1 = Pe.dim() * Pfc.dim(), d0 = da + db, dm = Pacf.dim() * Pea.dim();
  S.ranks = {d1, d0, dm};
  const int rows0 = amb + db;  // C0 sits in the ambient plus the second summand
  std::vector<Vec> sh;
  for (int h = 0; h < m; ++h) sh.push_back(rmul_g(G, M.s, T.hG(h)));
  std::vector<Vec> cfhf;  // f h^-1 f
  for (int h = 0; h < m; ++h) cfhf.push_back(Pfaf.coords(R, AH.mul(M.f, T.hinv_f[h])));
  Elem minus = R.neg(R.one());

  // d1(u (x) w) = (u s (x)_H w, -sum_h u (x) f h^-1 f (x) s h w).
  std::vector<std::vector<Vec>> shw(Pfc.dim());
  for (int l = 0; l < Pfc.dim(); ++l)
    for (int h = 0; h < m; ++h) shw[l].push_back(Pea.coords(R, A.mul(sh[h], Pfc.basis[l])));
  std::vector<Vec> D1;
  for (int i = 0; i < Pe.dim(); ++i) {
    Vec us = A.mul(Pe.basis[i], M.s);
    Vec ui = unit_vec(R, Pe.dim(), i);
    for (int l = 0; l < Pfc.dim(); ++l) {
      Vec col(rows0);
      CT.add_pure(R, col, us, Pfc.basis[l]);
      for (int h = 0; h < m; ++h) kron_add(R, col, ui, cfhf[h], shw[l][h], amb, &minus);
      D1.push_back(std::move(col));
    }
  }
  // d0(x (x)_H y) = sum_h x h^-1 f (x) s h y;  d0(u (x) v (x) u') = u s v (x) u'.
  Vec one1 = unit_vec(R, 1, 0);
  auto d0_pure = [&](Vec& out, const Vec& x, const Vec& y, const Elem* scale = nullptr) {
    for (int h = 0; h < m; ++h) {
      Vec a = Pacf.coords(R, A.mul(x, c.embed(T.hinv_f[h])));
      kron_add(R, out, a, Pea.coords(R, A.mul(sh[h], y)), one1, 0, scale);
    }
  };
  std::vector<std::vector<Vec>> shy(m);  // s h c0 rho_j
  for (int h = 0; h < m; ++h)
    for (int j = 0; j < CT.k; ++j) shy[h].push_back(Pea.coords(R, A.mul(sh[h], rmul_g(G, M.c0, CT.reps[j]))));
  std::vector<Vec> D0;
  for (int i = 0; i < Pc0.dim(); ++i) {
    std::vector<Vec> xa;
    for (int h = 0; h < m; ++h) xa.push_back(Pacf.coords(R, A.mul(Pc0.basis[i], c.embed(T.hinv_f[h]))));
    for (int j = 0; j < CT.k; ++j) {
      Vec out(dm);
      for (int h = 0; h < m; ++h) kron_add(R, out, xa[h], shy[h][j], one1);
      D0.push_back(std::move(out));
    }
  }
  for (int i = 0; i < Pe.dim(); ++i)
    for (int a = 0; a < Pfaf.dim(); ++a) {
      Vec usv = Pacf.coords(R, A.mul(A.mul(Pe.basis[i], M.s), c.embed(Pfaf.basis[a])));
      for (int l = 0; l < Pea.dim(); ++l) {
        Vec out(dm);
        kron_add(R, out, usv, unit_vec(R, Pea.dim(), l), one1);
        D0.push_back(std::move(out));
      }
    }
  int r1 = rank_of_columns(R, D1, rows0), r0 = rank_of_columns(R, D0, dm);
  finish_side(R, S, r1, r0);

  // z = sum_j rho_j^-1 c0 (x) c0 rho_j + eps sum_x x e (x) f (x) e x^-1.
  std::vector<Vec> ce, ec;
  for (int x = 0; x < n; ++x) {
    ce.push_back(Pe.coords(R, lmul_g(G, x, M.e)));
    ec.push_back(Pea.coords(R, rmul_g(G, M.e, x)));
  }
  Vec cf = Pfaf.coords(R, M.f);
  auto unit_elem = [&](int left, int right, const Elem& eps) {
    Vec z = unit_a(0, rows0);
    if (left != G.identity()) z = CT.left(z, left);
    if (right != G.identity()) z = CT.right(z, right);
    for (int x = 0; x < n; ++x) kron_add(R, z, ce[G.mul(left, x)], cf, ec[G.mul(G.inv(x), right)], amb, &eps);
    return z;
  };
  auto d0_unit = [&](const Elem& eps) {
    Vec out(dm);
    for (int j = 0; j < CT.k; ++j) d0_pure(out, lmul_g(G, G.inv(CT.reps[j]), M.c0), rmul_g(G, M.c0, CT.reps[j]));
    Vec esf = A.mul(A.mul(M.e, M.s), T.fG);
    for (int x = 0; x < n; ++x)
      kron_add(R, out, Pacf.coords(R, lmul_g(G, x, esf)), ec[G.inv(x)], one1, 0, &eps);
    return out;
  };
  int id = G.identity();
  for (Elem eps : {R.one(), R.neg(R.one())}) {
    if (!is_zero_vec(R, d0_unit(eps))) continue;
    S.cycle = true;
    S.central = true;
    for (size_t t = 0; t < G.generators().size(); ++t) {
      int g = G.generator_index(static_cast<int>(t));
      if (unit_elem(g, id, eps) != unit_elem(id, g, eps)) S.central = false;
    }
    std::vector<Vec> cols = D1;
    for (int g = 0; g < n; ++g) cols.push_back(unit_elem(g, id, eps));
    S.h0_iso = S.central && rank_of_columns(R, cols, rows0) == d0 - dm;
    break;
  }
  return S;
}

inline TiltingReport verify_tilting(const RouquierContext& c, const TwoTermComplex& M) {
  TiltingReport r;
  r.N = c.R.N();
  r.Cp = verify_H_side(c, M);
  r.C = verify_G_side(c, M);
  r.verdict = r.C.ok() && r.Cp.ok();
  return r;
}

/// Reduction of the context and of a complex to precision M <= N.
inline RouquierContext reduce_context(const RouquierContext& c, int M) {
  RouquierContext out = c;
  out.R = c.R.at_precision(M);
  auto red = [&](const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c.R.reduce_to(v[i], M);
    return r;
  };
  out.b = red(c.b);
  out.bp = red(c.bp);
  out.bpG = red(c.bpG);
  return out;
}

inline TwoTermComplex reduce_complex(const RouquierContext& c, const TwoTermComplex& M0, int M) {
  TwoTermComplex out = M0;
  for (Vec* v : {&out.c0, &out.e, &out.f, &out.s})
    for (auto& x : *v) x = c.R.reduce_to(x, M);
  return out;
}

/// The same complex with d replaced by p d, which is not surjective modulo p.
inline TwoTermComplex broken_differential(const RouquierContext& c, const TwoTermComplex& M) {
  TwoTermComplex out = M;
  Elem p = c.R.from_int(static_cast<long long>(c.R.p()));
  for (auto& x : out.s) x = c.R.mul(x, p);
  out.description += " with d scaled by p";
  return out;
}

struct SearchEntry {
  int P = -1, Q = -1;       // PIM indices; -1 for the complex with N0' = 0
  std::string element;      // which Hom-lattice element
  int hom_rank = 0;
  bool surjective = false;
  bool h_side = false, g_side = false;
  std::string str() const {
    std::string s = P < 0 ? std::string("N0'=0") : "P" + std::to_string(P) + " Q" + std::to_string(Q) + " " + element;
    if (P >= 0 && !surjective) return s + ": not surjective mod p";
    return s + ": H-side " + (h_side ? "pass" : "fail") + ", G-side " + (h_side ? (g_side ? "pass" : "fail") : "skipped");
  }
};

struct BuildResult {
  TwoTermComplex complex;
  TiltingReport report;
  std::vector<SearchEntry> log;
  int hom_rank = 0;  // rank of Hom_H(Res P, Q) for the chosen pair
};

enum class Strategy { Explicit, Search };

namespace detail {

/// Deterministic walk through a Hom lattice: basis vectors, consecutive sums, total sum.
inline std::vector<std::pair<std::string, Vec>> lattice_candidates(const RouquierContext& c, const std::vector<Vec>& L) {
  GroupAlgebra A(*c.G, c.R);
  std::vector<std::pair<std::string, Vec>> out;
  for (size_t t = 0; t < L.size(); ++t) out.emplace_back("l" + std::to_string(t), L[t]);
  for (size_t t = 0; t + 1 < L.size(); ++t)
    out.emplace_back("l" + std::to_string(t) + "+l" + std::to_string(t + 1), A.add(L[t], L[t + 1]));
  if (L.size() > 2) {
    Vec all(c.n());
    for (auto& v : L) all = A.add(all, v);
    out.emplace_back("sum", all);
  }
  return out;
}

inline std::string format_log(const std::vector<SearchEntry>& log) {
  std::string s;
  for (auto& e : log) s += "\n  " + e.str();
  return s;
}

}  // namespace detail

/// Explicit: the given pair, first lattice element passing verification (else the first
/// surjective one, with its failing report). Search: N0' = 0, then all pairs in order.
inline BuildResult build_complex(const RouquierContext& c, const N0Result& n0, Strategy strategy, int P_index,
                                 int Q_index, std::mt19937_64& rng) {
  BuildResult out;
  if (strategy == Strategy::Search || P_index < 0) {
    TwoTermComplex M = make_complex(c, n0, {}, {}, {}, "N0' = 0");
    SearchEntry e;
    SideReport H = verify_H_side(c, M);
    e.h_side = H.ok();
    if (e.h_side) e.g_side = verify_G_side(c, M).ok();
    out.log.push_back(e);
    if ((e.h_side && e.g_side) || strategy == Strategy::Explicit) {
      out.complex = M;
      out.report = verify_tilting(c, M);
      return out;
    }
  }
  auto P = lifted_pims(*c.G, c.R, c.b, rng);
  auto Q = lifted_pims(c.H.H, c.R, c.bp, rng);
  std::vector<std::pair<int, int>> pairs;
  if (strategy == Strategy::Explicit) {
    if (P_index >= static_cast<int>(P.size()) || Q_index < 0 || Q_index >= static_cast<int>(Q.size()))
      throw NoCandidateFound("PIM index out of range");
    pairs.emplace_back(P_index, Q_index);
  } else {
    for (int i = 0; i < static_cast<int>(P.size()); ++i)
      for (int j = 0; j < static_cast<int>(Q.size()); ++j) pairs.emplace_back(i, j);
  }
  std::optional<BuildResult> fallback;
  for (auto [i, j] : pairs) {
    Vec fG = c.embed(Q[j]);
    int hom_rank = static_cast<int>(hom_lattice(c, P[i], fG).size());
    auto L = hom_lattice(c, P[i], fG, &n0.c0);
    for (auto& [label, s] : detail::lattice_candidates(c, L)) {
      SearchEntry e{i, j, label, hom_rank};
      e.surjective = differential_surjective(c, Q[j], s);
      if (!e.surjective) {
        out.log.push_back(e);
        continue;
      }
      TwoTermComplex M = make_complex(c, n0, P[i], Q[j], s, "P" + std::to_string(i) + " Q" + std::to_string(j) + " " + label);
      SideReport H = verify_H_side(c, M);
      e.h_side = H.ok();
      SideReport G;
      if (e.h_side) {
        G = verify_G_side(c, M);
        e.g_side = G.ok();
      }
      out.log.push_back(e);
      if (e.h_side && e.g_side) {
        out.complex = M;
        out.report = TiltingReport{G, H, true, c.R.N()};
        out.hom_rank = hom_rank;
        return out;
      }
      if (strategy == Strategy::Explicit && !fallback) {
        fallback = BuildResult{M, verify_tilting(c, M), {}, hom_rank};
      }
    }
  }
  if (fallback) {
    fallback->log = out.log;
    return *fallback;
  }
  throw NoCandidateFound("no candidate passed verification:" + detail::format_log(out.log));
}

}  // namespace brauerlift
