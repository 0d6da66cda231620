#pragma once

// Two-term Rouquier complexes for blocks with cyclic defect, and their
// verification as two-sided tilting complexes at precision p^N.
//
// Conventions: A = R[G]b, A' = R[H]b' with H = N_G(D). The complex M0 of
// (A, A')-bimodules has N0' = Ae (x) fA' in degree 1 and N0, the non-projective
// summand of b R[G] b', in degree 0, with d(u (x) v) = u s v for s in e R[G] c0 f.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brauerlift/galgebra.hpp"
#include "brauerlift/modrep.hpp"
#include "brauerlift/pims.hpp"

namespace brauerlift {

struct RouquierContext {
  const PermGroup* G = nullptr;
  GaloisRing R;
  int block = 0;
  Vec b;               // lifted block idempotent of R[G]
  Subgroup D;          // defect group
  SubgroupAsGroup H;   // N_G(D)
  Vec bp;              // lifted Brauer correspondent in R[H]
  Vec bpG;             // bp inside R[G]
  PermGroup K;         // G x H, acting by (g, h) . x = g x h^-1
  int ngens_G = 0;

  int n() const { return G->order(); }
  int m() const { return H.H.order(); }
  Vec embed(const Vec& v) const {  // R[H] -> R[G]
    Vec out(n());
    for (int i = 0; i < m(); ++i) out[H.to_parent[i]] = v[i];
    return out;
  }
  Vec gmul(const Vec& x, const Vec& y) const { return GroupAlgebra(*G, R).mul(x, y); }
};

inline RouquierContext rouquier_context(const PermGroup& G, const FieldSpec& spec, int N, int block_index) {
  RouquierContext c;
  c.G = &G;
  c.R = GaloisRing(spec, N);
  c.block = block_index;
  auto mod_p = block_idempotents_mod_p(G, spec);
  if (block_index < 0 || block_index >= mod_p.size()) throw Error("InvalidBlock", "no block " + std::to_string(block_index));
  auto lifted = N == 1 ? mod_p : lift_blocks(G, mod_p, N);
  c.b = lifted.blocks[block_index].idem;
  GaloisRing k = c.R.residue_field();
  c.D = defect_group(G, k, mod_p.blocks[block_index].idem).group;
  auto corr = brauer_correspondent(G, c.R, c.b, c.D);
  c.H = corr.normalizer;
  auto lifted_h = N == 1 ? corr.blocks : lift_blocks(c.H.H, corr.blocks, N);
  c.bp = lifted_h.blocks[corr.block].idem;
  c.bpG = c.embed(c.bp);
  c.K = direct_product(G, c.H.H);
  c.ngens_G = static_cast<int>(G.generators().size());
  return c;
}

/// A sub-bimodule of R[G] (left G, right H) spanned by the given vectors.
struct Bimodule {
  std::vector<Vec> basis;  // in R[G]
  RepModule module;        // over K = G x H
  bool left_projective = false, right_projective = false, bimodule_projective = false;
  int rank() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline std::vector<Vec> span_basis(const GaloisRing& R, const std::vector<Vec>& vs, int ambient) {
  if (vs.empty()) return {};
  Echelon E = echelon(R, vectors_as_columns(vs, ambient));
  if (!E.split) throw NotSplit("spanning set does not span a free summand");
  std::vector<Vec> out;
  for (int c : E.pivcols) out.push_back(vs[c]);
  return out;
}

/// Restriction of a K-module to the generators [from, to) as a module over Q.
inline RepModule restrict_gens(const RepModule& M, int from, int to) {
  RepModule out{M.ring, M.dim, {}};
  for (int i = from; i < to; ++i) out.gens.push_back(M.gens[i]);
  return out;
}

}  // namespace detail

inline Bimodule make_bimodule(const RouquierContext& c, std::vector<Vec> basis) {
  Bimodule B;
  B.basis = std::move(basis);
  const GaloisRing& R = c.R;
  int r = B.rank();
  B.module = RepModule{R, r, {}};
  if (r == 0) return B;
  Mat Bm = vectors_as_columns(B.basis, c.n());
  GroupAlgebra A(*c.G, R);
  auto act = [&](const std::function<Vec(const Vec&)>& f) {
    std::vector<Vec> img;
    for (auto& v : B.basis) img.push_back(f(v));
    auto X = solve(R, Bm, vectors_as_columns(img, c.n()));
    if (!X) throw NotSplit("basis not stable under the bimodule action");
    B.module.gens.push_back(*X);
  };
  for (int s = 0; s < c.ngens_G; ++s) {
    Vec g = A.basis(c.G->generator_index(s));
    act([&](const Vec& v) { return A.mul(g, v); });
  }
  for (size_t s = 0; s < c.H.H.generators().size(); ++s) {
    int h = c.H.to_parent[c.H.H.generator_index(static_cast<int>(s))];
    Vec hi = A.basis(c.G->inv(h));
    act([&](const Vec& v) { return A.mul(v, hi); });
  }
  int ng = c.ngens_G, nk = static_cast<int>(B.module.gens.size());
  B.left_projective = is_projective(*c.G, detail::restrict_gens(B.module, 0, ng));
  B.right_projective = is_projective(c.H.H, detail::restrict_gens(B.module, ng, nk));
  B.bimodule_projective = is_projective(c.K, B.module);
  return B;
}

/// b R[G] b' as a (G, H)-bimodule.
inline Bimodule induction_bimodule(const RouquierContext& c) {
  GroupAlgebra A(*c.G, c.R);
  std::vector<Vec> span;
  for (int g = 0; g < c.n(); ++g) span.push_back(A.mul(A.mul(c.b, A.basis(g)), c.bpG));
  return make_bimodule(c, detail::span_basis(c.R, span, c.n()));
}

struct N0Result {
  Vec c0;                          // idempotent with N0 = R[G] c0
  Bimodule N0;
  std::vector<Bimodule> complement;  // projective summands
  std::vector<Vec> complement_idems;
};

/// Bimodule endomorphisms of b R[G] b' are right multiplications by the
/// H-centralizer b b' R[G]^H; its primitive idempotents split off the summands.
inline N0Result extract_N0(const RouquierContext& c, std::mt19937_64& rng) {
  const PermGroup& G = *c.G;
  GroupAlgebra A(G, c.R);
  GaloisRing k = c.R.residue_field();
  GroupAlgebra Ak(G, k);
  Vec unit = A.mul(c.b, c.bpG);
  // H-conjugation orbit sums.
  std::vector<char> seen(c.n(), 0);
  std::vector<Vec> span;
  for (int g = 0; g < c.n(); ++g) {
    if (seen[g]) continue;
    Vec sigma(c.n());
    for (int hi = 0; hi < c.m(); ++hi) {
      int x = G.conj(c.H.to_parent[hi], g);
      if (!seen[x]) {
        seen[x] = 1;
        sigma[x] = c.R.one();
      }
    }
    span.push_back(A.mul(unit, sigma));
  }
  AlgebraOps ops{k, c.n(), [&Ak](const Vec& x, const Vec& y) { return Ak.mul(x, y); }, {}};
  for (auto& v : span) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c.R.reduce_to(v[i], 1);
    ops.spanning.push_back(r);
  }
  Vec unit_p(unit.size());
  for (size_t i = 0; i < unit.size(); ++i) unit_p[i] = c.R.reduce_to(unit[i], 1);
  auto fam = primitive_decomposition(ops, unit_p, rng);
  auto idems = lift_orthogonal([&A](const Vec& x, const Vec& y) { return A.mul(x, y); }, c.R, unit, fam);
  N0Result out;
  int nonproj = 0;
  for (auto& ci : idems) {
    std::vector<Vec> tr;
    for (int g = 0; g < c.n(); ++g) tr.push_back(A.mul(A.basis(g), ci));
    Bimodule M = make_bimodule(c, detail::span_basis(c.R, tr, c.n()));
    if (M.bimodule_projective) {
      out.complement.push_back(std::move(M));
      out.complement_idems.push_back(ci);
    } else {
      ++nonproj;
      out.c0 = ci;
      out.N0 = std::move(M);
    }
  }
  if (nonproj != 1)
    throw NonUniqueNonProjective(std::to_string(nonproj) + " non-projective summands in b R[G] b'");
  return out;
}

/// Lifted representatives of the PIM classes of a block, in canonical order.
inline std::vector<Vec> lifted_pims(const PermGroup& G, const GaloisRing& R, const Vec& b, std::mt19937_64& rng) {
  GaloisRing k = R.residue_field();
  Vec bk(b.size());
  for (size_t i = 0; i < b.size(); ++i) bk[i] = R.reduce_to(b[i], 1);
  auto P = pims_and_cartan(G, k, bk, rng);
  GroupAlgebra A(G, R);
  std::vector<Vec> out;
  for (auto& pc : P.pims) out.push_back(lift_idempotent_general([&A](const Vec& x, const Vec& y) { return A.mul(x, y); }, R, pc.idem));
  return out;
}

/// Basis of e R[G] x f (x = 1 or c0): Hom_H(Res P, Q) for x = 1.
inline std::vector<Vec> hom_lattice(const RouquierContext& c, const Vec& e, const Vec& fG, const Vec* c0 = nullptr) {
  GroupAlgebra A(*c.G, c.R);
  std::vector<Vec> span;
  for (int g = 0; g < c.n(); ++g) {
    Vec v = A.mul(e, A.basis(g));
    if (c0) v = A.mul(v, *c0);
    span.push_back(A.mul(v, fG));
  }
  return detail::span_basis(c.R, span, c.n());
}

/// Whether Res P -> Q, x -> pr_H(x s), is onto Q = R[H] f modulo p.
inline bool differential_surjective(const RouquierContext& c, const Vec& f, const Vec& s) {
  GroupAlgebra A(*c.G, c.R);
  GroupAlgebra AH(c.H.H, c.R);
  std::vector<Vec> img, q;
  for (int g = 0; g < c.n(); ++g) {
    Vec y = A.mul(A.basis(g), s);
    Vec pr(c.m());
    for (int i = 0; i < c.m(); ++i) pr[i] = y[c.H.to_parent[i]];
    img.push_back(pr);
  }
  for (int h = 0; h < c.m(); ++h) q.push_back(AH.mul(AH.basis(h), f));
  int rq = rank_mod_p(c.R, vectors_as_columns(q, c.m()));
  return rank_mod_p(c.R, vectors_as_columns(img, c.m())) == rq && rq > 0;
}

struct StableEquivReport {
  int rank = 0;                     // rank of b' b R[G] b'
  int summands = 0;                 // indecomposable summands mod p
  std::vector<int> nonprojective;   // their ranks
  bool iso_to_diagonal = false;     // the non-projective summand is A' as a bimodule
  bool passes() const { return nonprojective.size() == 1 && iso_to_diagonal; }
};

namespace detail {

/// Span of vectors in R[G] with left action of L and right action of Rg, as a module over L x Rg.
inline RepModule two_sided_module(const RouquierContext& c, const GaloisRing& k, const std::vector<Vec>& basis,
                                  const SubgroupAsGroup& L, const SubgroupAsGroup& Rg) {
  const PermGroup& G = *c.G;
  int r = static_cast<int>(basis.size()), n = c.n();
  RepModule M{k, r, {}};
  Mat B = vectors_as_columns(basis, n);
  auto act = [&](auto&& f) {
    std::vector<Vec> img;
    for (auto& v : basis) {
      Vec w(n);
      for (int x = 0; x < n; ++x) w[f(x)] = v[x];
      img.push_back(w);
    }
    auto X = solve(k, B, vectors_as_columns(img, n));
    if (!X) throw NotSplit("basis not stable under the two-sided action");
    M.gens.push_back(*X);
  };
  for (size_t t = 0; t < L.H.generators().size(); ++t) {
    int g = L.to_parent[L.H.generator_index(static_cast<int>(t))];
    act([&](int x) { return G.mul(g, x); });
  }
  for (size_t t = 0; t < Rg.H.generators().size(); ++t) {
    int g = G.inv(Rg.to_parent[Rg.H.generator_index(static_cast<int>(t))]);
    act([&](int x) { return G.mul(x, g); });
  }
  return M;
}

}  // namespace detail

/// (b' R[G] b) (x)_A (b R[G] b') = b' b R[G] b' as an (H, H)-bimodule, decomposed mod p.
/// Endomorphisms are cut from the orbital matrices of H x H acting on G x G.
inline StableEquivReport stable_equiv_check(const RouquierContext& c, std::mt19937_64& rng) {
  const PermGroup& G = *c.G;
  const int n = c.n();
  GaloisRing k = c.R.residue_field();
  GroupAlgebra Ak(G, k);
  auto red = [&](const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c.R.reduce_to(v[i], 1);
    return r;
  };
  Vec b = red(c.b), bp = red(c.bpG);
  std::vector<Vec> span;
  Vec bpb = Ak.mul(bp, b);
  for (int g = 0; g < n; ++g) span.push_back(Ak.mul(Ak.mul(bpb, Ak.basis(g)), bp));
  StableEquivReport rep;
  std::vector<Vec> basis = detail::span_basis(k, span, n);
  rep.rank = static_cast<int>(basis.size());
  if (rep.rank == 0) return rep;
  Mat B = vectors_as_columns(basis, n);
  std::vector<int> J = echelon(k, transpose(B)).pivcols;
  Mat Jinv = *inverse(k, rows_of(B, J));
  auto coords = [&](const Vec& v) {
    Vec sub(J.size());
    for (size_t t = 0; t < J.size(); ++t) sub[t] = v[J[t]];
    return mul_vec(k, Jinv, sub);
  };
  // Orbits of H x H on G x G.
  std::vector<int> orb(static_cast<size_t>(n) * n, -1);
  int norb = 0;
  for (int s0 = 0; s0 < n * n; ++s0) {
    if (orb[s0] >= 0) continue;
    std::vector<int> st{s0};
    orb[s0] = norb;
    while (!st.empty()) {
      int v = st.back(), x = v / n, y = v % n;
      st.pop_back();
      for (int hi = 0; hi < c.m(); ++hi) {
        int h = c.H.to_parent[hi];
        for (int w : {G.mul(h, x) * n + G.mul(h, y), G.mul(x, h) * n + G.mul(y, h)})
          if (orb[w] < 0) {
            orb[w] = norb;
            st.push_back(w);
          }
      }
    }
    ++norb;
  }
  // E O restricted to X: v -> b O(v), since O commutes with both actions of b'.
  int r = rep.rank;
  std::vector<Mat> ends(norb, Mat(r, r));
  for (int j = 0; j < r; ++j) {
    std::vector<Vec> ov(norb, Vec(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!k.is_zero(basis[j][y])) {
          Elem& dst = ov[orb[x * n + y]][x];
          dst = k.add(dst, basis[j][y]);
        }
    for (int o = 0; o < norb; ++o) {
      Vec col = coords(Ak.mul(b, ov[o]));
      for (int i = 0; i < r; ++i) ends[o](i, j) = col[i];
    }
  }
  AlgebraOps ops{k, r * r,
                 [k, r](const Vec& x, const Vec& y) {
                   Mat X(r, r), Y(r, r);
                   X.a = x;
                   Y.a = y;
                   return mul(k, X, Y).a;
                 },
                 {}};
  for (auto& E : ends) ops.spanning.push_back(E.a);
  auto idems = primitive_decomposition(ops, identity(k, r).a, rng);
  rep.summands = static_cast<int>(idems.size());
  SubgroupAsGroup Hs = c.H;
  RepModule X = detail::two_sided_module(c, k, basis, Hs, Hs);
  PermGroup K2 = direct_product(c.H.H, c.H.H);
  // The diagonal bimodule A' = R[H] b' mod p.
  std::vector<Vec> dspan;
  for (int hi = 0; hi < c.m(); ++hi) dspan.push_back(Ak.mul(Ak.basis(c.H.to_parent[hi]), bp));
  RepModule diag = detail::two_sided_module(c, k, detail::span_basis(k, dspan, n), Hs, Hs);
  for (auto& e : idems) {
    Mat E(r, r);
    E.a = e;
    RepModule S = submodule(X, columns(E, echelon(k, E).pivcols));
    if (is_projective(K2, S)) continue;
    rep.nonprojective.push_back(S.dim);
    rep.iso_to_diagonal = module_iso(S, diag, rng).iso;
  }
  if (rep.nonprojective.size() != 1) rep.iso_to_diagonal = false;
  return rep;
}

}  // namespace brauerlift
