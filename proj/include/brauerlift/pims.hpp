#pragma once

// Projective indecomposables of a block, Cartan matrices, characters of
// projective lattices, and Brauer trees reconstructed from Cartan matrices.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brauerlift/brauertree.hpp"
#include "brauerlift/chartable.hpp"
#include "brauerlift/modrep.hpp"

namespace brauerlift {

inline AlgebraOps group_algebra_ops(const GroupAlgebra& A) {
  AlgebraOps ops{A.ring(), A.dim(), [&A](const Vec& x, const Vec& y) { return A.mul(x, y); }, {}};
  for (int g = 0; g < A.dim(); ++g) ops.spanning.push_back(A.basis(g));
  return ops;
}

/// Basis of the left ideal A e, from the translates g e.
inline std::vector<Vec> left_ideal_basis(const PermGroup& G, const GaloisRing& k, const Vec& e) {
  int n = G.order();
  std::vector<Vec> tr;
  for (int g = 0; g < n; ++g) {
    Vec v(n);
    for (int h = 0; h < n; ++h)
      if (!k.is_zero(e[h])) v[G.mul(g, h)] = e[h];
    tr.push_back(v);
  }
  std::vector<Vec> out;
  for (int c : echelon(k, vectors_as_columns(tr, n)).pivcols) out.push_back(tr[c]);
  return out;
}

struct PimClass {
  Vec idem;        // a primitive idempotent mod p
  int dim = 0;     // dim P
  int head = 0;    // dim of the simple head
  int count = 0;   // copies of P in the block
  int endo = 1;    // dim_{F_q} End(S)
};

struct BlockPims {
  GaloisRing k;
  std::vector<PimClass> pims;
  std::vector<std::vector<int>> cartan;
  int block_dim = 0;
};

/// PIMs of the block b of F_q[G] (b given mod p) and the Cartan matrix
/// C_ij = [P_i : S_j], from dim e_j A e_i = C_ij dim End(S_j).
inline BlockPims pims_and_cartan(const PermGroup& G, const GaloisRing& k, const Vec& b, std::mt19937_64& rng) {
  GroupAlgebra A(G, k);
  auto ops = group_algebra_ops(A);
  auto idems = primitive_decomposition(ops, b, rng);
  BlockPims out;
  out.k = k;
  struct Rep {
    Vec e;
    std::vector<Vec> ideal;  // basis of A e
    int endo_dim = 0;        // dim e A e
  };
  std::vector<Rep> reps;
  auto hom = [&](const Rep& from_i, const Vec& ej) {  // basis of e_j A e_i
    std::vector<Vec> prods;
    for (auto& v : from_i.ideal) prods.push_back(A.mul(ej, v));
    std::vector<Vec> out;
    for (int c : echelon(k, vectors_as_columns(prods, A.dim())).pivcols) out.push_back(prods[c]);
    return out;
  };
  auto nilpotent = [&](const Vec& u, int bound) { return A.is_zero(A.pow(u, static_cast<u64>(bound))); };
  for (auto& e : idems) {
    Rep r{e, left_ideal_basis(G, k, e), 0};
    bool found = false;
    for (size_t c = 0; c < reps.size() && !found; ++c) {
      if (reps[c].ideal.size() != r.ideal.size()) continue;
      auto x = hom(r, reps[c].e);  // e_c A e
      auto y = hom(reps[c], e);    // e A e_c
      for (auto& u : x)
        for (auto& v : y)
          if (!found && !nilpotent(A.mul(u, v), reps[c].endo_dim)) found = true;
      if (found) ++out.pims[c].count;
    }
    if (found) continue;
    auto corner = hom(r, e);
    r.endo_dim = static_cast<int>(corner.size());
    auto info = local_info(regular_representation(AbstractAlgebra{k, corner, ops.mul}));
    if (!info.local) throw NotPrimitive("corner algebra of a split idempotent is not local");
    PimClass pc;
    pc.idem = e;
    pc.dim = static_cast<int>(r.ideal.size());
    pc.count = 1;
    pc.endo = info.semisimple_dim;
    out.pims.push_back(pc);
    reps.push_back(std::move(r));
  }
  for (auto& pc : out.pims) pc.head = pc.count * pc.endo;
  // Canonical order: by (dim P, head).
  std::vector<int> order(out.pims.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    return std::pair(out.pims[a].dim, out.pims[a].head) < std::pair(out.pims[c].dim, out.pims[c].head);
  });
  std::vector<PimClass> sorted;
  std::vector<Rep> sreps;
  for (int i : order) {
    sorted.push_back(out.pims[i]);
    sreps.push_back(reps[i]);
  }
  out.pims = sorted;
  int n = static_cast<int>(out.pims.size());
  out.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.cartan[i][j] = static_cast<int>(hom(sreps[i], sreps[j].e).size()) / out.pims[j].endo;
  for (auto& pc : out.pims) out.block_dim += pc.dim * pc.count;
  return out;
}

/// Character of R[G]e: chi(g) = sum_h e(h^-1 g^-1 h), one value per class.
inline std::vector<Elem> idempotent_character(const PermGroup& G, const ConjugacyClasses& C, const GaloisRing& R,
                                              const Vec& e) {
  std::vector<Elem> out;
  for (int cl = 0; cl < C.size(); ++cl) {
    int g = C.rep(cl);
    int gi = G.inv(g);
    Elem s{};
    for (int h = 0; h < G.order(); ++h) s = R.add(s, e[G.mul(G.inv(h), G.mul(gi, h))]);
    out.push_back(s);
  }
  return out;
}

/// Character of a module, by traces of class representatives.
inline std::vector<Elem> module_character(const PermGroup& G, const ConjugacyClasses& C, const RepModule& M) {
  auto words = element_words(G);
  std::vector<Elem> out;
  for (int cl = 0; cl < C.size(); ++cl) {
    Mat X = word_matrix(M, words[C.rep(cl)]);
    Elem t{};
    for (int i = 0; i < M.dim; ++i) t = M.ring.add(t, X(i, i));
    out.push_back(t);
  }
  return out;
}

/// Multiplicities m_chi >= 0 of a projective character with the given traces and
/// rank. p-regular classes are compared in GR(p^N); on p-singular classes the
/// combination must vanish exactly, as a projective character does.
inline std::vector<int> decompose_projective_character(const PermGroup& G, const ConjugacyClasses& C,
                                                       const BoundTable& T, const GaloisRing& R,
                                                       const std::vector<Elem>& traces, int rank) {
  const auto& cyc = T.cyc;
  int nchi = T.table.size();
  std::vector<bool> regular(C.size());
  for (int cl = 0; cl < C.size(); ++cl) {
    regular[cl] = G.elem_order(C.rep(cl)) % R.p() != 0;
    if (!regular[cl] && !R.is_zero(traces[cl]))
      throw TableMismatch("projective character nonzero on a p-singular class");
  }
  std::vector<std::vector<Elem>> img(nchi);
  for (int chi = 0; chi < nchi; ++chi)
    for (int cl = 0; cl < C.size(); ++cl) {
      if (!regular[cl]) {
        img[chi].push_back(Elem{});
        continue;
      }
      auto v = cyc.to_ring(R, T.values[chi][cl]);
      if (!v) throw TableMismatch("p-regular value outside Z[zeta_m]");
      img[chi].push_back(*v);
    }
  std::vector<std::vector<int>> sols;
  std::vector<int> m(nchi, 0);
  std::function<void(int, long long)> rec = [&](int chi, long long left) {
    if (sols.size() > 1) return;
    if (chi == nchi) {
      if (left != 0) return;
      for (int cl = 0; cl < C.size(); ++cl) {
        if (regular[cl]) {
          Elem s{};
          for (int c = 0; c < nchi; ++c) s = R.add(s, R.mul(R.from_int(m[c]), img[c][cl]));
          if (s != traces[cl]) return;
        } else {
          auto s = cyc.zero();
          for (int c = 0; c < nchi; ++c) s = cyc.add(s, cyc.scale(T.values[c][cl], m[c]));
          if (s != cyc.zero()) return;
        }
      }
      sols.push_back(m);
      return;
    }
    long long deg = T.table.degrees[chi];
    for (long long k = 0; k * deg <= left; ++k) {
      m[chi] = static_cast<int>(k);
      rec(chi + 1, left - k * deg);
    }
    m[chi] = 0;
  };
  rec(0, rank);
  if (sols.empty()) throw TableMismatch("character does not decompose in the table");
  if (sols.size() > 1) throw TableMismatch("character decomposition is not unique");
  return sols[0];
}

inline std::vector<std::string> expand_labels(const BoundTable& T, const std::vector<int>& m) {
  std::vector<std::string> out;
  for (size_t chi = 0; chi < m.size(); ++chi)
    for (int t = 0; t < m[chi]; ++t) out.push_back(T.table.labels[chi]);
  return out;
}

/// Ordinary constituents of the lattice R[G]e for e a primitive idempotent mod p.
inline std::vector<std::string> lattice_char_decomposition(const PermGroup& G, const GaloisRing& R, const Vec& e_mod_p,
                                                           const BoundTable& T) {
  GroupAlgebra AR(G, R);
  Vec e = lift_idempotent_general([&](const Vec& x, const Vec& y) { return AR.mul(x, y); }, R, e_mod_p);
  auto C = conjugacy_classes(G);
  auto traces = idempotent_character(G, C, R, e);
  int rank = static_cast<int>(left_ideal_basis(G, R.residue_field(), e_mod_p).size());
  return expand_labels(T, decompose_projective_character(G, C, T, R, traces, rank));
}

inline std::vector<std::string> module_char_decomposition(const PermGroup& G, const RepModule& M, const BoundTable& T) {
  auto C = conjugacy_classes(G);
  return expand_labels(T, decompose_projective_character(G, C, T, M.ring, module_character(G, C, M), M.dim));
}

inline bool is_cyclic(const PermGroup& G, const Subgroup& D) {
  for (int g : D.elems)
    if (G.elem_order(g) == static_cast<u64>(D.order())) return true;
  return false;
}

/// Brauer tree of a block with cyclic defect group; b is the block idempotent
/// mod p. With a table, vertices are labeled by ordinary characters of the
/// lattices R[G]e lifted to precision N.
inline BrauerTree brauer_tree(const PermGroup& G, const GaloisRing& k, const Vec& b, std::mt19937_64& rng,
                              const BoundTable* table = nullptr, int N = 4, BlockPims* pims_out = nullptr) {
  auto d = defect_group(G, k, b);
  if (!is_cyclic(G, d.group)) throw NotCyclicDefect("defect group of order " + std::to_string(d.group.order()) +
                                                    " is not cyclic");
  BlockPims P = pims_and_cartan(G, k, b, rng);
  BrauerTree T = brauer_tree_from_cartan(P.cartan);
  if (table) {
    GaloisRing R(k.spec(), N);
    std::vector<std::vector<std::string>> chars;
    for (auto& pc : P.pims) chars.push_back(lattice_char_decomposition(G, R, pc.idem, *table));
    label_tree(T, chars);
  }
  if (pims_out) *pims_out = std::move(P);
  return T;
}

}  // namespace brauerlift
