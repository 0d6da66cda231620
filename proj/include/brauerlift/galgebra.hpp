#pragma once

// Blocks of group algebras: central primitive idempotents, defect groups,
// Brauer correspondents.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "brauerlift/algebra.hpp"
#include "brauerlift/groups.hpp"

namespace brauerlift {

/// Z(R[G]) in the class-sum basis.
inline CommAlgebra center(const PermGroup& G, const ConjugacyClasses& C, const GaloisRing& R) {
  CommAlgebra Z;
  Z.R = R;
  Z.n = C.size();
  Z.c.assign(Z.n, std::vector<Vec>(Z.n, Vec(Z.n)));
  for (int i = 0; i < Z.n; ++i)
    for (int j = 0; j < Z.n; ++j)
      for (int k = 0; k < Z.n; ++k) {
        long long count = 0;
        int z = C.rep(k);
        for (int x : C.classes[i])
          if (C.class_of[G.mul(G.inv(x), z)] == j) ++count;
        Z.c[i][j][k] = R.from_int(count);
      }
  Z.one = Vec(Z.n);
  Z.one[0] = R.one();
  return Z;
}

inline Vec class_vector_to_group(const PermGroup& G, const ConjugacyClasses& C, const Vec& coords) {
  Vec v(G.order());
  for (int k = 0; k < C.size(); ++k)
    for (int g : C.classes[k]) v[g] = coords[k];
  return v;
}

struct Block {
  int index = 0;
  bool is_principal = false;
  Vec coords;  // in the class-sum basis
  Vec idem;    // as an element of R[G]
  int defect = -1;
  std::optional<Subgroup> defect_group;
  int support_size() const {
    int s = 0;
    for (auto& x : idem) s += (x != Elem{});
    return s;
  }
};

struct Blocks {
  GaloisRing ring;
  ConjugacyClasses classes;
  std::vector<Block> blocks;
  int size() const { return static_cast<int>(blocks.size()); }
  const Block& principal() const {
    for (auto& b : blocks)
      if (b.is_principal) return b;
    throw Error("NoPrincipalBlock", "");
  }
};

/// Primitive central idempotents of F_q[G], principal block first.
inline Blocks block_idempotents_mod_p(const PermGroup& G, const FieldSpec& spec) {
  Blocks out;
  out.ring = GaloisRing(spec, 1);
  out.classes = conjugacy_classes(G);
  CommAlgebra Z = center(G, out.classes, out.ring);
  auto idems = primitive_idempotents(Z);
  std::vector<Block> blocks;
  for (auto& e : idems) {
    Block b;
    b.coords = e;
    b.idem = class_vector_to_group(G, out.classes, e);
    Elem aug{};
    for (int k = 0; k < Z.n; ++k)
      aug = out.ring.add(aug, out.ring.scale(e[k], out.classes.classes[k].size()));
    b.is_principal = out.ring.is_one(aug);
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.is_principal != b.is_principal) return a.is_principal;
    return a.coords < b.coords;
  });
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i].index = static_cast<int>(i);
  out.blocks = std::move(blocks);
  return out;
}

/// Hensel-lift block idempotents to GR(p^N).
inline Blocks lift_blocks(const PermGroup& G, const Blocks& mod_p, int N) {
  Blocks out = mod_p;
  out.ring = GaloisRing(mod_p.ring.spec(), N);
  CommAlgebra Z = center(G, mod_p.classes, out.ring);
  for (auto& b : out.blocks) {
    b.coords = lift_idempotent(Z, b.coords);
    b.idem = class_vector_to_group(G, out.classes, b.coords);
  }
  return out;
}

inline Blocks blocks_over(const PermGroup& G, const FieldSpec& spec, int N) {
  Blocks b = block_idempotents_mod_p(G, spec);
  return N == 1 ? b : lift_blocks(G, b, N);
}

/// Br_P on a P-fixed element: truncate the support to C_G(P).
inline Vec brauer_map(const PermGroup& G, const Vec& a, const Subgroup& P) {
  Subgroup C = centralizer(G, P);
  Vec out(a.size());
  for (int g : C.elems) out[g] = a[g];
  return out;
}

inline bool nonzero_mod_p(const GaloisRing& R, const Vec& a) {
  for (auto& x : a)
    if (R.is_unit(x)) return true;
  return false;
}

struct DefectResult {
  Subgroup group;
  int defect = 0;
  int class_index = -1;  // among subgroup_classes(G)
};

/// Largest p-subgroup class D with Br_D(b) != 0 mod p.
inline DefectResult defect_group(const PermGroup& G, const GaloisRing& R, const Vec& b,
                                 const SubgroupClasses& S) {
  const u64 p = R.p();
  auto pidx = p_subgroup_class_indices(S, p);
  std::sort(pidx.begin(), pidx.end(), [&](int a, int c) { return S.reps[a].order() > S.reps[c].order(); });
  for (size_t t = 0; t < pidx.size(); ++t) {
    const Subgroup& D = S.reps[pidx[t]];
    if (!nonzero_mod_p(R, brauer_map(G, b, D))) continue;
    for (size_t u = t + 1; u < pidx.size() && S.reps[pidx[u]].order() == D.order(); ++u)
      if (nonzero_mod_p(R, brauer_map(G, b, S.reps[pidx[u]])))
        throw Error("DefectAmbiguous", "two classes of the same order pass the Brauer test");
    DefectResult r;
    r.group = D;
    r.class_index = pidx[t];
    for (u64 n = D.order(); n > 1; n /= p) ++r.defect;
    return r;
  }
  throw Error("NoDefectGroup", "Br_1(b) vanishes");
}

inline DefectResult defect_group(const PermGroup& G, const GaloisRing& R, const Vec& b) {
  return defect_group(G, R, b, subgroup_classes(G));
}

inline void annotate_defects(const PermGroup& G, Blocks& B) {
  auto S = subgroup_classes(G);
  for (auto& b : B.blocks) {
    auto d = defect_group(G, B.ring, b.idem, S);
    b.defect = d.defect;
    b.defect_group = d.group;
  }
}

struct Correspondent {
  SubgroupAsGroup normalizer;
  Blocks blocks;   // blocks of F_q[N_G(D)]
  int block = -1;  // index of b'
};

/// The block b' of N_G(D) with b' Br_D(b) = b'.
inline Correspondent brauer_correspondent(const PermGroup& G, const GaloisRing& R, const Vec& b,
                                          const Subgroup& D) {
  Correspondent out;
  out.normalizer = as_group(G, normalizer(G, D));
  const PermGroup& N = out.normalizer.H;
  GaloisRing k = R.residue_field();
  out.blocks = block_idempotents_mod_p(N, k.spec());
  Vec br = brauer_map(G, b, D);
  Vec brN(N.order());
  for (int i = 0; i < N.order(); ++i) brN[i] = k.reduce_from(R.reduce_to(br[out.normalizer.to_parent[i]], 1), 1);
  GroupAlgebra A(N, k);
  // D as a subgroup of N, for the defect check.
  Subgroup DN;
  for (int g : D.elems) DN.elems.push_back(out.normalizer.from_parent[g]);
  for (int g : D.gens) DN.gens.push_back(out.normalizer.from_parent[g]);
  std::sort(DN.elems.begin(), DN.elems.end());
  for (auto& bp : out.blocks.blocks) {
    if (A.mul(bp.idem, brN) != bp.idem) continue;
    // b' must have defect group D (D is normal in N, so Br_D(b') != 0 suffices).
    if (!nonzero_mod_p(k, brauer_map(N, bp.idem, DN))) continue;
    if (out.block >= 0) throw NoCorrespondent("more than one block pairs with Br_D(b)");
    out.block = bp.index;
  }
  if (out.block < 0) throw NoCorrespondent("no block of N_G(D) pairs with Br_D(b)");
  return out;
}

/// Rank of b R[G] as an R-module (rank of left multiplication by b).
inline int block_rank(const GroupAlgebra& A, const Vec& b) { return rank_mod_p(A.ring(), A.left_matrix(b)); }

inline FieldSpec field_for_q(u64 p, u64 q) {
  int d = 0;
  u64 t = 1;
  while (t < q) {
    t *= p;
    ++d;
  }
  if (t != q) throw Error("InvalidField", std::to_string(q) + " is not a power of " + std::to_string(p));
  return smallest_irreducible(p, d);
}

}  // namespace brauerlift
