#pragma once

// Finite G-sets and the Burnside modules Burn_G(X x Y) of spans: orbit basis,
// composition by the Mackey formula, linearization to permutation matrices.

#include <deque>
#include <map>
#include <memory>
#include <vector>

#include "brauerlift/burnside.hpp"
#include "brauerlift/matrix.hpp"

namespace brauerlift {

/// A G-set on points 0..size-1; act[g][x] is the action of element g.
struct GSet {
  const PermGroup* G = nullptr;
  int size = 0;
  std::vector<std::vector<int>> act;
  // Orbits: orbit_of[x], rep of each orbit, and trans[x] with trans[x] . rep = x.
  std::vector<int> orbit_of, reps, trans;
  mutable std::map<int, Subgroup> stab_cache;

  int apply(int g, int x) const { return act[g][x]; }
  const Subgroup& stabilizer(int x) const {
    auto it = stab_cache.find(x);
    if (it != stab_cache.end()) return it->second;
    Subgroup S = filter_subgroup(*G, whole(*G), [&](int g) { return act[g][x] == x; });
    return stab_cache.emplace(x, std::move(S)).first->second;
  }
};

namespace detail {

inline void index_orbits(GSet& X) {
  X.orbit_of.assign(X.size, -1);
  X.trans.assign(X.size, -1);
  int ng = static_cast<int>(X.G->generators().size());
  for (int x = 0; x < X.size; ++x) {
    if (X.orbit_of[x] >= 0) continue;
    int o = static_cast<int>(X.reps.size());
    X.reps.push_back(x);
    X.orbit_of[x] = o;
    X.trans[x] = X.G->identity();
    std::deque<int> queue{x};
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int s = 0; s < ng; ++s) {
        int sg = X.G->generator_index(s);
        int z = X.act[sg][y];
        if (X.orbit_of[z] >= 0) continue;
        X.orbit_of[z] = o;
        X.trans[z] = X.G->mul(sg, X.trans[y]);
        queue.push_back(z);
      }
    }
  }
}

}  // namespace detail

/// G-set from the permutations of the generators on `size` points.
inline GSet gset_from_generators(const PermGroup& G, int size, const std::vector<std::vector<int>>& gen_act) {
  GSet X;
  X.G = &G;
  X.size = size;
  X.act.assign(G.order(), {});
  std::vector<int> id(size);
  for (int i = 0; i < size; ++i) id[i] = i;
  X.act[G.identity()] = id;
  std::deque<int> queue{G.identity()};
  int ng = static_cast<int>(G.generators().size());
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s = 0; s < ng; ++s) {
      int y = G.mul(G.generator_index(s), x);
      if (!X.act[y].empty()) continue;
      std::vector<int> a(size);
      for (int i = 0; i < size; ++i) a[i] = gen_act[s][X.act[x][i]];
      X.act[y] = std::move(a);
      queue.push_back(y);
    }
  }
  detail::index_orbits(X);
  return X;
}

/// Left cosets G/H with the action by left multiplication.
inline GSet coset_space(const PermGroup& G, const Subgroup& H) {
  std::vector<int> coset_of(G.order(), -1), reps;
  for (int g = 0; g < G.order(); ++g) {
    if (coset_of[g] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int h : H.elems) coset_of[G.mul(g, h)] = c;
  }
  GSet X;
  X.G = &G;
  X.size = static_cast<int>(reps.size());
  X.act.assign(G.order(), std::vector<int>(X.size));
  for (int g = 0; g < G.order(); ++g)
    for (int c = 0; c < X.size; ++c) X.act[g][c] = coset_of[G.mul(g, reps[c])];
  detail::index_orbits(X);
  return X;
}

inline GSet point_set(const PermGroup& G) { return coset_space(G, whole(G)); }

/// G x G acting on G by (a, b) . x = a x b^-1; K must be direct_product(G, G).
inline GSet bimodule_set(const PermGroup& K, const PermGroup& G) {
  std::vector<std::vector<int>> gen_act;
  int ng = static_cast<int>(G.generators().size());
  for (int s = 0; s < ng; ++s) {
    std::vector<int> a(G.order());
    for (int x = 0; x < G.order(); ++x) a[x] = G.mul(G.generator_index(s), x);
    gen_act.push_back(a);
  }
  for (int s = 0; s < ng; ++s) {
    std::vector<int> a(G.order());
    int si = G.inv(G.generator_index(s));
    for (int x = 0; x < G.order(); ++x) a[x] = G.mul(x, si);
    gen_act.push_back(a);
  }
  return gset_from_generators(K, G.order(), gen_act);
}

/// Basis of Burn_G(X x Y): pairs (orbit of X x Y, class of subgroups of the
/// stabilizer of its representative); optionally p-subgroups only.
struct SpanSpace {
  const GSet* X = nullptr;
  const GSet* Y = nullptr;
  u64 p = 0;  // 0: all subgroups; otherwise p-subgroups only
  struct Orbit {
    int x = 0, y = 0;
    Subgroup stab;
    SubgroupClasses classes;
    std::vector<int> basis_of_class;  // -1 when excluded
  };
  std::vector<int> orbit_of, trans;  // per point x*|Y|+y
  std::vector<Orbit> orbits;
  struct Basis {
    int orbit = 0, cls = 0;
  };
  std::vector<Basis> basis;

  int size() const { return static_cast<int>(basis.size()); }
  int point(int x, int y) const { return x * Y->size + y; }
  const Subgroup& subgroup(int b) const { return orbits[basis[b].orbit].classes.reps[basis[b].cls]; }
  std::string label(int b) const {
    const auto& o = orbits[basis[b].orbit];
    return o.classes.labels[basis[b].cls] + "@(" + std::to_string(o.x) + "," + std::to_string(o.y) + ")";
  }

  /// Basis index of the span G/L -> X x Y sending the base coset to (x, y).
  int locate(const Subgroup& L, int x, int y) const {
    const PermGroup& G = *X->G;
    int pt = point(x, y);
    const Orbit& o = orbits[orbit_of[pt]];
    Subgroup Lr = conjugate(G, L, G.inv(trans[pt]));
    int c = find_subgroup_class(G, o.classes, Lr, o.stab);
    if (c < 0 || o.basis_of_class[c] < 0) throw SpanFailure("span outside the basis");
    return o.basis_of_class[c];
  }
};

inline SpanSpace span_space(const GSet& X, const GSet& Y, u64 p_only = 0) {
  SpanSpace S;
  S.X = &X;
  S.Y = &Y;
  S.p = p_only;
  const PermGroup& G = *X.G;
  int n = X.size * Y.size;
  S.orbit_of.assign(n, -1);
  S.trans.assign(n, -1);
  int ng = static_cast<int>(G.generators().size());
  for (int pt = 0; pt < n; ++pt) {
    if (S.orbit_of[pt] >= 0) continue;
    int o = static_cast<int>(S.orbits.size());
    SpanSpace::Orbit orb;
    orb.x = pt / Y.size;
    orb.y = pt % Y.size;
    S.orbit_of[pt] = o;
    S.trans[pt] = G.identity();
    std::deque<int> queue{pt};
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      for (int s = 0; s < ng; ++s) {
        int sg = G.generator_index(s);
        int r = S.point(X.apply(sg, q / Y.size), Y.apply(sg, q % Y.size));
        if (S.orbit_of[r] >= 0) continue;
        S.orbit_of[r] = o;
        S.trans[r] = G.mul(sg, S.trans[q]);
        queue.push_back(r);
      }
    }
    const Subgroup& sx = X.stabilizer(orb.x);
    orb.stab = filter_subgroup(G, sx, [&](int g) { return Y.apply(g, orb.y) == orb.y; });
    orb.classes = subgroup_classes(G, orb.stab);
    for (int c = 0; c < orb.classes.size(); ++c) {
      bool keep = p_only == 0 || is_p_power(orb.classes.reps[c].order(), p_only);
      orb.basis_of_class.push_back(keep ? S.size() : -1);
      if (keep) S.basis.push_back({o, c});
    }
    S.orbits.push_back(std::move(orb));
  }
  return S;
}

/// Composite of basis spans a in Burn(X x Y) and b in Burn(Y x Z), as counts
/// on the basis of Burn(X x Z). Mackey: with t y1 = y0 and H'' = t H' t^-1,
/// the composite is sum over sigma in H \ G_y0 / H'' of [G/(H n sigma H'' sigma^-1) -> (x0, sigma t z1)].
inline std::map<int, long long> compose_basis(const SpanSpace& A, int a, const SpanSpace& B, int b,
                                              const SpanSpace& C) {
  const PermGroup& G = *A.X->G;
  const GSet& Y = *A.Y;
  const auto& oa = A.orbits[A.basis[a].orbit];
  const auto& ob = B.orbits[B.basis[b].orbit];
  const Subgroup& H = A.subgroup(a);
  const Subgroup& H1 = B.subgroup(b);
  int x0 = oa.x, y0 = oa.y, y1 = ob.x, z1 = ob.y;
  std::map<int, long long> out;
  if (Y.orbit_of[y0] != Y.orbit_of[y1]) return out;
  int t = G.mul(Y.trans[y0], G.inv(Y.trans[y1]));
  Subgroup H2 = conjugate(G, H1, t);
  const Subgroup& Ky = Y.stabilizer(y0);
  std::vector<char> seen(G.order(), 0);
  for (int sigma : Ky.elems) {
    if (seen[sigma]) continue;
    for (int h : H.elems)
      for (int h2 : H2.elems) seen[G.mul(G.mul(h, sigma), h2)] = 1;
    Subgroup conj = conjugate(G, H2, sigma);
    Subgroup L = filter_subgroup(G, H, [&](int g) { return conj.contains(g); });
    int z = C.Y->apply(G.mul(sigma, t), z1);
    ++out[C.locate(L, x0, z)];
  }
  return out;
}

/// Bilinear extension to integer combinations.
inline std::vector<long long> compose_spans(const SpanSpace& A, const std::vector<long long>& alpha,
                                            const SpanSpace& B, const std::vector<long long>& beta,
                                            const SpanSpace& C) {
  std::vector<long long> out(C.size(), 0);
  for (int a = 0; a < A.size(); ++a) {
    if (!alpha[a]) continue;
    for (int b = 0; b < B.size(); ++b) {
      if (!beta[b]) continue;
      for (auto [c, n] : compose_basis(A, a, B, b, C)) out[c] += alpha[a] * beta[b] * n;
    }
  }
  return out;
}

/// Rank function of a basis span as a |Y| x |X| integer matrix: entry (y, x)
/// counts the points over (x, y), i.e. [Stab : H] on the orbit.
inline std::vector<std::vector<long long>> linearize_basis(const SpanSpace& S, int b) {
  const auto& o = S.orbits[S.basis[b].orbit];
  long long idx = o.stab.order() / S.subgroup(b).order();
  std::vector<std::vector<long long>> M(S.Y->size, std::vector<long long>(S.X->size, 0));
  for (int pt = 0; pt < S.X->size * S.Y->size; ++pt)
    if (S.orbit_of[pt] == S.basis[b].orbit) M[pt % S.Y->size][pt / S.Y->size] = idx;
  return M;
}

inline std::vector<std::vector<long long>> linearize(const SpanSpace& S, const std::vector<long long>& alpha) {
  std::vector<std::vector<long long>> M(S.Y->size, std::vector<long long>(S.X->size, 0));
  for (int b = 0; b < S.size(); ++b) {
    if (!alpha[b]) continue;
    auto L = linearize_basis(S, b);
    for (int y = 0; y < S.Y->size; ++y)
      for (int x = 0; x < S.X->size; ++x) M[y][x] += alpha[b] * L[y][x];
  }
  return M;
}

/// Linearization over GR(p^N) of a combination with ring coefficients.
inline Mat linearize(const SpanSpace& S, const GaloisRing& R, const std::vector<Elem>& alpha) {
  Mat M(S.Y->size, S.X->size);
  for (int b = 0; b < S.size(); ++b) {
    if (R.is_zero(alpha[b])) continue;
    const auto& o = S.orbits[S.basis[b].orbit];
    Elem c = R.mul(alpha[b], R.from_int(o.stab.order() / S.subgroup(b).order()));
    for (int pt = 0; pt < S.X->size * S.Y->size; ++pt)
      if (S.orbit_of[pt] == S.basis[b].orbit) M(pt % S.Y->size, pt / S.Y->size) = R.add(M(pt % S.Y->size, pt / S.Y->size), c);
  }
  return M;
}

/// The diagonal span Delta_X in Burn(X x X) (requires all subgroups in the basis).
inline std::vector<long long> diagonal_span(const SpanSpace& S) {
  std::vector<long long> out(S.size(), 0);
  for (int r : S.X->reps) out[S.locate(S.X->stabilizer(r), r, r)] += 1;
  return out;
}

}  // namespace brauerlift
