#pragma once

// Modules over F_q[G] and GR(p^N)[G] given by generator matrices: radicals,
// Hom spaces, isomorphism, indecomposable decomposition, projectivity.

#include <algorithm>
#include <deque>
#include <random>
#include <vector>

#include "brauerlift/finalg.hpp"
#include "brauerlift/galgebra.hpp"

namespace brauerlift {

/// Left module: gens[i] is the action of the i-th generator of G.
struct RepModule {
  GaloisRing ring;
  int dim = 0;
  std::vector<Mat> gens;
};

/// Shortest word (generator indices, applied right to left) for each element.
inline std::vector<std::vector<int>> element_words(const PermGroup& G) {
  std::vector<std::vector<int>> words(G.order());
  std::vector<bool> seen(G.order(), false);
  seen[G.identity()] = true;
  std::deque<int> queue{G.identity()};
  int ng = static_cast<int>(G.generators().size());
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s = 0; s < ng; ++s) {
      int y = G.mul(G.generator_index(s), x);
      if (seen[y]) continue;
      seen[y] = true;
      words[y] = words[x];
      words[y].insert(words[y].begin(), s);
      queue.push_back(y);
    }
  }
  return words;
}

inline Mat word_matrix(const RepModule& M, const std::vector<int>& word) {
  Mat X = identity(M.ring, M.dim);
  for (int s : word) X = mul(M.ring, X, M.gens[s]);
  return X;
}

inline Mat element_matrix(const PermGroup& G, const RepModule& M, int g) {
  return word_matrix(M, element_words(G)[g]);
}

inline RepModule regular_module(const PermGroup& G, const GaloisRing& R) {
  GroupAlgebra A(G, R);
  RepModule M{R, A.dim(), {}};
  for (int i = 0; i < static_cast<int>(G.generators().size()); ++i)
    M.gens.push_back(A.left_matrix(A.basis(G.generator_index(i))));
  return M;
}

inline RepModule trivial_module(const PermGroup& G, const GaloisRing& R) {
  return RepModule{R, 1, std::vector<Mat>(G.generators().size(), identity(R, 1))};
}

/// One-dimensional module given by the images of the generators.
inline RepModule linear_module(const GaloisRing& R, const std::vector<Elem>& values) {
  RepModule M{R, 1, {}};
  for (auto& v : values) {
    Mat m(1, 1);
    m(0, 0) = v;
    M.gens.push_back(m);
  }
  return M;
}

/// The left ideal R[G]e as a module, in a basis of its image.
inline RepModule ideal_module(const PermGroup& G, const GaloisRing& R, const Vec& e) {
  GroupAlgebra A(G, R);
  Mat Re = A.right_matrix(e);
  Echelon E = echelon(R, Re);
  if (!E.split) throw NotSplit("R[G]e is not a free summand");
  Mat B = columns(Re, E.pivcols);
  RepModule M{R, B.cols, {}};
  for (int i = 0; i < static_cast<int>(G.generators().size()); ++i) {
    auto X = solve(R, B, mul(R, A.left_matrix(A.basis(G.generator_index(i))), B));
    if (!X) throw NotSplit("ideal basis not stable");
    M.gens.push_back(*X);
  }
  return M;
}

/// Restrict the action to a stable subspace with basis columns B.
inline RepModule submodule(const RepModule& M, const Mat& B) {
  RepModule S{M.ring, B.cols, {}};
  for (auto& g : M.gens) {
    auto X = solve(M.ring, B, mul(M.ring, g, B));
    if (!X) throw Error("NotStable", "subspace is not a submodule");
    S.gens.push_back(*X);
  }
  return S;
}

inline RepModule direct_sum(const RepModule& A, const RepModule& B) {
  RepModule S{A.ring, A.dim + B.dim, {}};
  for (size_t i = 0; i < A.gens.size(); ++i) {
    Mat m(S.dim, S.dim);
    for (int r = 0; r < A.dim; ++r)
      for (int c = 0; c < A.dim; ++c) m(r, c) = A.gens[i](r, c);
    for (int r = 0; r < B.dim; ++r)
      for (int c = 0; c < B.dim; ++c) m(A.dim + r, A.dim + c) = B.gens[i](r, c);
    S.gens.push_back(m);
  }
  return S;
}

/// Change of basis: the module with matrices P^-1 g P.
inline RepModule conjugate_module(const RepModule& M, const Mat& P) {
  auto Pi = inverse(M.ring, P);
  if (!Pi) throw NotAUnit("change of basis not invertible");
  RepModule S{M.ring, M.dim, {}};
  for (auto& g : M.gens) S.gens.push_back(mul(M.ring, *Pi, mul(M.ring, g, P)));
  return S;
}

inline RepModule reduce_module(const RepModule& M, int N) {
  RepModule S{M.ring.at_precision(N), M.dim, {}};
  for (auto& g : M.gens) S.gens.push_back(reduce_precision(M.ring, g, N));
  return S;
}

/// Check invertibility and the relations g^ord = 1 and (random words) agree
/// with the group multiplication on sampled pairs.
inline bool check_relations(const PermGroup& G, const RepModule& M, int samples, std::mt19937_64& rng) {
  if (M.gens.size() != G.generators().size()) return false;
  for (auto& g : M.gens)
    if (g.rows != M.dim || g.cols != M.dim || !inverse(M.ring, g)) return false;
  auto words = element_words(G);
  std::uniform_int_distribution<int> pick(0, G.order() - 1);
  for (int t = 0; t < samples; ++t) {
    int a = pick(rng), b = pick(rng);
    Mat lhs = mul(M.ring, word_matrix(M, words[a]), word_matrix(M, words[b]));
    if (lhs != word_matrix(M, words[G.mul(a, b)])) return false;
  }
  for (int s = 0; s < static_cast<int>(M.gens.size()); ++s) {
    Mat x = identity(M.ring, M.dim);
    for (u64 k = 0; k < G.elem_order(G.generator_index(s)); ++k) x = mul(M.ring, x, M.gens[s]);
    if (x != identity(M.ring, M.dim)) return false;
  }
  return true;
}

/// Basis (columns) of rad(M) = J(A_M) M, for M over F_q (reduced mod p first).
inline Mat module_radical(const RepModule& M) {
  RepModule Mk = M.ring.N() == 1 ? M : reduce_module(M, 1);
  auto A = generated_algebra(Mk.ring, Mk.gens, Mk.dim);
  auto J = radical(A);
  Mat S(Mk.dim, 0);
  for (auto& j : J) S = hstack(S, j);
  if (S.cols == 0) return S;
  return image(Mk.ring, S);
}

/// Basis of Hom_G(M, N) as N.dim x M.dim matrices. Over GR(p^N) the system
/// must split (NotSplit otherwise).
inline std::vector<Mat> hom_space(const RepModule& M, const RepModule& N) {
  const GaloisRing& R = M.ring;
  int m = M.dim, n = N.dim, nv = n * m;
  // Unknown X (n x m) stored row-major; equations N_g X - X M_g = 0, one generator at a time.
  Mat K = identity(R, nv);
  for (size_t s = 0; s < M.gens.size() && K.cols > 0; ++s) {
    const Mat& A = N.gens[s];
    const Mat& B = M.gens[s];
    Mat E(nv, nv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        int row = i * m + j;
        for (int k = 0; k < n; ++k)
          if (!R.is_zero(A(i, k))) E(row, k * m + j) = R.add(E(row, k * m + j), A(i, k));
        for (int k = 0; k < m; ++k)
          if (!R.is_zero(B(k, j))) E(row, i * m + k) = R.sub(E(row, i * m + k), B(k, j));
      }
    Mat EK = mul(R, E, K);
    Mat C = kernel(R, EK);
    K = mul(R, K, C);
  }
  std::vector<Mat> out;
  for (int c = 0; c < K.cols; ++c) {
    Mat X(n, m);
    for (int t = 0; t < nv; ++t) X.a[t] = K(t, c);
    out.push_back(X);
  }
  return out;
}

inline Mat random_in_span(const GaloisRing& R, const std::vector<Mat>& basis, int rows, int cols,
                          std::mt19937_64& rng) {
  Mat X(rows, cols);
  for (auto& b : basis) X = add(R, X, scale(R, b, random_elem(R, rng)));
  return X;
}

struct IsoResult {
  bool iso = false;
  Mat witness;  // X with X M_g = N_g X
};

/// Decide M = N by sampling the Hom space for an invertible element. A dimension
/// mismatch of Hom(M,N) against End(M) or End(N) is a certificate of non-isomorphism.
inline IsoResult module_iso(const RepModule& M, const RepModule& N, std::mt19937_64& rng, int tries = 64) {
  IsoResult r;
  if (M.dim != N.dim || M.gens.size() != N.gens.size()) return r;
  auto H = hom_space(M, N);
  if (H.empty()) return r;
  if (H.size() != hom_space(M, M).size() || H.size() != hom_space(N, N).size()) return r;
  for (int t = 0; t < tries; ++t) {
    Mat X = t == 0 && H.size() == 1 ? H[0] : random_in_span(M.ring, H, N.dim, M.dim, rng);
    if (inverse(M.ring, X)) {
      r.iso = true;
      r.witness = X;
      return r;
    }
  }
  return r;
}

/// Endomorphism algebra of M as an algebra of flattened matrices.
inline AlgebraOps endomorphism_ops(const RepModule& M, const std::vector<Mat>& End) {
  GaloisRing k = M.ring.residue_field();
  int n = M.dim;
  AlgebraOps ops{k, n * n,
                 [k, n](const Vec& x, const Vec& y) {
                   Mat X(n, n), Y(n, n);
                   X.a = x;
                   Y.a = y;
                   return mul(k, X, Y).a;
                 },
                 {}};
  for (auto& e : End) ops.spanning.push_back(reduce_precision(M.ring, e, 1).a);
  return ops;
}

struct Summand {
  RepModule module;
  int multiplicity = 1;
  Mat idempotent;  // projection of M onto one copy
};

/// Krull-Schmidt decomposition: split End(M) into primitive idempotents mod p,
/// lift over GR(p^N) inside End(M), group the images up to isomorphism.
inline std::vector<Summand> decompose(const RepModule& M, std::mt19937_64& rng) {
  const GaloisRing& R = M.ring;
  int n = M.dim;
  auto End = hom_space(M, M);
  auto ops = endomorphism_ops(M, End);
  auto idems = primitive_decomposition(ops, identity(ops.k, n).a, rng);
  std::vector<Mat> lifted;
  if (R.N() == 1) {
    for (auto& e : idems) {
      Mat E(n, n);
      E.a = e;
      lifted.push_back(E);
    }
  } else {
    // Coordinates in End mod p give elements of End over GR(p^N); lift there.
    Mat B(n * n, static_cast<int>(End.size()));
    for (size_t j = 0; j < End.size(); ++j)
      for (int i = 0; i < n * n; ++i) B(i, static_cast<int>(j)) = ops.spanning[j][i];
    std::vector<Vec> family;
    for (auto& e : idems) {
      Mat col(n * n, 1);
      col.a = e;
      auto c = solve(ops.k, B, col);
      if (!c) throw Error("NotInSpan", "idempotent outside End(M)");
      Mat X(n, n);
      for (size_t j = 0; j < End.size(); ++j) X = add(R, X, scale(R, End[j], (*c)(static_cast<int>(j), 0)));
      family.push_back(X.a);
    }
    auto mulR = [&R, n](const Vec& x, const Vec& y) {
      Mat X(n, n), Y(n, n);
      X.a = x;
      Y.a = y;
      return mul(R, X, Y).a;
    };
    for (auto& v : lift_orthogonal(mulR, R, identity(R, n).a, family)) {
      Mat E(n, n);
      E.a = v;
      lifted.push_back(E);
    }
  }
  std::vector<Summand> out;
  for (auto& E : lifted) {
    Echelon ech = echelon(R, E);
    RepModule S = submodule(M, columns(E, ech.pivcols));
    bool merged = false;
    for (auto& s : out)
      if (module_iso(s.module, S, rng).iso) {
        ++s.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.push_back(Summand{S, 1, E});
  }
  return out;
}

/// M is projective iff its restriction to a Sylow p-subgroup P is free:
/// dim M = |P| * dim(M / sum (g - 1) M) over generators g of P, computed mod p.
inline bool is_projective(const PermGroup& G, const RepModule& M) {
  GaloisRing k = M.ring.residue_field();
  RepModule Mk = M.ring.N() == 1 ? M : reduce_module(M, 1);
  Subgroup P = sylow_subgroup(G, k.p());
  if (P.order() == 1) return true;
  auto words = element_words(G);
  Mat S(Mk.dim, 0);
  for (int g : P.gens) S = hstack(S, sub(k, word_matrix(Mk, words[g]), identity(k, Mk.dim)));
  int top = Mk.dim - rank_mod_p(k, S);
  return static_cast<long long>(Mk.dim) == static_cast<long long>(P.order()) * top;
}

}  // namespace brauerlift
