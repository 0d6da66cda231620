#pragma once

// Group algebras R[G] as coefficient vectors, and splitting of commutative
// algebras into primitive idempotents over a finite field.

#include <vector>

#include "brauerlift/groups.hpp"
#include "brauerlift/matrix.hpp"

namespace brauerlift {

using Vec = std::vector<Elem>;

/// R[G] with basis the enumerated elements of G.
class GroupAlgebra {
 public:
  GroupAlgebra(const PermGroup& G, GaloisRing R) : G_(&G), R_(std::move(R)) {}

  const PermGroup& group() const { return *G_; }
  const GaloisRing& ring() const { return R_; }
  int dim() const { return G_->order(); }

  Vec zero() const { return Vec(dim()); }
  Vec one() const { return basis(G_->identity()); }
  Vec basis(int g) const {
    Vec v(dim());
    v[g] = R_.one();
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec c(dim());
    const int n = dim();
    std::vector<int> nzb;
    for (int h = 0; h < n; ++h)
      if (!R_.is_zero(b[h])) nzb.push_back(h);
    for (int g = 0; g < n; ++g) {
      if (R_.is_zero(a[g])) continue;
      for (int h : nzb) {
        int gh = G_->mul(g, h);
        c[gh] = R_.add(c[gh], R_.mul(a[g], b[h]));
      }
    }
    return c;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = R_.add(a[i], b[i]);
    return c;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = R_.sub(a[i], b[i]);
    return c;
  }
  Vec scale(const Vec& a, const Elem& s) const {
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = R_.mul(a[i], s);
    return c;
  }
  Vec pow(Vec a, u64 e) const {
    Vec r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  bool is_zero(const Vec& a) const {
    for (auto& x : a)
      if (!R_.is_zero(x)) return false;
    return true;
  }
  /// Sum of coefficients (image under the trivial character).
  Elem augmentation(const Vec& a) const {
    Elem s{};
    for (auto& x : a) s = R_.add(s, x);
    return s;
  }
  /// Coefficientwise reduction into the ring at precision M.
  Vec reduce(const Vec& a, int M) const {
    Vec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = R_.reduce_to(a[i], M);
    return c;
  }
  /// Reinterpret residues (coefficients < p) as elements of this ring.
  Vec lift(const Vec& a) const { return a; }

  /// Matrix of left multiplication by a (columns indexed by basis elements).
  Mat left_matrix(const Vec& a) const {
    Mat M(dim(), dim());
    for (int h = 0; h < dim(); ++h)
      for (int g = 0; g < dim(); ++g)
        if (!R_.is_zero(a[g])) M(G_->mul(g, h), h) = R_.add(M(G_->mul(g, h), h), a[g]);
    return M;
  }
  Mat right_matrix(const Vec& a) const {
    Mat M(dim(), dim());
    for (int h = 0; h < dim(); ++h)
      for (int g = 0; g < dim(); ++g)
        if (!R_.is_zero(a[g])) M(G_->mul(h, g), h) = R_.add(M(G_->mul(h, g), h), a[g]);
    return M;
  }

  bool is_central(const Vec& a) const {
    for (auto& s : G_->generators()) {
      int g = G_->index_of(s);
      if (mul(basis(g), a) != mul(a, basis(g))) return false;
    }
    return true;
  }

 private:
  const PermGroup* G_;
  GaloisRing R_;
};

/// Class sums of G as vectors.
inline std::vector<Vec> class_sums(const GroupAlgebra& A, const ConjugacyClasses& C) {
  std::vector<Vec> out;
  for (auto& cls : C.classes) {
    Vec v(A.dim());
    for (int g : cls) v[g] = A.ring().one();
    out.push_back(v);
  }
  return out;
}

/// A subgroup viewed as a group in its own right.
struct SubgroupAsGroup {
  PermGroup H;
  std::vector<int> to_parent;  // element index in H -> index in G
  std::vector<int> from_parent;  // index in G -> index in H or -1
};

inline SubgroupAsGroup as_group(const PermGroup& G, const Subgroup& S) {
  SubgroupAsGroup out;
  std::vector<Perm> gens;
  for (int g : S.gens) gens.push_back(G.elem(g));
  out.H = enumerate_group(G.degree(), gens);
  out.from_parent.assign(G.order(), -1);
  for (int i = 0; i < out.H.order(); ++i) {
    int g = G.index_of(out.H.elem(i));
    out.to_parent.push_back(g);
    out.from_parent[g] = i;
  }
  return out;
}

/// Commutative algebra over a ring R by structure constants in a basis.
struct CommAlgebra {
  GaloisRing R;
  int n = 0;
  std::vector<std::vector<Vec>> c;  // c[i][j] = coordinates of b_i b_j
  Vec one;

  Vec mul(const Vec& x, const Vec& y) const {
    Vec z(n);
    for (int i = 0; i < n; ++i) {
      if (R.is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (R.is_zero(y[j])) continue;
        Elem s = R.mul(x[i], y[j]);
        for (int k = 0; k < n; ++k) z[k] = R.add(z[k], R.mul(s, c[i][j][k]));
      }
    }
    return z;
  }
  Vec pow(Vec a, u64 e) const {
    Vec r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  CommAlgebra at_precision(int M) const {
    CommAlgebra B;
    B.R = R.at_precision(M);
    B.n = n;
    B.c = c;
    for (auto& row : B.c)
      for (auto& v : row)
        for (auto& x : v) x = R.reduce_to(x, M);
    B.one = one;
    for (auto& x : B.one) x = R.reduce_to(x, M);
    return B;
  }
};

/// Primitive idempotents of a commutative algebra over F_q given by a product:
/// the fixed space of x -> x^q is the F_q-span of the primitive idempotents;
/// split 1 along a basis of it.
template <class MulFn>
std::vector<Vec> primitive_idempotents(const GaloisRing& k, int n, const Vec& one, MulFn&& mul) {
  if (k.N() != 1) throw Error("InvalidRing", "primitive_idempotents expects a field");
  const u64 q = k.q();
  auto pow = [&](Vec a, u64 e) {
    Vec r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  };
  Mat F(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e(n);
    e[j] = k.one();
    Vec fj = pow(e, q);
    for (int i = 0; i < n; ++i) F(i, j) = fj[i];
    F(j, j) = k.sub(F(j, j), k.one());
  }
  Mat V = kernel(k, F);
  std::vector<Vec> idems{one};
  auto residues = k.residues();
  for (int t = 0; t < V.cols && static_cast<int>(idems.size()) < V.cols; ++t) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = V(i, t);
    std::vector<Vec> next;
    for (auto& e : idems) {
      Vec w = mul(e, v);
      for (auto& c : residues) {
        Vec d(n);
        for (int i = 0; i < n; ++i) d[i] = k.sub(w[i], k.mul(c, e[i]));
        Vec part = pow(d, q - 1);
        for (int i = 0; i < n; ++i) part[i] = k.sub(e[i], part[i]);
        bool nz = false;
        for (auto& x : part) nz |= !k.is_zero(x);
        if (nz) next.push_back(part);
      }
    }
    idems = std::move(next);
  }
  if (static_cast<int>(idems.size()) != V.cols)
    throw SplittingFailed("found " + std::to_string(idems.size()) + " idempotents, expected " +
                          std::to_string(V.cols));
  return idems;
}

inline std::vector<Vec> primitive_idempotents(const CommAlgebra& Z) {
  return primitive_idempotents(Z.R, Z.n, Z.one, [&](const Vec& a, const Vec& b) { return Z.mul(a, b); });
}

/// Hensel-lift an idempotent of a commutative algebra to the precision of Z.
inline Vec lift_idempotent(const CommAlgebra& Z, Vec e) {
  for (;;) {
    Vec e2 = Z.mul(e, e);
    if (e2 == e) return e;
    Vec e3 = Z.mul(e2, e);
    for (int i = 0; i < Z.n; ++i) e[i] = Z.R.sub(Z.R.scale(e2[i], 3), Z.R.scale(e3[i], 2));
  }
}

}  // namespace brauerlift
