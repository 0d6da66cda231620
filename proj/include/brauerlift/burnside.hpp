#pragma once

// Burnside rings of a group (or of a subgroup S of an ambient permutation
// group): table of marks, rational and Dress idempotents, the p-completed basis.

#include <numeric>
#include <string>
#include <vector>

#include "brauerlift/algebra.hpp"
#include "brauerlift/groups.hpp"

namespace brauerlift {

/// Exact rational with a positive denominator.
struct Rat {
  long long n = 0, d = 1;
  Rat() = default;
  Rat(long long num, long long den = 1) : n(num), d(den) { normalize(); }
  void normalize() {
    if (d < 0) n = -n, d = -d;
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  friend Rat operator+(Rat a, Rat b) {
    __int128 num = static_cast<__int128>(a.n) * b.d + static_cast<__int128>(b.n) * a.d;
    __int128 den = static_cast<__int128>(a.d) * b.d;
    return from128(num, den);
  }
  friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.n, b.d); }
  friend Rat operator*(Rat a, Rat b) {
    return from128(static_cast<__int128>(a.n) * b.n, static_cast<__int128>(a.d) * b.d);
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.n == 0) throw Error("DivisionByZero", "rational division by zero");
    return from128(static_cast<__int128>(a.n) * b.d, static_cast<__int128>(a.d) * b.n);
  }
  bool operator==(const Rat&) const = default;
  bool is_zero() const { return n == 0; }
  std::string str() const { return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d); }

 private:
  static Rat from128(__int128 num, __int128 den) {
    if (den < 0) num = -num, den = -den;
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) num /= a, den /= a;
    const __int128 lim = static_cast<__int128>(1) << 62;
    if (num >= lim || num <= -lim || den >= lim) throw Error("Overflow", "rational overflow");
    Rat r;
    r.n = static_cast<long long>(num);
    r.d = static_cast<long long>(den);
    return r;
  }
};

/// Image of a p-integral rational in GR(p^N).
inline Elem rat_to_ring(const GaloisRing& R, const Rat& r) {
  if (r.d % static_cast<long long>(R.p()) == 0) throw NonIntegral("denominator " + std::to_string(r.d) + " divisible by p");
  return R.mul(R.from_int(r.n), R.inv(R.from_int(r.d)));
}

/// Burnside ring of S (a subgroup of the permutation group G) on the basis
/// [S/H], H over S-classes of subgroups in canonical order.
struct BurnsideRing {
  const PermGroup* G = nullptr;
  Subgroup S;
  SubgroupClasses classes;
  std::vector<std::vector<long long>> marks;  // marks[H][K] = #(S/H)^K
  std::vector<std::vector<Rat>> marks_inv;    // inverse matrix

  int size() const { return classes.size(); }

  /// Marks of x = sum x_H [S/H]: phi_K(x) = sum_H x_H marks[H][K].
  std::vector<Rat> to_marks(const std::vector<Rat>& x) const {
    std::vector<Rat> out(size());
    for (int H = 0; H < size(); ++H)
      if (!x[H].is_zero())
        for (int K = 0; K < size(); ++K)
          if (marks[H][K]) out[K] = out[K] + x[H] * Rat(marks[H][K]);
    return out;
  }
  std::vector<Rat> from_marks(const std::vector<Rat>& phi) const {
    std::vector<Rat> out(size());
    for (int K = 0; K < size(); ++K)
      if (!phi[K].is_zero())
        for (int H = 0; H < size(); ++H)
          if (!marks_inv[K][H].is_zero()) out[H] = out[H] + phi[K] * marks_inv[K][H];
    return out;
  }
  std::vector<Rat> mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    auto a = to_marks(x), b = to_marks(y);
    for (int K = 0; K < size(); ++K) a[K] = a[K] * b[K];
    return from_marks(a);
  }
  std::vector<Rat> basis(int H) const {
    std::vector<Rat> v(size());
    v[H] = Rat(1);
    return v;
  }
  std::vector<Rat> one() const { return basis(size() - 1); }  // [S/S]
  /// Cardinality of the S-set: the mark at the trivial subgroup.
  Rat augmentation(const std::vector<Rat>& x) const { return to_marks(x)[0]; }
};

/// #(S/H)^K = #{s in S : s^-1 K s <= H} / |H|.
inline long long mark(const PermGroup& G, const Subgroup& S, const Subgroup& H, const Subgroup& K) {
  if (H.order() % K.order()) return 0;
  const auto& kg = K.gens.empty() ? K.elems : K.gens;
  long long count = 0;
  for (int s : S.elems) {
    int si = G.inv(s);
    bool in = true;
    for (int k : kg)
      if (!H.contains(G.conj(si, k))) {
        in = false;
        break;
      }
    count += in;
  }
  return count / H.order();
}

inline BurnsideRing burnside_ring(const PermGroup& G, const Subgroup& S, size_t cap = 2000) {
  BurnsideRing B;
  B.G = &G;
  B.S = S;
  B.classes = subgroup_classes(G, S, cap);
  int n = B.size();
  B.marks.assign(n, std::vector<long long>(n, 0));
  for (int H = 0; H < n; ++H)
    for (int K = 0; K < n; ++K) B.marks[H][K] = mark(G, S, B.classes.reps[H], B.classes.reps[K]);
  // Lower triangular in the canonical order (K <= H up to conjugacy forces |K| <= |H|).
  for (int H = 0; H < n; ++H) {
    if (B.marks[H][H] <= 0) throw Error("MarksNotTriangular", "zero diagonal mark");
    for (int K = H + 1; K < n; ++K)
      if (B.marks[H][K]) throw Error("MarksNotTriangular", "mark above the diagonal");
  }
  // Inverse of a lower-triangular matrix by forward substitution.
  B.marks_inv.assign(n, std::vector<Rat>(n));
  for (int c = 0; c < n; ++c) {
    for (int r = c; r < n; ++r) {
      Rat s = r == c ? Rat(1) : Rat(0);
      for (int k = c; k < r; ++k)
        if (B.marks[r][k]) s = s - Rat(B.marks[r][k]) * B.marks_inv[k][c];
      B.marks_inv[r][c] = s / Rat(B.marks[r][r]);
    }
  }
  return B;
}

inline BurnsideRing burnside_ring(const PermGroup& G) { return burnside_ring(G, whole(G)); }

/// Primitive idempotents e_H of Burn(S) (x) Q: marks(e_H) = indicator of H.
inline std::vector<std::vector<Rat>> rational_idempotents(const BurnsideRing& B) {
  std::vector<std::vector<Rat>> out;
  for (int H = 0; H < B.size(); ++H) {
    std::vector<Rat> phi(B.size());
    phi[H] = Rat(1);
    out.push_back(B.from_marks(phi));
  }
  return out;
}

/// O^p(H): the subgroup generated by the p'-elements of H.
inline Subgroup p_residual(const PermGroup& G, const Subgroup& H, u64 p) {
  std::vector<int> gens;
  for (int h : H.elems)
    if (G.elem_order(h) % p) gens.push_back(h);
  Subgroup R = generate(G, gens);
  // Keep a short generating set.
  return filter_subgroup(G, R, [](int) { return true; });
}

struct DressIdempotent {
  int perfect_class = 0;        // index of the p-perfect class in B.classes
  std::vector<Rat> coeffs;      // on the basis [S/H]
  std::vector<int> members;     // classes H with O^p(H) ~ perfect_class
};

/// Dress idempotents: eps_w = sum of e_H over H with O^p(H) conjugate to w.
inline std::vector<DressIdempotent> dress_idempotents(const BurnsideRing& B, u64 p) {
  std::vector<int> residual(B.size());
  for (int H = 0; H < B.size(); ++H) {
    Subgroup R = p_residual(*B.G, B.classes.reps[H], p);
    residual[H] = find_subgroup_class(*B.G, B.classes, R, B.S);
    if (residual[H] < 0) throw Error("ClassNotFound", "p-residual not among subgroup classes");
  }
  std::vector<DressIdempotent> out;
  for (int w = 0; w < B.size(); ++w) {
    if (residual[w] != w) continue;  // w is p-perfect iff O^p(w) = w
    DressIdempotent d;
    d.perfect_class = w;
    std::vector<Rat> phi(B.size());
    for (int H = 0; H < B.size(); ++H)
      if (residual[H] == w) {
        phi[H] = Rat(1);
        d.members.push_back(H);
      }
    d.coeffs = B.from_marks(phi);
    for (auto& c : d.coeffs)
      if (c.d % static_cast<long long>(p) == 0) throw NonIntegral("Dress idempotent has denominator " + std::to_string(c.d));
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<Elem> to_ring(const GaloisRing& R, const std::vector<Rat>& v) {
  std::vector<Elem> out;
  for (auto& r : v) out.push_back(rat_to_ring(R, r));
  return out;
}

struct CompletedBasis {
  std::vector<int> classes;  // p-subgroup classes P, basis [S/P]
  /// coords[H] = coordinates of eps_1 [S/H] on the basis, over GR(p^N)
  std::vector<std::vector<Elem>> coords;
};

/// The basis [S/P], P over p-subgroup classes, of eps_1 Burn(S) (x) GR(p^N);
/// every eps_1 [S/H] is expressed in it (SpanFailure otherwise).
inline CompletedBasis completed_basis(const BurnsideRing& B, const GaloisRing& R) {
  const u64 p = R.p();
  CompletedBasis out;
  out.classes = p_subgroup_class_indices(B.classes, p);
  int r = static_cast<int>(out.classes.size());
  for (int H = 0; H < B.size(); ++H) {
    // Solve sum_P x_P marks[P][K] = marks[H][K] over p-subgroups K; marks[P][K] != 0 needs K <= P.
    std::vector<Rat> x(r);
    for (int i = r - 1; i >= 0; --i) {
      int K = out.classes[i];
      Rat s(B.marks[H][K]);
      for (int j = i + 1; j < r; ++j)
        if (B.marks[out.classes[j]][K]) s = s - x[j] * Rat(B.marks[out.classes[j]][K]);
      x[i] = s / Rat(B.marks[out.classes[i]][K]);
    }
    std::vector<Elem> row;
    for (auto& v : x) {
      if (v.d % static_cast<long long>(p) == 0)
        throw SpanFailure("eps_1 [S/" + B.classes.labels[H] + "] not in the completed span");
      row.push_back(rat_to_ring(R, v));
    }
    out.coords.push_back(row);
  }
  return out;
}

}  // namespace brauerlift
