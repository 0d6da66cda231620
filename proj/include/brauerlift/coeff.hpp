#pragma once

// Galois rings GR(p^N, f) = (Z/p^N)[x]/(f~) and the finite fields F_q = GR(p, f).

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "brauerlift/error.hpp"

namespace brauerlift {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxDegree = 4;
inline constexpr int kDefaultPrecision = 6;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Multiplicative order of p modulo n (n >= 1, gcd(p, n) = 1).
inline int multiplicative_order(u64 p, u64 n) {
  if (n == 1) return 1;
  u64 x = p % n;
  int k = 1;
  while (x != 1) {
    x = (x * (p % n)) % n;
    ++k;
  }
  return k;
}

inline u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct Elem {
  std::array<u64, kMaxDegree> c{};
  bool operator==(const Elem&) const = default;
  auto operator<=>(const Elem&) const = default;
};

/// p, and a monic irreducible f over F_p given by its low coefficients.
struct FieldSpec {
  u64 p = 2;
  std::vector<u64> f;  // f = x^d + f[d-1] x^{d-1} + ... + f[0]
  int degree() const { return static_cast<int>(f.size()); }
  u64 q() const { return ipow(p, degree()); }
  bool operator==(const FieldSpec&) const = default;
};

namespace detail {

// Naive polynomials over F_p, low degree first.
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const u64 lead_inv = [&] {
    u64 l = m.back(), r = 1;
    for (u64 e = p - 2; e; e >>= 1, l = l * l % p)
      if (e & 1) r = r * l % p;
    return r;
  }();
  while (a.size() >= m.size()) {
    u64 c = a.back() * lead_inv % p;
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

inline bool irreducible(const Poly& monic, u64 p) {
  int d = static_cast<int>(monic.size()) - 1;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int k = 1; 2 * k <= d; ++k) {
    u64 count = ipow(p, k);
    for (u64 idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      u64 t = idx;
      for (int i = 0; i < k; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[k] = 1;
      if (poly_mod(monic, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Smallest monic irreducible of degree d in the order that compares
/// coefficients from x^{d-1} down to x^0.
inline FieldSpec smallest_irreducible(u64 p, int d) {
  if (!is_prime(p)) throw Error("InvalidPrime", std::to_string(p));
  if (d < 1 || d > kMaxDegree)
    throw Error("DegreeUnsupported", "degree " + std::to_string(d));
  if (d == 1) return FieldSpec{p, {0}};
  u64 count = ipow(p, d);
  for (u64 idx = 0; idx < count; ++idx) {
    detail::Poly g(d + 1, 0);
    u64 t = idx;
    for (int i = 0; i < d; ++i) {
      g[i] = t % p;
      t /= p;
    }
    g[d] = 1;
    if (detail::irreducible(g, p)) {
      g.pop_back();
      return FieldSpec{p, g};
    }
  }
  throw Error("NoIrreducible", "none found");
}

/// f = lcm of ord_n(p) over the p'-parts n of the given element orders.
inline FieldSpec choose_coefficient_field(const std::vector<u64>& element_orders, u64 p) {
  if (!is_prime(p)) throw Error("InvalidPrime", std::to_string(p));
  int f = 1;
  for (u64 n : element_orders) {
    while (n % p == 0) n /= p;
    f = std::lcm(f, multiplicative_order(p, n));
  }
  return smallest_irreducible(p, f);
}

/// GR(p^N, f~): arithmetic context. Elements are plain `Elem` values.
class GaloisRing {
 public:
  GaloisRing() : GaloisRing(FieldSpec{2, {0}}, 1) {}
  GaloisRing(FieldSpec spec, int N) : spec_(std::move(spec)), N_(N) {
    if (N < 1) throw Error("InvalidPrecision", std::to_string(N));
    d_ = spec_.degree();
    p_ = spec_.p;
    m_ = ipow(p_, N);
    small_ = m_ < (u64{1} << 31);
  }

  const FieldSpec& spec() const { return spec_; }
  u64 p() const { return p_; }
  int N() const { return N_; }
  int degree() const { return d_; }
  u64 modulus() const { return m_; }
  u64 q() const { return spec_.q(); }
  u64 size() const { return ipow(q(), N_); }
  bool operator==(const GaloisRing& o) const { return spec_ == o.spec_ && N_ == o.N_; }

  GaloisRing at_precision(int M) const { return GaloisRing(spec_, M); }
  GaloisRing residue_field() const { return GaloisRing(spec_, 1); }

  Elem zero() const { return Elem{}; }
  Elem one() const { return from_int(1); }
  Elem from_int(long long v) const {
    Elem e;
    long long r = v % static_cast<long long>(m_);
    if (r < 0) r += static_cast<long long>(m_);
    e.c[0] = static_cast<u64>(r);
    return e;
  }
  Elem from_coeffs(const std::vector<long long>& cs) const {
    Elem e;
    for (int i = 0; i < d_ && i < static_cast<int>(cs.size()); ++i) e.c[i] = from_int(cs[i]).c[0];
    return e;
  }
  /// The class of x in the coefficient ring.
  Elem generator() const {
    if (d_ == 1) return from_int(static_cast<long long>(m_ - spec_.f[0]) % static_cast<long long>(m_));
    Elem e;
    e.c[1] = 1;
    return e;
  }

  bool is_zero(const Elem& a) const { return a == Elem{}; }
  bool is_one(const Elem& a) const { return a == one(); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r;
    for (int i = 0; i < d_; ++i) {
      u64 s = a.c[i] + b.c[i];
      r.c[i] = s >= m_ ? s - m_ : s;
    }
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r;
    for (int i = 0; i < d_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + m_ - b.c[i];
    return r;
  }
  Elem neg(const Elem& a) const { return sub(Elem{}, a); }

  u64 mulmod(u64 a, u64 b) const {
    if (small_) return a * b % m_;
    return static_cast<u64>(static_cast<u128>(a) * b % m_);
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    if (d_ == 1) {
      r.c[0] = mulmod(a.c[0], b.c[0]);
      return r;
    }
    u64 t[2 * kMaxDegree] = {};
    for (int i = 0; i < d_; ++i) {
      if (!a.c[i]) continue;
      for (int j = 0; j < d_; ++j) {
        u64 s = t[i + j] + mulmod(a.c[i], b.c[j]);
        t[i + j] = s >= m_ ? s - m_ : s;
      }
    }
    for (int k = 2 * d_ - 2; k >= d_; --k) {
      if (!t[k]) continue;
      for (int i = 0; i < d_; ++i) {
        u64 v = mulmod(t[k], spec_.f[i]);
        u64& dst = t[k - d_ + i];
        dst = dst >= v ? dst - v : dst + m_ - v;
      }
      t[k] = 0;
    }
    for (int i = 0; i < d_; ++i) r.c[i] = t[i];
    return r;
  }

  Elem scale(const Elem& a, u64 s) const {
    Elem r;
    s %= m_;
    for (int i = 0; i < d_; ++i) r.c[i] = mulmod(a.c[i], s);
    return r;
  }

  Elem pow(Elem a, u64 e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// p-adic valuation; N for zero.
  int valuation(const Elem& a) const {
    int v = N_;
    for (int i = 0; i < d_; ++i) {
      if (!a.c[i]) continue;
      int k = 0;
      u64 x = a.c[i];
      while (x % p_ == 0) {
        x /= p_;
        ++k;
      }
      v = std::min(v, k);
    }
    return v;
  }
  bool is_unit(const Elem& a) const {
    for (int i = 0; i < d_; ++i)
      if (a.c[i] % p_) return true;
    return false;
  }

  /// Inverse: invert in the residue field, then Newton iteration y <- y(2 - xy).
  Elem inv(const Elem& x) const {
    if (!is_unit(x)) throw NotAUnit("element is divisible by p");
    GaloisRing k = residue_field();
    Elem y = k.pow(reduce_to(x, 1), k.q() - 2);
    for (int prec = 1; prec < N_; prec *= 2) {
      Elem xy = mul(x, y);
      y = mul(y, sub(from_int(2), xy));
    }
    return y;
  }

  /// Divide a by b where v(a) >= v(b); returns some c with b*c = a.
  Elem div(const Elem& a, const Elem& b) const {
    int vb = valuation(b);
    if (vb == 0) return mul(a, inv(b));
    if (valuation(a) < vb) throw NotAUnit("division not exact");
    u64 pv = ipow(p_, vb);
    Elem bu, au;
    for (int i = 0; i < d_; ++i) {
      bu.c[i] = b.c[i] / pv;
      au.c[i] = a.c[i] / pv;
    }
    GaloisRing low = at_precision(N_ - vb);
    Elem c = low.mul(low.reduce_from(au, N_), low.inv(low.reduce_from(bu, N_)));
    return c;
  }

  /// Coefficientwise reduction to precision M of an element of this ring.
  Elem reduce_to(const Elem& a, int M) const {
    if (M > N_) throw PrecisionTooHigh(std::to_string(M) + " > " + std::to_string(N_));
    u64 mm = ipow(p_, M);
    Elem r;
    for (int i = 0; i < d_; ++i) r.c[i] = a.c[i] % mm;
    return r;
  }
  /// Reduce an element given at precision K >= N into this ring.
  Elem reduce_from(const Elem& a, int /*K*/) const {
    Elem r;
    for (int i = 0; i < d_; ++i) r.c[i] = a.c[i] % m_;
    return r;
  }

  /// Teichmueller lift of a residue: the unique t = a mod p with t^q = t.
  Elem teichmuller(const Elem& a) const {
    Elem t = reduce_from(reduce_to(a, 1), 1);
    return pow(t, ipow(q(), N_ - 1));
  }

  /// Smallest element (in coefficient order) generating F_q^*, as a residue.
  Elem primitive_root_mod_p() const {
    GaloisRing k = residue_field();
    u64 qq = k.q();
    auto factors = prime_factors(qq - 1);
    for (u64 idx = 1; idx < qq; ++idx) {
      Elem e;
      u64 t = idx;
      for (int i = 0; i < d_; ++i) {
        e.c[i] = t % p_;
        t /= p_;
      }
      if (k.is_zero(e)) continue;
      bool ok = true;
      for (u64 r : factors)
        if (k.is_one(k.pow(e, (qq - 1) / r))) ok = false;
      if (ok) return e;
    }
    return k.one();
  }

  /// Teichmueller lift of a primitive n-th root of unity, n | q - 1.
  Elem root_of_unity(u64 n) const {
    if ((q() - 1) % n) throw Error("NoRootOfUnity", std::to_string(n) + " does not divide q-1");
    Elem g = teichmuller(primitive_root_mod_p());
    return pow(g, (q() - 1) / n);
  }

  /// Enumerate all residues of F_q as elements of this ring (coefficients < p).
  std::vector<Elem> residues() const {
    std::vector<Elem> out;
    u64 qq = q();
    for (u64 idx = 0; idx < qq; ++idx) {
      Elem e;
      u64 t = idx;
      for (int i = 0; i < d_; ++i) {
        e.c[i] = t % p_;
        t /= p_;
      }
      out.push_back(e);
    }
    return out;
  }

  std::string to_string(const Elem& a) const {
    if (d_ == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (int i = 0; i < d_; ++i) s += (i ? "," : "") + std::to_string(a.c[i]);
    return s + "]";
  }

 private:
  FieldSpec spec_;
  int N_ = 1;
  int d_ = 1;
  u64 p_ = 2;
  u64 m_ = 2;
  bool small_ = true;
};

/// Precision reduction GR(p^N) -> GR(p^M).
inline Elem reduce_precision(const GaloisRing& R, const Elem& x, int M) { return R.reduce_to(x, M); }

inline Elem gr_invert(const GaloisRing& R, const Elem& x) { return R.inv(x); }

}  // namespace brauerlift
