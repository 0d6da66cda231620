#pragma once

// Ordinary character tables read from CSV, with exact arithmetic in Z[zeta_n].
//
// Z[zeta_n] is stored as Z[zeta_m] (x) Z[zeta_{p^a}] where n = m p^a and
// p does not divide m; the second factor dies modulo the prime above p.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "brauerlift/galgebra.hpp"

namespace brauerlift {

namespace detail {

using IPoly = std::vector<long long>;

inline IPoly cyclotomic_poly(int n) {
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IPoly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    IPoly den = cyclotomic_poly(d);
    IPoly quo(num.size() - den.size() + 1, 0);
    IPoly r = num;
    for (int k = static_cast<int>(r.size()) - 1; k >= static_cast<int>(den.size()) - 1; --k) {
      long long c = r[k];  // den is monic
      quo[k - den.size() + 1] = c;
      for (size_t i = 0; i < den.size(); ++i) r[k - den.size() + 1 + i] -= c * den[i];
    }
    num = quo;
  }
  return num;
}

// Powers zeta^k, 0 <= k < n, reduced modulo Phi_n to the basis 1..zeta^{phi-1}.
inline std::vector<IPoly> reduced_powers(int n) {
  IPoly phi = cyclotomic_poly(n);
  int deg = static_cast<int>(phi.size()) - 1;
  std::vector<IPoly> out;
  IPoly cur(deg, 0);
  if (deg > 0) cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    out.push_back(cur);
    // multiply by zeta
    IPoly nxt(deg, 0);
    long long top = deg > 0 ? cur[deg - 1] : 0;
    for (int i = deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    if (deg > 0) nxt[0] = 0;
    for (int i = 0; i < deg; ++i) nxt[i] -= top * phi[i];
    cur = nxt;
  }
  return out;
}

}  // namespace detail

/// Arithmetic context for Z[zeta_n] relative to a prime p.
class Cyclotomic {
 public:
  using Value = std::vector<long long>;

  Cyclotomic(int n, u64 p) : n_(n), p_(p) {
    m_ = n;
    pa_ = 1;
    while (m_ % static_cast<int>(p) == 0) {
      m_ /= static_cast<int>(p);
      pa_ *= static_cast<int>(p);
    }
    powA_ = detail::reduced_powers(m_);
    powB_ = detail::reduced_powers(pa_);
    da_ = std::max<int>(1, static_cast<int>(powA_[0].size()));
    db_ = std::max<int>(1, static_cast<int>(powB_[0].size()));
    if (m_ == 1) powA_ = {{1}};
    if (pa_ == 1) powB_ = {{1}};
    // zeta_n = zeta_m^x zeta_{p^a}^y with x p^a + y m = 1 (mod n).
    for (int x = 0; x < std::max(m_, 1); ++x)
      if ((static_cast<long long>(x) * pa_) % m_ == 1 % m_) {
        xa_ = x;
        break;
      }
    for (int y = 0; y < std::max(pa_, 1); ++y)
      if ((static_cast<long long>(y) * m_) % pa_ == 1 % pa_) {
        yb_ = y;
        break;
      }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int size() const { return da_ * db_; }

  Value zero() const { return Value(size(), 0); }
  Value integer(long long v) const {
    Value r = zero();
    r[0] = v;
    return r;
  }
  /// zeta_n^k
  Value zeta_pow(long long k) const {
    long long a = ((k % n_) + n_) % n_;
    return monomial(static_cast<int>(a * xa_ % m_), static_cast<int>(a * yb_ % pa_));
  }
  Value add(const Value& a, const Value& b) const {
    Value r(size());
    for (int i = 0; i < size(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  Value scale(const Value& a, long long s) const {
    Value r(size());
    for (int i = 0; i < size(); ++i) r[i] = a[i] * s;
    return r;
  }
  Value mul(const Value& a, const Value& b) const {
    Value r = zero();
    for (int i = 0; i < size(); ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < size(); ++j) {
        if (!b[j]) continue;
        Value mono = monomial((i / db_ + j / db_) % m_, (i % db_ + j % db_) % pa_);
        for (int k = 0; k < size(); ++k) r[k] += a[i] * b[j] * mono[k];
      }
    }
    return r;
  }
  /// Complex conjugation zeta -> zeta^{-1}.
  Value conj(const Value& a) const {
    Value r = zero();
    for (int i = 0; i < size(); ++i) {
      if (!a[i]) continue;
      Value mono = monomial((m_ - i / db_) % m_, (pa_ - i % db_) % pa_);
      for (int k = 0; k < size(); ++k) r[k] += a[i] * mono[k];
    }
    return r;
  }
  bool is_integer(const Value& a, long long* v = nullptr) const {
    for (int i = 1; i < size(); ++i)
      if (a[i]) return false;
    if (v) *v = a[0];
    return true;
  }
  /// Exact division by an integer; nullopt if not integral.
  std::optional<Value> divide(const Value& a, long long d) const {
    Value r(size());
    for (int i = 0; i < size(); ++i) {
      if (a[i] % d) return std::nullopt;
      r[i] = a[i] / d;
    }
    return r;
  }
  /// Image in the residue field F_q: zeta_{p^a} -> 1, zeta_m -> fixed primitive m-th root.
  Elem reduce_mod_p(const GaloisRing& R, const Value& a) const {
    GaloisRing k = R.residue_field();
    Elem z = k.root_of_unity(static_cast<u64>(m_));
    Elem s{};
    for (int i = 0; i < size(); ++i)
      if (a[i]) s = k.add(s, k.mul(k.from_int(a[i]), k.pow(z, static_cast<u64>(i / db_))));
    return s;
  }
  /// Image in GR(p^N) of an element of Z[zeta_m]; nullopt if it involves zeta_{p^a}.
  std::optional<Elem> to_ring(const GaloisRing& R, const Value& a) const {
    for (int i = 0; i < size(); ++i)
      if (a[i] && i % db_) return std::nullopt;
    Elem z = R.root_of_unity(static_cast<u64>(m_));
    Elem s{};
    for (int i = 0; i < size(); i += db_)
      if (a[i]) s = R.add(s, R.mul(R.from_int(a[i]), R.pow(z, static_cast<u64>(i / db_))));
    return s;
  }

 private:
  Value monomial(int i, int j) const {
    Value r(size(), 0);
    const auto& A = powA_[i];
    const auto& B = powB_[j];
    for (size_t s = 0; s < A.size(); ++s)
      for (size_t t = 0; t < B.size(); ++t) r[static_cast<int>(s) * db_ + static_cast<int>(t)] += A[s] * B[t];
    return r;
  }

  int n_, m_, pa_, da_, db_;
  u64 p_;
  int xa_ = 0, yb_ = 0;
  std::vector<detail::IPoly> powA_, powB_;
};

struct CharacterTable {
  int root = 1;
  std::vector<std::string> class_labels;
  std::vector<int> class_sizes;
  std::vector<std::string> class_reps;  // cycle notation, may be empty
  std::vector<std::string> labels;
  std::vector<long long> degrees;
  // values[chi][col]: coefficients of powers of z (exponent -> coefficient)
  std::vector<std::vector<std::map<int, long long>>> values;
  int size() const { return static_cast<int>(labels.size()); }
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

// "2*z^3-z+1" -> {3:2, 1:-1, 0:1}
inline std::map<int, long long> parse_poly(const std::string& s, int line) {
  std::map<int, long long> out;
  size_t i = 0;
  auto err = [&](const std::string& m) { return ParseError(m + " in '" + s + "' (line " + std::to_string(line) + ")"); };
  if (s.empty()) throw err("empty value");
  while (i < s.size()) {
    long long sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || s[i] == ' ')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    long long coef = 1;
    bool have_num = false;
    size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > st) {
      coef = std::stoll(s.substr(st, i - st));
      have_num = true;
    }
    int exp = 0;
    if (i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != 'z') throw err("expected z after *");
    }
    if (i < s.size() && s[i] == 'z') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t e0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == e0) throw err("expected exponent");
        exp = std::stoi(s.substr(e0, i - e0));
      }
    } else if (!have_num) {
      throw err("expected a term");
    }
    out[exp] += sign * coef;
    while (i < s.size() && s[i] == ' ') ++i;
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw err("unexpected character");
  }
  return out;
}

}  // namespace detail

inline CharacterTable read_character_table(std::istream& in) {
  CharacterTable T;
  std::string line;
  int lineno = 0;
  bool have_root = false, have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_root) {
      auto b = line.find("root=");
      if (b == std::string::npos) throw ParseError("expected root=n (line " + std::to_string(lineno) + ")");
      T.root = std::stoi(line.substr(b + 5));
      have_root = true;
      continue;
    }
    auto cells = detail::split_csv(line);
    if (!have_header) {
      if (cells.size() < 3) throw ParseError("header too short (line " + std::to_string(lineno) + ")");
      for (size_t c = 2; c < cells.size(); ++c) {
        auto parts = cells[c];
        auto c1 = parts.find(':');
        if (c1 == std::string::npos) throw ParseError("class cell needs label:size (line " + std::to_string(lineno) + ")");
        auto c2 = parts.find(':', c1 + 1);
        T.class_labels.push_back(parts.substr(0, c1));
        T.class_sizes.push_back(std::stoi(parts.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1)));
        T.class_reps.push_back(c2 == std::string::npos ? "" : parts.substr(c2 + 1));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != T.class_labels.size() + 2)
      throw ParseError("row has " + std::to_string(cells.size()) + " cells (line " + std::to_string(lineno) + ")");
    T.labels.push_back(cells[0]);
    T.degrees.push_back(std::stoll(cells[1]));
    std::vector<std::map<int, long long>> row;
    for (size_t c = 2; c < cells.size(); ++c) row.push_back(detail::parse_poly(cells[c], lineno));
    T.values.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("missing header");
  return T;
}

inline CharacterTable read_character_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  return read_character_table(in);
}

/// A character table matched against the classes of an enumerated group.
struct BoundTable {
  CharacterTable table;
  Cyclotomic cyc;
  std::vector<int> column_of_class;  // group class -> table column
  std::vector<std::vector<Cyclotomic::Value>> values;  // [chi][group class]
};

inline BoundTable bind_table(const PermGroup& G, const ConjugacyClasses& C, const CharacterTable& T, u64 p) {
  BoundTable B{T, Cyclotomic(T.root, p), {}, {}};
  int ncl = static_cast<int>(T.class_labels.size());
  if (ncl != C.size()) throw TableMismatch("table has " + std::to_string(ncl) + " classes, group has " + std::to_string(C.size()));
  B.column_of_class.assign(C.size(), -1);
  for (int col = 0; col < ncl; ++col) {
    int cls = -1;
    if (!T.class_reps[col].empty()) {
      cls = C.class_of[G.index_of(parse_cycles(T.class_reps[col], G.degree()))];
    } else {
      int order = std::stoi(T.class_labels[col]);
      for (int k = 0; k < C.size(); ++k)
        if (static_cast<int>(G.elem_order(C.rep(k))) == order &&
            static_cast<int>(C.classes[k].size()) == T.class_sizes[col]) {
          if (cls >= 0) throw TableMismatch("class " + T.class_labels[col] + " is ambiguous; give a representative");
          cls = k;
        }
    }
    if (cls < 0 || B.column_of_class[cls] >= 0) throw TableMismatch("cannot match class " + T.class_labels[col]);
    if (static_cast<int>(C.classes[cls].size()) != T.class_sizes[col])
      throw TableMismatch("class size mismatch for " + T.class_labels[col]);
    B.column_of_class[cls] = col;
  }
  for (int chi = 0; chi < T.size(); ++chi) {
    std::vector<Cyclotomic::Value> row;
    for (int k = 0; k < C.size(); ++k) {
      Cyclotomic::Value v = B.cyc.zero();
      for (auto [e, c] : T.values[chi][B.column_of_class[k]]) v = B.cyc.add(v, B.cyc.scale(B.cyc.zeta_pow(e), c));
      row.push_back(v);
    }
    long long d;
    if (!B.cyc.is_integer(row[0], &d) || d != T.degrees[chi]) throw TableMismatch("degree mismatch for " + T.labels[chi]);
    B.values.push_back(std::move(row));
  }
  // First orthogonality relation, exactly.
  for (int a = 0; a < T.size(); ++a)
    for (int b = 0; b < T.size(); ++b) {
      Cyclotomic::Value s = B.cyc.zero();
      for (int k = 0; k < C.size(); ++k)
        s = B.cyc.add(s, B.cyc.scale(B.cyc.mul(B.values[a][k], B.cyc.conj(B.values[b][k])),
                                     static_cast<long long>(C.classes[k].size())));
      long long v;
      if (!B.cyc.is_integer(s, &v) || v != (a == b ? G.order() : 0))
        throw TableMismatch("orthogonality fails for " + T.labels[a] + ", " + T.labels[b]);
    }
  return B;
}

/// omega_chi(b) in F_q for a central element given by class coordinates.
inline Elem central_character(const BoundTable& B, const ConjugacyClasses& C, const GaloisRing& R, int chi,
                              const Vec& coords) {
  GaloisRing k = R.residue_field();
  Elem s{};
  for (int cl = 0; cl < C.size(); ++cl) {
    auto w = B.cyc.divide(B.cyc.scale(B.values[chi][cl], static_cast<long long>(C.classes[cl].size())),
                          B.table.degrees[chi]);
    if (!w) throw TableMismatch("central character not integral for " + B.table.labels[chi]);
    Elem c = k.reduce_from(R.reduce_to(coords[cl], 1), 1);
    s = k.add(s, k.mul(c, B.cyc.reduce_mod_p(R, *w)));
  }
  return s;
}

/// Assign each character to the block whose idempotent it sends to 1.
inline std::vector<std::vector<std::string>> block_partition_of_characters(const Blocks& blocks,
                                                                            const BoundTable& B) {
  std::vector<std::vector<std::string>> out(blocks.size());
  GaloisRing k = blocks.ring.residue_field();
  for (int chi = 0; chi < B.table.size(); ++chi) {
    int hit = -1;
    for (int i = 0; i < blocks.size(); ++i) {
      Elem w = central_character(B, blocks.classes, blocks.ring, chi, blocks.blocks[i].coords);
      if (k.is_one(w)) {
        if (hit >= 0) throw TableMismatch("character in two blocks: " + B.table.labels[chi]);
        hit = i;
      } else if (!k.is_zero(w)) {
        throw TableMismatch("central character of a block idempotent is not 0 or 1");
      }
    }
    if (hit < 0) throw TableMismatch("character in no block: " + B.table.labels[chi]);
    out[hit].push_back(B.table.labels[chi]);
  }
  return out;
}

}  // namespace brauerlift
