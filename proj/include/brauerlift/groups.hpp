#pragma once

// Permutation groups by full element enumeration.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "brauerlift/coeff.hpp"
#include "brauerlift/error.hpp"

namespace brauerlift {

using Perm = std::vector<std::uint16_t>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// (a*b)(x) = a(b(x)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm invert(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint16_t>(i);
  return r;
}

/// Sorted cycle lengths, fixed points included.
inline std::vector<int> cycle_type(const Perm& a) {
  std::vector<int> out;
  std::vector<char> seen(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 perm_order(const Perm& a) {
  u64 o = 1;
  for (int l : cycle_type(a)) o = std::lcm(o, static_cast<u64>(l));
  return o;
}

/// Parse cycle notation with 1-based points, e.g. "(1 2 3)(4 5)". "()" is the identity.
inline Perm parse_cycles(const std::string& s, int degree, int line = 0) {
  Perm p = identity_perm(degree);
  std::vector<int> cyc;
  bool open = false;
  std::string num;
  auto where = [&] { return line ? " (line " + std::to_string(line) + ")" : std::string(); };
  auto flush_num = [&] {
    if (num.empty()) return;
    int v = std::stoi(num);
    if (v < 1 || v > degree) throw ParseError("point " + num + " out of range" + where());
    cyc.push_back(v - 1);
    num.clear();
  };
  for (char ch : s) {
    if (ch == '(') {
      if (open) throw ParseError("nested '('" + where());
      open = true;
      cyc.clear();
    } else if (ch == ')') {
      if (!open) throw ParseError("unmatched ')'" + where());
      flush_num();
      for (size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
        if (p[from] != from) throw ParseError("repeated point" + where());
        p[from] = static_cast<std::uint16_t>(to);
      }
      open = false;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!open) throw ParseError("number outside a cycle" + where());
      num += ch;
    } else if (ch == ' ' || ch == ',' || ch == '\t' || ch == '\r') {
      flush_num();
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'" + where());
    }
  }
  if (open) throw ParseError("unterminated cycle" + where());
  return p;
}

inline std::string to_cycles(const Perm& a) {
  std::string out;
  std::vector<char> seen(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == i) continue;
    out += "(";
    bool first = true;
    for (size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = 1;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// Finite permutation group with its complete element list; element 0 is the identity.
class PermGroup {
 public:
  static constexpr size_t kDefaultCap = 200000;
  static constexpr size_t kTableLimit = 5000;

  PermGroup() = default;

  static PermGroup enumerate(int degree, std::vector<Perm> gens, size_t cap = kDefaultCap) {
    PermGroup G;
    G.degree_ = degree;
    for (auto& g : gens)
      if (static_cast<int>(g.size()) != degree) throw Error("DegreeMismatch", "generator of wrong degree");
    G.gens_ = gens;
    G.add(identity_perm(degree));
    for (size_t k = 0; k < G.elems_.size(); ++k) {
      for (auto& s : gens) {
        Perm x = compose(s, G.elems_[k]);
        if (G.find(x) < 0) {
          if (G.elems_.size() >= cap) throw OrderBound("group order exceeds cap " + std::to_string(cap));
          G.add(std::move(x));
        }
      }
    }
    G.finish();
    return G;
  }

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const std::vector<Perm>& generators() const { return gens_; }
  const Perm& elem(int i) const { return elems_[i]; }
  const std::vector<Perm>& elements() const { return elems_; }
  int identity() const { return 0; }

  int find(const Perm& x) const {
    auto it = index_.find(key(x));
    return it == index_.end() ? -1 : it->second;
  }
  int index_of(const Perm& x) const {
    int i = find(x);
    if (i < 0) throw Error("NotInGroup", to_cycles(x));
    return i;
  }
  int mul(int i, int j) const {
    if (!table_.empty()) return table_[static_cast<size_t>(i) * elems_.size() + j];
    return index_of(compose(elems_[i], elems_[j]));
  }
  int inv(int i) const { return inv_[i]; }
  int conj(int g, int h) const { return mul(mul(g, h), inv_[g]); }  // g h g^-1
  u64 elem_order(int i) const { return orders_[i]; }
  std::vector<u64> element_orders() const { return orders_; }
  int generator_index(int k) const { return index_of(gens_[k]); }

 private:
  static std::string key(const Perm& p) {
    return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(std::uint16_t));
  }
  void add(Perm p) {
    index_.emplace(key(p), static_cast<int>(elems_.size()));
    elems_.push_back(std::move(p));
  }
  void finish() {
    size_t n = elems_.size();
    inv_.resize(n);
    orders_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      inv_[i] = index_of(invert(elems_[i]));
      orders_[i] = perm_order(elems_[i]);
    }
    if (n <= kTableLimit) {
      table_.resize(n * n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) table_[i * n + j] = index_of(compose(elems_[i], elems_[j]));
    }
  }

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> inv_;
  std::vector<u64> orders_;
  std::vector<int> table_;
};

inline PermGroup enumerate_group(int degree, const std::vector<Perm>& gens, size_t cap = PermGroup::kDefaultCap) {
  return PermGroup::enumerate(degree, gens, cap);
}

/// Group file: first line "degree=n", then one permutation per line.
inline PermGroup read_group(std::istream& in, size_t cap = PermGroup::kDefaultCap) {
  std::string line;
  int lineno = 0, degree = -1;
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (degree < 0) {
      if (line.rfind("degree=", 0) != 0) throw ParseError("expected degree=n (line " + std::to_string(lineno) + ")");
      degree = std::stoi(line.substr(7));
      if (degree < 1 || degree > 65535) throw ParseError("bad degree (line " + std::to_string(lineno) + ")");
      continue;
    }
    gens.push_back(parse_cycles(line, degree, lineno));
  }
  if (degree < 0) throw ParseError("missing degree line");
  return enumerate_group(degree, gens, cap);
}

inline PermGroup read_group_file(const std::string& path, size_t cap = PermGroup::kDefaultCap) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  return read_group(in, cap);
}

/// Subgroup of an enumerated group, as a sorted list of element indices.
struct Subgroup {
  std::vector<int> elems;
  std::vector<int> gens;
  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const { return std::binary_search(elems.begin(), elems.end(), g); }
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
};

inline Subgroup generate(const PermGroup& G, const std::vector<int>& gens) {
  Subgroup H;
  H.gens = gens;
  std::vector<char> in(G.order(), 0);
  std::vector<int> list{G.identity()};
  in[G.identity()] = 1;
  for (size_t k = 0; k < list.size(); ++k)
    for (int s : gens) {
      int x = G.mul(list[k], s);
      if (!in[x]) {
        in[x] = 1;
        list.push_back(x);
      }
    }
  std::sort(list.begin(), list.end());
  H.elems = std::move(list);
  return H;
}

inline Subgroup whole(const PermGroup& G) {
  std::vector<int> gens;
  for (int k = 0; k < static_cast<int>(G.generators().size()); ++k) gens.push_back(G.generator_index(k));
  Subgroup H;
  H.gens = gens;
  H.elems.resize(G.order());
  std::iota(H.elems.begin(), H.elems.end(), 0);
  return H;
}

inline Subgroup trivial_subgroup(const PermGroup& G) { return Subgroup{{G.identity()}, {}}; }

inline Subgroup conjugate(const PermGroup& G, const Subgroup& H, int g) {
  Subgroup K;
  for (int h : H.elems) K.elems.push_back(G.conj(g, h));
  for (int h : H.gens) K.gens.push_back(G.conj(g, h));
  std::sort(K.elems.begin(), K.elems.end());
  return K;
}

/// Subgroup of H (given by elements of G) cut out by a predicate.
template <class Pred>
Subgroup filter_subgroup(const PermGroup& G, const Subgroup& H, Pred keep) {
  std::vector<int> elems;
  for (int g : H.elems)
    if (keep(g)) elems.push_back(g);
  Subgroup K;
  K.elems = elems;
  // A small generating set: add elements until they generate.
  std::vector<char> in(G.order(), 0);
  Subgroup cur = trivial_subgroup(G);
  for (int g : elems) {
    if (cur.contains(g)) continue;
    K.gens.push_back(g);
    cur = generate(G, K.gens);
    if (cur.order() == K.order()) break;
  }
  return K;
}

inline Subgroup normalizer(const PermGroup& G, const Subgroup& H, const Subgroup& in) {
  return filter_subgroup(G, in, [&](int g) {
    for (int h : H.gens.empty() ? H.elems : H.gens)
      if (!H.contains(G.conj(g, h))) return false;
    return true;
  });
}
inline Subgroup normalizer(const PermGroup& G, const Subgroup& H) { return normalizer(G, H, whole(G)); }

inline Subgroup centralizer(const PermGroup& G, const Subgroup& H, const Subgroup& in) {
  return filter_subgroup(G, in, [&](int g) {
    for (int h : H.gens.empty() ? H.elems : H.gens)
      if (G.mul(g, h) != G.mul(h, g)) return false;
    return true;
  });
}
inline Subgroup centralizer(const PermGroup& G, const Subgroup& H) { return centralizer(G, H, whole(G)); }

inline Subgroup element_centralizer(const PermGroup& G, int x) {
  return filter_subgroup(G, whole(G), [&](int g) { return G.mul(g, x) == G.mul(x, g); });
}

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // classes[0] = {identity}
  std::vector<int> class_of;
  int size() const { return static_cast<int>(classes.size()); }
  int rep(int k) const { return classes[k].front(); }
};

/// Classes of H under conjugation by the elements of `by` (both subsets of G).
inline ConjugacyClasses conjugacy_classes(const PermGroup& G, const Subgroup& H, const Subgroup& by) {
  ConjugacyClasses C;
  C.class_of.assign(G.order(), -1);
  for (int x : H.elems) {
    if (C.class_of[x] >= 0) continue;
    std::vector<int> cls{x};
    C.class_of[x] = C.size();
    for (size_t k = 0; k < cls.size(); ++k)
      for (int s : by.gens.empty() ? by.elems : by.gens) {
        int y = G.conj(s, cls[k]);
        if (C.class_of[y] < 0) {
          C.class_of[y] = C.size();
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    C.classes.push_back(cls);
  }
  return C;
}

inline ConjugacyClasses conjugacy_classes(const PermGroup& G) {
  Subgroup W = whole(G);
  return conjugacy_classes(G, W, W);
}

inline bool is_p_power(u64 n, u64 p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

/// Sylow p-subgroup of H: grow a p-subgroup by p-elements of its normalizer.
inline Subgroup sylow_subgroup(const PermGroup& G, const Subgroup& H, u64 p) {
  u64 target = 1;
  for (u64 n = H.order(); n % p == 0; n /= p) target *= p;
  Subgroup P = trivial_subgroup(G);
  while (static_cast<u64>(P.order()) < target) {
    Subgroup N = normalizer(G, P, H);
    int pick = -1;
    for (int g : N.elems)
      if (!P.contains(g) && is_p_power(G.elem_order(g), p)) {
        pick = g;
        break;
      }
    if (pick < 0) throw Error("SylowFailure", "no p-element in normalizer");
    auto gens = P.gens;
    gens.push_back(pick);
    P = generate(G, gens);
  }
  return P;
}
inline Subgroup sylow_subgroup(const PermGroup& G, u64 p) { return sylow_subgroup(G, whole(G), p); }

/// True iff H has no normal subgroup of index p^k, k >= 1; equivalently H is
/// generated by its p'-elements.
inline bool is_p_perfect(const PermGroup& G, const Subgroup& H, u64 p) {
  std::vector<int> gens;
  for (int h : H.elems)
    if (G.elem_order(h) % p) gens.push_back(h);
  return generate(G, gens).order() == H.order();
}

/// Conjugacy classes of subgroups of H (under H), canonically ordered.
struct SubgroupClasses {
  std::vector<Subgroup> reps;
  std::vector<int> class_sizes;  // number of conjugates
  std::vector<std::string> labels;
  int size() const { return static_cast<int>(reps.size()); }
};

inline std::vector<Subgroup> all_subgroups(const PermGroup& G, const Subgroup& H, size_t cap = 2000) {
  if (static_cast<size_t>(H.order()) > cap)
    throw OrderBound("subgroup enumeration limited to order " + std::to_string(cap));
  std::map<std::vector<int>, int> seen;
  std::vector<Subgroup> subs;
  auto add = [&](Subgroup S) {
    if (seen.count(S.elems)) return;
    seen.emplace(S.elems, static_cast<int>(subs.size()));
    subs.push_back(std::move(S));
  };
  add(trivial_subgroup(G));
  // Cyclic subgroups, one generator each.
  std::vector<int> cyc_gens;
  {
    std::map<std::vector<int>, int> cyc;
    for (int g : H.elems) {
      Subgroup C = generate(G, {g});
      if (!cyc.count(C.elems)) {
        cyc.emplace(C.elems, g);
        cyc_gens.push_back(g);
        add(C);
      }
    }
  }
  for (size_t k = 0; k < subs.size(); ++k) {
    for (int g : cyc_gens) {
      if (subs[k].contains(g)) continue;
      auto gens = subs[k].gens;
      gens.push_back(g);
      add(generate(G, gens));
    }
  }
  return subs;
}

inline std::string subgroup_label(int order, int index) {
  return "H" + std::to_string(order) + (index ? "_" + std::to_string(index) : "");
}

inline SubgroupClasses subgroup_classes(const PermGroup& G, const Subgroup& H, size_t cap = 2000) {
  auto subs = all_subgroups(G, H, cap);
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < subs.size(); ++i) idx.emplace(subs[i].elems, static_cast<int>(i));
  std::vector<int> cls(subs.size(), -1);
  struct Entry {
    int order;
    std::vector<std::vector<int>> types;
    std::vector<int> min_elems;
    int rep;
    int count;
  };
  std::vector<Entry> entries;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(entries.size());
    std::vector<int> members;
    for (int g : H.elems) {
      Subgroup K = conjugate(G, subs[i], g);
      int j = idx.at(K.elems);
      if (cls[j] < 0) {
        cls[j] = c;
        members.push_back(j);
      }
    }
    Entry e;
    e.order = subs[i].order();
    for (int h : subs[i].elems) e.types.push_back(cycle_type(G.elem(h)));
    std::sort(e.types.begin(), e.types.end());
    int best = members.front();
    for (int j : members)
      if (subs[j].elems < subs[best].elems) best = j;
    e.min_elems = subs[best].elems;
    e.rep = best;
    e.count = static_cast<int>(members.size());
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.types != b.types) return a.types < b.types;
    return a.min_elems < b.min_elems;
  });
  SubgroupClasses out;
  std::map<int, int> per_order;
  for (auto& e : entries) {
    out.reps.push_back(subs[e.rep]);
    out.class_sizes.push_back(e.count);
    out.labels.push_back(subgroup_label(e.order, per_order[e.order]++));
  }
  // Drop the suffix when an order occurs once.
  for (size_t i = 0; i < out.labels.size(); ++i)
    if (per_order[out.reps[i].order()] == 1) out.labels[i] = "H" + std::to_string(out.reps[i].order());
  return out;
}

inline SubgroupClasses subgroup_classes(const PermGroup& G, size_t cap = 2000) {
  return subgroup_classes(G, whole(G), cap);
}

/// Index of the class of K (a subgroup of H) among the classes of H, or -1.
inline int find_subgroup_class(const PermGroup& G, const SubgroupClasses& C, const Subgroup& K,
                               const Subgroup& H) {
  for (int i = 0; i < C.size(); ++i) {
    if (C.reps[i].order() != K.order()) continue;
    for (int g : H.elems)
      if (conjugate(G, C.reps[i], g).elems == K.elems) return i;
  }
  return -1;
}

/// Classes of p-subgroups, in the canonical order (a sublist of subgroup_classes).
inline std::vector<int> p_subgroup_class_indices(const SubgroupClasses& C, u64 p) {
  std::vector<int> out;
  for (int i = 0; i < C.size(); ++i)
    if (is_p_power(C.reps[i].order(), p)) out.push_back(i);
  return out;
}

/// Direct product G x H acting on the disjoint union of points.
inline PermGroup direct_product(const PermGroup& G, const PermGroup& H, size_t cap = PermGroup::kDefaultCap) {
  int n = G.degree(), m = H.degree();
  std::vector<Perm> gens;
  for (auto& g : G.generators()) {
    Perm p = identity_perm(n + m);
    for (int i = 0; i < n; ++i) p[i] = g[i];
    gens.push_back(p);
  }
  for (auto& h : H.generators()) {
    Perm p = identity_perm(n + m);
    for (int i = 0; i < m; ++i) p[n + i] = static_cast<std::uint16_t>(n + h[i]);
    gens.push_back(p);
  }
  return enumerate_group(n + m, gens, cap);
}

inline FieldSpec choose_coefficient_field(const PermGroup& G, u64 p) {
  return choose_coefficient_field(G.element_orders(), p);
}

}  // namespace brauerlift
