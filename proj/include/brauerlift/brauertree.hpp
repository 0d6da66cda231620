#pragma once

// Brauer trees from Cartan matrices of cyclic-defect blocks: PIMs are edges,
// shared vertices are read off the nonzero off-diagonal entries.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brauerlift/error.hpp"

namespace brauerlift {

struct BrauerTree {
  int vertices = 0;
  struct Edge {
    int v = 0, w = 0, pim = 0;
  };
  std::vector<Edge> edges;
  int exceptional = -1;  // -1 when the multiplicity is 1
  int multiplicity = 1;
  std::vector<std::vector<std::string>> labels;  // per vertex, when a table is supplied
};

inline std::vector<std::vector<int>> tree_cartan(const BrauerTree& T) {
  int n = static_cast<int>(T.edges.size());
  auto mult = [&](int v) { return v == T.exceptional ? T.multiplicity : 1; };
  std::vector<std::vector<int>> C(n, std::vector<int>(n, 0));
  for (auto& a : T.edges)
    for (auto& b : T.edges) {
      if (a.pim == b.pim) {
        C[a.pim][a.pim] = mult(a.v) + mult(a.w);
        continue;
      }
      for (int x : {a.v, a.w})
        if (x == b.v || x == b.w) C[a.pim][b.pim] += mult(x);
    }
  return C;
}

namespace detail {

inline std::string cartan_text(const std::vector<std::vector<int>>& C) {
  std::ostringstream s;
  s << "[";
  for (size_t i = 0; i < C.size(); ++i) {
    s << (i ? "," : "") << "[";
    for (size_t j = 0; j < C[i].size(); ++j) s << (j ? "," : "") << C[i][j];
    s << "]";
  }
  s << "]";
  return s.str();
}

}  // namespace detail

/// Whitney inversion for trees: the maximal cliques of the line graph are the
/// stars of vertices of degree >= 2; each edge gets leaves for its missing ends.
inline BrauerTree brauer_tree_from_cartan(const std::vector<std::vector<int>>& C) {
  int n = static_cast<int>(C.size());
  auto fail = [&](const std::string& why) {
    return TreeReconstructionAmbiguous(why + "; Cartan " + detail::cartan_text(C));
  };
  if (n == 0) throw fail("empty Cartan matrix");
  if (n == 1 && C[0][0] == 1) {
    // Defect zero: a single edge with trivial multiplicity.
    BrauerTree T;
    T.vertices = 2;
    T.edges.push_back({0, 1, 0});
    return T;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (C[i][j] != C[j][i] || C[i][j] < 0) throw fail("Cartan matrix not symmetric and nonnegative");
  int m = 1;
  for (int i = 0; i < n; ++i)
    if (C[i][i] > 2) m = std::max(m, C[i][i] - 1);
  // Maximal cliques of the adjacency graph, by extension from each edge pair.
  std::set<std::vector<int>> cliques;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!C[i][j]) continue;
      std::vector<int> cl{i, j};
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        bool all = true;
        for (int x : cl) all &= C[k][x] != 0;
        if (all) cl.push_back(k);
      }
      std::sort(cl.begin(), cl.end());
      // Edges meeting at one vertex share the same entry.
      for (int a : cl)
        for (int b : cl)
          if (a != b && C[a][b] != C[i][j]) throw fail("clique entries disagree");
      cliques.insert(cl);
    }
  BrauerTree T;
  T.multiplicity = m;
  std::vector<std::vector<int>> ends(n);
  std::vector<int> vertex_mult;
  for (auto& cl : cliques) {
    int v = T.vertices++;
    vertex_mult.push_back(C[cl[0]][cl[1]]);
    for (int e : cl) ends[e].push_back(v);
  }
  for (int e = 0; e < n; ++e) {
    if (ends[e].size() > 2) throw fail("edge in more than two stars");
    // The missing endpoints are leaves; the diagonal fixes their multiplicities.
    int known = 0;
    for (int v : ends[e]) known += vertex_mult[v];
    int missing = 2 - static_cast<int>(ends[e].size());
    int rest = C[e][e] - known;
    std::vector<int> leaf_mult;
    if (missing == 2) {
      if (rest == 2) leaf_mult = {1, 1};
      else if (rest == 1 + m && m > 1) leaf_mult = {m, 1};
      else throw fail("diagonal entry inconsistent with a tree");
    } else if (missing == 1) {
      if (rest != 1 && rest != m) throw fail("diagonal entry inconsistent with a tree");
      leaf_mult = {rest};
    } else if (rest != 0) {
      throw fail("diagonal entry inconsistent with a tree");
    }
    for (int lm : leaf_mult) {
      ends[e].push_back(T.vertices++);
      vertex_mult.push_back(lm);
    }
    T.edges.push_back({ends[e][0], ends[e][1], e});
  }
  if (T.vertices != n + 1) throw fail("vertex count is not edges + 1");
  for (int v = 0; v < T.vertices; ++v) {
    if (vertex_mult[v] == 1 || m == 1) continue;
    if (T.exceptional >= 0) throw fail("two exceptional vertices");
    T.exceptional = v;
  }
  if (m > 1 && T.exceptional < 0) throw fail("no exceptional vertex");
  if (tree_cartan(T) != C) throw fail("round trip does not reproduce the Cartan matrix");
  return T;
}

/// Graphviz rendering of a tree; the exceptional vertex is drawn filled.
inline std::string tree_dot(const BrauerTree& T) {
  std::ostringstream s;
  s << "graph brauer_tree {\n";
  for (int v = 0; v < T.vertices; ++v) {
    std::string label = std::to_string(v);
    if (v < static_cast<int>(T.labels.size()) && !T.labels[v].empty()) {
      label.clear();
      for (size_t i = 0; i < T.labels[v].size(); ++i) label += (i ? "+" : "") + T.labels[v][i];
    }
    s << "  v" << v << " [label=\"" << label << "\"";
    if (v == T.exceptional) s << ", style=filled, xlabel=\"m=" << T.multiplicity << "\"";
    s << "];\n";
  }
  for (auto& e : T.edges) s << "  v" << e.v << " -- v" << e.w << " [label=\"P" << e.pim << "\"];\n";
  s << "}\n";
  return s.str();
}

/// Label vertices by ordinary characters: a vertex of degree >= 2 carries the
/// characters common to its edges; a leaf carries the rest of its edge.
inline void label_tree(BrauerTree& T, const std::vector<std::vector<std::string>>& edge_chars) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::vector<int>> incident(T.vertices);
  for (auto& e : T.edges) {
    incident[e.v].push_back(e.pim);
    incident[e.w].push_back(e.pim);
  }
  T.labels.assign(T.vertices, {});
  std::vector<bool> done(T.vertices, false);
  for (int v = 0; v < T.vertices; ++v) {
    if (incident[v].size() < 2) continue;
    std::vector<std::string> common = sorted(edge_chars[incident[v][0]]);
    for (size_t i = 1; i < incident[v].size(); ++i) {
      std::vector<std::string> next, other = sorted(edge_chars[incident[v][i]]);
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
      common = next;
    }
    T.labels[v] = common;
    done[v] = true;
  }
  for (auto& e : T.edges) {
    auto all = sorted(edge_chars[e.pim]);
    for (auto [leaf, other] : {std::pair{e.v, e.w}, std::pair{e.w, e.v}}) {
      if (done[leaf] || !done[other]) continue;
      std::vector<std::string> rest;
      std::set_difference(all.begin(), all.end(), T.labels[other].begin(), T.labels[other].end(),
                          std::back_inserter(rest));
      T.labels[leaf] = rest;
      done[leaf] = true;
    }
    if (!done[e.v] && !done[e.w]) {
      // Isolated edge: the exceptional end takes the last `multiplicity` characters.
      int exc = e.w == T.exceptional ? e.w : e.v;
      int plain = exc == e.v ? e.w : e.v;
      size_t take = T.exceptional >= 0 ? static_cast<size_t>(T.multiplicity) : all.size() / 2;
      take = std::min(take, all.size());
      T.labels[exc].assign(all.end() - static_cast<long>(take), all.end());
      T.labels[plain].assign(all.begin(), all.end() - static_cast<long>(take));
      done[e.v] = done[e.w] = true;
    }
  }
}

}  // namespace brauerlift
