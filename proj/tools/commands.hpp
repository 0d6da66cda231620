#pragma once

#include <algorithm>
#include <random>
#include <string>

#include "brauerlift/brauertree.hpp"
#include "brauerlift/burnside.hpp"
#include "brauerlift/chartable.hpp"
#include "brauerlift/galgebra.hpp"
#include "brauerlift/pims.hpp"
#include "cli_support.hpp"

namespace brauerlift::cli {

struct Session {
  RunConfig cfg;
  PermGroup G;
  FieldSpec spec;

  explicit Session(RunConfig c) : cfg(std::move(c)) {
    cfg.validate();
    G = read_group_file(group_path(cfg.group));
    if (cfg.q_override) {
      spec = field_for_q(cfg.p, cfg.q_override);
      return;
    }
    try {
      spec = choose_coefficient_field(G, cfg.p);
    } catch (const Error& e) {
      if (e.kind() != "DegreeUnsupported") throw;
      throw Error("ConfigError", std::string(e.what()) + " for the splitting field; pass --q-override");
    }
  }
  GaloisRing ring() const { return GaloisRing(spec, cfg.N); }
  GaloisRing residue() const { return GaloisRing(spec, 1); }
  std::mt19937_64 rng() const { return std::mt19937_64(cfg.seed); }
  std::optional<BoundTable> table(const ConjugacyClasses& C) const {
    auto path = table_path(cfg.group);
    if (!path) return std::nullopt;
    return bind_table(G, C, read_character_table_file(*path), cfg.p);
  }
};

/// "principal" or a block index.
inline const Block& select_block(const Blocks& B, const std::string& which) {
  if (which == "principal") return B.principal();
  int i = -1;
  try {
    i = std::stoi(which);
  } catch (const std::exception&) {
    throw Error("ConfigError", "block must be 'principal' or an index, got '" + which + "'");
  }
  if (i < 0 || i >= B.size()) throw Error("ConfigError", "block index " + which + " out of range");
  return B.blocks[i];
}

inline json cmd_blocks(const Session& s) {
  Blocks B = blocks_over(s.G, s.spec, s.cfg.N);
  annotate_defects(s.G, B);
  std::vector<std::vector<std::string>> partition;
  if (auto T = s.table(B.classes)) partition = block_partition_of_characters(block_idempotents_mod_p(s.G, s.spec), *T);
  GroupAlgebra A(s.G, B.ring);
  json blocks = json::array();
  for (auto& b : B.blocks) {
    json j = {{"index", b.index},
              {"principal", b.is_principal},
              {"defect", b.defect},
              {"defect_group_order", b.defect_group ? b.defect_group->order() : 0},
              {"rank", block_rank(A, b.idem)},
              {"class_sum_coords", vec_json(B.ring, b.coords)}};
    if (!partition.empty()) j["characters"] = partition[b.index];
    blocks.push_back(j);
  }
  return {{"ring", ring_json(B.ring)},
          {"group_order", s.G.order()},
          {"classes", B.classes.size()},
          {"block_count", B.size()},
          {"blocks", blocks}};
}

inline json cmd_defect_group(const Session& s, const std::string& which) {
  Blocks B = block_idempotents_mod_p(s.G, s.spec);
  const Block& b = select_block(B, which);
  auto d = defect_group(s.G, B.ring, b.idem);
  json j = subgroup_json(s.G, d.group);
  j["block"] = b.index;
  j["defect"] = d.defect;
  j["cyclic"] = is_cyclic(s.G, d.group);
  return j;
}

inline json cmd_correspondent(const Session& s, const std::string& which) {
  Blocks B = block_idempotents_mod_p(s.G, s.spec);
  const Block& b = select_block(B, which);
  auto d = defect_group(s.G, B.ring, b.idem);
  auto c = brauer_correspondent(s.G, B.ring, b.idem, d.group);
  GroupAlgebra AN(c.normalizer.H, c.blocks.ring);
  json nb = json::array();
  for (auto& x : c.blocks.blocks) nb.push_back({{"index", x.index}, {"rank", block_rank(AN, x.idem)}});
  json normal = {{"order", c.normalizer.H.order()}};
  json gens = json::array();
  for (auto& g : c.normalizer.H.generators()) gens.push_back(to_cycles(g));
  normal["generators"] = gens;
  return {{"block", b.index},
          {"defect_group", subgroup_json(s.G, d.group)},
          {"normalizer", normal},
          {"normalizer_blocks", nb},
          {"correspondent", c.block}};
}

/// Path, star, or neither.
inline std::string tree_shape(const BrauerTree& T) {
  std::vector<int> deg(T.vertices, 0);
  for (auto& e : T.edges) ++deg[e.v], ++deg[e.w];
  int maxd = T.vertices ? *std::max_element(deg.begin(), deg.end()) : 0;
  if (maxd <= 2) return "path";
  if (maxd == static_cast<int>(T.edges.size())) return "star";
  return "tree";
}

inline json tree_json(const BrauerTree& T) {
  std::vector<int> deg(T.vertices, 0);
  for (auto& e : T.edges) ++deg[e.v], ++deg[e.w];
  json edges = json::array();
  for (auto& e : T.edges) edges.push_back({{"v", e.v}, {"w", e.w}, {"pim", e.pim}});
  json j = {{"vertices", T.vertices},
            {"edge_count", T.edges.size()},
            {"edges", edges},
            {"shape", tree_shape(T)},
            {"exceptional", T.exceptional},
            {"exceptional_degree", T.exceptional >= 0 ? deg[T.exceptional] : 0},
            {"multiplicity", T.multiplicity},
            {"cartan", tree_cartan(T)},
            {"dot", tree_dot(T)}};
  if (!T.labels.empty()) j["labels"] = T.labels;
  return j;
}

inline json cmd_brauer_tree(const Session& s, const std::string& which) {
  Blocks B = block_idempotents_mod_p(s.G, s.spec);
  const Block& b = select_block(B, which);
  auto T = s.table(B.classes);
  auto rng = s.rng();
  BlockPims P;
  BrauerTree tree = brauer_tree(s.G, B.ring, b.idem, rng, T ? &*T : nullptr, s.cfg.N, &P);
  json j = tree_json(tree);
  json pims = json::array();
  for (auto& pc : P.pims) pims.push_back({{"dim", pc.dim}, {"head", pc.head}, {"count", pc.count}});
  j["block"] = b.index;
  j["pims"] = pims;
  return j;
}

}  // namespace brauerlift::cli
