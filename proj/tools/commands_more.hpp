#pragma once

#include <filesystem>
#include <string>

#include "brauerlift/idemlift.hpp"
#include "brauerlift/tilting.hpp"
#include "commands.hpp"

namespace brauerlift::cli {

inline json rat_json(const Rat& r) { return r.d == 1 ? std::to_string(r.n) : std::to_string(r.n) + "/" + std::to_string(r.d); }

inline json rats_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (auto& r : v) a.push_back(rat_json(r));
  return a;
}

inline json cmd_burnside_marks(const Session& s) {
  auto B = burnside_ring(s.G);
  return {{"subgroup_labels", B.classes.labels}, {"matrix", B.marks}};
}

inline json cmd_burnside_idempotents(const Session& s) {
  auto B = burnside_ring(s.G);
  json rational = json::array();
  for (auto& e : rational_idempotents(B)) rational.push_back(rats_json(e));
  json dress = json::array();
  for (auto& d : dress_idempotents(B, s.cfg.p)) {
    json members = json::array();
    for (int m : d.members) members.push_back(B.classes.labels[m]);
    dress.push_back({{"perfect_subgroup", B.classes.labels[d.perfect_class]},
                     {"members", members},
                     {"coefficients", rats_json(d.coeffs)}});
  }
  return {{"basis_labels", B.classes.labels}, {"rational", rational}, {"dress", dress}};
}

inline json cmd_burnside_basis(const Session& s) {
  auto B = burnside_ring(s.G);
  GaloisRing R = s.ring();
  auto C = completed_basis(B, R);
  json labels = json::array();
  for (int c : C.classes) labels.push_back(B.classes.labels[c]);
  json coords = json::object();
  for (int h = 0; h < B.size(); ++h) coords[B.classes.labels[h]] = vec_json(R, C.coords[h]);
  return {{"ring", ring_json(R)}, {"rank", C.classes.size()}, {"basis_labels", labels}, {"coefficients", coords}};
}

/// Composite of two spans pt <- G/H -> pt, i.e. the product in the Burnside ring.
inline json cmd_burnside_compose(const Session& s, int a, int b) {
  GSet X = point_set(s.G);
  SpanSpace S = span_space(X, X);
  if (a < 0 || a >= S.size() || b < 0 || b >= S.size())
    throw Error("ConfigError", "span index out of range 0.." + std::to_string(S.size() - 1));
  json labels = json::array();
  for (int i = 0; i < S.size(); ++i) labels.push_back(S.label(i));
  json coeffs = json::array();
  auto c = compose_basis(S, a, S, b, S);
  std::vector<long long> dense(S.size(), 0);
  for (auto& [k, v] : c) dense[k] = v;
  return {{"basis_labels", labels}, {"a", a}, {"b", b}, {"coefficients", dense}};
}

namespace detail {

inline Mat mat_from_json(const GaloisRing& R, const json& j) {
  int rows = static_cast<int>(j.size()), cols = rows ? static_cast<int>(j[0].size()) : 0;
  Mat M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw ParseError("ragged matrix at row " + std::to_string(i));
    for (int k = 0; k < cols; ++k) M(i, k) = elem_from_json(R, j[i][k]);
  }
  return M;
}

inline FiniteAlgebra algebra_from_json(const GaloisRing& R, const json& j) {
  std::vector<Mat> basis;
  for (auto& m : j.at("basis")) basis.push_back(mat_from_json(R, m));
  if (basis.empty()) throw ParseError("algebra with empty basis");
  return matrix_algebra(R, basis);
}

}  // namespace detail

/// Input: {"p", "N", "degree"?, "source": {"basis": [matrices]}, "target": {"basis": ...},
/// "map": matrix (target rank x source rank), "idempotent": coordinates in the target}.
inline json cmd_lift_idem(const json& in, u64 seed) {
  u64 p = in.at("p").get<u64>();
  int N = in.value("N", kDefaultPrecision);
  if (!is_prime(p)) throw Error("ConfigError", "p is not prime");
  GaloisRing R(smallest_irreducible(p, in.value("degree", 1)), N);
  FiniteAlgebra A = detail::algebra_from_json(R, in.at("source"));
  FiniteAlgebra B = detail::algebra_from_json(R, in.at("target"));
  AlgebraMap f{&A, &B, detail::mat_from_json(R, in.at("map"))};
  if (f.F.rows != B.n || f.F.cols != A.n) throw ParseError("map has the wrong shape");
  Vec target(B.n);
  const json& t = in.at("idempotent");
  if (static_cast<int>(t.size()) != B.n) throw ParseError("idempotent has the wrong length");
  for (int i = 0; i < B.n; ++i) target[i] = elem_from_json(R, t[i]);
  std::mt19937_64 rng(seed);
  auto w = lift_primitive_idempotent(f, target, rng);
  json out = {{"ring", ring_json(R)},
              {"idempotent", vec_json(R, w.idem)},
              {"maps_to_target", f(w.idem) == target},
              {"idempotent_check", A.mul(w.idem, w.idem) == w.idem},
              {"trace", w.trace}};
  if (w.unit) out["unit"] = vec_json(R, *w.unit);
  return out;
}

inline json cmd_witness(const Session& s, const std::string& which) {
  GaloisRing R = s.ring();
  auto K = direct_product(s.G, s.G);
  auto X = bimodule_set(K, s.G);
  auto D = burnside_algebras(X, R);
  Blocks B = blocks_over(s.G, s.spec, s.cfg.N);
  std::vector<const Block*> chosen;
  if (which == "all")
    for (auto& b : B.blocks) chosen.push_back(&b);
  else
    chosen.push_back(&select_block(B, which));
  int n = s.G.order();
  std::vector<Mat> targets;
  for (auto* b : chosen) {
    Mat M(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) M(y, x) = b->idem[s.G.mul(y, s.G.inv(x))];
    targets.push_back(M);
  }
  auto rng = s.rng();
  auto ws = burnside_witnesses(*D, targets, rng);
  json labels = json::array();
  for (int i = 0; i < D->S.size(); ++i) labels.push_back(D->S.label(i));
  json out = json::array();
  bool all_ok = true;
  for (size_t i = 0; i < ws.size(); ++i) {
    bool round = linearize(D->S, R, ws[i].coeffs) == targets[i];
    bool idem = D->Abar.mul(ws[i].coeffs, ws[i].coeffs) == ws[i].coeffs;
    all_ok = all_ok && round && idem;
    out.push_back({{"block", chosen[i]->index},
                   {"summands", ws[i].summands},
                   {"round_trip", round},
                   {"idempotent", idem},
                   {"coefficients", vec_json(R, ws[i].coeffs)}});
  }
  return {{"ring", ring_json(R)}, {"basis_labels", labels}, {"witnesses", out}, {"verdict", all_ok}};
}

inline json side_json(const SideReport& r) {
  return {{"ranks", r.ranks},  {"homology", r.homology}, {"expected_h0", r.expected_h0},
          {"cycle", r.cycle},  {"central", r.central},   {"h0_iso", r.h0_iso},
          {"ok", r.ok()}};
}

struct RouquierOptions {
  std::string block = "principal";
  Strategy strategy = Strategy::Search;
  int P = -1, Q = -1;
  bool negative_control = false;
  bool stable = false;
};

inline json cmd_rouquier_verify(const Session& s, const RouquierOptions& o) {
  Blocks B = block_idempotents_mod_p(s.G, s.spec);
  int bi = select_block(B, o.block).index;
  auto c = rouquier_context(s.G, s.spec, s.cfg.N, bi);
  auto rng = s.rng();
  auto n0 = extract_N0(c, rng);
  auto built = build_complex(c, n0, o.strategy, o.P, o.Q, rng);
  TwoTermComplex M = built.complex;
  TiltingReport rep = built.report;
  if (o.negative_control) {
    if (!M.has_projective_term) throw Error("ConfigError", "the complex has no differential to break");
    M = broken_differential(c, M);
    rep = verify_tilting(c, M);
  }
  json log = json::array();
  for (auto& e : built.log) log.push_back(e.str());
  json out = {{"ring", ring_json(c.R)},
              {"block", bi},
              {"defect_group_order", c.D.order()},
              {"normalizer_order", c.m()},
              {"N0_rank", n0.N0.rank()},
              {"complex", M.description},
              {"projective_term", M.has_projective_term},
              {"hom_rank", built.hom_rank},
              {"search_log", log},
              {"C", side_json(rep.C)},
              {"C_prime", side_json(rep.Cp)},
              {"N", rep.N},
              {"verdict", rep.verdict}};
  if (o.stable) {
    auto st = stable_equiv_check(c, rng);
    out["stable_equivalence"] = {{"rank", st.rank},
                                 {"summands", st.summands},
                                 {"nonprojective", st.nonprojective},
                                 {"iso_to_diagonal", st.iso_to_diagonal},
                                 {"passes", st.passes()}};
  }
  return out;
}

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (auto& e : std::filesystem::directory_iterator(BRAUERLIFT_FIXTURE_DIR))
    if (e.path().extension() == ".grp") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

inline json cmd_fixtures_list() {
  json out = json::array();
  for (auto& n : fixture_names()) {
    PermGroup G = read_group_file(group_path(n));
    out.push_back({{"name", n}, {"degree", G.degree()}, {"order", G.order()}, {"table", table_path(n).has_value()}});
  }
  return {{"fixtures", out}};
}

/// Loads every fixture and binds its character table at each prime dividing the order.
inline json cmd_fixtures_check() {
  json out = json::array();
  bool all_ok = true;
  for (auto& n : fixture_names()) {
    json j = {{"name", n}};
    try {
      PermGroup G = read_group_file(group_path(n));
      auto C = conjugacy_classes(G);
      j["order"] = G.order();
      j["classes"] = C.size();
      if (auto t = table_path(n)) {
        auto T = read_character_table_file(*t);
        json primes = json::array();
        for (u64 p : prime_factors(static_cast<u64>(std::max(G.order(), 2)))) {
          bind_table(G, C, T, p);
          primes.push_back(p);
        }
        j["table_bound_at"] = primes;
      }
      j["ok"] = true;
    } catch (const std::exception& e) {
      j["ok"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    out.push_back(j);
  }
  return {{"fixtures", out}, {"verdict", all_ok}};
}

}  // namespace brauerlift::cli
