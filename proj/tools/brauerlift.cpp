#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include "commands_more.hpp"

using namespace brauerlift;
using namespace brauerlift::cli;

namespace {

std::string render_text(const std::string& command, const json& result) {
  std::ostringstream s;
  s << command << "\n";
  for (auto& [k, v] : result.items()) {
    if (k == "dot") continue;
    s << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return s.str();
}

json envelope(const std::string& command, const RunConfig* cfg, json result) {
  json out = {{"schema_version", kSchemaVersion}, {"command", command}};
  if (cfg)
    out["config"] = {{"group", cfg->group}, {"p", cfg->p}, {"N", cfg->N}, {"q_override", cfg->q_override},
                     {"seed", cfg->seed}};
  out["result"] = std::move(result);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block theory, Brauer trees, Burnside rings and tilting complexes over Galois rings"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  std::string format = "json";
  bool no_cache = false, dot = false;
  std::string block = "principal";

  auto group_opts = [&](CLI::App* c) {
    c->add_option("--group", cfg.group, "fixture name or .grp path")->required();
    c->add_option("--p,--prime", cfg.p, "the prime")->required();
    c->add_option("--prec,-N", cfg.N, "precision N of GR(p^N)");
    c->add_option("--q-override", cfg.q_override, "residue field size instead of the splitting field");
  };
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--json", [&](std::int64_t) { format = "json"; }, "JSON output");
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default $BRAUERLIFT_CACHE)");
  app.add_flag("--no-cache", no_cache, "disable the result cache");

  std::string command;
  std::function<json()> run;
  bool cacheable = true, has_verdict = false;

  auto* blocks = app.add_subcommand("blocks", "block idempotents of GR(q^N)[G]");
  group_opts(blocks);
  blocks->callback([&] { command = "blocks"; run = [&] { return cmd_blocks(Session(cfg)); }; });

  auto* dg = app.add_subcommand("defect-group", "defect group of a block");
  group_opts(dg);
  dg->add_option("--block", block, "principal or block index");
  dg->callback([&] { command = "defect-group"; run = [&] { return cmd_defect_group(Session(cfg), block); }; });

  auto* corr = app.add_subcommand("correspondent", "Brauer correspondent in N_G(D)");
  group_opts(corr);
  corr->add_option("--block", block, "principal or block index");
  corr->callback([&] { command = "correspondent"; run = [&] { return cmd_correspondent(Session(cfg), block); }; });

  auto* tree = app.add_subcommand("brauer-tree", "Brauer tree of a cyclic-defect block");
  group_opts(tree);
  tree->add_option("--block", block, "principal or block index");
  tree->add_flag("--dot", dot, "print Graphviz DOT");
  tree->callback([&] { command = "brauer-tree"; run = [&] { return cmd_brauer_tree(Session(cfg), block); }; });

  auto* burn = app.add_subcommand("burnside", "Burnside ring of G");
  burn->require_subcommand(1);
  int span_a = 0, span_b = 0;
  for (std::string name : {"marks", "idempotents", "basis", "compose"}) {
    auto* sc = burn->add_subcommand(name, "burnside " + name);
    group_opts(sc);
    if (name == "compose") {
      sc->add_option("--a", span_a, "first span index")->required();
      sc->add_option("--b", span_b, "second span index")->required();
    }
    sc->callback([&, name] {
      command = "burnside " + name;
      run = [&, name]() -> json {
        Session s(cfg);
        if (name == "marks") return cmd_burnside_marks(s);
        if (name == "idempotents") return cmd_burnside_idempotents(s);
        if (name == "basis") return cmd_burnside_basis(s);
        return cmd_burnside_compose(s, span_a, span_b);
      };
    });
  }

  std::string lift_input;
  auto* lift = app.add_subcommand("lift-idem", "lift a primitive idempotent along a surjection");
  lift->add_option("--input", lift_input, "JSON file: source, target, map, idempotent")->required()->check(CLI::ExistingFile);
  lift->callback([&] {
    command = "lift-idem";
    cacheable = false;
    run = [&] {
      json in;
      try {
        in = json::parse(slurp(lift_input));
      } catch (const json::parse_error& e) {
        throw ParseError(lift_input + ": " + e.what());
      }
      return cmd_lift_idem(in, cfg.seed);
    };
  });

  auto* wit = app.add_subcommand("witness", "Burnside witnesses for block idempotents");
  group_opts(wit);
  std::string wit_block = "all";
  wit->add_option("--block", wit_block, "all, principal or block index");
  wit->callback([&] {
    command = "witness";
    has_verdict = true;
    run = [&] { return cmd_witness(Session(cfg), wit_block); };
  });

  auto* rq = app.add_subcommand("rouquier", "two-term tilting complexes");
  rq->require_subcommand(1);
  auto* verify = rq->add_subcommand("verify", "build and verify the tilting complex");
  group_opts(verify);
  RouquierOptions ro;
  std::string strategy = "search";
  verify->add_option("--block", ro.block, "principal or block index");
  verify->add_option("--strategy", strategy)->check(CLI::IsMember({"explicit", "search"}));
  verify->add_option("--P", ro.P, "PIM index of A (explicit strategy)");
  verify->add_option("--Q", ro.Q, "PIM index of A' (explicit strategy)");
  verify->add_flag("--negative-control", ro.negative_control, "verify with d scaled by p");
  verify->add_flag("--stable", ro.stable, "also run the stable-equivalence check");
  verify->callback([&] {
    command = "rouquier verify";
    has_verdict = true;
    run = [&] {
      ro.strategy = strategy == "explicit" ? Strategy::Explicit : Strategy::Search;
      if (ro.strategy == Strategy::Explicit && (ro.P < 0 || ro.Q < 0))
        throw Error("ConfigError", "--strategy explicit needs --P and --Q");
      return cmd_rouquier_verify(Session(cfg), ro);
    };
  });

  auto* fx = app.add_subcommand("fixtures", "shipped fixtures");
  fx->require_subcommand(1);
  fx->add_subcommand("list", "list fixtures")->callback([&] {
    command = "fixtures list";
    cacheable = false;
    run = [] { return cmd_fixtures_list(); };
  });
  fx->add_subcommand("check", "load every fixture and bind its table")->callback([&] {
    command = "fixtures check";
    cacheable = false;
    has_verdict = true;
    run = [] { return cmd_fixtures_check(); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    bool with_config = !cfg.group.empty();
    Cache cache(no_cache || !cacheable ? "" : cfg.cache_dir);
    std::string op;
    for (int i = 1; i < argc; ++i) op += std::string(argv[i]) + '\x1f';
    std::string key = cache.enabled() ? cache_key(cfg, command + '\x1e' + block + '\x1e' + op) : "";
    std::string text;
    if (auto hit = cache.get(key)) {
      text = *hit;
    } else {
      text = envelope(command, with_config ? &cfg : nullptr, run()).dump(2) + "\n";
      cache.put(key, text);
    }
    json out = json::parse(text);
    const json& result = out["result"];
    if (dot && result.contains("dot")) {
      std::cout << result["dot"].get<std::string>();
    } else if (format == "json") {
      std::cout << text;
    } else {
      std::cout << render_text(command, result);
    }
    if (has_verdict && !result.value("verdict", false)) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
