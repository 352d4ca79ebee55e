// polyverse: constructions, law checks and seeded suites on finite
// polynomials and universes.
//
// Exit codes: 0 all checks pass, 1 a law fails, 2 input or usage error,
// 3 every instance exceeded the enumeration cap.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyverse/polyverse.hpp"

using namespace polyverse;
using json = io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_law = 1;
constexpr int exit_input = 2;
constexpr int exit_capped = 3;

struct Options {
  SuiteConfig cfg;
  std::string format = "text";
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
}

Universe builtin(const std::string& name) {
  if (name == "bool") return mk_bool_universe();
  if (name == "skewed") return mk_skewed_universe();
  fail(ErrorKind::parse, "unknown built-in universe '" + name + "' (bool | skewed)");
}

NamedUniverse universe_arg(const std::string& arg) {
  if (arg == "bool" || arg == "skewed") return {arg, builtin(arg)};
  return {"file:" + arg, io::universe_from_json(read_json(arg))};
}

int emit(const Options& o, const std::vector<Report>& reports) {
  bool failed = false;
  bool all_capped = true;
  for (const auto& r : reports) {
    std::cout << (o.format == "json" ? render_json(r) : render_text(r));
    failed = failed || r.exit_code() == exit_law;
    all_capped = all_capped && r.exit_code() == exit_capped;
  }
  if (failed) return exit_law;
  return all_capped && !reports.empty() ? exit_capped : exit_ok;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

/// A one-instance report from a list of law checks.
Report checks_report(const std::string& suite, const Options& o, const std::string& descriptor,
                     const std::function<std::vector<LawCheck>()>& make) {
  return run_instances(suite, o.cfg, 1, [&](std::size_t, InstanceLog& log) {
    log.describe(descriptor);
    for (const auto& c : make()) log.check(c);
  });
}

json generate(const std::string& kind, const Options& o, std::size_t index, Gen& g) {
  const std::size_t m = std::max<std::size_t>(1, o.cfg.max_size);
  if (kind == "polynomial") {
    return io::to_json(g.poly(g.set("i", 1, std::min<std::size_t>(m, 2)), g.set("j", 1, std::min<std::size_t>(m, 2)),
                              "p" + std::to_string(index) + "_", m, 2));
  }
  if (kind == "morphism") {
    const Polynomial G = g.poly(g.set("i", 1, std::min<std::size_t>(m, 2)), g.set("j", 1, std::min<std::size_t>(m, 2)),
                                "g" + std::to_string(index) + "_", m, 2);
    const PolyMorphism psi = g.cartesian_into(G, "f" + std::to_string(index) + "_", m);
    if (g.coin())
      if (auto phi = g.morphism(psi.src(), G)) return io::to_json(*phi);
    return io::to_json(psi);
  }
  if (kind == "universe") return io::to_json(g.universe());
  fail(ErrorKind::parse, "unknown kind '" + kind + "' (polynomial | morphism | universe)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite polynomial functors, their 2-cells and natural-model universes"};
  app.require_subcommand(1);
  Options o;
  auto add_flags = [&](CLI::App* c) {
    c->add_option("--seed", o.cfg.seed, "Generator seed");
    c->add_option("--count", o.cfg.count, "Number of instances")->check(CLI::PositiveNumber);
    c->add_option("--max-size", o.cfg.max_size, "Bound on generated set sizes")->check(CLI::PositiveNumber);
    c->add_option("--cap", o.cfg.cap, "Enumeration cap")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  std::vector<std::string> args;
  std::string universe_opt;
  std::function<int()> action;

  // poly
  auto* poly = app.add_subcommand("poly", "Polynomial constructions");
  poly->require_subcommand(1);
  auto* poly_compose = poly->add_subcommand("compose", "Composite G.F of F.json then G.json");
  poly_compose->add_option("files", args, "F.json G.json")->required()->expected(2);
  poly_compose->callback([&] {
    action = [&] {
      const Polynomial F = io::poly_from_json(read_json(args[0]));
      const Polynomial G = io::poly_from_json(read_json(args[1]));
      print(io::to_json(compose(G, F)));
      return exit_ok;
    };
  });
  auto* poly_extend = poly->add_subcommand("extend", "Extension P_F(X) of a family X.json");
  poly_extend->add_option("files", args, "F.json X.json")->required()->expected(2);
  poly_extend->callback([&] {
    action = [&] {
      const Polynomial F = io::poly_from_json(read_json(args[0]));
      const FinFamily X = io::family_from_json(read_json(args[1]));
      print(io::to_json(extend(F, X)));
      return exit_ok;
    };
  });

  // cell
  auto* cell = app.add_subcommand("cell", "2-cells between polynomials");
  cell->require_subcommand(1);
  auto* cell_check = cell->add_subcommand("check", "Validate a morphism record");
  add_flags(cell_check);
  cell_check->add_option("file", args, "morphism.json")->required()->expected(1);
  cell_check->callback([&] {
    action = [&] {
      const json j = read_json(args[0]);
      Report r = run_instances("cell-check", o.cfg, 1, [&](std::size_t, InstanceLog& log) {
        log.describe(args[0]);
        log.guarded("morphism.valid", [&] {
          const PolyMorphism m = io::morphism_from_json(j);
          log.check("morphism.valid", true,
                    std::string(m.cartesian() ? "cartesian" : "not cartesian") + ", vertex of " +
                        std::to_string(m.vertex().size()));
        });
      });
      return emit(o, {r});
    };
  });
  auto* cell_compose = cell->add_subcommand("compose", "Vertical composite psi o phi");
  cell_compose->add_option("files", args, "phi.json psi.json")->required()->expected(2);
  cell_compose->callback([&] {
    action = [&] {
      const PolyMorphism phi = io::morphism_from_json(read_json(args[0]));
      const PolyMorphism psi = io::morphism_from_json(read_json(args[1]));
      print(io::to_json(vcomp(psi, phi)));
      return exit_ok;
    };
  });

  // coherence
  auto* coherence = app.add_subcommand("coherence", "Pentagon and triangle sweeps");
  coherence->require_subcommand(1);
  auto* coherence_run = coherence->add_subcommand("run", "Run the coherence suite");
  add_flags(coherence_run);
  coherence_run->callback([&] { action = [&] { return emit(o, {coherence_suite(o.cfg)}); }; });

  // internal
  auto* internal = app.add_subcommand("internal", "Internal categories and transformations");
  internal->require_subcommand(1);
  auto* internal_cat = internal->add_subcommand("cat", "Category laws of the internal full subcategory of a 1 -> 1 polynomial");
  add_flags(internal_cat);
  internal_cat->add_option("file", args, "F.json")->required()->expected(1);
  internal_cat->callback([&] {
    action = [&] {
      const Polynomial F = io::poly_from_json(read_json(args[0]));
      return emit(o, {checks_report("internal-cat", o, args[0], [&] {
                    const InternalCategory C = internal_full_subcat(F.projection());
                    auto laws = check_category_laws(C);
                    laws.insert(laws.begin(), LawCheck{"category-size", true,
                                                       std::to_string(C.obj.size()) + " objects, " +
                                                           std::to_string(C.mor.size()) + " morphisms"});
                    return laws;
                  })});
    };
  });
  auto* internal_equiv = internal->add_subcommand("check-equiv", "Adjustments versus internal transformations");
  add_flags(internal_equiv);
  internal_equiv->add_option("files", args, "phi.json psi.json")->required()->expected(2);
  internal_equiv->callback([&] {
    action = [&] {
      const PolyMorphism phi = io::morphism_from_json(read_json(args[0]));
      const PolyMorphism psi = io::morphism_from_json(read_json(args[1]));
      return emit(o, {checks_report("internal-equiv", o, args[0] + " " + args[1], [&] {
                    const EquivalenceCounts e = check_four_conditions(phi, psi);
                    return std::vector<LawCheck>{
                        {"equivalence.same-sets", e.same_sets,
                         "candidates=" + std::to_string(e.candidates) + " natural=" + std::to_string(e.natural) +
                             " commuting=" + std::to_string(e.commuting) +
                             " conjugating=" + std::to_string(e.conjugating) +
                             " over-positions=" + std::to_string(e.over_positions)}};
                  })});
    };
  });

  // model
  auto* model = app.add_subcommand("model", "Universes and their pseudomonads");
  model->require_subcommand(1);
  auto* model_check = model->add_subcommand("check", "Validate the unit, Sigma and Pi squares");
  add_flags(model_check);
  model_check->add_option("universe", args, "universe.json | bool | skewed")->required()->expected(1);
  model_check->callback([&] {
    action = [&] {
      const NamedUniverse u = universe_arg(args[0]);
      return emit(o, {checks_report("model-check", o, u.name, [&] { return check_universe(u.universe); })});
    };
  });
  auto* model_pm = model->add_subcommand("pseudomonad", "Pseudomonad and pseudoalgebra of a universe");
  add_flags(model_pm);
  model_pm->add_option("universe", args, "universe.json | bool | skewed")->required()->expected(1);
  model_pm->callback([&] {
    action = [&] {
      const std::vector<NamedUniverse> u{universe_arg(args[0])};
      return emit(o, {pseudomonad_suite(o.cfg, u), pseudoalgebra_suite(o.cfg, u)});
    };
  });
  auto* model_isos = model->add_subcommand("isos", "Type isomorphism table of a universe");
  add_flags(model_isos);
  model_isos->add_option("universe", args, "universe.json | bool | skewed")->required()->expected(1);
  model_isos->callback([&] {
    action = [&] { return emit(o, {type_isos_suite(o.cfg, {universe_arg(args[0])})}); };
  });
  auto* model_builtin = model->add_subcommand("builtin", "Print a built-in universe");
  model_builtin->add_option("name", args, "bool | skewed")->required()->expected(1);
  model_builtin->callback([&] {
    action = [&] {
      print(io::to_json(builtin(args[0])));
      return exit_ok;
    };
  });

  // suite
  auto* suite = app.add_subcommand("suite", "Run a named verification suite");
  add_flags(suite);
  suite->add_option("name", args, "Suite name")->required()->expected(1);
  suite->add_option("--universe", universe_opt, "Universe for the universe suites: file, bool or skewed");
  suite->callback([&] {
    action = [&] {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), args[0]) == names.end())
        fail(ErrorKind::parse, "unknown suite '" + args[0] + "'");
      std::vector<NamedUniverse> given;
      if (!universe_opt.empty()) given.push_back(universe_arg(universe_opt));
      return emit(o, {run_suite(args[0], o.cfg, given)});
    };
  });

  // generate
  auto* gen = app.add_subcommand("generate", "Seeded random interchange records, one per line");
  add_flags(gen);
  gen->add_option("kind", args, "polynomial | morphism | universe")->required()->expected(1);
  gen->callback([&] {
    action = [&] {
      Gen g(o.cfg.seed);
      ScopedCap cap(o.cfg.cap);
      for (std::size_t i = 0; i < o.cfg.count; ++i) std::cout << generate(args[0], o, i, g).dump() << "\n";
      return exit_ok;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "polyverse: " << e.what() << "\n";
    if (e.kind() == ErrorKind::cap_exceeded) return exit_capped;
    if (e.kind() == ErrorKind::parse || e.kind() == ErrorKind::shape) return exit_input;
    // A record that parses but violates a law.
    return exit_law;
  } catch (const std::exception& e) {
    std::cerr << "polyverse: " << e.what() << "\n";
    return exit_input;
  }
}
