#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "setcat/ex_reg.hpp"
#include "setcat/set_models.hpp"
#include "setcat/wtypes.hpp"

using namespace setcat;
using nlohmann::json;

namespace {

struct Check {
  std::string id;
  Status status = Status::Pass;
  std::string detail;
  std::string witness;
  double wall_ms = 0.0;
};

struct Runner {
  std::vector<Check> checks;

  void run(const std::string& id, const std::function<Check()>& body) {
    auto start = std::chrono::steady_clock::now();
    Check c = body();
    c.id = id;
    c.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    checks.push_back(std::move(c));
  }

  void add(const AxiomReport& rep) {
    run(rep.axiom, [&] {
      Check c;
      c.status = rep.status;
      c.detail = rep.detail;
      if (rep.counterexample) c.witness = rep.counterexample->note;
      else if (rep.witness) c.witness = rep.witness->note;
      return c;
    });
  }

  int exit_code() const {
    bool any_fail = false, any_inconclusive = false;
    for (const auto& c : checks) {
      if (c.status == Status::Fail) any_fail = true;
      if (c.status == Status::Inconclusive) any_inconclusive = true;
    }
    if (any_fail) return 1;
    if (any_inconclusive) return 3;
    return 0;
  }
};

std::string status_word(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::OutOfScope: return "out-of-scope";
  }
  return "unknown";
}

void emit(const Runner& runner, const std::string& command,
          const std::string& json_path) {
  for (const auto& c : runner.checks)
    std::cout << c.id << ": " << status_word(c.status)
              << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  if (json_path.empty()) return;
  json out;
  out["schema"] = 1;
  out["command"] = command;
  out["checks"] = json::array();
  for (const auto& c : runner.checks)
    out["checks"].push_back({{"id", c.id},
                             {"status", status_word(c.status)},
                             {"detail", c.detail},
                             {"witness", c.witness},
                             {"wall_ms", c.wall_ms}});
  std::ofstream f(json_path);
  f << out.dump(2) << "\n";
}

// restricted spec file: known keys only, flags override
struct SpecFile {
  std::optional<std::size_t> scope, depth, rank, bound;
  std::optional<std::string> cls, sig, formula;
};

SpecFile load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CategoryError("cannot open spec file " + path);
  json doc = json::parse(f);
  SpecFile out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "scope") out.scope = value.get<std::size_t>();
    else if (key == "depth") out.depth = value.get<std::size_t>();
    else if (key == "rank") out.rank = value.get<std::size_t>();
    else if (key == "bound") out.bound = value.get<std::size_t>();
    else if (key == "class") out.cls = value.get<std::string>();
    else if (key == "sig") out.sig = value.get<std::string>();
    else if (key == "formula") out.formula = value.get<std::string>();
    else throw CategoryError("unknown spec key '" + key + "'");
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t used = 0;
    out.push_back(std::stoul(text.substr(pos), &used));
    pos += used;
    if (pos < text.size()) {
      if (text[pos] != ',') throw CategoryError("malformed size list");
      ++pos;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite workbench for small-map classes, completions, W-types "
               "and hereditarily finite set models"};
  app.require_subcommand(1);

  std::string spec_path, json_path, cls_text = "fiber:2", sig_text = "0,2";
  std::string formula_text, function_text;
  std::size_t scope_size = 3, depth = 3, rank = 3;
  std::size_t bound = 0;  // 0 means derive from the class
  bool stats = false;
  std::vector<std::string> axiom_ids;

  app.add_option("--spec", spec_path, "JSON spec file; flags override it");
  app.add_option("--json", json_path, "write a JSON report here");

  auto* cmd_axioms = app.add_subcommand("check-axioms",
                                        "run axiom checkers on a map class");
  cmd_axioms->add_option("--class", cls_text);
  cmd_axioms->add_option("--scope", scope_size);
  cmd_axioms->add_option("--axioms", axiom_ids)->delimiter(',');

  auto* cmd_scov = app.add_subcommand(
      "scov", "close a display class under covers and recheck");
  cmd_scov->add_option("--class", cls_text);
  cmd_scov->add_option("--scope", scope_size);

  auto* cmd_repr = app.add_subcommand(
      "represent", "check representability and the universal small map");
  cmd_repr->add_option("--class", cls_text);
  cmd_repr->add_option("--scope", scope_size);
  cmd_repr->add_option("--bound", bound);

  auto* cmd_complete = app.add_subcommand(
      "complete", "verify the exact completion theorem clauses");
  cmd_complete->add_option("--class", cls_text);
  cmd_complete->add_option("--scope", scope_size);

  auto* cmd_wtypes = app.add_subcommand(
      "wtypes", "enumerate well-founded trees and rebuild them via a span");
  cmd_wtypes->add_option("--sig", sig_text);
  cmd_wtypes->add_option("--depth", depth);
  cmd_wtypes->add_option("--bound", bound);

  auto* cmd_buildv = app.add_subcommand(
      "build-v", "materialize universe stages of hereditarily finite sets");
  cmd_buildv->add_option("--rank", rank);
  cmd_buildv->add_option("--bound", bound);
  cmd_buildv->add_flag("--stats", stats);

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula");
  cmd_eval->add_option("--rank", rank);
  cmd_eval->add_option("--formula", formula_text);

  auto* cmd_fullness = app.add_subcommand(
      "fullness", "compute the full set of minimal multi-valued sections");
  cmd_fullness->add_option("--function", function_text);
  cmd_fullness->add_option("--rank", rank);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Runner runner;
  // record what was analyzed, not where the report went
  std::string command;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--json" || arg == "--spec") {
      ++i;
      continue;
    }
    command += std::string(command.empty() ? "" : " ") + arg;
  }

  try {
    if (!spec_path.empty()) {
      SpecFile spec = load_spec(spec_path);
      if (spec.scope && !cmd_axioms->count("--scope") &&
          !cmd_scov->count("--scope") && !cmd_repr->count("--scope") &&
          !cmd_complete->count("--scope"))
        scope_size = *spec.scope;
      if (spec.cls && !cmd_axioms->count("--class") &&
          !cmd_scov->count("--class") && !cmd_repr->count("--class") &&
          !cmd_complete->count("--class"))
        cls_text = *spec.cls;
      if (spec.sig && !cmd_wtypes->count("--sig")) sig_text = *spec.sig;
      if (spec.depth && !cmd_wtypes->count("--depth")) depth = *spec.depth;
      if (spec.rank && !cmd_buildv->count("--rank") &&
          !cmd_eval->count("--rank") && !cmd_fullness->count("--rank"))
        rank = *spec.rank;
      if (spec.bound && bound == 0) bound = *spec.bound;
      if (spec.formula && formula_text.empty()) formula_text = *spec.formula;
    }

    if (cmd_axioms->parsed()) {
      Scope scope(scope_size, scope_size);
      MapClass cls = MapClass::parse(cls_text);
      std::vector<std::string> which =
          axiom_ids.empty() ? small_map_axioms() : axiom_ids;
      for (const auto& rep : check_axioms(cls, scope, which)) runner.add(rep);
    } else if (cmd_scov->parsed()) {
      Scope scope(scope_size, scope_size);
      MapClass closure = scov(MapClass::parse(cls_text), scope);
      runner.run("closure", [&] {
        return Check{.detail = closure.str()};
      });
      for (const auto& rep : check_axioms(closure, scope, small_map_axioms()))
        runner.add(rep);
    } else if (cmd_repr->parsed()) {
      Scope scope(scope_size, scope_size);
      MapClass cls = MapClass::parse(cls_text);
      std::size_t k = bound ? bound : cls.bound();
      if (k == 0) throw CategoryError("no fiber bound for the representation");
      Representation pi = fiber_bound_representation(k);
      runner.add(check_representation(pi, cls, scope));
      Representation pip = universal_small_map(pi, cls, scope);
      runner.add(check_universal(pip, cls, scope));
    } else if (cmd_complete->parsed()) {
      Scope scope(scope_size, scope_size);
      MapClass cls = MapClass::parse(cls_text);
      for (const auto& rep : completion_report(scope, cls)) runner.add(rep);
    } else if (cmd_wtypes->parsed()) {
      PolySig sig = PolySig::from_fiber_sizes(parse_sizes(sig_text));
      std::size_t widest = 0;
      for (const auto& fib : sig.fibers()) widest = std::max(widest, fib.size());
      std::size_t k = bound ? bound : std::max<std::size_t>(widest, 1);
      runner.run("enumeration", [&] {
        WStore store(sig);
        std::size_t count = 0;  // recurrence oracle
        for (const auto& fib : sig.fibers())
          if (fib.empty()) ++count;
        for (std::size_t d = 0; d < depth; ++d) {
          std::size_t next = 0;
          for (const auto& fib : sig.fibers()) {
            std::size_t pow = 1;
            for (std::size_t i = 0; i < fib.size(); ++i) pow *= count;
            next += pow;
          }
          count = next;
        }
        std::size_t got = wtype_enum(store, depth).size();
        std::cout << "trees of height <= " << depth << ": " << got << "\n";
        Check c;
        if (got != count) {
          c.status = Status::Fail;
          c.detail = "count " + std::to_string(got) +
                     " disagrees with the recurrence " + std::to_string(count);
        }
        return c;
      });
      runner.run("span-reconstruction", [&] {
        WStore target(sig);
        CollectionSpan span =
            collection_span_from(fiber_bound_representation(k), sig);
        Check c;
        if (wtype_via_span(target, span, depth) != wtype_enum(target, depth)) {
          c.status = Status::Fail;
          c.detail = "span quotient disagrees with direct enumeration";
        }
        return c;
      });
    } else if (cmd_buildv->parsed()) {
      runner.run("universe", [&] {
        auto v = universe(rank);
        if (stats)
          std::cout << "|V_" << rank << "| = " << v.size() << "\n";
        Check c;
        c.detail = std::to_string(v.size()) + " sets of rank below " +
                   std::to_string(rank);
        return c;
      });
      if (bound) {
        runner.run("tree-collapse", [&] {
          Check c;
          auto stage = build_v(fiber_bound_representation(bound),
                               rank == 0 ? 0 : rank - 1);
          if (stage != universe(rank)) {
            c.status = Status::Fail;
            c.detail = "collapsed trees disagree with the universe stage";
          }
          return c;
        });
      }
    } else if (cmd_eval->parsed()) {
      if (formula_text.empty()) throw CategoryError("no formula given");
      Formula phi = parse_formula(formula_text);
      auto free = free_variables(phi);
      if (!free.empty())
        throw CategoryError("formula has free variables; bind or substitute "
                            "literals");
      runner.run("eval", [&] {
        bool value = eval_formula(phi, {}, rank);
        std::cout << (value ? "true" : "false") << "\n";
        Check c;
        c.status = value ? Status::Pass : Status::Fail;
        c.detail = formula_str(phi) +
                   (formula_bounded(phi)
                        ? ""
                        : " [unbounded quantifiers relativized to V_" +
                              std::to_string(rank) + "]");
        return c;
      });
    } else if (cmd_fullness->parsed()) {
      if (function_text.empty()) throw CategoryError("no function given");
      HF f = hf_parse(function_text);
      runner.run("fullness", [&] {
        auto rep = check_set_axiom("fullness", rank, {{}, {f}});
        std::cout << fullness_set(f).str() << "\n";
        Check c;
        c.status = rep.status;
        c.detail = rep.detail;
        if (!rep.witnesses.empty()) c.witness = rep.witnesses.front().str();
        return c;
      });
    }
  } catch (const CategoryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  emit(runner, command, json_path);
  return runner.exit_code();
}
