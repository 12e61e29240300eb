#include "cli.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdi/conditions.hpp"
#include "bdi/deliberate.hpp"
#include "bdi/desugar.hpp"
#include "bdi/dot.hpp"
#include "bdi/dtree.hpp"
#include "bdi/model_io.hpp"
#include "bdi/parser.hpp"
#include "bdi/policy.hpp"
#include "bdi/printer.hpp"
#include "bdi/satisfaction.hpp"
#include "bdi/plans_intended.hpp"
#include "bdi/transform.hpp"
#include "bdi/verify.hpp"

namespace bdi::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  bool color = false;

  std::string paint(const std::string& text, const char* code) const {
    return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
  }
  std::string verdict(bool ok) const {
    return ok ? paint("true", "32") : paint("false", "31");
  }
  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
};

Json plans_json(const std::vector<Plan>& plans) {
  Json out = Json::array();
  for (const auto& p : plans) out.push_back(to_text(p));
  return out;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const Context& c, const std::string& file) {
  std::string text = read_file(file);
  Json probe;
  try {
    probe = Json::parse(text);
  } catch (const Json::parse_error&) {
    parse_dtree(text);  // rethrows with a position
  }
  std::vector<std::string> problems;
  std::string kind;
  if (probe.is_object() && probe.contains("worlds")) {
    kind = "model";
    for (const auto& issue : validate_interpretation(parse_model(text)))
      problems.push_back(issue.detail);
  } else {
    kind = "dtree";
    for (const auto& v : validate(parse_dtree(text)))
      problems.push_back(std::string(to_string(v.kind)) + ": " + v.detail);
  }
  if (c.json) {
    c.emit({{"file", file}, {"kind", kind}, {"valid", problems.empty()}, {"violations", problems}});
  } else {
    for (const auto& p : problems) c.out << p << "\n";
    c.out << file << ": " << (problems.empty() ? c.paint("valid", "32") : c.paint("invalid", "31"))
          << " " << kind << "\n";
  }
  return problems.empty() ? kSuccess : kPropertyFalse;
}

// ---------------------------------------------------------------------------
// transform

int cmd_transform(const Context& c, const std::string& file, const std::string& out_file,
                  const std::string& extras_file, const std::string& dot_dir) {
  DecisionTree dt = load_dtree(file);
  std::vector<ExtraBranch> extras;
  if (!extras_file.empty()) extras = load_extras(extras_file);
  TransformResult r = transform(dt, extras);
  const Interpretation& m = r.interpretation;
  if (!out_file.empty()) store_model(m, out_file);
  if (!dot_dir.empty()) {
    fs::create_directories(dot_dir);
    for (const auto& [id, w] : m.worlds) write_file((fs::path(dot_dir) / (id + ".dot")).string(), render_dot(w));
  }
  const auto& mu = m.prob.at(m.designated);
  if (c.json) {
    Json goals = Json::array();
    for (std::size_t i = 0; i < r.goal_worlds.size(); ++i) {
      const auto& b = r.belief_worlds[i];
      goals.push_back({{"goal", r.goal_worlds[i]}, {"belief", b}, {"prob", mu.at(b)}});
    }
    c.emit({{"worlds", goals}, {"designated", m.designated.key()}, {"model", out_file}});
    return kSuccess;
  }
  c.out << "goal world        belief world      probability\n";
  for (std::size_t i = 0; i < r.goal_worlds.size(); ++i) {
    const auto& b = r.belief_worlds[i];
    c.out << std::left << std::setw(18) << r.goal_worlds[i] << std::setw(18) << b
          << format_number(mu.at(b)) << "\n";
  }
  c.out << "designated " << m.designated.key() << "\n";
  if (!out_file.empty()) c.out << "wrote " << out_file << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------
// deliberate

int cmd_deliberate(const Context& c, const std::string& file, const std::string& procedure,
                   bool oracle, const std::string& emit_model, const std::string& extras_file) {
  auto proc = parse_procedure(procedure);
  if (!proc) throw ParseError("unknown procedure '" + procedure + "'");
  DecisionTree dt = load_dtree(file);
  std::vector<ExtraBranch> extras;
  if (!extras_file.empty()) extras = load_extras(extras_file);

  DeliberationOutcome outcome = deliberate(dt, *proc);
  Interpretation model = transform(dt, extras).interpretation;
  PwResult pw = pw_deliberate_detailed(model, *proc);
  const Interpretation& after = pw.interpretation;
  if (!emit_model.empty()) store_model(after, emit_model);

  std::vector<std::pair<StateFormula, bool>> intentions;
  bool all_true = true;
  for (const auto& f : intention_formulas(outcome)) {
    bool ok = check(after, after.designated, f);
    all_true = all_true && ok;
    intentions.emplace_back(f, ok);
  }
  PlanIntentionReport intended = check_plans_intended(outcome, after);
  all_true = all_true && intended.holds;

  std::optional<OracleReport> report;
  if (oracle) report = compare_with_policies(dt, outcome, pw);
  bool agrees = !report || (report->values_agree &&
                            (*proc == Procedure::Maximin || report->choices_agree));

  if (c.json) {
    Json j = {{"procedure", to_string(*proc)},
              {"value", outcome.root_value},
              {"plans", plans_json(outcome.plans)}};
    Json ints = Json::array();
    for (const auto& [f, ok] : intentions) ints.push_back({{"formula", render(f)}, {"holds", ok}});
    j["intentions"] = std::move(ints);
    Json wit = Json::array();
    for (const auto& w : intended.witnesses)
      wit.push_back({{"plan", to_text(w.plan)},
                     {"formula", render(w.formula)},
                     {"holds", w.holds},
                     {"literal", render(w.literal)},
                     {"literal_holds", w.literal_holds}});
    j["plans_intended"] = {{"holds", intended.holds}, {"witnesses", std::move(wit)}};
    if (report)
      j["oracle"] = {{"agrees", agrees},
                     {"tree_value", report->tree_value},
                     {"policy_value", report->policy_value},
                     {"values_agree", report->values_agree},
                     {"choices_agree", report->choices_agree},
                     {"policies", report->policies}};
    c.emit(j);
  } else {
    c.out << "procedure " << to_string(*proc) << "\n";
    c.out << "value " << format_number(outcome.root_value) << "\n";
    c.out << "plans\n";
    for (const auto& p : outcome.plans) c.out << "  " << to_text(p) << "\n";
    c.out << "intentions\n";
    for (const auto& [f, ok] : intentions) c.out << "  " << c.verdict(ok) << "  " << render(f) << "\n";
    c.out << "plans intended\n";
    for (const auto& w : intended.witnesses) c.out << "  " << c.verdict(w.holds) << "  " << render(w.formula) << "\n";
    if (report) {
      if (agrees) {
        c.out << c.paint("oracle agrees", "32");
      } else if (*proc == Procedure::Maximin) {
        c.out << c.paint("oracle differs (maximin, reported only)", "33");
      } else {
        c.out << c.paint("oracle disagrees", "31");
      }
      c.out << " (" << report->policies << " policies, policy value "
            << format_number(report->policy_value) << ")\n";
    }
    if (!emit_model.empty()) c.out << "wrote " << emit_model << "\n";
  }
  if (report && !agrees && *proc == Procedure::MaxExpVal) return kInvariantFailure;
  return all_true ? kSuccess : kPropertyFalse;
}

// ---------------------------------------------------------------------------
// check

// PROB and PAYOFF atoms reachable through boolean connectives only, i.e.
// evaluated at the same situation as the whole formula.
void collect_atoms(const StateFormula& f, std::vector<StateFormula>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, state::Not>) {
          collect_atoms(n.arg, out);
        } else if constexpr (std::is_same_v<T, state::And> || std::is_same_v<T, state::Or> ||
                             std::is_same_v<T, state::Implies>) {
          collect_atoms(n.lhs, out);
          collect_atoms(n.rhs, out);
        } else if constexpr (std::is_same_v<T, state::Prob> || std::is_same_v<T, state::Payoff>) {
          out.push_back(f);
        }
      },
      f->node);
}

int cmd_check(const Context& c, const std::string& file, const std::string& text,
              const std::string& at) {
  Interpretation m = load_model(file);
  auto issues = validate_interpretation(m);
  if (!issues.empty()) throw ModelError(file + ": " + issues.front().detail);
  StateFormula f = parse_state_formula(text);
  Situation s = at.empty() ? m.designated : parse_situation(at);
  if (!m.has_situation(s)) throw ModelError("unknown situation " + s.key());
  bool holds = check(m, s, f);

  std::vector<StateFormula> atoms;
  collect_atoms(f, atoms);
  Json measures = Json::array();
  Json ranges = Json::array();
  std::ostringstream detail;
  for (const auto& atom : atoms) {
    if (const auto* p = std::get_if<state::Prob>(&atom->node)) {
      for (const auto& t : p->terms) {
        double v;
        std::string label = "PROB(" + render(t.formula);
        if (t.condition) {
          label += " | " + render(t.condition);
          double joint = prob_measure(m, s, desugar(conj(t.formula, t.condition)));
          double given = prob_measure(m, s, desugar(t.condition));
          v = given > 0.0 ? joint / given : std::nan("");
        } else {
          v = prob_measure(m, s, desugar(t.formula));
        }
        label += ")";
        if (std::isnan(v)) {
          measures.push_back({{"term", label}, {"measure", nullptr}});
          detail << "  " << label << " is undefined (the condition has probability 0)\n";
        } else {
          measures.push_back({{"term", label}, {"measure", v}});
          detail << "  " << label << " = " << format_number(v) << "\n";
        }
      }
    } else if (const auto* p = std::get_if<state::Payoff>(&atom->node)) {
      std::string label = "PAYOFF(" + render(p->formula) + ")";
      auto range = payoff_range(m, s, desugar(p->formula));
      if (range) {
        ranges.push_back({{"term", label}, {"min", range->min}, {"max", range->max}});
        detail << "  " << label << " in [" << format_number(range->min) << ", "
               << format_number(range->max) << "]\n";
      } else {
        ranges.push_back({{"term", label}, {"min", nullptr}, {"max", nullptr}});
        detail << "  " << label << " has no qualifying path\n";
      }
    }
  }
  if (c.json) {
    c.emit({{"formula", render(f)},
            {"situation", s.key()},
            {"holds", holds},
            {"measures", measures},
            {"payoffs", ranges}});
  } else {
    c.out << c.verdict(holds) << "  " << render(f) << " at " << s.key() << "\n" << detail.str();
  }
  return holds ? kSuccess : kPropertyFalse;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Context& c, std::size_t trials, std::uint64_t seed, const std::string& cls,
               const std::string& dump_dir) {
  auto trial_class = parse_trial_class(cls);
  if (!trial_class) throw ParseError("unknown class '" + cls + "'");
  auto start = std::chrono::steady_clock::now();
  VerifyReport report = run_verify(trials, seed, *trial_class);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> dumps;
  if (!report.failures.empty()) {
    fs::create_directories(dump_dir);
    for (const auto& f : report.failures) {
      std::string path = (fs::path(dump_dir) / ("trial_" + std::to_string(f.trial) + ".dtree")).string();
      store_dtree(f.tree, path);
      dumps.push_back(path);
    }
  }
  if (c.json) {
    Json failures = Json::array();
    for (std::size_t i = 0; i < report.failures.size(); ++i) {
      const auto& f = report.failures[i];
      failures.push_back({{"trial", f.trial}, {"check", f.check}, {"detail", f.detail}, {"tree", dumps[i]}});
    }
    c.emit({{"class", to_string(*trial_class)},
            {"seed", seed},
            {"trials", trials},
            {"passed", report.pass()},
            {"failures", failures},
            {"goal_worlds", report.stats.goal_worlds},
            {"policies", report.stats.policies},
            {"intention_formulas", report.stats.intention_formulas},
            {"intention_formulas_false", report.stats.intention_formulas_false}});
  } else {
    for (std::size_t i = 0; i < report.failures.size(); ++i) {
      const auto& f = report.failures[i];
      c.out << c.paint("FAIL", "31") << " trial " << f.trial << " [" << f.check << "] " << f.detail
            << " (tree in " << dumps[i] << ")\n";
    }
    c.out << to_string(*trial_class) << ": " << trials - report.failures.size() << "/" << trials
          << " trials passed, seed " << seed << ", " << report.stats.policies << " policies scored, "
          << std::fixed << std::setprecision(2) << seconds << " s\n";
    c.out.unsetf(std::ios::floatfield);
    if (report.stats.intention_formulas_false > 0)
      c.out << "note: " << report.stats.intention_formulas_false << " of "
            << report.stats.intention_formulas << " emitted intention formulas are false\n";
  }
  return report.pass() ? kSuccess : kInvariantFailure;
}

// ---------------------------------------------------------------------------
// dot

int cmd_dot(const Context& c, const std::string& file, const std::string& world) {
  std::string text = read_file(file);
  Json probe = Json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("worlds")) {
    Interpretation m = parse_model(text);
    if (!world.empty()) {
      c.out << render_dot(m.world(world));
    } else {
      for (const auto& [_, w] : m.worlds) c.out << render_dot(w);
    }
  } else {
    c.out << render_dot(parse_dtree(text));
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision trees to BDI intentions: transform, deliberate, model-check."};
  app.name("bdi");
  app.require_subcommand(1);
  Context c{out, err};
  app.add_flag("--json", c.json, "Machine-readable output");

  std::string file;
  std::string out_file;
  std::string extras;
  std::string dot_dir;
  std::string procedure = "maxexpval";
  bool oracle = false;
  std::string emit_model;
  std::string formula;
  std::string at;
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  std::string cls = "maxexpval";
  std::string dump_dir = "verify-failures";
  std::string world;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a .dtree or model file");
  validate_cmd->add_option("file", file, "Input file")->required();

  auto* transform_cmd = app.add_subcommand("transform", "Decision tree to goal and belief worlds");
  transform_cmd->add_option("file", file, "Decision tree")->required();
  transform_cmd->add_option("-o,--out", out_file, "Model file to write");
  transform_cmd->add_option("--extras", extras, "Believed-only branches (JSON)");
  transform_cmd->add_option("--dot", dot_dir, "Directory for one DOT file per world");

  auto* deliberate_cmd = app.add_subcommand("deliberate", "Run maximin or maxexpval deliberation");
  deliberate_cmd->add_option("file", file, "Decision tree")->required();
  deliberate_cmd->add_option("-p,--procedure", procedure, "maximin or maxexpval")
      ->check(CLI::IsMember({"maximin", "maxexpval"}));
  deliberate_cmd->add_flag("--oracle", oracle, "Compare with policy enumeration");
  deliberate_cmd->add_option("--emit-model", emit_model, "Write the deliberated model");
  deliberate_cmd->add_option("--extras", extras, "Believed-only branches (JSON)");

  auto* check_cmd = app.add_subcommand("check", "Model-check a formula");
  check_cmd->add_option("model", file, "Model file")->required();
  check_cmd->add_option("formula", formula, "State formula")->required();
  check_cmd->add_option("--at", at, "Situation world@point (default: designated)");

  auto* verify_cmd = app.add_subcommand("verify", "Property checks on random trees");
  verify_cmd->add_option("--trials", trials, "Number of trees");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--class", cls, "maxexpval or maximin-restricted")
      ->check(CLI::IsMember({"maxexpval", "maximin-restricted"}));
  verify_cmd->add_option("--dump-dir", dump_dir, "Where failing trees are written");

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a tree or model");
  dot_cmd->add_option("file", file, "Decision tree or model")->required();
  dot_cmd->add_option("--world", world, "Only this world of a model");

  for (auto* sub : {validate_cmd, transform_cmd, deliberate_cmd, check_cmd, verify_cmd, dot_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  c.color = std::getenv("NO_COLOR") == nullptr && &out == &std::cout && isatty(STDOUT_FILENO);
  try {
    if (*validate_cmd) return cmd_validate(c, file);
    if (*transform_cmd) return cmd_transform(c, file, out_file, extras, dot_dir);
    if (*deliberate_cmd) return cmd_deliberate(c, file, procedure, oracle, emit_model, extras);
    if (*check_cmd) return cmd_check(c, file, formula, at);
    if (*verify_cmd) return cmd_verify(c, trials, seed, cls, dump_dir);
    if (*dot_cmd) return cmd_dot(c, file, world);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariantFailure;
  }
  return kInputError;
}

}  // namespace bdi::cli
