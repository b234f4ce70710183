// Command-line front end: evaluate formulas, check frame conditions, search
// for countermodels, replay the reference scenarios and check proofs.
//
// Exit codes: 0 success / true / no countermodel, 1 false / countermodel /
// failed check, 2 usage, parse or budget errors.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pnlogic/pnlogic.hpp"

namespace {

using namespace pnlogic;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

BoxMode neighborhood_mode(const std::string& flag) {
  auto mode = parse_box_mode(flag);
  if (!mode || is_relational(*mode)) throw UsageError("--box-mode must be 'standard' or 'simple'");
  return *mode;
}

Condition frame_condition(const std::string& name) {
  if (name == "cond2") return Condition::Cond2;
  if (name == "star") return Condition::Star;
  if (name == "starstar") return Condition::StarStar;
  throw UsageError("--require takes cond2, star or starstar, not '" + name + "'");
}

void dump(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct EvalArgs {
  std::string model_path;
  unsigned world = 0;
  std::string formula;
  std::string box_mode = "standard";
  bool json = false;
};

int cmd_eval(const EvalArgs& a) {
  std::vector<std::string> warnings;
  Model model = io::model_from_json(io::read_json_file(a.model_path), &warnings);
  print_warnings(warnings);
  if (a.world >= model.frame().world_count())
    throw UsageError("world " + std::to_string(a.world) + " out of range");
  Formula f = parse(a.formula);
  EvalContext ctx(model, neighborhood_mode(a.box_mode));
  WorldSet ext = extension(ctx, f);
  bool value = ext.contains(a.world);
  if (a.json) {
    Json j;
    j["formula"] = print(f);
    j["world"] = a.world;
    j["box_mode"] = box_mode_name(ctx.mode());
    j["forced"] = value;
    j["extension"] = io::world_set_json(ext);
    dump(j);
  } else {
    std::cout << (value ? "true" : "false") << "\n";
    std::cout << "extension of " << print(f) << ": " << to_string(ext) << "\n";
  }
  return value ? kExitOk : kExitNegative;
}

struct CheckArgs {
  std::string path;
  std::string model_path;
  std::string frame_path;
  bool json = false;
};

int cmd_check(const CheckArgs& a) {
  std::string path = !a.model_path.empty() ? a.model_path : !a.frame_path.empty() ? a.frame_path : a.path;
  if (path.empty()) throw UsageError("check needs a model or frame file");
  std::vector<std::string> warnings;
  Json doc = io::read_json_file(path);
  bool has_valuation = doc.is_object() && doc.contains("valuation") && a.frame_path.empty();
  Model model = has_valuation ? io::model_from_json(doc, &warnings) : Model(io::frame_from_json(doc, &warnings));
  print_warnings(warnings);
  std::vector<ConditionReport> reports = has_valuation ? all_conditions(model) : all_conditions(model.frame());

  bool ok = true;
  for (const auto& r : reports)
    if (r.condition == Condition::OrderAxioms || r.condition == Condition::Cond1 ||
        r.condition == Condition::ValuationMonotone)
      ok = ok && r.holds;

  if (a.json) {
    Json j;
    j["file"] = path;
    j["well_formed"] = ok;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    j["conditions"] = arr;
    dump(j);
  } else {
    std::cout << std::left << std::setw(20) << "condition" << std::setw(7) << "holds" << "witness\n";
    for (const auto& r : reports) {
      std::string witness;
      if (r.witness) {
        std::string d = r.describe();
        witness = d.substr(d.find('('));
      }
      std::cout << std::left << std::setw(20) << condition_name(r.condition) << std::setw(7)
                << (r.holds ? "yes" : "no") << witness << "\n";
    }
  }
  return ok ? kExitOk : kExitNegative;
}

struct SearchArgs {
  std::string scheme;
  unsigned max_worlds = 3;
  std::vector<std::string> require;
  std::string box_mode = "standard";
  unsigned cap = 3;
  std::uint64_t budget = 0;
  std::string out = "countermodel.json";
  bool no_out = false;
  bool json = false;
  bool timing = false;
};

int cmd_search(const SearchArgs& a) {
  SearchSpec spec{parse(a.scheme), a.max_worlds, {}};
  for (const auto& r : a.require) spec.required.push_back(frame_condition(r));
  spec.mode = neighborhood_mode(a.box_mode);
  spec.cap = a.cap;
  spec.model_budget = a.budget;
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string scheme_text = print(spec.scheme);
  SearchOutcome o = find_countermodel(spec);

  std::optional<std::string> written;
  if (o.verdict == Verdict::CountermodelFound && !a.no_out) {
    std::ofstream file(a.out);
    if (!file) throw io::FormatError("cannot write '" + a.out + "'");
    file << io::countermodel_json(*o.model, scheme_text, *o.world).dump(2) << "\n";
    written = a.out;
  }

  if (a.json) {
    Json j = io::to_json(o, scheme_text, a.timing);
    if (written) j["written"] = *written;
    dump(j);
  } else {
    std::cout << "scheme: " << scheme_text << "\n";
    std::cout << "verdict: " << verdict_name(o.verdict) << "\n";
    std::cout << "frames visited: " << o.stats.frames_visited << "\n";
    std::cout << "models visited: " << o.stats.models_visited << "\n";
    if (a.timing) std::cout << "elapsed ms: " << o.stats.elapsed_ms << "\n";
    if (!o.message.empty()) std::cout << "note: " << o.message << "\n";
    if (o.model) {
      std::cout << "refuted at world " << *o.world << " of\n" << io::to_json(*o.model).dump(2) << "\n";
      if (written) std::cout << "countermodel written to " << *written << "\n";
    }
  }
  switch (o.verdict) {
    case Verdict::Exhausted: return kExitOk;
    case Verdict::CountermodelFound: return kExitNegative;
    case Verdict::BudgetExhausted: return kExitError;
  }
  return kExitError;
}

struct ReplicateArgs {
  std::string name;
  bool json = false;
};

int cmd_replicate(const ReplicateArgs& a) {
  std::vector<replication::CaseResult> results;
  if (a.name == "all") {
    results = replication::run_all();
  } else if (auto r = replication::run_case(a.name)) {
    results.push_back(std::move(*r));
  } else {
    throw UsageError("unknown replication case '" + a.name + "'");
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  if (a.json) {
    dump(replication::to_json(results));
  } else {
    for (const auto& r : results)
      std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(18) << r.name << r.summary << "\n";
    std::cout << passed << "/" << results.size() << " passed\n";
  }
  return passed == results.size() ? kExitOk : kExitNegative;
}

struct ProveArgs {
  std::string path;
  bool sweep = false;
  unsigned max_worlds = 2;
  bool json = false;
};

int cmd_prove(const ProveArgs& a) {
  std::vector<ProofLine> lines;
  try {
    lines = parse_proof(io::read_text_file(a.path));
  } catch (const ProofFormatError& e) {
    throw io::FormatError(a.path + ": " + e.what());
  }
  ProofReport report = check_proof(lines);
  std::optional<SoundnessReport> sweep;
  if (report.valid && a.sweep) {
    if (a.max_worlds < 1 || a.max_worlds > kMaxSearchWorlds)
      throw UsageError("--max-worlds must be in 1.." + std::to_string(kMaxSearchWorlds));
    sweep = soundness_sweep(lines, a.max_worlds);
  }
  bool ok = report.valid && (!sweep || sweep->clean());
  if (a.json) {
    Json j = io::to_json(report);
    j["lines"] = lines.size();
    if (sweep) j["soundness_sweep"] = io::to_json(*sweep);
    dump(j);
  } else {
    if (report.valid) {
      std::cout << "valid (" << lines.size() << " lines)\n";
    } else {
      std::cout << "invalid at line " << report.first_error->line << ": " << report.first_error->reason << "\n";
    }
    if (sweep) {
      if (sweep->clean()) {
        std::cout << "soundness sweep clean: " << sweep->lines_checked << " lines on " << sweep->frames_checked
                  << " frames up to " << a.max_worlds << " worlds\n";
      } else {
        std::cout << "soundness sweep violation at line " << sweep->violation->line << ", world "
                  << sweep->violation->world << " of\n"
                  << io::to_json(sweep->violation->frame).dump(2) << "\n";
      }
    }
  }
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for intuitionistic modal logic over neighborhood frames"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a world of a model");
  eval->add_option("--model", eval_args.model_path, "Model file (JSON)")->required();
  eval->add_option("--world", eval_args.world, "World index")->required();
  eval->add_option("--formula", eval_args.formula, "Formula text")->required();
  eval->add_option("--box-mode", eval_args.box_mode, "standard | simple");
  eval->add_flag("--json", eval_args.json, "Machine-readable output");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Report frame and model conditions");
  check->add_option("path", check_args.path, "Model or frame file");
  check->add_option("--model", check_args.model_path, "Model file");
  check->add_option("--frame", check_args.frame_path, "Frame file (valuation ignored)");
  check->add_flag("--json", check_args.json, "Machine-readable output");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Search small frames for a countermodel to a scheme");
  search->add_option("scheme", search_args.scheme, "Scheme; atoms act as metavariables")->required();
  search->add_option("--max-worlds", search_args.max_worlds, "1..3 (default 3)");
  search->add_option("--require", search_args.require, "cond2 | star | starstar (repeatable)");
  search->add_option("--box-mode", search_args.box_mode, "standard | simple");
  search->add_option("--cap", search_args.cap, "Max sets per neighborhood family, 0..4 (default 3)");
  search->add_option("--budget", search_args.budget, "Stop after this many models (0 = unlimited)");
  search->add_option("--out", search_args.out, "Where to write a countermodel (default countermodel.json)");
  search->add_flag("--no-out", search_args.no_out, "Do not write the countermodel file");
  search->add_flag("--json", search_args.json, "Machine-readable output");
  search->add_flag("--timing", search_args.timing, "Report elapsed time");

  ReplicateArgs replicate_args;
  auto* replicate = app.add_subcommand("replicate", "Run reference scenarios");
  replicate->add_option("name", replicate_args.name, "Case name or 'all'")->required();
  replicate->add_flag("--json", replicate_args.json, "Machine-readable output");

  ProveArgs prove_args;
  auto* prove = app.add_subcommand("prove", "Check a Hilbert-style proof file");
  prove->add_option("path", prove_args.path, "Proof file")->required();
  prove->add_flag("--soundness-sweep", prove_args.sweep, "Also check every line on all small frames");
  prove->add_option("--max-worlds", prove_args.max_worlds, "Sweep bound, 1..3 (default 2)");
  prove->add_flag("--json", prove_args.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_args);
    if (check->parsed()) return cmd_check(check_args);
    if (search->parsed()) return cmd_search(search_args);
    if (replicate->parsed()) return cmd_replicate(replicate_args);
    if (prove->parsed()) return cmd_prove(prove_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
