#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "coalgsat/decide.hpp"
#include "coalgsat/generator.hpp"
#include "coalgsat/json_io.hpp"
#include "coalgsat/oracle.hpp"
#include "coalgsat/parser.hpp"

using namespace coalgsat;
using nlohmann::json;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kUnknown = 2, kUsage = 3, kResource = 4 };

struct Settings {
  std::string logic = "k";
  std::string algorithm = "worklist";
  std::string assumption = "true";
  std::string formula;
  bool hybrid = false;
  bool kripke = false;
  bool emit_model = false;
  bool stats = false;
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  bool differential = false;
  std::string corpus;
  std::size_t count = 200;
  unsigned jobs = 1;
  std::size_t oracle_states = 0;
  unsigned oracle_weight = 4;
};

DecideOptions decide_options(const Settings& st, Algorithm a) {
  DecideOptions o;
  o.algorithm = a;
  o.hybrid = st.hybrid;
  o.kripke = st.kripke;
  if (st.budget) o.budget.max_boxes = st.budget;
  return o;
}

json oracle_json(const OracleResult& r) {
  json out = {{"found", r.model.has_value()}, {"exhausted", r.exhausted}};
  if (r.model) out["model"] = model_to_json(*r.model);
  return out;
}

int run_single(const Settings& st, Logic logic) {
  Formula psi = adapt(parse(st.assumption), logic), phi = adapt(parse(st.formula), logic);
  DecideOptions opt = decide_options(st, parse_algorithm(st.algorithm));
  opt.extract = st.emit_model;
  Decision d = decide(psi, phi, logic, opt);
  if (d.model && (!holds_globally(*d.model, psi) || !model_check(*d.model, phi)[d.root])) {
    std::cerr << "internal error: extracted model fails model checking\n";
    return kUnknown;
  }
  json out = decision_to_json(d, st.emit_model, st.stats);
  if (st.oracle_states) {
    OracleOptions oo;
    oo.max_states = st.oracle_states;
    oo.weight_bound = st.oracle_weight;
    out["oracle"] = oracle_json(oracle_search(psi, phi, logic, oo));
  }
  std::cout << out.dump() << "\n";
  switch (d.verdict) {
    case Verdict::Sat:
      return kSat;
    case Verdict::Unsat:
      return kUnsat;
    default:
      return kUnknown;
  }
}

struct Line {
  std::size_t number = 0;
  std::string text;
  Formula psi, phi;
};

std::vector<Line> read_corpus(const Settings& st, Logic logic) {
  std::vector<Line> out;
  if (st.corpus.empty()) {
    std::mt19937_64 rng(st.seed);
    GenOptions g;
    g.logic = logic;
    for (std::size_t i = 0; i < st.count; ++i) {
      Problem p = random_problem(rng, g);
      out.push_back({i + 1, render(p.assumption) + " |- " + render(p.goal), p.assumption, p.goal});
    }
    return out;
  }
  std::ifstream in(st.corpus);
  if (!in) throw CLI::ValidationError("cannot read corpus file " + st.corpus);
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    // '#' also starts counting modalities, so only whole-line comments exist.
    const std::string& body = text;
    auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos || body[first] == '#') continue;
    auto sep = body.find("|-");
    if (sep == std::string::npos) throw ParseError("expected '<assumption> |- <formula>'", n, 1);
    auto side = [&](std::string_view part, std::size_t offset) {
      try {
        return adapt(parse(part), logic);
      } catch (const ParseError& e) {
        // Positions inside a corpus line are reported relative to the line.
        throw ParseError(e.message(), n, offset + e.column());
      }
    };
    std::string_view view(body);
    out.push_back({n, body, side(view.substr(0, sep), 0), side(view.substr(sep + 2), sep + 2)});
  }
  return out;
}

int run_differential(const Settings& st, Logic logic) {
  std::vector<Line> lines = read_corpus(st, logic);
  const Algorithm algs[] = {Algorithm::Elim, Algorithm::Caching, Algorithm::Worklist};
  std::vector<json> results(lines.size());
  std::vector<char> agree(lines.size(), 1);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) {
      const Line& l = lines[i];
      json r = {{"line", l.number}, {"problem", l.text}};
      std::vector<Verdict> vs;
      try {
        for (Algorithm a : algs) {
          DecideOptions o = decide_options(st, a);
          Decision d = decide(l.psi, l.phi, logic, o);
          if (d.model && (!holds_globally(*d.model, l.psi) || !model_check(*d.model, l.phi)[d.root]))
            r["model_error"] = algorithm_name(a);
          r[algorithm_name(a)] = verdict_name(d.verdict);
          vs.push_back(d.verdict);
          if (needs_hybrid(l.psi) || needs_hybrid(l.phi) || st.hybrid || st.kripke) break;
        }
        agree[i] = std::all_of(vs.begin(), vs.end(), [&](Verdict v) { return v == vs[0]; }) && !r.contains("model_error");
        if (st.oracle_states) {
          OracleOptions oo;
          oo.max_states = st.oracle_states;
          oo.weight_bound = st.oracle_weight;
          OracleResult orc = oracle_search(l.psi, l.phi, logic, oo);
          r["oracle"] = orc.model ? "sat" : orc.exhausted ? "none" : "inconclusive";
          if (orc.model && vs[0] != Verdict::Sat) agree[i] = 0;
        }
      } catch (const std::exception& e) {
        r["error"] = e.what();
        agree[i] = 0;
      }
      results[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, st.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json out = {{"problems", lines.size()}};
  std::map<std::string, std::size_t> verdicts;
  json bad = json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (Algorithm a : algs)
      if (results[i].contains(algorithm_name(a))) verdicts[results[i][algorithm_name(a)].get<std::string>()]++;
    if (!agree[i]) bad.push_back(results[i]);
  }
  out["verdicts"] = verdicts;
  out["disagreements"] = bad;
  out["agree"] = bad.empty();
  if (st.stats) out["results"] = results;
  std::cout << out.dump() << "\n";
  return bad.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability for coalgebraic modal logics with global assumptions"};
  Settings st;
  app.add_option("--logic", st.logic, "k, presburger or prob")->check(CLI::IsMember({"k", "presburger", "prob"}));
  app.add_option("--algorithm", st.algorithm, "elim, caching or worklist")
      ->check(CLI::IsMember({"elim", "caching", "worklist"}));
  app.add_option("--assumption", st.assumption, "global assumption (default: true)");
  app.add_option("--formula", st.formula, "formula to satisfy");
  app.add_flag("--hybrid", st.hybrid, "use the hybrid pipeline");
  app.add_flag("--kripke", st.kripke, "nominals are reached at most once (Presburger)");
  app.add_flag("--emit-model", st.emit_model, "include a model in the output");
  app.add_flag("--stats", st.stats, "include statistics");
  app.add_option("--budget", st.budget, "box budget for polynomial constraints");
  app.add_option("--seed", st.seed, "seed for the generated differential corpus");
  app.add_flag("--differential", st.differential, "run all three algorithms on a corpus");
  app.add_option("corpus", st.corpus, "corpus file (<assumption> |- <formula> per line)");
  app.add_option("--count", st.count, "problems to generate when no corpus file is given");
  app.add_option("--jobs", st.jobs, "corpus entries decided in parallel");
  app.add_option("--oracle-states", st.oracle_states, "also run the brute-force oracle up to this many states");
  app.add_option("--oracle-weight", st.oracle_weight, "oracle multiplicity or denominator bound");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    Logic logic = parse_logic(st.logic);
    if (st.differential) return run_differential(st, logic);
    if (st.formula.empty()) {
      std::cerr << "--formula is required\n";
      return kUsage;
    }
    return run_single(st, logic);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    std::cout << json{{"verdict", "unknown"}, {"reason", e.what()}}.dump() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
