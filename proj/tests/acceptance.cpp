// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "coalgsat/caching.hpp"
#include "coalgsat/decide.hpp"
#include "coalgsat/elim.hpp"
#include "coalgsat/fixpoint.hpp"
#include "coalgsat/generator.hpp"
#include "coalgsat/hybrid.hpp"
#include "coalgsat/onestep.hpp"
#include "coalgsat/oracle.hpp"
#include "coalgsat/parser.hpp"
#include "coalgsat/realsolve.hpp"
#include "coalgsat/worklist.hpp"
#include "onestep_fixtures.hpp"
#include "oracles.hpp"

using namespace coalgsat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

// Witness soundness across every suite below.
struct Certifier {
  std::size_t sat = 0, certified = 0;
  std::string first_failure;
  void check(const Decision& d, const Formula& psi, const Formula& phi, const std::string& what) {
    if (d.verdict != Verdict::Sat) return;
    ++sat;
    bool ok = d.model && holds_globally(*d.model, psi) && model_check(*d.model, phi)[d.root];
    if (ok) {
      ++certified;
    } else if (first_failure.empty()) {
      first_failure = what;
    }
  }
} certifier;

std::string problem_text(const Formula& psi, const Formula& phi) { return render(psi) + " |- " + render(phi); }

// Lines keyed by criterion, printed in order once everything has run.
std::map<std::string, std::string> lines;

void report(const char* id, const char* title, const Outcome& o, double secs, double limit) {
  bool in_time = limit <= 0 || secs < limit;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::string line = std::string(id) + " " + (o.pass && in_time ? "PASS" : "FAIL") + "  " + title + "  [" + buf;
  if (limit > 0) line += ", limit " + std::to_string(static_cast<int>(limit)) + "s";
  lines[id] = line + "] " + o.detail.str();
}

const Algorithm kAlgorithms[] = {Algorithm::Elim, Algorithm::Caching, Algorithm::Worklist};

bool ac1() {
  auto t0 = Clock::now();
  Outcome o;
  using fixtures::make_pair;
  using fixtures::models_of;

  auto eta = models_of(3, [](const std::vector<bool>& v) { return !v[2] || v[0] || v[1]; });
  o.require(solve_k(make_pair({"~<>a", "~<>b", "<>c"}, {"a", "b", "c"}, eta)).verdict == Verdict::Unsat,
            "(~<>a & ~<>b & <>c, c -> a | b) one-step unsatisfiable");

  auto all = models_of(3, [](const std::vector<bool>&) { return true; });
  std::size_t agree = 0;
  for (std::size_t mask = 1; mask < 256; ++mask) {
    std::vector<std::vector<bool>> rows;
    bool expected = false;
    for (std::size_t i = 0; i < 8; ++i)
      if ((mask >> i) & 1) {
        rows.push_back(all[i]);
        const auto& v = all[i];
        expected = expected || (v[0] && v[1]) || (v[0] && !v[2]) || (v[1] && !v[2]);
      }
    auto r = solve_presburger(make_pair({"#(a) + #(b) - #(c) > 0"}, {"a", "b", "c"}, rows));
    agree += (r.verdict == Verdict::Sat) == expected;
  }
  o.require(agree == 255, "#a + #b - #c > 0 against the propositional check");
  o.detail << agree << "/255 DNFs; ";

  Formula valid = parse("~(2*#(true) < 1 | 2*#(true) > 1)");
  Formula prob_phi = adapt(parse("2*w(a) < 1 & 2*w(a) > 0"), Logic::Prob), a = atom("a");
  for (Algorithm alg : kAlgorithms) {
    DecideOptions opt;
    opt.algorithm = alg;
    o.require(decide(top(), valid, Logic::Presburger, opt).verdict == Verdict::Unsat,
              "negated 2#true < 1 | 2#true > 1 unsatisfiable (" + algorithm_name(alg) + ")");
    Decision d = decide(a, prob_phi, Logic::Prob, opt);
    certifier.check(d, a, prob_phi, "probabilistic example");
    o.require(d.verdict == Verdict::Sat, "2w(a) < 1 & 2w(a) > 0 satisfiable under a (" + algorithm_name(alg) + ")");
  }
  double secs = seconds_since(t0);
  report("AC1", "worked examples, exact", o, secs, 1);
  return o.pass && secs < 1;
}

std::vector<EdgeCount> all_edge_counts;

bool ac2() {
  auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(20240601);
  for (Logic logic : {Logic::K, Logic::Presburger, Logic::Prob}) {
    GenOptions g;
    g.logic = logic;
    g.coeff_range = 3;
    g.max_modulus = 3;
    g.nonlinear = false;
    std::size_t agree = 0, unknown = 0, sat = 0, n = 200;
    for (std::size_t i = 0; i < n; ++i) {
      Problem p = random_problem(rng, g, 12);
      ClosureTable cl(p.assumption, p.goal);
      o.require(cl.size() <= 12, "closure within 12 formulas");
      Decision e = decide_elim(p.assumption, p.goal, logic);
      Decision c = decide_caching(p.assumption, p.goal, logic);
      std::vector<EdgeCount> counts;
      WorklistOptions wopt;
      wopt.edge_counts = &counts;
      Decision w = decide_worklist(p.assumption, p.goal, logic, wopt);
      all_edge_counts.insert(all_edge_counts.end(), counts.begin(), counts.end());
      std::string text = problem_text(p.assumption, p.goal);
      for (const Decision* d : {&e, &c, &w}) {
        certifier.check(*d, p.assumption, p.goal, text);
        unknown += d->verdict == Verdict::Unknown;
      }
      bool same = e.verdict == c.verdict && c.verdict == w.verdict;
      agree += same;
      sat += e.verdict == Verdict::Sat;
      o.require(same, "verdicts differ on " + text);
    }
    if (logic != Logic::Prob) o.require(unknown == 0, "no unknown verdicts for " + logic_name(logic));
    o.detail << logic_name(logic) << " " << agree << "/" << n << " agree (" << sat << " sat, " << unknown
             << " unknown); ";
  }
  double secs = seconds_since(t0);
  report("AC2", "three-way differential, 200 problems per logic", o, secs, 300);
  return o.pass && secs < 300;
}

bool ac4() {
  auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t checked = 0, oracle_sat = 0, solver_unsat = 0, inconclusive = 0;
  for (bool hybrid : {false, true}) {
    for (Logic logic : {Logic::K, Logic::Presburger, Logic::Prob}) {
      GenOptions g;
      g.logic = logic;
      g.atoms = {"p"};
      g.max_depth = 2;
      g.coeff_range = 2;
      if (hybrid) {
        g.nominals = {"i"};
        g.hybrid_ops = true;
      }
      for (int i = 0; i < (hybrid ? 40 : 100); ++i) {
        Problem p = random_problem(rng, g, 8);
        OracleOptions oo;
        oo.max_states = 3;
        oo.weight_bound = 4;
        OracleResult orc = oracle_search(p.assumption, p.goal, logic, oo);
        Decision d = decide(p.assumption, p.goal, logic);
        std::string text = problem_text(p.assumption, p.goal);
        certifier.check(d, p.assumption, p.goal, text);
        ++checked;
        inconclusive += !orc.exhausted && !orc.model;
        if (orc.model) {
          ++oracle_sat;
          o.require(d.verdict == Verdict::Sat, "oracle model but solver says " + verdict_name(d.verdict) + ": " + text);
        }
        if (d.verdict == Verdict::Unsat) {
          ++solver_unsat;
          o.require(!orc.model, "solver unsat but oracle model: " + text);
        }
      }
    }
  }
  o.detail << checked << " problems, " << oracle_sat << " oracle-sat, " << solver_unsat << " solver-unsat, "
           << inconclusive << " oracle searches cut short; ";
  report("AC4", "oracle agreement (<= 3 states, weights/denominators <= 4)", o, seconds_since(t0), 0);
  return o.pass;
}

Formula chain(int n) {
  Formula f = top();
  for (int i = 0; i < n; ++i) f = presburger({{Int(1), f}}, Rel::Gt, Int(0));
  return f;
}

bool ac5() {
  auto t0 = Clock::now();
  Outcome o;
  const int n = 12;
  Formula phi = chain(n);
  std::size_t types = all_types(ClosureTable(top(), phi)).size();
  Decision d = decide_caching(top(), phi, Logic::Presburger);
  certifier.check(d, top(), phi, "chain");
  std::size_t generated = d.stats.at("generated");
  o.require(d.verdict == Verdict::Sat, "chain satisfiable");
  o.require(generated <= 4 * n + 4, "generated <= 4n + 4");
  o.require(types >= (std::size_t{1} << n), "all_types >= 2^n");
  o.detail << "n=" << n << ": generated " << generated << " (<= " << 4 * n + 4 << "), types " << types
           << " (>= " << (1 << n) << "); ";
  report("AC5", "caching economy on the #(.) > 0 chain", o, seconds_since(t0), 0);
  return o.pass;
}

bool ac6() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t modal = 0, prop = 0, worst_m = 0, worst_p = 0;
  for (const auto& c : all_edge_counts) {
    bool m = c.edge.rule < 0;
    (m ? modal : prop)++;
    if (m) worst_m = std::max(worst_m, c.processed);
    if (!m) worst_p = std::max(worst_p, c.processed);
  }
  o.require(!all_edge_counts.empty(), "edge counts recorded");
  o.require(edge_bound_audit(all_edge_counts), "per-edge bounds");
  o.detail << modal << " modal edges (max " << worst_m << " runs), " << prop << " propositional edges (max " << worst_p
           << " runs); ";
  report("AC6", "worklist edge-processing bounds on the AC2 corpus", o, seconds_since(t0), 0);
  return o.pass;
}

bool ac7() {
  auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(53);
  using Set = std::vector<char>;
  std::size_t good = 0;
  const int runs = 1000;
  for (int t = 0; t < runs; ++t) {
    const std::size_t n = 1 + rng() % 12;
    // f(S) = { i | some clause of i lies inside S }: every monotone map on the
    // powerset lattice has this form.
    std::vector<std::vector<std::vector<std::size_t>>> clauses(n);
    for (auto& cs : clauses) {
      std::size_t k = rng() % 3;
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> cl;
        for (std::size_t j = 0; j < n; ++j)
          if (rng() % 4 == 0) cl.push_back(j);
        cs.push_back(cl);
      }
    }
    auto f = [&](const Set& s) {
      Set out(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& cl : clauses[i])
          if (std::all_of(cl.begin(), cl.end(), [&](std::size_t j) { return s[j]; })) out[i] = 1;
      return out;
    };
    auto join = [](Set a, const Set& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
      return a;
    };
    Set nu = greatest_fixpoint(Set(n, 1), f), mu = least_fixpoint(Set(n, 0), f);
    bool ok = f(nu) == nu && f(mu) == mu &&
              greatest_fixpoint(Set(n, 1), [&](const Set& s) { return f(join(s, nu)); }) == nu &&
              least_fixpoint(Set(n, 0), [&](const Set& s) { return f(join(s, mu)); }) == mu;
    good += ok;
  }
  o.require(good == static_cast<std::size_t>(runs), "fixpoint laws");
  o.detail << good << "/" << runs << " functions; ";
  report("AC7", "fixpoint laws on random monotone functions", o, seconds_since(t0), 0);
  return o.pass;
}

bool ac8() {
  auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nv(1, 3), nr(1, 3), coef(-3, 3), bound(-4, 6), rel(0, 3), mod(2, 3);
  std::size_t int_agree = 0, int_sat = 0;
  const std::size_t runs = 500;
  for (std::size_t i = 0; i < runs; ++i) {
    IntConstraintSystem sys;
    sys.num_vars = static_cast<std::size_t>(nv(rng));
    int rows = nr(rng);
    for (int r = 0; r < rows; ++r) {
      IntRow row;
      for (std::size_t j = 0; j < sys.num_vars; ++j) row.coeffs.emplace_back(coef(rng));
      int which = rel(rng);
      row.rel = which == 0 ? Rel::Lt : which == 1 ? Rel::Gt : which == 2 ? Rel::Eq : Rel::Mod;
      row.bound = bound(rng);
      if (row.rel == Rel::Mod) row.modulus = mod(rng);
      sys.rows.push_back(std::move(row));
    }
    // Components at most 8, so exhaustive search is exact.
    for (std::size_t j = 0; j < sys.num_vars; ++j) {
      IntRow box{std::vector<Int>(sys.num_vars, Int(0)), Rel::Lt, Int(9), Int(0)};
      box.coeffs[j] = 1;
      sys.rows.push_back(std::move(box));
    }
    auto solved = feasible(sys);
    auto brute = oracle::exhaustive_int(sys, 8);
    bool ok = solved.has_value() == brute.has_value() && (!solved || satisfies(sys, *solved));
    int_agree += ok;
    int_sat += solved.has_value();
  }
  o.require(int_agree == runs, "intsolve against exhaustive search");

  std::uniform_int_distribution<int> lv(1, 4), lr(1, 5), lc(-3, 3), lrhs(-4, 4), lrel(0, 4), den(1, 3);
  std::size_t lin_agree = 0, lin_sat = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    std::size_t n = static_cast<std::size_t>(lv(rng));
    bool simplex = i % 2 == 0;
    PolySystem sys;
    sys.num_vars = n;
    sys.simplex = simplex;
    std::vector<LinRow> rows;
    int m = lr(rng);
    for (int r = 0; r < m; ++r) {
      // sum c_j x_j - rhs REL 0
      LinRow row{std::vector<Rat>(n), static_cast<RowRel>(lrel(rng)), Rat(lrhs(rng), den(rng))};
      row.rhs.canonicalize();
      Polynomial poly = Polynomial::constant(-row.rhs);
      for (std::size_t j = 0; j < n; ++j) {
        row.coeffs[j] = lc(rng);
        poly += Polynomial::variable(static_cast<std::uint32_t>(j)).scaled(row.coeffs[j]);
      }
      const PolyRel prel[] = {PolyRel::Le, PolyRel::Ge, PolyRel::Eq, PolyRel::Lt, PolyRel::Gt};
      sys.constraints.push_back(PolyConstraint{poly, prel[static_cast<int>(row.rel)]});
      rows.push_back(std::move(row));
    }
    if (simplex) {
      rows.push_back(LinRow{std::vector<Rat>(n, Rat(1)), RowRel::Le, Rat(1)});
    } else {
      for (std::size_t j = 0; j < n; ++j)
        sys.constraints.push_back(PolyConstraint{Polynomial::variable(static_cast<std::uint32_t>(j)), PolyRel::Ge});
    }
    RealResult res = lin_feasible(sys);
    bool fm = oracle::fourier_motzkin(n, rows);
    bool ok = (res.verdict == RealVerdict::Sat) == fm && res.verdict != RealVerdict::Unknown &&
              (res.verdict != RealVerdict::Sat || satisfies(sys, res.point));
    lin_agree += ok;
    lin_sat += fm;
  }
  o.require(lin_agree == runs, "lin_feasible against Fourier-Motzkin");
  o.detail << "intsolve " << int_agree << "/" << runs << " (" << int_sat << " sat), lin_feasible " << lin_agree << "/"
           << runs << " (" << lin_sat << " sat); ";
  report("AC8", "backend agreement, exact", o, seconds_since(t0), 0);
  return o.pass;
}

bool ac9() {
  auto t0 = Clock::now();
  Outcome o;
  struct Check {
    Logic logic;
    const char* phi;
    bool kripke;
    Verdict expected;
  };
  const Check checks[] = {
      {Logic::Presburger, "#('i) > 1", false, Verdict::Sat},
      {Logic::Presburger, "#('i) > 1", true, Verdict::Unsat},
      {Logic::Presburger, "@'i (#('i) > #(p)) & ~@'i ~p", false, Verdict::Unsat},
      {Logic::Prob, "@'i (w('j) > w(~'j) & w('k) >= w(~'k)) & ~@'j 'k", false, Verdict::Unsat},
  };
  for (const auto& c : checks) {
    DecideOptions opt;
    opt.kripke = c.kripke;
    Formula phi = adapt(parse(c.phi), c.logic);
    Decision d = decide(top(), phi, c.logic, opt);
    certifier.check(d, top(), phi, c.phi);
    o.require(d.verdict == c.expected, std::string(c.phi) + (c.kripke ? " (Kripke)" : "") + " gave " +
                                           verdict_name(d.verdict));
    o.detail << c.phi << (c.kripke ? " [kripke]" : "") << " " << verdict_name(d.verdict) << "; ";
  }
  double secs = seconds_since(t0);
  report("AC9", "hybrid suite", o, secs, 30);
  return o.pass && secs < 30;
}

bool ac3() {
  Outcome o;
  o.require(certifier.sat > 0, "some satisfiable problems");
  o.require(certifier.certified == certifier.sat, "model fails for " + certifier.first_failure);
  o.detail << certifier.certified << "/" << certifier.sat << " sat verdicts certified by model_check; ";
  report("AC3", "witness soundness across all suites", o, 0, 0);
  return o.pass;
}

}  // namespace

int main() {
  // AC3 and AC6 summarize data gathered by the other suites.
  std::vector<std::pair<int, std::function<bool()>>> order = {{1, ac1}, {2, ac2}, {4, ac4}, {5, ac5},
                                                              {7, ac7}, {8, ac8}, {9, ac9}};
  bool all = true;
  for (auto& [id, fn] : order) {
    all = fn() && all;
    if (id == 2) all = ac6() && all;
  }
  all = ac3() && all;
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
