#include <random>

#include "coalgsat/caching.hpp"
#include "coalgsat/elim.hpp"
#include "coalgsat/fixpoint.hpp"
#include "coalgsat/generator.hpp"
#include "coalgsat/parser.hpp"
#include "coalgsat/worklist.hpp"
#include "doctest.h"

using namespace coalgsat;

namespace {

Formula chain(int n) {
  Formula f = top();
  for (int i = 0; i < n; ++i) f = presburger({{Int(1), f}}, Rel::Gt, Int(0));
  return f;
}

struct Case {
  Logic logic;
  const char* psi;
  const char* phi;
  Verdict expected;
};

const Case kCases[] = {
    {Logic::K, "~p", "<>p", Verdict::Unsat},
    {Logic::K, "<>true", "true", Verdict::Sat},
    {Logic::K, "c -> a | b", "~<>a & ~<>b & <>c", Verdict::Unsat},
    {Logic::K, "true", "<>p & []~p", Verdict::Unsat},
    {Logic::K, "true", "<>p & <>~p", Verdict::Sat},
    {Logic::K, "p -> <>p", "p", Verdict::Sat},
    {Logic::K, "false", "true", Verdict::Unsat},
    {Logic::K, "true", "<>true & <>~true", Verdict::Unsat},
    {Logic::K, "true", "<>true & []~~true", Verdict::Sat},
    {Logic::Presburger, "true", "~(2*#(true) < 1 | 2*#(true) > 1)", Verdict::Unsat},
    {Logic::Presburger, "#(true) > 0", "true", Verdict::Sat},
    {Logic::Presburger, "true", "#(a) =mod 2= 0 & #(a) > 0", Verdict::Sat},
    {Logic::Presburger, "true", "#(a) > 1 & #(true) < 2", Verdict::Unsat},
    {Logic::Presburger, "a -> #(~a) > 0 & ~a -> #(a) > 0", "a", Verdict::Sat},
    {Logic::Prob, "a", "2*w(a) < 1 & 2*w(a) > 0", Verdict::Sat},
    {Logic::Prob, "true", "w(a) > 1/2 & w(~a) > 1/2", Verdict::Unsat},
    {Logic::Prob, "true", "w(a)*w(a) >= 1/2 & w(a) < 1/2", Verdict::Unsat},
    {Logic::Prob, "a", "w(~a) > 0", Verdict::Unsat},
    {Logic::Prob, "w(true) >= 0 & w(~true) >= 0", "-2*w(true) - 1/4 >= 0", Verdict::Unsat},
    {Logic::Prob, "w(true) >= 0 & w(~true) >= 0", "true", Verdict::Sat},
};

void check_model(const Decision& d, const Formula& psi, const Formula& phi) {
  REQUIRE(d.model.has_value());
  CHECK(holds_globally(*d.model, psi));
  CHECK(model_check(*d.model, phi)[d.root]);
}

}  // namespace

TEST_CASE("all_types") {
  CHECK(all_types(ClosureTable(top(), atom("p"))).size() == 2);
  auto t = all_types(ClosureTable(parse("~p"), parse("<>p")));
  CHECK(t.size() == 2);
  ClosureTable cl(parse("~p"), parse("<>p"));
  for (const auto& s : t) {
    CHECK(s.test(static_cast<std::size_t>(cl.index_of(parse("~p")))));
    CHECK(is_type(s, cl));
  }
  CHECK(all_types(ClosureTable(bot(), top())).empty());

  // Agrees with filtering every subset on small closures.
  std::mt19937_64 rng(41);
  GenOptions opt;
  opt.max_depth = 3;
  for (int i = 0; i < 60; ++i) {
    Problem p = random_problem(rng, opt, 10);
    ClosureTable c(p.assumption, p.goal);
    std::size_t filtered = 0;
    for (std::size_t m = 0; m < (std::size_t{1} << c.size()); ++m) {
      Sequent s(c.size(), m);
      filtered += is_type(s, c);
    }
    auto types = all_types(c);
    CHECK(types.size() == filtered);
    for (const auto& s : types) CHECK(is_type(s, c));
  }
}

TEST_CASE("elim_step examples and monotonicity") {
  ClosureTable cl(parse("~p"), parse("<>p"));
  OneStepSolver k(Logic::K);
  CHECK(elim_step({}, cl, k).empty());
  auto types = all_types(cl);
  auto step = elim_step(types, cl, k);
  REQUIRE(step.size() == 1);
  CHECK_FALSE(step[0].test(cl.phi0_index()));

  ClosureTable flat(parse("p | q"), parse("p"));
  auto ft = all_types(flat);
  CHECK(elim_step(ft, flat, k).size() == ft.size());

  std::mt19937_64 rng(43);
  for (Logic logic : {Logic::K, Logic::Presburger}) {
    GenOptions opt;
    opt.logic = logic;
    OneStepSolver solver(logic);
    for (int i = 0; i < 40; ++i) {
      Problem p = random_problem(rng, opt, 10);
      ClosureTable c(p.assumption, p.goal);
      auto all = all_types(c);
      std::vector<Sequent> sub;
      for (const auto& s : all)
        if (rng() % 2) sub.push_back(s);
      auto small = elim_step(sub, c, solver), big = elim_step(all, c, solver);
      for (const auto& s : small) CHECK(std::find(big.begin(), big.end(), s) != big.end());
      auto run = eliminate(all, c, solver);
      CHECK(run.rounds <= all.size() + 1);
    }
  }
}

TEST_CASE("sequent rules and children") {
  ClosureTable cl(top(), parse("(p & q) & ~(p & q) & ~~p"));
  auto seq = [&](std::initializer_list<const char*> fs) {
    std::vector<Formula> v;
    for (const char* f : fs) v.push_back(parse(f));
    return cl.sequent_of(v);
  };
  auto r1 = prop_rules(seq({"p & q"}), cl);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].conclusions == std::vector<Sequent>{seq({"p", "q"})});
  auto r2 = prop_rules(seq({"~(p & q)"}), cl);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].conclusions == std::vector<Sequent>{seq({"~p"}), seq({"~q"})});
  auto r3 = prop_rules(seq({"~~p"}), cl);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].conclusions == std::vector<Sequent>{seq({"p"})});
  CHECK(children(seq({"~~p"}), cl) == std::vector<Sequent>{seq({"p"})});
  auto r4 = prop_rules(seq({"false", "p"}), cl);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].conclusions.empty());
  CHECK(prop_rules(seq({"p", "~q"}), cl).empty());
  CHECK(is_state(seq({"p", "~q"}), cl));
  CHECK_FALSE(is_state(seq({"true"}), cl));

  ClosureTable pc(top(), parse("#(p) > 0"));
  Sequent st = pc.sequent_of(std::vector<Formula>{parse("#(p) > 0")});
  auto kids = children(st, pc);
  CHECK(kids == std::vector<Sequent>{pc.sequent_of(std::vector<Formula>{top(), atom("p")}),
                                     pc.sequent_of(std::vector<Formula>{top(), neg(atom("p"))})});

  ClosureTable ch(top(), chain(5));
  CHECK(children(ch.sequent_of(std::vector<Formula>{chain(5)}), ch).size() == 2);

  // Cap exceeded.
  ClosureTable wide(top(), parse("<>a & <>b & <>c"));
  Sequent ws = wide.sequent_of(std::vector<Formula>{parse("<>a"), parse("<>b"), parse("<>c")});
  CHECK(children(ws, wide).size() == 8);
  CHECK_THROWS_AS(children(ws, wide, 4), ResourceLimit);
}

TEST_CASE("decision procedures on fixed examples") {
  for (const auto& c : kCases) {
    Formula psi = parse(c.psi), phi = parse(c.phi);
    INFO(std::string(c.psi), " |- ", std::string(c.phi));
    Decision e = decide_elim(psi, phi, c.logic);
    Decision g = decide_caching(psi, phi, c.logic);
    Decision w = decide_worklist(psi, phi, c.logic);
    CHECK(e.verdict == c.expected);
    CHECK(g.verdict == c.expected);
    CHECK(w.verdict == c.expected);
    if (c.expected == Verdict::Sat) {
      check_model(e, psi, phi);
      check_model(g, psi, phi);
      check_model(w, psi, phi);
    }
  }
}

TEST_CASE("probabilistic witness value is carried into the model") {
  Formula phi = parse("2*w(a) < 1 & 2*w(a) > 0");
  Decision d = decide_elim(top(), phi, Logic::Prob);
  REQUIRE(d.verdict == Verdict::Sat);
  REQUIRE(d.model);
  Rat mass = 0;
  auto a = model_check(*d.model, atom("a"));
  for (const auto& [t, w] : d.model->edges[d.root])
    if (a[t]) mass += w;
  CHECK(mass > 0);
  CHECK(mass < Rat(1, 2));
}

TEST_CASE("caching: chain of graded diamonds has two children per level") {
  const int n = 12;
  Formula phi = chain(n);
  ClosureTable cl(top(), phi);
  CHECK(all_types(cl).size() >= (std::size_t{1} << n));
  Decision d = decide_caching(top(), phi, Logic::Presburger);
  CHECK(d.verdict == Verdict::Sat);
  CHECK(d.stats.at("generated") <= 4 * n + 4);
  check_model(d, top(), phi);
  Decision w = decide_worklist(top(), phi, Logic::Presburger);
  CHECK(w.verdict == Verdict::Sat);
  CHECK(w.stats.at("edges_processed") <= 8 * n + 8);
}

TEST_CASE("caching: false assumption is refuted by the bottom rule") {
  Decision d = decide_caching(bot(), top(), Logic::K);
  CHECK(d.verdict == Verdict::Unsat);
  CHECK(d.stats.at("generated") <= 3);
  CHECK(decide_worklist(bot(), top(), Logic::K).verdict == Verdict::Unsat);
}

TEST_CASE("three-way agreement with invariants") {
  std::mt19937_64 rng(47);
  for (Logic logic : {Logic::K, Logic::Presburger, Logic::Prob}) {
    GenOptions opt;
    opt.logic = logic;
    int sat = 0, unsat = 0;
    for (int i = 0; i < 60; ++i) {
      Problem p = random_problem(rng, opt, 12);
      INFO(render(p.assumption), " |- ", render(p.goal));
      Decision e = decide_elim(p.assumption, p.goal, logic);
      CachingOptions copt;
      copt.check_invariants = true;
      Decision g = decide_caching(p.assumption, p.goal, logic, copt);
      CachingOptions lazy;
      lazy.propagate_every = 0;
      Decision g0 = decide_caching(p.assumption, p.goal, logic, lazy);

      std::vector<EdgeCount> counts;
      WorklistOptions wopt;
      wopt.edge_counts = &counts;
      wopt.checkpoint = [](const WorklistSnapshot& s) {
        NodeSet defined(s.alpha.size()), zero(s.alpha.size(), 0);
        for (std::size_t i = 0; i < s.alpha.size(); ++i) defined[i] = s.alpha[i] >= 0;
        NodeSet a = mu_a(s.graph, s.solver, defined, zero);
        for (std::size_t i = 0; i < s.alpha.size(); ++i)
          if (s.alpha[i] == 0) CHECK(a[i]);
        for (const auto& [id, deps] : s.deps)
          if (!deps.empty()) CHECK(s.alpha[id] == 1);
      };
      Decision w = decide_worklist(p.assumption, p.goal, logic, wopt);
      CHECK(edge_bound_audit(counts));
      if (e.verdict == Verdict::Unknown) continue;
      CHECK(g.verdict == e.verdict);
      CHECK(g0.verdict == e.verdict);
      CHECK(w.verdict == e.verdict);
      if (e.verdict == Verdict::Sat) {
        ++sat;
        check_model(e, p.assumption, p.goal);
        check_model(g, p.assumption, p.goal);
        check_model(w, p.assumption, p.goal);
      } else {
        ++unsat;
      }
    }
    CHECK(sat > 5);
    CHECK(unsat > 5);
  }
}

TEST_CASE("fixpoint laws on random monotone functions") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 12;
    using Set = std::vector<char>;
    // f(S) = { i | some clause of i is contained in S } is monotone.
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
    CHECK(f(nu) == nu);
    CHECK(f(mu) == mu);
    CHECK(greatest_fixpoint(Set(n, 1), [&](const Set& s) { return f(join(s, nu)); }) == nu);
    CHECK(least_fixpoint(Set(n, 0), [&](const Set& s) { return f(join(s, mu)); }) == mu);
  }
}
