#include <functional>
#include <random>

#include "coalgsat/logic_presburger.hpp"
#include "coalgsat/logic_prob.hpp"
#include "coalgsat/onestep.hpp"
#include "coalgsat/parser.hpp"
#include "doctest.h"
#include "onestep_fixtures.hpp"
#include "oracles.hpp"

using namespace coalgsat;
using fixtures::make_pair;
using fixtures::models_of;

namespace {

// Brute force: every weighting of constraint valuations with supports of size
// <= max_support and weights in [1, max_weight].
bool brute_presburger(const OneStepPair& pair, std::size_t max_support, int max_weight) {
  const std::size_t n = pair.constraint.size();
  OneStepResult cand;
  cand.verdict = Verdict::Sat;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (check_witness(pair, cand, Logic::Presburger)) return true;
    if (left == 0) return false;
    for (std::size_t i = from; i < n; ++i)
      for (int w = 1; w <= max_weight; ++w) {
        cand.witness.emplace_back(i, Rat(w));
        bool ok = rec(i + 1, left - 1);
        cand.witness.pop_back();
        if (ok) return true;
      }
    return false;
  };
  return rec(0, max_support);
}

// Brute force for K: every subset of constraint valuations as successor set.
bool brute_k(const OneStepPair& pair) {
  const std::size_t n = pair.constraint.size();
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    OneStepResult cand;
    cand.verdict = Verdict::Sat;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) cand.witness.emplace_back(i, Rat(1));
    if (check_witness(pair, cand, Logic::K)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("pair_for_type: clause and constraint shape") {
  Formula psi = parse("c -> a | b");
  Formula phi = parse("~<>a & ~<>b & <>c");
  ClosureTable cl(psi, phi);
  REQUIRE(cl.modal_atoms().size() == 6);  // <>a <>b <>c a b c
  Sequent gamma = cl.sequent_of(std::vector<Formula>{parse("~<>a"), parse("~<>b"), parse("<>c"), parse("~a"),
                                                     parse("~b"), parse("~c")});
  // Types over the propositional atoms satisfying c -> a | b.
  std::vector<Sequent> types;
  for (const auto& v : models_of(3, [](const std::vector<bool>& v) { return !v[2] || v[0] || v[1]; })) {
    std::vector<Formula> fs{parse("<>a"), parse("<>b"), parse("<>c")};
    fs.push_back(v[0] ? atom("a") : neg(atom("a")));
    fs.push_back(v[1] ? atom("b") : neg(atom("b")));
    fs.push_back(v[2] ? atom("c") : neg(atom("c")));
    types.push_back(cl.sequent_of(fs));
  }
  OneStepPair pair = pair_for_type(gamma, types, cl);
  CHECK(pair.clause.size() == 6);
  CHECK(pair.variables.size() == 3);  // atoms are nullary
  CHECK(pair.constraint.size() == types.size());
  for (std::size_t i = 0; i < pair.variables.size(); ++i) {
    bool used_once = false;
    for (const auto& lit : pair.clause)
      for (std::size_t v : lit.vars)
        if (v == i) {
          CHECK_FALSE(used_once);
          used_once = true;
        }
    CHECK(used_once);
  }
  CHECK(solve_k(pair).verdict == Verdict::Unsat);

  CHECK(pair_for_type(gamma, {}, cl).constraint.empty());
  CHECK(solve_k(pair_for_type(gamma, {}, cl)).verdict == Verdict::Unsat);

  ClosureTable flat(parse("p"), parse("~p"));
  Sequent g = flat.sequent_of(std::vector<Formula>{parse("p")});
  OneStepPair plain = pair_for_type(g, {g}, flat);
  CHECK(plain.variables.empty());
  CHECK(solve_k(plain).verdict == Verdict::Sat);
}

TEST_CASE("pair_for_type: monotone in the type set") {
  ClosureTable cl(parse("true"), parse("<>p & ~<>q"));
  std::vector<Sequent> all;
  for (const auto& v : models_of(4, [](const std::vector<bool>&) { return true; })) {
    std::vector<Formula> fs{top(), v[0] ? parse("<>p") : parse("~<>p"), v[1] ? parse("<>q") : parse("~<>q"),
                            v[2] ? atom("p") : neg(atom("p")), v[3] ? atom("q") : neg(atom("q"))};
    all.push_back(cl.sequent_of(fs));
  }
  std::vector<Sequent> half(all.begin(), all.begin() + 8);
  auto small = pair_for_type(all[3], half, cl).constraint;
  auto big = pair_for_type(all[3], all, cl).constraint;
  for (const auto& v : small) CHECK(std::find(big.begin(), big.end(), v) != big.end());
}

TEST_CASE("pair_for_state") {
  Formula psi = top();
  Formula a = parse("#(p) > 0"), b = parse("~(#(p) > 1)");
  ClosureTable cl(psi, conj(a, b));
  Sequent state = cl.sequent_of(std::vector<Formula>{a, b});
  Sequent c1 = cl.sequent_of(std::vector<Formula>{psi, atom("p")});
  Sequent c2 = cl.sequent_of(std::vector<Formula>{psi, neg(atom("p"))});
  OneStepPair pair = pair_for_state(state, {c1, c2}, cl);
  CHECK(pair.variables.size() == 2);
  CHECK(pair.constraint.size() == 2);
  auto res = solve_presburger(pair);
  CHECK(res.verdict == Verdict::Sat);
  CHECK(check_witness(pair, res, Logic::Presburger));
  CHECK(pair_for_state(state, {}, cl).constraint.empty());
  CHECK_THROWS_AS(pair_for_state(state, {cl.sequent_of(std::vector<Formula>{psi})}, cl), std::invalid_argument);

  ClosureTable k(psi, parse("<>p & ~<>p"));
  Sequent clash = k.sequent_of(std::vector<Formula>{parse("<>p"), parse("~<>p")});
  Sequent kc1 = k.sequent_of(std::vector<Formula>{psi, atom("p")});
  Sequent kc2 = k.sequent_of(std::vector<Formula>{psi, neg(atom("p"))});
  OneStepPair kp = pair_for_state(clash, {kc1, kc2}, k);
  REQUIRE(kp.clause.size() == 2);
  CHECK(kp.variables.size() == 2);
  CHECK(kp.clause[0].vars != kp.clause[1].vars);
  CHECK(kp.variables[0].arg == kp.variables[1].arg);
  CHECK(solve_k(kp).verdict == Verdict::Unsat);
}

TEST_CASE("check_witness examples") {
  OneStepPair pair = make_pair({"#(a) > 0"}, {"a"}, {{true}, {false}});
  CHECK(check_witness(pair, OneStepResult{Verdict::Sat, {{0, Rat(1)}}}, Logic::Presburger));
  CHECK_FALSE(check_witness(pair, OneStepResult{Verdict::Sat, {{1, Rat(1)}}}, Logic::Presburger));
  CHECK_FALSE(check_witness(pair, OneStepResult{Verdict::Sat, {{0, Rat(1, 2)}}}, Logic::Presburger));

  OneStepPair pp = make_pair({"~(2*w(a) < 1) ", "2*w(a) > 0"}, {"a"}, {{true}});
  // The parser turns "2*w(a) < 1" into a negated atom, so state it directly.
  OneStepPair half = make_pair({"2*w(a) < 1", "2*w(a) > 0"}, {"a"}, {{true}});
  CHECK(check_witness(half, OneStepResult{Verdict::Sat, {{0, Rat(1, 4)}}}, Logic::Prob));
  CHECK_FALSE(check_witness(half, OneStepResult{Verdict::Sat, {{0, Rat(1, 2)}}}, Logic::Prob));
  CHECK_FALSE(check_witness(pp, OneStepResult{Verdict::Sat, {{0, Rat(1, 4)}}}, Logic::Prob));
}

TEST_CASE("solve_k examples") {
  auto eta = models_of(3, [](const std::vector<bool>& v) { return !v[2] || v[0] || v[1]; });
  CHECK(solve_k(make_pair({"~<>a", "~<>b", "<>c"}, {"a", "b", "c"}, eta)).verdict == Verdict::Unsat);
  auto r = solve_k(make_pair({"<>a"}, {"a"}, {{false}, {true}}));
  REQUIRE(r.verdict == Verdict::Sat);
  CHECK(r.witness == std::vector<std::pair<std::size_t, Rat>>{{1, Rat(1)}});
  auto e = solve_k(make_pair({"~<>a"}, {"a"}, {{true}}));
  CHECK(e.verdict == Verdict::Sat);
  CHECK(e.witness.empty());
  CHECK(solve_k(make_pair({"p", "~p"}, {}, {})).verdict == Verdict::Unsat);
}

TEST_CASE("solve_k agrees with subset enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> nlit(1, 4), sign(0, 1), var(0, 2), coin(0, 1);
  const std::vector<std::string> names{"a", "b", "c"};
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> lits;
    int n = nlit(rng);
    for (int k = 0; k < n; ++k) lits.push_back(std::string(sign(rng) ? "" : "~") + "<>" + names[var(rng)]);
    std::vector<std::vector<bool>> rows;
    for (const auto& v : models_of(3, [](const std::vector<bool>&) { return true; }))
      if (coin(rng)) rows.push_back(v);
    OneStepPair pair = make_pair(lits, names, rows);
    auto r = solve_k(pair);
    CHECK((r.verdict == Verdict::Sat) == brute_k(pair));
    if (r.verdict == Verdict::Sat) CHECK(check_witness(pair, r, Logic::K));
  }
}

TEST_CASE("reduce/solve Presburger examples") {
  auto eta = models_of(3, [](const std::vector<bool>& v) {
    return (v[0] && v[1]) || (v[0] && !v[2]) || (v[1] && !v[2]);
  });
  OneStepPair p1 = make_pair({"#(a) + #(b) - #(c) > 0"}, {"a", "b", "c"}, eta);
  PresburgerReduction red = reduce_presburger(p1);
  CHECK(red.base.num_vars == eta.size());
  CHECK(red.base.rows.size() == 1);
  auto r1 = solve_presburger(p1);
  REQUIRE(r1.verdict == Verdict::Sat);
  CHECK(check_witness(p1, r1, Logic::Presburger));

  OneStepPair p2 = make_pair({"2*#(true) < 1", "2*#(true) > 0"}, {}, {{}});
  CHECK(reduce_presburger(p2).base.rows.size() == 2);
  CHECK(solve_presburger(p2).verdict == Verdict::Unsat);

  OneStepPair p3 = make_pair({}, {}, {});
  auto r3 = solve_presburger(p3);
  CHECK(r3.verdict == Verdict::Sat);
  CHECK(r3.witness.empty());

  OneStepPair p4 = make_pair({"#(a) =mod 2= 0", "#(a) > 0"}, {"a"}, {{true}});
  auto r4 = solve_presburger(p4);
  REQUIRE(r4.verdict == Verdict::Sat);
  CHECK(r4.witness == std::vector<std::pair<std::size_t, Rat>>{{0, Rat(2)}});

  // Negated equality and congruence branch.
  OneStepPair p5 = make_pair({"~(#(a) = 0)", "~(#(a) =mod 3= 1)", "#(a) < 3"}, {"a"}, {{true}});
  auto red5 = reduce_presburger(p5);
  CHECK(red5.alternatives.size() == 2);
  CHECK(red5.alternatives[0].size() == 2);
  CHECK(red5.alternatives[1].size() == 2);
  auto r5 = solve_presburger(p5);
  REQUIRE(r5.verdict == Verdict::Sat);
  CHECK(r5.witness == std::vector<std::pair<std::size_t, Rat>>{{0, Rat(2)}});
}

TEST_CASE("Example: (#a + #b - #c > 0, eta) is satisfiable iff eta meets (a&b)|(a&~c)|(b&~c)") {
  // All 255 non-empty sets of valuations over three variables.
  auto all = models_of(3, [](const std::vector<bool>&) { return true; });
  int sat = 0;
  for (std::size_t mask = 1; mask < 256; ++mask) {
    std::vector<std::vector<bool>> eta;
    for (std::size_t i = 0; i < 8; ++i)
      if ((mask >> i) & 1) eta.push_back(all[i]);
    bool expected = false;
    for (const auto& v : eta) expected = expected || (v[0] && v[1]) || (v[0] && !v[2]) || (v[1] && !v[2]);
    OneStepPair pair = make_pair({"#(a) + #(b) - #(c) > 0"}, {"a", "b", "c"}, eta);
    auto r = solve_presburger(pair);
    CHECK((r.verdict == Verdict::Sat) == expected);
    sat += r.verdict == Verdict::Sat;
  }
  CHECK(sat > 0);
}

TEST_CASE("solve_presburger agrees with bounded enumeration") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> nlit(1, 2), coef(-3, 3), bound(-2, 3), rel(0, 4), sign(0, 1), var(0, 2),
      coin(0, 1);
  const std::vector<std::string> names{"a", "b", "c"};
  int sat = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> lits;
    int n = nlit(rng);
    for (int k = 0; k < n; ++k) {
      std::string t = std::to_string(coef(rng)) + "*#(" + names[var(rng)] + ") + " + std::to_string(coef(rng)) +
                      "*#(" + names[var(rng)] + ")";
      int r = rel(rng);
      std::string op = r == 0 ? " < " : r == 1 ? " > " : r == 2 ? " = " : r == 3 ? " =mod 2= " : " =mod 3= ";
      std::string atom_text = "(" + t + op + std::to_string(r >= 3 ? std::abs(bound(rng)) % 2 : bound(rng)) + ")";
      if (parse(atom_text).kind() != Kind::Presburger) continue;
      lits.push_back((sign(rng) ? "" : "~") + atom_text);
    }
    std::vector<std::vector<bool>> rows;
    for (const auto& v : models_of(3, [](const std::vector<bool>&) { return true; }))
      if (coin(rng) && rows.size() < 3) rows.push_back(v);
    OneStepPair pair = make_pair(lits, names, rows);
    auto r = solve_presburger(pair);
    bool brute = brute_presburger(pair, 3, 8);
    if (brute) CHECK(r.verdict == Verdict::Sat);
    if (r.verdict == Verdict::Sat) {
      CHECK(check_witness(pair, r, Logic::Presburger));
      ++sat;
    }
  }
  CHECK(sat > 30);
}

TEST_CASE("reduce/solve probabilistic examples") {
  auto eta = models_of(3, [](const std::vector<bool>& v) {
    return (v[0] && v[1]) || (v[0] && !v[2]) || (v[1] && !v[2]);
  });
  OneStepPair p1 = make_pair({"w(a) + w(b) - w(c) > 0"}, {"a", "b", "c"}, eta);
  // "> 0" parses as a negated atom; the pair records it as a negative literal.
  CHECK_FALSE(p1.clause[0].positive);
  PolySystem s1 = reduce_prob(p1);
  CHECK(is_linear(s1));
  auto r1 = solve_prob(p1);
  REQUIRE(r1.verdict == Verdict::Sat);
  CHECK(check_witness(p1, r1, Logic::Prob));

  OneStepPair p2 = make_pair({"2*w(a) < 1", "2*w(a) > 0"}, {"a"}, {{true}});
  auto r2 = solve_prob(p2);
  REQUIRE(r2.verdict == Verdict::Sat);
  REQUIRE(r2.witness.size() == 1);
  CHECK(r2.witness[0].second > 0);
  CHECK(r2.witness[0].second < Rat(1, 2));

  // Independence: w(c) = w(a) w(b) with c standing for a & b.
  auto all = models_of(3, [](const std::vector<bool>& v) { return v[2] == (v[0] && v[1]); });
  OneStepPair p3 = make_pair({"w(a)*w(b) - w(c) >= 0", "w(c) - w(a)*w(b) >= 0", "w(a) >= 1/2", "w(a) <= 1/2", "w(b) >= 1/2", "w(b) <= 1/2"},
                             {"a", "b", "c"}, all);
  PolySystem s3 = reduce_prob(p3);
  CHECK_FALSE(is_linear(s3));
  auto r3 = solve_prob(p3);
  REQUIRE(r3.verdict == Verdict::Sat);
  CHECK(check_witness(p3, r3, Logic::Prob));
  std::vector<Rat> w(3);
  for (std::size_t v = 0; v < 3; ++v) w[v] = variable_measure(p3, r3, v);
  CHECK(w[2] == w[0] * w[1]);

  // w(a)^2 + 1 <= 0 is refuted on the unit box at once.
  OneStepPair p4 = make_pair({"-1*w(a)*w(a) - 1 >= 0"}, {"a"}, {{true}});
  PolyBudget none;
  none.max_depth = 0;
  CHECK(solve_prob(p4, none).verdict == Verdict::Unsat);
}

TEST_CASE("probabilistic linear fragment agrees with Fourier-Motzkin") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> nlit(1, 3), coef(-2, 2), cst(-2, 2), sign(0, 1), var(0, 1), coin(0, 1);
  const std::vector<std::string> names{"a", "b"};
  int sat = 0, unsat = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> lits;
    int n = nlit(rng);
    for (int k = 0; k < n; ++k) {
      std::string t = std::to_string(coef(rng)) + "*w(" + names[var(rng)] + ") + " + std::to_string(coef(rng)) +
                      "*w(" + names[var(rng)] + ") + " + std::to_string(cst(rng)) + "/2 >= 0";
      Formula f = parse(t);
      if (f.kind() != Kind::Prob) continue;
      lits.push_back((sign(rng) ? "" : "~") + std::string("(") + t + ")");
    }
    std::vector<std::vector<bool>> rows;
    for (const auto& v : models_of(2, [](const std::vector<bool>&) { return true; }))
      if (coin(rng)) rows.push_back(v);
    OneStepPair pair = make_pair(lits, names, rows);
    PolySystem sys = reduce_prob(pair);
    std::vector<LinRow> lin;
    for (const auto& c : sys.constraints) {
      LinRow r{std::vector<Rat>(sys.num_vars), c.rel == PolyRel::Ge ? RowRel::Ge : RowRel::Lt,
               -c.poly.constant_term()};
      for (std::size_t j = 0; j < sys.num_vars; ++j) r.coeffs[j] = c.poly.linear_coefficient(static_cast<std::uint32_t>(j));
      lin.push_back(std::move(r));
    }
    lin.push_back(LinRow{std::vector<Rat>(sys.num_vars, Rat(1)), RowRel::Le, Rat(1)});
    auto r = solve_prob(pair);
    CHECK((r.verdict == Verdict::Sat) == oracle::fourier_motzkin(sys.num_vars, lin));
    (r.verdict == Verdict::Sat ? sat : unsat)++;
  }
  CHECK(sat > 30);
  CHECK(unsat > 30);
}

TEST_CASE("OneStepSolver memoizes and verifies") {
  OneStepSolver solver(Logic::Presburger);
  OneStepPair p = make_pair({"#(a) =mod 2= 0", "#(a) > 0"}, {"a"}, {{true}, {true}, {false}});
  auto r1 = solver.solve(p);
  REQUIRE(r1.verdict == Verdict::Sat);
  CHECK(check_witness(p, r1, Logic::Presburger));
  // Same problem with the valuations permuted hits the cache.
  OneStepPair q = make_pair({"#(b) =mod 2= 0", "#(b) > 0"}, {"b"}, {{false}, {true}});
  auto r2 = solver.solve(q);
  REQUIRE(r2.verdict == Verdict::Sat);
  CHECK(check_witness(q, r2, Logic::Presburger));
  CHECK(solver.stats().calls == 2);
  CHECK(solver.stats().backend_calls == 1);
  CHECK(solver.stats().cache_hits == 1);
}
