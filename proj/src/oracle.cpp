#include "coalgsat/oracle.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>

namespace coalgsat {

namespace {

bool is_guessed(Kind k) {
  return k == Kind::Diamond || k == Kind::Presburger || k == Kind::Prob || k == Kind::Univ;
}

std::vector<Rat> weight_grid(Logic logic, unsigned bound) {
  std::set<Rat> g;
  if (logic == Logic::K) return {Rat(0), Rat(1)};
  if (logic == Logic::Presburger) {
    std::vector<Rat> out;
    for (unsigned w = 0; w <= bound; ++w) out.emplace_back(w);
    return out;
  }
  for (unsigned q = 1; q <= bound; ++q)
    for (unsigned p = 0; p <= q; ++p) {
      Rat r(p, q);
      r.canonicalize();
      g.insert(r);
    }
  return {g.begin(), g.end()};
}

std::vector<std::vector<Rat>> all_rows(Logic logic, unsigned bound, std::size_t n) {
  std::vector<Rat> grid = weight_grid(logic, bound);
  std::vector<std::vector<Rat>> rows{{}};
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::vector<Rat>> next;
    for (const auto& r : rows)
      for (const auto& w : grid) {
        auto e = r;
        e.push_back(w);
        next.push_back(std::move(e));
      }
    rows = std::move(next);
  }
  if (logic == Logic::Prob) {
    std::erase_if(rows, [](const std::vector<Rat>& r) {
      Rat s = 0;
      for (const auto& w : r) s += w;
      return s > 1;
    });
  }
  return rows;
}

class Search {
 public:
  Search(const Formula& psi, const Formula& phi0, Logic logic, const OracleOptions& opt)
      : psi_(psi), phi0_(phi0), logic_(logic), opt_(opt) {
    for (const auto& g : subformulas(conj(psi, phi0))) {
      if (g.kind() == Kind::Atom && !atom_ix_.contains(g.name())) {
        atom_ix_[g.name()] = atoms_.size();
        atoms_.push_back(g.name());
      }
      if (is_guessed(g.kind())) {
        modal_ix_[g] = modal_.size();
        modal_.push_back(g);
      }
    }
    noms_ = nominals_of(conj(psi, phi0));
    for (std::size_t i = 0; i < noms_.size(); ++i) nom_ix_[noms_[i]] = i;
  }

  OracleResult run() {
    OracleResult res;
    const std::size_t bits = atoms_.size() + modal_.size();
    if (bits >= 20) throw std::invalid_argument("oracle_search: formula too large");
    codes_ = std::uint64_t{1} << bits;
    for (n_ = 1; n_ <= opt_.max_states; ++n_) {
      rows_ = all_rows(logic_, opt_.weight_bound, n_);
      place_.assign(noms_.size(), 0);
      while (true) {
        holds_nominal_.assign(n_, false);
        for (auto p : place_) holds_nominal_[p] = true;
        code_.assign(n_, 0);
        if (assign(0, res)) return res;
        if (!res.exhausted) return res;
        std::size_t k = 0;
        while (k < place_.size() && ++place_[k] == n_) place_[k++] = 0;
        if (k == place_.size()) break;
      }
    }
    return res;
  }

 private:
  // 0 false, 1 true, 2 unknown; states >= depth_ are not yet guessed.
  int eval(const Formula& f, std::size_t s) const {
    switch (f.kind()) {
      case Kind::Bot:
        return 0;
      case Kind::Atom:
        return s < depth_ ? int((code_[s] >> atom_ix_.at(f.name())) & 1) : 2;
      case Kind::Nominal:
        return place_[nom_ix_.at(f.name())] == s;
      case Kind::Neg: {
        int v = eval(f.child(), s);
        return v == 2 ? 2 : 1 - v;
      }
      case Kind::And: {
        int a = eval(f.child(0), s);
        if (a == 0) return 0;
        int b = eval(f.child(1), s);
        if (b == 0) return 0;
        return a == 1 && b == 1 ? 1 : 2;
      }
      case Kind::Sat:
        return eval(f.child(), place_[nom_ix_.at(f.name())]);
      default:
        return s < depth_ ? int((code_[s] >> (atoms_.size() + modal_ix_.at(f))) & 1) : 2;
    }
  }

  bool assign(std::size_t s, OracleResult& res) {
    if (s == n_) return leaf(res);
    // States without nominals other than the root are interchangeable.
    std::uint64_t from = 0;
    if (s >= 2 && !holds_nominal_[s] && !holds_nominal_[s - 1]) from = code_[s - 1];
    for (std::uint64_t c = from; c < codes_; ++c) {
      code_[s] = c;
      depth_ = s + 1;
      bool ok = true;
      for (std::size_t m = 0; m < modal_.size() && ok && s > 0; ++m)
        if (modal_[m].kind() == Kind::Univ) ok = ((c ^ code_[0]) >> (atoms_.size() + m) & 1) == 0;
      for (std::size_t t = 0; t <= s && ok; ++t) ok = eval(psi_, t) != 0;
      if (ok) ok = eval(phi0_, 0) != 0;
      if (ok && assign(s + 1, res)) return true;
      if (!res.exhausted) return false;
    }
    depth_ = s;
    return false;
  }

  bool bit(std::size_t s, std::size_t m) const { return (code_[s] >> (atoms_.size() + m)) & 1; }

  bool leaf(OracleResult& res) {
    if (++res.leaves > opt_.max_leaves) {
      res.exhausted = false;
      return false;
    }
    for (std::size_t t = 0; t < n_; ++t)
      if (eval(psi_, t) != 1) return false;
    if (eval(phi0_, 0) != 1) return false;
    // Extensions of the modal arguments.
    std::vector<std::vector<std::vector<bool>>> ext(modal_.size());
    for (std::size_t m = 0; m < modal_.size(); ++m) {
      for (const auto& a : modal_[m].children()) {
        std::vector<bool> e(n_);
        for (std::size_t t = 0; t < n_; ++t) e[t] = eval(a, t) == 1;
        ext[m].push_back(std::move(e));
      }
      if (modal_[m].kind() == Kind::Univ) {
        bool all = std::all_of(ext[m][0].begin(), ext[m][0].end(), [](bool b) { return b; });
        if (all != bit(0, m)) return false;
      }
    }
    std::vector<std::size_t> chosen(n_);
    for (std::size_t s = 0; s < n_; ++s) {
      bool found = false;
      for (std::size_t r = 0; r < rows_.size() && !found; ++r) {
        found = true;
        for (std::size_t m = 0; m < modal_.size() && found; ++m)
          if (modal_[m].kind() != Kind::Univ) found = semantic(modal_[m], rows_[r], ext[m]) == bit(s, m);
        if (found) chosen[s] = r;
      }
      if (!found) return false;
    }
    Model model(model_kind(logic_), n_);
    for (std::size_t s = 0; s < n_; ++s) {
      for (std::size_t t = 0; t < n_; ++t)
        if (rows_[chosen[s]][t] != 0) model.set_edge(s, t, rows_[chosen[s]][t]);
      for (std::size_t a = 0; a < atoms_.size(); ++a)
        if ((code_[s] >> a) & 1) model.atoms[s].insert(atoms_[a]);
    }
    for (std::size_t i = 0; i < noms_.size(); ++i) model.nominals[noms_[i]] = place_[i];
    if (!holds_globally(model, psi_) || !model_check(model, phi0_)[0])
      throw std::logic_error("oracle_search: guessed model fails certification");
    res.model = std::move(model);
    return true;
  }

  static Rat measure(const std::vector<Rat>& row, const std::vector<bool>& ext) {
    Rat m = 0;
    for (std::size_t t = 0; t < row.size(); ++t)
      if (ext[t]) m += row[t];
    return m;
  }

  static bool semantic(const Formula& f, const std::vector<Rat>& row, const std::vector<std::vector<bool>>& ext) {
    switch (f.kind()) {
      case Kind::Diamond:
        return measure(row, ext[0]) > 0;
      case Kind::Presburger: {
        Int sum = 0;
        for (std::size_t i = 0; i < ext.size(); ++i) sum += f.coefficients()[i] * measure(row, ext[i]).get_num();
        switch (f.rel()) {
          case Rel::Lt:
            return sum < f.bound();
          case Rel::Gt:
            return sum > f.bound();
          case Rel::Eq:
            return sum == f.bound();
          case Rel::Mod: {
            Int r = sum - f.bound();
            Int q = f.modulus();
            return r % q == 0;
          }
        }
        return false;
      }
      case Kind::Prob: {
        std::vector<Rat> point;
        for (const auto& e : ext) point.push_back(measure(row, e));
        return f.polynomial().evaluate(point) >= 0;
      }
      default:
        throw std::logic_error("oracle_search: not a modality");
    }
  }

  Formula psi_, phi0_;
  Logic logic_;
  OracleOptions opt_;
  std::vector<std::string> atoms_, noms_;
  std::unordered_map<std::string, std::size_t> atom_ix_, nom_ix_;
  std::vector<Formula> modal_;
  std::unordered_map<Formula, std::size_t, FormulaHash> modal_ix_;
  std::size_t n_ = 0, depth_ = 0;
  std::uint64_t codes_ = 1;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> place_;
  std::vector<bool> holds_nominal_;
  std::vector<std::uint64_t> code_;
};

}  // namespace

OracleResult oracle_search(const Formula& psi, const Formula& phi0, Logic logic, const OracleOptions& opt) {
  if (opt.max_states == 0) throw std::invalid_argument("oracle_search: max_states must be positive");
  return Search(psi, phi0, logic, opt).run();
}

}  // namespace coalgsat
