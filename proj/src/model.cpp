#include "coalgsat/model.hpp"

#include <stdexcept>
#include <unordered_map>

namespace coalgsat {

std::size_t Model::add_state() {
  edges.emplace_back();
  atoms.emplace_back();
  return num_states++;
}

void Model::set_edge(std::size_t from, std::size_t to, const Rat& weight) {
  if (weight == 0) {
    edges.at(from).erase(to);
  } else {
    edges.at(from)[to] = weight;
  }
}

Rat Model::total_weight(std::size_t s) const {
  Rat sum = 0;
  for (const auto& [t, w] : edges.at(s)) sum += w;
  return sum;
}

void Model::validate() const {
  if (edges.size() != num_states || atoms.size() != num_states)
    throw std::invalid_argument("model tables do not match the state count");
  for (std::size_t s = 0; s < num_states; ++s) {
    for (const auto& [t, w] : edges[s]) {
      if (t >= num_states) throw std::invalid_argument("edge to unknown state");
      if (w < 0) throw std::invalid_argument("negative weight");
      if (kind == Kind::Multigraph && !is_integral(w)) throw std::invalid_argument("fractional multiplicity");
    }
    if (kind == Kind::Subdistribution && total_weight(s) > 1)
      throw std::invalid_argument("outgoing weight exceeds 1 at state " + std::to_string(s));
  }
  for (const auto& [n, s] : nominals)
    if (s >= num_states) throw std::invalid_argument("nominal '" + n + " denotes unknown state");
}

namespace {

class Checker {
 public:
  explicit Checker(const Model& m) : m_(m) {}

  const std::vector<bool>& eval(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    std::vector<bool> out = compute(f);
    return memo_.emplace(f, std::move(out)).first->second;
  }

 private:
  Rat measure(std::size_t s, const std::vector<bool>& ext) const {
    Rat sum = 0;
    for (const auto& [t, w] : m_.edges[s])
      if (ext[t]) sum += w;
    return sum;
  }

  std::vector<bool> compute(const Formula& f) {
    const std::size_t n = m_.num_states;
    std::vector<bool> out(n, false);
    switch (f.kind()) {
      case Kind::Bot:
        break;
      case Kind::Atom:
        for (std::size_t s = 0; s < n; ++s) out[s] = m_.atoms[s].count(f.name()) > 0;
        break;
      case Kind::Nominal: {
        auto it = m_.nominals.find(f.name());
        if (it == m_.nominals.end()) throw std::invalid_argument("unassigned nominal '" + f.name());
        out[it->second] = true;
        break;
      }
      case Kind::Neg: {
        const auto& a = eval(f.child());
        for (std::size_t s = 0; s < n; ++s) out[s] = !a[s];
        break;
      }
      case Kind::And: {
        std::vector<bool> a = eval(f.child(0));
        const auto& b = eval(f.child(1));
        for (std::size_t s = 0; s < n; ++s) out[s] = a[s] && b[s];
        break;
      }
      case Kind::Diamond: {
        const auto& a = eval(f.child());
        for (std::size_t s = 0; s < n; ++s) out[s] = measure(s, a) > 0;
        break;
      }
      case Kind::Presburger: {
        if (m_.kind != Model::Kind::Multigraph)
          throw std::invalid_argument("Presburger modality evaluated on a subdistribution model");
        std::vector<std::vector<bool>> exts;
        for (const auto& c : f.children()) exts.push_back(eval(c));
        for (std::size_t s = 0; s < n; ++s) {
          Int sum = 0;
          for (std::size_t i = 0; i < exts.size(); ++i) sum += f.coefficients()[i] * measure(s, exts[i]).get_num();
          switch (f.rel()) {
            case Rel::Lt:
              out[s] = sum < f.bound();
              break;
            case Rel::Gt:
              out[s] = sum > f.bound();
              break;
            case Rel::Eq:
              out[s] = sum == f.bound();
              break;
            case Rel::Mod:
              out[s] = mod_floor(sum - f.bound(), f.modulus()) == 0;
              break;
          }
        }
        break;
      }
      case Kind::Prob: {
        if (m_.kind != Model::Kind::Subdistribution)
          throw std::invalid_argument("probabilistic modality evaluated on a multigraph");
        std::vector<std::vector<bool>> exts;
        for (const auto& c : f.children()) exts.push_back(eval(c));
        std::vector<Rat> point(exts.size());
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t i = 0; i < exts.size(); ++i) point[i] = measure(s, exts[i]);
          out[s] = f.polynomial().evaluate(point) >= 0;
        }
        break;
      }
      case Kind::Sat: {
        auto it = m_.nominals.find(f.name());
        if (it == m_.nominals.end()) throw std::invalid_argument("unassigned nominal '" + f.name());
        bool v = eval(f.child())[it->second];
        out.assign(n, v);
        break;
      }
      case Kind::Univ: {
        const auto& a = eval(f.child());
        bool all = true;
        for (std::size_t s = 0; s < n; ++s) all = all && a[s];
        out.assign(n, all);
        break;
      }
    }
    return out;
  }

  const Model& m_;
  std::unordered_map<Formula, std::vector<bool>> memo_;
};

}  // namespace

std::vector<bool> model_check(const Model& m, const Formula& f) {
  Checker c(m);
  return c.eval(f);
}

bool holds_globally(const Model& m, const Formula& f) {
  for (bool b : model_check(m, f))
    if (!b) return false;
  return true;
}

}  // namespace coalgsat
