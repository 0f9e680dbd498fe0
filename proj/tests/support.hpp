#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "delsym/parse.hpp"
#include "delsym/programs.hpp"
#include "delsym/pspace.hpp"
#include "delsym/structures.hpp"

namespace delsym::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs.at(below(xs.size()));
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline std::vector<Atom> intern_all(Signature& sig, std::initializer_list<const char*> names) {
  std::vector<Atom> out;
  for (const char* n : names) out.push_back(sig.intern(n));
  return out;
}

inline std::vector<Atom> with_primes(std::span<const Atom> v) {
  std::vector<Atom> out;
  for (const auto& a : v) {
    out.push_back(a);
    out.push_back(a.primed());
  }
  return out;
}

inline State subset(std::span<const Atom> atoms, std::uint64_t mask) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (mask >> i & 1u) out.push_back(atoms[i]);
  return State(std::move(out));
}

/// s plus the primed copies of t.
inline std::vector<Atom> pair_valuation(const State& s, const State& t) {
  std::vector<Atom> out(s.begin(), s.end());
  for (const auto& a : t) out.push_back(a.primed());
  return out;
}

inline Formula random_bool(Rng& r, std::span<const Atom> atoms, int depth) {
  if (depth <= 0 || r.coin(0.25)) {
    std::size_t k = r.below(atoms.size() + 2);
    if (k == atoms.size()) return Formula::top();
    if (k == atoms.size() + 1) return Formula::bottom();
    return Formula::atom(atoms[k]);
  }
  switch (r.below(5)) {
    case 0:
      return Formula::negation(random_bool(r, atoms, depth - 1));
    case 1:
      return Formula::disjunction(random_bool(r, atoms, depth - 1), random_bool(r, atoms, depth - 1));
    case 2:
      return Formula::equivalence(random_bool(r, atoms, depth - 1), random_bool(r, atoms, depth - 1));
    default:
      return Formula::conjunction(random_bool(r, atoms, depth - 1), random_bool(r, atoms, depth - 1));
  }
}

/// Epistemic formula with announcements. `k_depth` bounds the nesting of
/// knowledge operators, `ann_depth` that of announcements.
inline Formula random_pal(Rng& r, std::span<const Atom> atoms, std::size_t agents, int k_depth, int ann_depth,
                          int size = 4) {
  if (size <= 0 || r.coin(0.2)) return random_bool(r, atoms, 1);
  switch (r.below(6)) {
    case 0:
      return Formula::negation(random_pal(r, atoms, agents, k_depth, ann_depth, size - 1));
    case 1:
      return Formula::conjunction(random_pal(r, atoms, agents, k_depth, ann_depth, size - 1),
                                  random_pal(r, atoms, agents, k_depth, ann_depth, size - 2));
    case 2:
    case 3:
      if (k_depth > 0 && agents > 0)
        return Formula::knows(r.below(agents), random_pal(r, atoms, agents, k_depth - 1, ann_depth, size - 1));
      return random_bool(r, atoms, 2);
    default:
      if (ann_depth > 0)
        return Formula::announce(random_pal(r, atoms, agents, k_depth, ann_depth - 1, size - 2),
                                 random_pal(r, atoms, agents, k_depth, ann_depth - 1, size - 1));
      return random_bool(r, atoms, 2);
  }
}

/// Belief structure over `atoms` with a random state law (with at least one
/// state) and random observation laws.
inline BeliefStructure random_belief(Rng& r, std::shared_ptr<Manager> mgr, std::span<const Atom> atoms,
                                     std::size_t agents) {
  BeliefStructure b;
  b.manager = mgr;
  b.vocabulary = Vocabulary(std::vector<Atom>(atoms.begin(), atoms.end()));
  State anchor = subset(atoms, r.below(std::size_t{1} << atoms.size()));
  Formula law = Formula::disjunction(random_bool(r, atoms, 2), characteristic(anchor.atoms(), atoms));
  b.law = compile_bool(law, *mgr);
  auto both = with_primes(atoms);
  for (std::size_t i = 0; i < agents; ++i) b.observation.push_back(compile_bool(random_bool(r, both, 3), *mgr));
  return b;
}

/// Transformer with fresh event atoms named `<tag>0`, `<tag>1`, ... over the
/// given vocabulary. Event laws may mention knowledge.
inline std::shared_ptr<Transformer> random_transformer(Rng& r, Signature& sig, std::shared_ptr<Manager> mgr,
                                                       std::span<const Atom> atoms, std::size_t agents,
                                                       const std::string& tag, bool factual) {
  auto x = std::make_shared<Transformer>();
  x->name = tag;
  x->manager = mgr;
  std::size_t events = r.below(3);
  for (std::size_t i = 0; i < events; ++i) {
    Atom e = sig.intern(tag + std::to_string(i), Provenance::event);
    mgr->declare(e);
    x->event_atoms.push_back(e);
  }
  std::vector<Atom> scope(atoms.begin(), atoms.end());
  scope.insert(scope.end(), x->event_atoms.begin(), x->event_atoms.end());
  x->event_law = r.coin(0.5) ? random_pal(r, scope, agents, 1, 0, 3) : random_bool(r, scope, 2);
  if (factual) {
    for (const auto& p : atoms)
      if (r.coin(0.5)) {
        x->modified.push_back(p);
        x->change_law.emplace(p, random_bool(r, scope, 2));
      }
    if (x->modified.empty()) {
      x->modified.push_back(atoms[0]);
      x->change_law.emplace(atoms[0], Formula::negation(Formula::atom(atoms[0])));
    }
  }
  auto both = with_primes(scope);
  for (std::size_t i = 0; i < agents; ++i)
    x->event_observation.push_back(r.coin(0.2) ? mgr->top() : compile_bool(random_bool(r, both, 2), *mgr));
  return x;
}

inline MentalProgram random_program(Rng& r, std::span<const Atom> atoms, int depth) {
  if (depth <= 0 || r.coin(0.25)) {
    if (r.coin(0.6)) return MentalProgram::assign(atoms[r.below(atoms.size())], r.coin());
    return MentalProgram::test(random_bool(r, atoms, 2));
  }
  switch (r.below(3)) {
    case 0:
      return MentalProgram::choice(random_program(r, atoms, depth - 1), random_program(r, atoms, depth - 1));
    case 1:
      return MentalProgram::sequence(random_program(r, atoms, depth - 1), random_program(r, atoms, depth - 1));
    default:
      return MentalProgram::intersection(random_program(r, atoms, depth - 1), random_program(r, atoms, depth - 1));
  }
}

/// Vocabulary `v0`, `v1`, ... of the given size in a fresh interleaved
/// manager.
struct Playground {
  SignaturePtr signature = std::make_shared<Signature>();
  std::vector<Atom> atoms;
  std::shared_ptr<Manager> manager;

  explicit Playground(std::size_t n, const std::string& prefix = "v") {
    for (std::size_t i = 0; i < n; ++i) atoms.push_back(signature->intern(prefix + std::to_string(i)));
    manager = std::make_shared<Manager>(VarOrder::interleaved(atoms));
  }
};

inline const char* kExample1 =
    "vocab p q\n"
    "law Top\n"
    "omega A: q'\n"
    "omega B: p' & (q <-> q')\n";

}  // namespace delsym::testing
