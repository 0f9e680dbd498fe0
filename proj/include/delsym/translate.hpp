#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "delsym/bdd.hpp"
#include "delsym/programs.hpp"

namespace delsym {

/// Relation diagram of a program over V and V'. The manager must rank every
/// atom of V together with its primed and double-primed copies.
Bdd mp_to_bdd(const MentalProgram& pi, std::span<const Atom> vocabulary, Manager& mgr);

struct TauStats {
  std::size_t calls = 0;
  std::size_t memo_hits = 0;
  /// Recursive calls whose (node count, remaining list) failed to decrease
  /// lexicographically.
  std::size_t measure_violations = 0;
};

/// Program of a relation diagram, consuming the base atoms of `list` in
/// order. Requires rank(p_k) < rank(p_k') < rank(p_{k+1}) for the listed atoms.
MentalProgram bdd_to_mp(Manager& mgr, Bdd omega, std::span<const Atom> list, TauStats* stats = nullptr);

/// The disjunction (p1 & p(n+1)) | ... | (pn & p(2n)) over fresh atoms p1..p2n
/// interned in `sig`, its test program, the order under which the diagram is
/// exponential (p1 < p2 < ... < p2n, primes after their base) and a contrast
/// order that pairs p_i with p_(n+i).
struct BlowupWitness {
  std::vector<Atom> vocabulary;
  Formula beta = Formula::top();
  MentalProgram program = MentalProgram::test(Formula::top());
  VarOrder adversarial;
  VarOrder contrast;
};
BlowupWitness blowup_witness(std::size_t n, Signature& sig);

/// Identity relation restricted to the states with exactly ceil(|V|/2) atoms.
Bdd grid_relation(std::span<const Atom> vocabulary, Manager& mgr);

}  // namespace delsym
