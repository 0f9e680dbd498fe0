#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "delsym/structures.hpp"

namespace delsym {

/// Explicit model: worlds are the states themselves, one successor list per
/// agent and world.
struct KripkeModel {
  std::vector<State> worlds;
  std::vector<std::vector<std::vector<std::size_t>>> successors;

  std::optional<std::size_t> index_of(const State& s) const;
  std::size_t edge_count(std::size_t agent) const;
};

KripkeModel structure_to_kripke(const Structure& f);

/// Textbook satisfaction; announcements restrict the model. Rejects event
/// modalities.
bool kripke_check(const KripkeModel& m, std::size_t world, const Formula& phi);

struct QbfBlock {
  bool universal = true;
  std::vector<std::uint32_t> variables;
};

/// Closed prenex QBF with a CNF matrix; variables are numbered from 1 and
/// literals are signed variable numbers as in QDIMACS.
struct PrenexQBF {
  std::uint32_t variables = 0;
  std::vector<QbfBlock> blocks;
  std::vector<std::vector<int>> clauses;
};

/// Throws LogicError if a matrix variable is not quantified or is quantified
/// twice.
void require_closed(const PrenexQBF& q);

bool qbf_eval(const PrenexQBF& q);

/// The matrix as a formula over atoms[v-1] for variable v.
Formula qbf_matrix(const PrenexQBF& q, std::span<const Atom> atoms);

/// Symbol count over the core connectives: one per universal variable, three
/// per existential one (read as not-forall-not) plus the matrix length.
std::size_t qbf_length(const PrenexQBF& q, std::span<const Atom> atoms);

/// Model checking instance of a QBF: vocabulary x1..xn, trivial state law,
/// one agent per block observing everything outside its block, the empty
/// state, and K / Khat per universal / existential block.
struct QbfInstance {
  std::shared_ptr<Manager> manager;
  SignaturePtr signature;
  AgentSet agents;
  std::vector<Atom> atoms;
  KnowledgeStructure knowledge;
  /// Same relations given by observation laws.
  BeliefStructure belief;
  State state;
  Formula formula = Formula::top();
  std::size_t qbf_length = 0;
};

QbfInstance qbf_to_instance(const PrenexQBF& q);

}  // namespace delsym
