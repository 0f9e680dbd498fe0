#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "delsym/bdd.hpp"
#include "delsym/logic.hpp"

namespace delsym {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S5 structure: state law plus per-agent observable atoms.
struct KnowledgeStructure {
  std::shared_ptr<Manager> manager;
  Vocabulary vocabulary;
  Bdd law;
  std::vector<std::vector<Atom>> observables;
};

/// K structure: state law plus per-agent observation laws over V and V'.
/// `generation` counts the product updates that produced this structure and
/// names the frozen copies made by the next one.
struct BeliefStructure {
  std::shared_ptr<Manager> manager;
  Vocabulary vocabulary;
  Bdd law;
  std::vector<Bdd> observation;
  std::uint32_t generation = 0;
};

using Structure = std::variant<KnowledgeStructure, BeliefStructure>;

/// Symbolic action: event atoms, event law (any formula), modified atoms with
/// their change law, and per-agent event observation laws.
struct Transformer {
  std::string name;
  std::vector<Atom> event_atoms;
  Formula event_law = Formula::top();
  std::vector<Atom> modified;
  std::map<Atom, Formula> change_law;
  std::vector<Bdd> event_observation;
  std::shared_ptr<Manager> manager;
};

/// Everything a model file declares.
struct Model {
  std::shared_ptr<Manager> manager;
  SignaturePtr signature;
  AgentSet agents;
  Structure structure;
  std::map<std::string, std::shared_ptr<const Transformer>> transformers;
  std::optional<State> designated;
};

const Vocabulary& vocabulary_of(const Structure& f);
Bdd law_of(const Structure& f);
Manager& manager_of(const Structure& f);

/// Lazy iteration over the states of a structure.
class StateCursor {
 public:
  StateCursor(const Manager& mgr, Bdd law, std::span<const Atom> vocabulary)
      : cursor_(mgr.all_sat(law, vocabulary)) {}
  std::optional<State> next();

 private:
  Manager::SatCursor cursor_;
  std::vector<Atom> buffer_;
};
StateCursor states_of(const Structure& f);
StateCursor states_of(const KnowledgeStructure& f);
StateCursor states_of(const BeliefStructure& f);

bool is_state_of(const Structure& f, const State& s);

/// Replaces every event atom of `event_atoms` by top (if in x) or bottom.
Formula subst_point(const Formula& f, std::span<const Atom> event_atoms, const State& x);

/// The post-event actual state s^x; old values of modified atoms move to the
/// frozen copies of the given generation.
State update_state(const State& s, const Transformer& x_form, const State& point, std::uint32_t generation);

BeliefStructure product_update(const BeliefStructure& f, const Transformer& x);
KnowledgeStructure announce(const KnowledgeStructure& f, const Formula& announced);
BeliefStructure announce(const BeliefStructure& f, const Formula& announced);
Structure announce(const Structure& f, const Formula& announced);

/// Local Boolean translation of a formula relative to a structure.
Bdd boolean_translate(const KnowledgeStructure& f, const Formula& phi);
Bdd boolean_translate(const BeliefStructure& f, const Formula& phi);
Bdd boolean_translate(const Structure& f, const Formula& phi);

BeliefStructure embed_s5(const KnowledgeStructure& k);
/// Observation law of "observes exactly these atoms".
Bdd observation_of_observables(Manager& mgr, std::span<const Atom> observed);

std::size_t transformer_size(const Transformer& x);

/// Transformer whose event law is `announced`, with no event atoms, no
/// change and trivial event observation: updating with it is announcing.
std::shared_ptr<const Transformer> announcement_transformer(const Formula& announced, std::size_t agents,
                                                            std::shared_ptr<Manager> mgr);

/// Maximum vocabulary size the explicit-state evaluators accept.
inline constexpr std::size_t kExplicitGuard = 12;

/// Evaluates by literally materializing announcements and updates over
/// explicit state sets; the ground truth for the other algorithms.
bool naive_check(const Structure& f, const State& s, const Formula& phi);

struct TranslateStats {
  std::size_t nodes_allocated = 0;
};
/// Evaluates through the Boolean translation, reporting allocated nodes.
bool eval_bdd_algo(const Structure& f, const State& s, const Formula& phi, TranslateStats* stats = nullptr);

/// Human-readable structure statistics, one `key value` pair per line.
std::string structure_statistics(const Model& m);

}  // namespace delsym
