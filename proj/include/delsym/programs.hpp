#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "delsym/logic.hpp"

namespace delsym {

/// Mental programs: assignments p <- T / p <- F, Boolean tests, union,
/// sequence and intersection. Values share structure, so a program built by
/// a translation may be a DAG.
class MentalProgram {
 public:
  enum class Kind : std::uint8_t { assign, test, choice, sequence, intersection };

  static MentalProgram assign(const Atom& p, bool value);
  static MentalProgram test(Formula condition);
  static MentalProgram choice(MentalProgram a, MentalProgram b);
  static MentalProgram sequence(MentalProgram a, MentalProgram b);
  static MentalProgram intersection(MentalProgram a, MentalProgram b);
  /// Left-nested union; the empty union is ?Bot.
  static MentalProgram choice_of(std::span<const MentalProgram> ps);
  /// Left-nested sequence; the empty sequence is ?Top.
  static MentalProgram sequence_of(std::span<const MentalProgram> ps);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const Atom& atom() const { return node_->atom; }
  bool value() const { return node_->value; }
  const Formula& condition() const { return node_->condition; }
  const MentalProgram& left() const { return node_->children.at(0); }
  const MentalProgram& right() const { return node_->children.at(1); }

  const void* identity() const { return node_.get(); }

  friend bool operator==(const MentalProgram& a, const MentalProgram& b);

 private:
  struct Node {
    Kind kind;
    Atom atom{};
    bool value = false;
    Formula condition = Formula::top();
    std::vector<MentalProgram> children{};
  };
  explicit MentalProgram(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Length with assignments counting 1, tests counting the length of their
/// condition and the binary connectives adding nothing. Saturates at
/// UINT64_MAX.
std::uint64_t mp_length(const MentalProgram& pi);
/// Number of distinct program nodes (the DAG size).
std::size_t mp_dag_size(const MentalProgram& pi);

/// Atoms assigned anywhere in pi.
std::vector<Atom> written_atoms(const MentalProgram& pi);

/// s ->pi t, directly by the recursive definition; sequences search the
/// intermediate state among the states reachable by changing written atoms.
bool related(const MentalProgram& pi, std::span<const Atom> vocabulary, const State& s, const State& t);

/// All t with s ->pi t, sorted.
std::vector<State> successors(const MentalProgram& pi, const State& s);

using Relation = std::set<std::pair<State, State>>;

inline constexpr std::size_t kRelationGuard = 8;

/// The full relation over the powerset of the vocabulary.
Relation relation_of(const MentalProgram& pi, std::span<const Atom> vocabulary,
                     std::size_t guard = kRelationGuard);

/// All subsets of the given atoms, in binary counting order.
std::vector<State> powerset(std::span<const Atom> atoms);

Formula of(std::span<const Atom> x, std::span<const Atom> y);
MentalProgram change(std::span<const Atom> x);
MentalProgram go_to(const State& t, std::span<const Atom> vocabulary);

/// Union over the pairs of ?of(x, V) ; goto(y, V).
MentalProgram program_of_relation(const Relation& r, std::span<const Atom> vocabulary);

/// Relation-preserving rewriting to a fixpoint.
MentalProgram simplify(const MentalProgram& pi);

}  // namespace delsym
