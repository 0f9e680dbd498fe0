#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "delsym/bdd.hpp"

namespace delsym {

class LogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name table shared by everything built from one model: maps identifiers to
/// atom bases and remembers whether a name is a state or an event atom.
class Signature {
 public:
  Atom intern(std::string_view name, Provenance kind = Provenance::original);
  std::optional<Atom> find(std::string_view name) const;
  /// `p`, `p'`, `e`, `p@2` (frozen copy of generation 2), ...
  std::string name(const Atom& a) const;
  const std::string& base_name(std::uint32_t base) const { return names_.at(base); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<Provenance> kinds_;
  std::unordered_map<std::string, std::uint32_t> index_;
};
using SignaturePtr = std::shared_ptr<Signature>;

/// Frozen copy of an original or event atom for the given update generation.
Atom frozen_copy(const Atom& a, std::uint32_t generation);

/// A set of atoms (the atoms true at the state), kept sorted.
class State {
 public:
  State() = default;
  State(std::initializer_list<Atom> atoms);
  explicit State(std::vector<Atom> atoms);

  bool contains(const Atom& a) const;
  void insert(const Atom& a);
  void erase(const Atom& a);
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }
  std::span<const Atom> atoms() const { return atoms_; }

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State& a, const State& b) { return a.atoms_ <=> b.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Ordered list of atoms a structure is built over.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Atom> atoms);

  bool contains(const Atom& a) const;
  void add(const Atom& a);
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

 private:
  std::vector<Atom> atoms_;
};

class AgentSet {
 public:
  AgentSet() = default;
  explicit AgentSet(std::vector<std::string> names);

  std::size_t add(std::string_view name);
  std::optional<std::size_t> find(std::string_view name) const;
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

struct Transformer;
class Formula;

/// A transformer together with its designated event point x.
struct Event {
  std::shared_ptr<const Transformer> transformer;
  State point;

  friend bool operator==(const Event& a, const Event& b) {
    return a.transformer == b.transformer && a.point == b.point;
  }
};

/// Formulas of the dynamic epistemic language over the core connectives.
/// Disjunction, implication, equivalence and the dual modality are built
/// from negation and conjunction by the helper constructors below.
class Formula {
 public:
  enum class Kind : std::uint8_t { top, bottom, atom, negation, conjunction, knows, announce, event };

  static Formula top();
  static Formula bottom();
  static Formula atom(const Atom& a);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula knows(std::size_t agent, Formula f);
  static Formula announce(Formula announced, Formula f);
  static Formula event(Event e, Formula f);

  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  static Formula considers(std::size_t agent, Formula f);
  static Formula conjunction_of(std::span<const Formula> fs);
  static Formula disjunction_of(std::span<const Formula> fs);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const Atom& atom() const { return node_->atom; }
  std::size_t agent() const { return node_->agent; }
  const Event& event() const { return node_->event; }
  /// Conjunction operands are child(0) and child(1); announce keeps the
  /// announced formula in child(0).
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  /// Operand of negation/knows, or the formula under announce/event.
  const Formula& body() const { return node_->children.back(); }
  const Formula& announced() const { return node_->children.front(); }

  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Atom atom{};
    std::size_t agent = 0;
    Event event{};
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Boolean formulas share the Formula representation; this checks that only
/// top/bottom/atoms/negation/conjunction occur.
bool is_boolean(const Formula& f);
/// True if no event modality occurs anywhere (including inside announcements).
bool is_pal(const Formula& f);

bool bool_eval(const Formula& f, const State& s);
/// Length over the core connectives; event modalities add the transformer size.
std::size_t formula_length(const Formula& f);
Bdd compile_bool(const Formula& f, Manager& mgr);
/// Atoms occurring in f outside of event payloads, without duplicates.
std::vector<Atom> atoms_of(const Formula& f);

/// Characteristic conjunction: atoms of x positive, atoms of y \ x negative.
Formula characteristic(std::span<const Atom> x, std::span<const Atom> y);

}  // namespace delsym
