#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "delsym/kripke.hpp"
#include "delsym/programs.hpp"
#include "delsym/structures.hpp"

namespace delsym {

class SourceError : public std::runtime_error {
 public:
  SourceError(std::size_t offset, std::size_t line, std::size_t column, std::string expected);

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_, line_, column_;
  std::string expected_;
};

/// What identifiers in a formula may refer to.
struct FormulaScope {
  SignaturePtr signature;
  const AgentSet* agents = nullptr;
  const std::map<std::string, std::shared_ptr<const Transformer>>* transformers = nullptr;
  /// Accept p' for the atoms allowed below.
  bool allow_primes = false;
  /// Intern unknown names as fresh atoms instead of rejecting them.
  bool declare_unknown = false;
  /// Atoms a formula may mention (unprimed); every known atom if empty.
  std::function<bool(const Atom&)> allowed;
};

Formula parse_formula(std::string_view text, const FormulaScope& scope);
/// Boolean formula; rejects modalities.
Formula parse_bool_formula(std::string_view text, const FormulaScope& scope);

/// Prints the core form, reparseable with the same scope.
std::string print_formula(const Formula& f, const Signature& sig, const AgentSet& agents);

Model parse_model(std::string_view text);

struct ProgramSource {
  MentalProgram program;
  SignaturePtr signature;
  /// Atoms in order of first occurrence.
  std::vector<Atom> atoms;
};
/// Parses a program; names are interned in `sig` (a fresh signature if null).
ProgramSource parse_program(std::string_view text, SignaturePtr sig = nullptr);
std::string print_program(const MentalProgram& pi, const Signature& sig);

PrenexQBF parse_qdimacs(std::string_view text);
std::string print_qdimacs(const PrenexQBF& q);

/// Model file text of a knowledge or belief structure whose laws are given as
/// formulas (used to emit generated instances).
std::string print_knowledge_model(const Signature& sig, const AgentSet& agents, std::span<const Atom> vocabulary,
                                  const Formula& law, const std::vector<std::vector<Atom>>& observables);

/// A relation diagram in dump format read back into `mgr`.
Bdd parse_dump(std::string_view text, Manager& mgr, const std::function<Atom(std::string_view)>& atom);

}  // namespace delsym
