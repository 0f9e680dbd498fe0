#include "delsym/logic.hpp"

#include <algorithm>
#include <set>

#include "delsym/structures.hpp"

namespace delsym {

Atom Signature::intern(std::string_view name, Provenance kind) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) {
    if (kinds_[it->second] != kind) throw LogicError("name '" + key + "' declared with two different roles");
    return Atom{it->second, 0, kind, 0};
  }
  auto base = static_cast<std::uint32_t>(names_.size());
  names_.push_back(key);
  kinds_.push_back(kind);
  index_.emplace(std::move(key), base);
  return Atom{base, 0, kind, 0};
}

std::optional<Atom> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return Atom{it->second, 0, kinds_[it->second], 0};
}

std::string Signature::name(const Atom& a) const {
  std::string out = a.base < names_.size() ? names_[a.base] : "#" + std::to_string(a.base);
  if (a.provenance == Provenance::frozen) out += "@" + std::to_string(a.generation);
  out.append(a.prime, '\'');
  return out;
}

Atom frozen_copy(const Atom& a, std::uint32_t generation) {
  if (a.provenance == Provenance::frozen) throw LogicError("frozen copies cannot be frozen again");
  Atom f = a;
  f.provenance = Provenance::frozen;
  f.generation = generation;
  return f;
}

State::State(std::initializer_list<Atom> atoms) : State(std::vector<Atom>(atoms)) {}

State::State(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool State::contains(const Atom& a) const { return std::binary_search(atoms_.begin(), atoms_.end(), a); }

void State::insert(const Atom& a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) atoms_.insert(it, a);
}

void State::erase(const Atom& a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it != atoms_.end() && *it == a) atoms_.erase(it);
}

Vocabulary::Vocabulary(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) add(a);
}

bool Vocabulary::contains(const Atom& a) const { return std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end(); }

void Vocabulary::add(const Atom& a) {
  if (a.prime != 0) throw LogicError("vocabularies hold unprimed atoms only");
  if (contains(a)) throw LogicError("atom already in vocabulary");
  atoms_.push_back(a);
}

AgentSet::AgentSet(std::vector<std::string> names) {
  for (const auto& n : names) add(n);
}

std::size_t AgentSet::add(std::string_view name) {
  if (find(name)) throw LogicError("duplicate agent '" + std::string(name) + "'");
  names_.emplace_back(name);
  return names_.size() - 1;
}

std::optional<std::size_t> AgentSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::top}));
  return t;
}

Formula Formula::bottom() {
  static const Formula b(std::make_shared<const Node>(Node{Kind::bottom}));
  return b;
}

Formula Formula::atom(const Atom& a) { return Formula(std::make_shared<const Node>(Node{Kind::atom, a})); }

Formula Formula::negation(Formula f) {
  Node n{Kind::negation};
  n.children.push_back(std::move(f));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula a, Formula b) {
  Node n{Kind::conjunction};
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::knows(std::size_t agent, Formula f) {
  Node n{Kind::knows};
  n.agent = agent;
  n.children.push_back(std::move(f));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::announce(Formula announced, Formula f) {
  Node n{Kind::announce};
  n.children.push_back(std::move(announced));
  n.children.push_back(std::move(f));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::event(Event e, Formula f) {
  if (!e.transformer) throw LogicError("event without transformer");
  for (const Atom& a : e.point)
    if (std::find(e.transformer->event_atoms.begin(), e.transformer->event_atoms.end(), a) ==
        e.transformer->event_atoms.end())
      throw LogicError("event point is not a subset of the transformer's event atoms");
  Node n{Kind::event};
  n.event = std::move(e);
  n.children.push_back(std::move(f));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return negation(conjunction(negation(std::move(a)), negation(std::move(b))));
}

Formula Formula::implication(Formula a, Formula b) { return negation(conjunction(std::move(a), negation(std::move(b)))); }

Formula Formula::equivalence(Formula a, Formula b) { return conjunction(implication(a, b), implication(b, a)); }

Formula Formula::considers(std::size_t agent, Formula f) { return negation(knows(agent, negation(std::move(f)))); }

Formula Formula::conjunction_of(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

Formula Formula::disjunction_of(std::span<const Formula> fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disjunction(acc, fs[i]);
  return acc;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
      return true;
    case Formula::Kind::atom:
      return a.atom() == b.atom();
    case Formula::Kind::knows:
      if (a.agent() != b.agent()) return false;
      break;
    case Formula::Kind::event:
      if (!(a.event() == b.event())) return false;
      break;
    default:
      break;
  }
  if (a.node_->children.size() != b.node_->children.size()) return false;
  for (std::size_t i = 0; i < a.node_->children.size(); ++i)
    if (!(a.node_->children[i] == b.node_->children[i])) return false;
  return true;
}

bool is_boolean(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
    case Formula::Kind::atom:
      return true;
    case Formula::Kind::negation:
      return is_boolean(f.body());
    case Formula::Kind::conjunction:
      return is_boolean(f.child(0)) && is_boolean(f.child(1));
    default:
      return false;
  }
}

bool is_pal(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
    case Formula::Kind::atom:
      return true;
    case Formula::Kind::negation:
    case Formula::Kind::knows:
      return is_pal(f.body());
    case Formula::Kind::conjunction:
    case Formula::Kind::announce:
      return is_pal(f.child(0)) && is_pal(f.child(1));
    case Formula::Kind::event:
      return false;
  }
  return false;
}

bool bool_eval(const Formula& f, const State& s) {
  switch (f.kind()) {
    case Formula::Kind::top:
      return true;
    case Formula::Kind::bottom:
      return false;
    case Formula::Kind::atom:
      return s.contains(f.atom());
    case Formula::Kind::negation:
      return !bool_eval(f.body(), s);
    case Formula::Kind::conjunction:
      return bool_eval(f.child(0), s) && bool_eval(f.child(1), s);
    default:
      throw LogicError("bool_eval: formula is not Boolean");
  }
}

std::size_t formula_length(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
    case Formula::Kind::atom:
      return 1;
    case Formula::Kind::negation:
    case Formula::Kind::knows:
      return formula_length(f.body()) + 1;
    case Formula::Kind::conjunction:
    case Formula::Kind::announce:
      return formula_length(f.child(0)) + formula_length(f.child(1)) + 1;
    case Formula::Kind::event:
      return transformer_size(*f.event().transformer) + formula_length(f.body()) + 1;
  }
  return 0;
}

Bdd compile_bool(const Formula& f, Manager& mgr) {
  switch (f.kind()) {
    case Formula::Kind::top:
      return mgr.top();
    case Formula::Kind::bottom:
      return mgr.bottom();
    case Formula::Kind::atom:
      return mgr.var(f.atom());
    case Formula::Kind::negation:
      return mgr.negate(compile_bool(f.body(), mgr));
    case Formula::Kind::conjunction: {
      Bdd a = compile_bool(f.child(0), mgr);
      if (a.is_false()) return a;
      return mgr.conj(a, compile_bool(f.child(1), mgr));
    }
    default:
      throw LogicError("compile_bool: formula is not Boolean");
  }
}

namespace {
void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
      return;
    case Formula::Kind::atom:
      if (std::find(out.begin(), out.end(), f.atom()) == out.end()) out.push_back(f.atom());
      return;
    case Formula::Kind::negation:
    case Formula::Kind::knows:
    case Formula::Kind::event:
      collect_atoms(f.body(), out);
      return;
    case Formula::Kind::conjunction:
    case Formula::Kind::announce:
      collect_atoms(f.child(0), out);
      collect_atoms(f.child(1), out);
      return;
  }
}
}  // namespace

std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  collect_atoms(f, out);
  return out;
}

Formula characteristic(std::span<const Atom> x, std::span<const Atom> y) {
  std::vector<Formula> parts;
  for (const Atom& p : x) parts.push_back(Formula::atom(p));
  for (const Atom& p : y)
    if (std::find(x.begin(), x.end(), p) == x.end()) parts.push_back(Formula::negation(Formula::atom(p)));
  return Formula::conjunction_of(parts);
}

}  // namespace delsym
