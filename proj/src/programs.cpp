#include "delsym/programs.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace delsym {

MentalProgram MentalProgram::assign(const Atom& p, bool value) {
  if (p.prime != 0) throw LogicError("programs assign unprimed atoms only");
  Node n{Kind::assign};
  n.atom = p;
  n.value = value;
  return MentalProgram(std::make_shared<const Node>(std::move(n)));
}

MentalProgram MentalProgram::test(Formula condition) {
  if (!is_boolean(condition)) throw LogicError("program tests must be Boolean");
  Node n{Kind::test};
  n.condition = std::move(condition);
  return MentalProgram(std::make_shared<const Node>(std::move(n)));
}

MentalProgram MentalProgram::choice(MentalProgram a, MentalProgram b) {
  Node n{Kind::choice};
  n.children = {std::move(a), std::move(b)};
  return MentalProgram(std::make_shared<const Node>(std::move(n)));
}

MentalProgram MentalProgram::sequence(MentalProgram a, MentalProgram b) {
  Node n{Kind::sequence};
  n.children = {std::move(a), std::move(b)};
  return MentalProgram(std::make_shared<const Node>(std::move(n)));
}

MentalProgram MentalProgram::intersection(MentalProgram a, MentalProgram b) {
  Node n{Kind::intersection};
  n.children = {std::move(a), std::move(b)};
  return MentalProgram(std::make_shared<const Node>(std::move(n)));
}

MentalProgram MentalProgram::choice_of(std::span<const MentalProgram> ps) {
  if (ps.empty()) return test(Formula::bottom());
  MentalProgram acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = choice(acc, ps[i]);
  return acc;
}

MentalProgram MentalProgram::sequence_of(std::span<const MentalProgram> ps) {
  if (ps.empty()) return test(Formula::top());
  MentalProgram acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = sequence(acc, ps[i]);
  return acc;
}

bool operator==(const MentalProgram& a, const MentalProgram& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MentalProgram::Kind::assign:
      return a.atom() == b.atom() && a.value() == b.value();
    case MentalProgram::Kind::test:
      return a.condition() == b.condition();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t length_rec(const MentalProgram& pi, std::unordered_map<const void*, std::uint64_t>& memo) {
  if (auto it = memo.find(pi.identity()); it != memo.end()) return it->second;
  std::uint64_t n = 0;
  switch (pi.kind()) {
    case MentalProgram::Kind::assign:
      n = 1;
      break;
    case MentalProgram::Kind::test:
      n = formula_length(pi.condition());
      break;
    default:
      n = saturating_add(length_rec(pi.left(), memo), length_rec(pi.right(), memo));
  }
  memo.emplace(pi.identity(), n);
  return n;
}

void dag_rec(const MentalProgram& pi, std::unordered_set<const void*>& seen) {
  if (!seen.insert(pi.identity()).second) return;
  if (pi.is(MentalProgram::Kind::assign) || pi.is(MentalProgram::Kind::test)) return;
  dag_rec(pi.left(), seen);
  dag_rec(pi.right(), seen);
}

void written_rec(const MentalProgram& pi, std::unordered_set<const void*>& seen, std::vector<Atom>& out) {
  if (!seen.insert(pi.identity()).second) return;
  switch (pi.kind()) {
    case MentalProgram::Kind::assign:
      if (std::find(out.begin(), out.end(), pi.atom()) == out.end()) out.push_back(pi.atom());
      return;
    case MentalProgram::Kind::test:
      return;
    default:
      written_rec(pi.left(), seen, out);
      written_rec(pi.right(), seen, out);
  }
}

}  // namespace

std::uint64_t mp_length(const MentalProgram& pi) {
  std::unordered_map<const void*, std::uint64_t> memo;
  return length_rec(pi, memo);
}

std::size_t mp_dag_size(const MentalProgram& pi) {
  std::unordered_set<const void*> seen;
  dag_rec(pi, seen);
  return seen.size();
}

std::vector<Atom> written_atoms(const MentalProgram& pi) {
  std::unordered_set<const void*> seen;
  std::vector<Atom> out;
  written_rec(pi, seen, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<State> powerset(std::span<const Atom> atoms) {
  if (atoms.size() >= 63) throw LogicError("powerset of more than 62 atoms");
  std::vector<State> out;
  out.reserve(std::size_t{1} << atoms.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    std::vector<Atom> members;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1) members.push_back(atoms[i]);
    out.emplace_back(std::move(members));
  }
  return out;
}

bool related(const MentalProgram& pi, std::span<const Atom> vocabulary, const State& s, const State& t) {
  switch (pi.kind()) {
    case MentalProgram::Kind::assign: {
      State u = s;
      if (pi.value())
        u.insert(pi.atom());
      else
        u.erase(pi.atom());
      return u == t;
    }
    case MentalProgram::Kind::test:
      return s == t && bool_eval(pi.condition(), s);
    case MentalProgram::Kind::choice:
      return related(pi.left(), vocabulary, s, t) || related(pi.right(), vocabulary, s, t);
    case MentalProgram::Kind::intersection:
      return related(pi.left(), vocabulary, s, t) && related(pi.right(), vocabulary, s, t);
    case MentalProgram::Kind::sequence: {
      std::vector<Atom> free;
      for (const Atom& p : written_atoms(pi.left()))
        if (std::find(vocabulary.begin(), vocabulary.end(), p) != vocabulary.end()) free.push_back(p);
      State fixed = s;
      for (const Atom& p : free) fixed.erase(p);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        State u = fixed;
        for (std::size_t i = 0; i < free.size(); ++i)
          if (mask >> i & 1) u.insert(free[i]);
        if (related(pi.left(), vocabulary, s, u) && related(pi.right(), vocabulary, u, t)) return true;
      }
      return false;
    }
  }
  return false;
}

std::vector<State> successors(const MentalProgram& pi, const State& s) {
  switch (pi.kind()) {
    case MentalProgram::Kind::assign: {
      State u = s;
      if (pi.value())
        u.insert(pi.atom());
      else
        u.erase(pi.atom());
      return {u};
    }
    case MentalProgram::Kind::test:
      if (bool_eval(pi.condition(), s)) return {s};
      return {};
    case MentalProgram::Kind::choice: {
      auto a = successors(pi.left(), s);
      auto b = successors(pi.right(), s);
      std::vector<State> out;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }
    case MentalProgram::Kind::intersection: {
      auto a = successors(pi.left(), s);
      if (a.empty()) return a;
      auto b = successors(pi.right(), s);
      std::vector<State> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }
    case MentalProgram::Kind::sequence: {
      std::set<State> out;
      for (const State& u : successors(pi.left(), s))
        for (State& t : successors(pi.right(), u)) out.insert(std::move(t));
      return {out.begin(), out.end()};
    }
  }
  return {};
}

Relation relation_of(const MentalProgram& pi, std::span<const Atom> vocabulary, std::size_t guard) {
  if (vocabulary.size() > guard)
    throw LogicError("relation_of refused: " + std::to_string(vocabulary.size()) + " atoms exceed the guard of " +
                     std::to_string(guard));
  Relation r;
  for (const State& s : powerset(vocabulary))
    for (State& t : successors(pi, s)) r.emplace(s, std::move(t));
  return r;
}

Formula of(std::span<const Atom> x, std::span<const Atom> y) {
  for (const Atom& p : x)
    if (std::find(y.begin(), y.end(), p) == y.end()) throw LogicError("of(x, y) requires x to be a subset of y");
  return characteristic(x, y);
}

MentalProgram change(std::span<const Atom> x) {
  std::vector<MentalProgram> parts;
  for (const Atom& p : x)
    parts.push_back(MentalProgram::choice(MentalProgram::assign(p, true), MentalProgram::assign(p, false)));
  return MentalProgram::sequence_of(parts);
}

MentalProgram go_to(const State& t, std::span<const Atom> vocabulary) {
  std::vector<MentalProgram> parts;
  for (const Atom& p : vocabulary)
    if (t.contains(p)) parts.push_back(MentalProgram::assign(p, true));
  for (const Atom& p : vocabulary)
    if (!t.contains(p)) parts.push_back(MentalProgram::assign(p, false));
  for (const Atom& p : t)
    if (std::find(vocabulary.begin(), vocabulary.end(), p) == vocabulary.end())
      throw LogicError("goto target is not a subset of the vocabulary");
  return MentalProgram::sequence_of(parts);
}

MentalProgram program_of_relation(const Relation& r, std::span<const Atom> vocabulary) {
  std::vector<MentalProgram> parts;
  for (const auto& [x, y] : r)
    parts.push_back(
        MentalProgram::sequence(MentalProgram::test(of(x.atoms(), vocabulary)), go_to(y, vocabulary)));
  return MentalProgram::choice_of(parts);
}

namespace {

bool is_test_of(const MentalProgram& pi, Formula::Kind k) {
  return pi.is(MentalProgram::Kind::test) && pi.condition().is(k);
}

using Memo = std::unordered_map<const void*, MentalProgram>;

MentalProgram rewrite(const MentalProgram& pi, bool& changed, Memo& memo);

MentalProgram simplify_step(const MentalProgram& pi, bool& changed, Memo& memo) {
  using K = MentalProgram::Kind;
  if (pi.is(K::assign) || pi.is(K::test)) return pi;
  MentalProgram a = rewrite(pi.left(), changed, memo);
  MentalProgram b = rewrite(pi.right(), changed, memo);
  switch (pi.kind()) {
    case K::sequence:
      if (is_test_of(a, Formula::Kind::top)) return changed = true, b;
      if (is_test_of(b, Formula::Kind::top)) return changed = true, a;
      if (is_test_of(a, Formula::Kind::bottom)) return changed = true, a;
      if (a.is(K::assign) && b.is(K::test) && b.condition().is(Formula::Kind::atom) &&
          b.condition().atom() == a.atom()) {
        changed = true;
        return a.value() ? a : MentalProgram::test(Formula::bottom());
      }
      break;
    case K::choice:
      if (is_test_of(b, Formula::Kind::bottom)) return changed = true, a;
      if (is_test_of(a, Formula::Kind::bottom)) return changed = true, b;
      break;
    default:
      break;
  }
  if (a.identity() == pi.left().identity() && b.identity() == pi.right().identity()) return pi;
  switch (pi.kind()) {
    case K::sequence:
      return MentalProgram::sequence(a, b);
    case K::choice:
      return MentalProgram::choice(a, b);
    default:
      return MentalProgram::intersection(a, b);
  }
}

MentalProgram rewrite(const MentalProgram& pi, bool& changed, Memo& memo) {
  if (auto it = memo.find(pi.identity()); it != memo.end()) return it->second;
  MentalProgram out = simplify_step(pi, changed, memo);
  memo.emplace(pi.identity(), out);
  return out;
}

}  // namespace

MentalProgram simplify(const MentalProgram& pi) {
  MentalProgram current = pi;
  for (;;) {
    bool changed = false;
    Memo memo;
    current = rewrite(current, changed, memo);
    if (!changed) return current;
  }
}

}  // namespace delsym
