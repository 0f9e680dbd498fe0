#include "delsym/kripke.hpp"

#include <algorithm>
#include <functional>

namespace delsym {

std::optional<std::size_t> KripkeModel::index_of(const State& s) const {
  auto it = std::find(worlds.begin(), worlds.end(), s);
  if (it == worlds.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds.begin());
}

std::size_t KripkeModel::edge_count(std::size_t agent) const {
  std::size_t n = 0;
  for (const auto& succ : successors.at(agent)) n += succ.size();
  return n;
}

KripkeModel structure_to_kripke(const Structure& f) {
  const Vocabulary& v = vocabulary_of(f);
  if (v.size() > kExplicitGuard)
    throw StructureError("expansion refused: " + std::to_string(v.size()) + " atoms exceed the guard of " +
                         std::to_string(kExplicitGuard));
  KripkeModel m;
  auto cursor = states_of(f);
  while (auto s = cursor.next()) m.worlds.push_back(std::move(*s));

  std::function<bool(std::size_t, const State&, const State&)> related;
  std::size_t agents = 0;
  if (const auto* k = std::get_if<KnowledgeStructure>(&f)) {
    agents = k->observables.size();
    related = [k](std::size_t i, const State& s, const State& t) {
      for (const Atom& p : k->observables[i])
        if (s.contains(p) != t.contains(p)) return false;
      return true;
    };
  } else {
    const auto* b = &std::get<BeliefStructure>(f);
    agents = b->observation.size();
    related = [b](std::size_t i, const State& s, const State& t) {
      return b->manager->evaluate(b->observation[i], [&](const Atom& a) {
        return a.prime == 0 ? s.contains(a) : t.contains(a.unprimed());
      });
    };
  }
  m.successors.assign(agents, std::vector<std::vector<std::size_t>>(m.worlds.size()));
  for (std::size_t i = 0; i < agents; ++i)
    for (std::size_t u = 0; u < m.worlds.size(); ++u)
      for (std::size_t w = 0; w < m.worlds.size(); ++w)
        if (related(i, m.worlds[u], m.worlds[w])) m.successors[i][u].push_back(w);
  return m;
}

namespace {

bool sat(const KripkeModel& m, const std::vector<bool>& alive, std::size_t w, const Formula& phi) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::top:
      return true;
    case K::bottom:
      return false;
    case K::atom:
      return m.worlds[w].contains(phi.atom());
    case K::negation:
      return !sat(m, alive, w, phi.body());
    case K::conjunction:
      return sat(m, alive, w, phi.child(0)) && sat(m, alive, w, phi.child(1));
    case K::knows:
      if (phi.agent() >= m.successors.size()) throw LogicError("unknown agent index");
      for (std::size_t v : m.successors[phi.agent()][w])
        if (alive[v] && !sat(m, alive, v, phi.body())) return false;
      return true;
    case K::announce: {
      if (!sat(m, alive, w, phi.announced())) return true;
      std::vector<bool> next(alive.size(), false);
      for (std::size_t v = 0; v < alive.size(); ++v) next[v] = alive[v] && sat(m, alive, v, phi.announced());
      return sat(m, next, w, phi.body());
    }
    case K::event:
      throw LogicError("explicit models do not interpret event modalities");
  }
  return false;
}

}  // namespace

bool kripke_check(const KripkeModel& m, std::size_t world, const Formula& phi) {
  if (world >= m.worlds.size()) throw LogicError("world index out of range");
  return sat(m, std::vector<bool>(m.worlds.size(), true), world, phi);
}

void require_closed(const PrenexQBF& q) {
  std::vector<int> seen(q.variables + 1, 0);
  for (const auto& b : q.blocks)
    for (std::uint32_t v : b.variables) {
      if (v == 0 || v > q.variables) throw LogicError("quantified variable out of range");
      if (seen[v]++) throw LogicError("variable " + std::to_string(v) + " quantified twice");
    }
  for (const auto& clause : q.clauses)
    for (int lit : clause) {
      auto v = static_cast<std::uint32_t>(lit < 0 ? -lit : lit);
      if (v == 0 || v > q.variables) throw LogicError("literal out of range");
      if (!seen[v]) throw LogicError("free variable " + std::to_string(v) + " in the matrix");
    }
}

namespace {

bool matrix_true(const PrenexQBF& q, const std::vector<bool>& value) {
  for (const auto& clause : q.clauses) {
    bool sat = false;
    for (int lit : clause) sat = sat || (lit > 0 ? value[lit] : !value[-lit]);
    if (!sat) return false;
  }
  return true;
}

bool qbf_rec(const PrenexQBF& q, std::size_t block, std::size_t index, std::vector<bool>& value) {
  if (block == q.blocks.size()) return matrix_true(q, value);
  const QbfBlock& b = q.blocks[block];
  if (index == b.variables.size()) return qbf_rec(q, block + 1, 0, value);
  const std::uint32_t v = b.variables[index];
  bool results[2];
  for (int bit = 0; bit < 2; ++bit) {
    value[v] = bit != 0;
    results[bit] = qbf_rec(q, block, index + 1, value);
    if (b.universal && !results[bit]) return value[v] = false, false;
    if (!b.universal && results[bit]) return value[v] = false, true;
  }
  value[v] = false;
  return b.universal;
}

}  // namespace

bool qbf_eval(const PrenexQBF& q) {
  require_closed(q);
  std::vector<bool> value(q.variables + 1, false);
  return qbf_rec(q, 0, 0, value);
}

Formula qbf_matrix(const PrenexQBF& q, std::span<const Atom> atoms) {
  std::vector<Formula> conjuncts;
  for (const auto& clause : q.clauses) {
    std::vector<Formula> literals;
    for (int lit : clause) {
      Formula a = Formula::atom(atoms[static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1]);
      literals.push_back(lit < 0 ? Formula::negation(a) : a);
    }
    conjuncts.push_back(Formula::disjunction_of(literals));
  }
  return Formula::conjunction_of(conjuncts);
}

std::size_t qbf_length(const PrenexQBF& q, std::span<const Atom> atoms) {
  std::size_t n = formula_length(qbf_matrix(q, atoms));
  for (const auto& b : q.blocks) n += b.variables.size() * (b.universal ? 1 : 3);
  return n;
}

QbfInstance qbf_to_instance(const PrenexQBF& q) {
  require_closed(q);
  QbfInstance inst;
  inst.signature = std::make_shared<Signature>();
  for (std::uint32_t v = 1; v <= q.variables; ++v) inst.atoms.push_back(inst.signature->intern("x" + std::to_string(v)));
  inst.manager = std::make_shared<Manager>(VarOrder::interleaved(inst.atoms));
  Manager& mgr = *inst.manager;

  inst.knowledge.manager = inst.manager;
  inst.knowledge.vocabulary = Vocabulary(inst.atoms);
  inst.knowledge.law = mgr.top();
  inst.belief.manager = inst.manager;
  inst.belief.vocabulary = Vocabulary(inst.atoms);
  inst.belief.law = mgr.top();

  for (std::size_t i = 0; i < q.blocks.size(); ++i) {
    inst.agents.add("a" + std::to_string(i + 1));
    std::vector<Atom> observed;
    for (std::uint32_t v = 1; v <= q.variables; ++v) {
      const auto& in = q.blocks[i].variables;
      if (std::find(in.begin(), in.end(), v) == in.end()) observed.push_back(inst.atoms[v - 1]);
    }
    inst.belief.observation.push_back(observation_of_observables(mgr, observed));
    inst.knowledge.observables.push_back(std::move(observed));
  }

  Formula phi = qbf_matrix(q, inst.atoms);
  for (std::size_t i = q.blocks.size(); i-- > 0;)
    phi = q.blocks[i].universal ? Formula::knows(i, phi) : Formula::considers(i, phi);
  inst.formula = phi;
  inst.qbf_length = qbf_length(q, inst.atoms);
  return inst;
}

}  // namespace delsym
