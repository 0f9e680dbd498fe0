#include "delsym/structures.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace delsym {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::map<Atom, Atom> prime_map(std::span<const Atom> vocabulary) {
  std::map<Atom, Atom> m;
  for (const Atom& p : vocabulary) m.emplace(p, p.primed());
  return m;
}

std::vector<Atom> primed(std::span<const Atom> vocabulary) {
  std::vector<Atom> out;
  for (const Atom& p : vocabulary) out.push_back(p.primed());
  return out;
}

void require_fresh(const Vocabulary& v, const Transformer& x) {
  for (const Atom& e : x.event_atoms)
    if (v.contains(e))
      throw StructureError("transformer '" + x.name + "' reuses an atom already in the vocabulary");
}

}  // namespace

const Vocabulary& vocabulary_of(const Structure& f) {
  return std::visit([](const auto& s) -> const Vocabulary& { return s.vocabulary; }, f);
}

Bdd law_of(const Structure& f) {
  return std::visit([](const auto& s) { return s.law; }, f);
}

Manager& manager_of(const Structure& f) {
  return std::visit([](const auto& s) -> Manager& { return *s.manager; }, f);
}

std::optional<State> StateCursor::next() {
  if (!cursor_.next(buffer_)) return std::nullopt;
  return State(buffer_);
}

StateCursor states_of(const KnowledgeStructure& f) { return StateCursor(*f.manager, f.law, f.vocabulary.atoms()); }
StateCursor states_of(const BeliefStructure& f) { return StateCursor(*f.manager, f.law, f.vocabulary.atoms()); }
StateCursor states_of(const Structure& f) {
  return std::visit([](const auto& s) { return states_of(s); }, f);
}

bool is_state_of(const Structure& f, const State& s) {
  const Vocabulary& v = vocabulary_of(f);
  for (const Atom& a : s)
    if (!v.contains(a)) return false;
  return manager_of(f).evaluate(law_of(f), [&](const Atom& a) { return s.contains(a); });
}

Formula subst_point(const Formula& f, std::span<const Atom> event_atoms, const State& x) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::top:
    case K::bottom:
      return f;
    case K::atom:
      if (std::find(event_atoms.begin(), event_atoms.end(), f.atom()) != event_atoms.end())
        return x.contains(f.atom()) ? Formula::top() : Formula::bottom();
      return f;
    case K::negation:
      return Formula::negation(subst_point(f.body(), event_atoms, x));
    case K::conjunction:
      return Formula::conjunction(subst_point(f.child(0), event_atoms, x), subst_point(f.child(1), event_atoms, x));
    case K::knows:
      return Formula::knows(f.agent(), subst_point(f.body(), event_atoms, x));
    case K::announce:
      return Formula::announce(subst_point(f.child(0), event_atoms, x), subst_point(f.child(1), event_atoms, x));
    case K::event:
      return Formula::event(f.event(), subst_point(f.body(), event_atoms, x));
  }
  return f;
}

State update_state(const State& s, const Transformer& x_form, const State& point, std::uint32_t generation) {
  State with_event = s;
  for (const Atom& e : point) with_event.insert(e);
  State out = with_event;
  for (const Atom& q : x_form.modified) {
    out.erase(q);
    if (s.contains(q)) out.insert(frozen_copy(q, generation));
    if (bool_eval(x_form.change_law.at(q), with_event)) out.insert(q);
  }
  return out;
}

BeliefStructure product_update(const BeliefStructure& f, const Transformer& x) {
  require_fresh(f.vocabulary, x);
  Manager& mgr = *f.manager;
  const std::uint32_t gen = f.generation + 1;

  for (const Atom& e : x.event_atoms) mgr.declare(e);
  std::map<Atom, Atom> freeze, freeze_both;
  for (const Atom& q : x.modified) {
    if (!f.vocabulary.contains(q)) throw StructureError("modified atom outside the vocabulary");
    Atom cold = frozen_copy(q, gen);
    mgr.declare(cold);
    freeze.emplace(q, cold);
    freeze_both.emplace(q, cold);
    freeze_both.emplace(q.primed(), cold.primed());
  }

  Bdd pre = boolean_translate(f, x.event_law);
  Bdd law = mgr.relabel(mgr.conj(f.law, pre), freeze);
  for (const Atom& q : x.modified) {
    Bdd change = mgr.relabel(compile_bool(x.change_law.at(q), mgr), freeze);
    law = mgr.conj(law, mgr.iff(mgr.var(q), change));
  }

  BeliefStructure g;
  g.manager = f.manager;
  g.generation = gen;
  g.vocabulary = f.vocabulary;
  for (const Atom& e : x.event_atoms) g.vocabulary.add(e);
  for (const Atom& q : x.modified) g.vocabulary.add(freeze.at(q));
  g.law = law;
  for (std::size_t i = 0; i < f.observation.size(); ++i) {
    Bdd omega = mgr.relabel(f.observation[i], freeze_both);
    if (i < x.event_observation.size()) omega = mgr.conj(omega, x.event_observation[i]);
    g.observation.push_back(omega);
  }
  return g;
}

KnowledgeStructure announce(const KnowledgeStructure& f, const Formula& announced) {
  KnowledgeStructure g = f;
  g.law = f.manager->conj(f.law, boolean_translate(f, announced));
  return g;
}

BeliefStructure announce(const BeliefStructure& f, const Formula& announced) {
  BeliefStructure g = f;
  g.law = f.manager->conj(f.law, boolean_translate(f, announced));
  return g;
}

Structure announce(const Structure& f, const Formula& announced) {
  return std::visit([&](const auto& s) -> Structure { return announce(s, announced); }, f);
}

namespace {

Bdd translate_event(const BeliefStructure& f, const Event& ev, const Formula& body) {
  const Transformer& x = *ev.transformer;
  Manager& mgr = *f.manager;
  Bdd pre = boolean_translate(f, subst_point(x.event_law, x.event_atoms, ev.point));
  if (pre.is_false()) return mgr.top();
  BeliefStructure g = product_update(f, x);
  Bdd post = boolean_translate(g, body);

  std::map<Atom, Bdd> sigma;
  for (const Atom& e : x.event_atoms) sigma.emplace(e, mgr.constant(ev.point.contains(e)));
  for (const Atom& q : x.modified) {
    Bdd change = compile_bool(x.change_law.at(q), mgr);
    std::map<Atom, Bdd> fix;
    for (const Atom& e : x.event_atoms) fix.emplace(e, mgr.constant(ev.point.contains(e)));
    sigma.emplace(q, mgr.substitute(change, fix));
    sigma.emplace(frozen_copy(q, g.generation), mgr.var(q));
  }
  return mgr.implies(pre, mgr.substitute(post, sigma));
}

}  // namespace

Bdd boolean_translate(const KnowledgeStructure& f, const Formula& phi) {
  using K = Formula::Kind;
  Manager& mgr = *f.manager;
  switch (phi.kind()) {
    case K::top:
      return mgr.top();
    case K::bottom:
      return mgr.bottom();
    case K::atom:
      return mgr.var(phi.atom());
    case K::negation:
      return mgr.negate(boolean_translate(f, phi.body()));
    case K::conjunction:
      return mgr.conj(boolean_translate(f, phi.child(0)), boolean_translate(f, phi.child(1)));
    case K::knows: {
      if (phi.agent() >= f.observables.size()) throw StructureError("unknown agent index");
      const auto& obs = f.observables[phi.agent()];
      std::vector<Atom> hidden;
      for (const Atom& p : f.vocabulary)
        if (std::find(obs.begin(), obs.end(), p) == obs.end()) hidden.push_back(p);
      return mgr.forall(hidden, mgr.implies(f.law, boolean_translate(f, phi.body())));
    }
    case K::announce: {
      Bdd pre = boolean_translate(f, phi.announced());
      return mgr.implies(pre, boolean_translate(announce(f, phi.announced()), phi.body()));
    }
    case K::event:
      return boolean_translate(embed_s5(f), phi);
  }
  return mgr.bottom();
}

Bdd boolean_translate(const BeliefStructure& f, const Formula& phi) {
  using K = Formula::Kind;
  Manager& mgr = *f.manager;
  switch (phi.kind()) {
    case K::top:
      return mgr.top();
    case K::bottom:
      return mgr.bottom();
    case K::atom:
      return mgr.var(phi.atom());
    case K::negation:
      return mgr.negate(boolean_translate(f, phi.body()));
    case K::conjunction:
      return mgr.conj(boolean_translate(f, phi.child(0)), boolean_translate(f, phi.child(1)));
    case K::knows: {
      if (phi.agent() >= f.observation.size()) throw StructureError("unknown agent index");
      auto to_primed = prime_map(f.vocabulary.atoms());
      Bdd law_p = mgr.relabel(f.law, to_primed);
      Bdd body_p = mgr.relabel(boolean_translate(f, phi.body()), to_primed);
      Bdd inner = mgr.implies(law_p, mgr.implies(f.observation[phi.agent()], body_p));
      return mgr.forall(primed(f.vocabulary.atoms()), inner);
    }
    case K::announce: {
      Bdd pre = boolean_translate(f, phi.announced());
      return mgr.implies(pre, boolean_translate(announce(f, phi.announced()), phi.body()));
    }
    case K::event:
      return translate_event(f, phi.event(), phi.body());
  }
  return mgr.bottom();
}

Bdd boolean_translate(const Structure& f, const Formula& phi) {
  return std::visit([&](const auto& s) { return boolean_translate(s, phi); }, f);
}

Bdd observation_of_observables(Manager& mgr, std::span<const Atom> observed) {
  Bdd out = mgr.top();
  for (auto it = observed.rbegin(); it != observed.rend(); ++it)
    out = mgr.conj(mgr.iff(mgr.var(*it), mgr.var(it->primed())), out);
  return out;
}

BeliefStructure embed_s5(const KnowledgeStructure& k) {
  BeliefStructure b;
  b.manager = k.manager;
  b.vocabulary = k.vocabulary;
  b.law = k.law;
  for (const auto& obs : k.observables) b.observation.push_back(observation_of_observables(*k.manager, obs));
  return b;
}

std::size_t transformer_size(const Transformer& x) {
  std::size_t n = x.event_atoms.size() + formula_length(x.event_law) + x.modified.size();
  for (const Atom& q : x.modified) n += formula_length(x.change_law.at(q));
  for (const Bdd& omega : x.event_observation) n += x.manager->node_count(omega);
  return n;
}

std::shared_ptr<const Transformer> announcement_transformer(const Formula& announced, std::size_t agents,
                                                            std::shared_ptr<Manager> mgr) {
  auto x = std::make_shared<Transformer>();
  x->name = "!";
  x->event_law = announced;
  x->event_observation.assign(agents, mgr->top());
  x->manager = std::move(mgr);
  return x;
}

// ---------------------------------------------------------------------------
// Explicit-state evaluation.

namespace {

/// One materialized structure: the initial one, the survivors of an
/// announcement, or the product with a transformer.
struct Layer {
  enum class Kind { knowledge, belief, restriction, product } kind;
  std::vector<State> worlds;
  std::vector<Atom> vocabulary;
  const Layer* parent = nullptr;
  std::vector<std::size_t> parent_index;
  const Transformer* transformer = nullptr;
  std::uint32_t generation = 0;
  const KnowledgeStructure* knowledge = nullptr;
  const BeliefStructure* belief = nullptr;

  bool related(std::size_t agent, std::size_t u, std::size_t v) const {
    switch (kind) {
      case Kind::knowledge: {
        const auto& obs = knowledge->observables.at(agent);
        for (const Atom& p : obs)
          if (worlds[u].contains(p) != worlds[v].contains(p)) return false;
        return true;
      }
      case Kind::belief: {
        const State& s = worlds[u];
        const State& t = worlds[v];
        return belief->manager->evaluate(belief->observation.at(agent), [&](const Atom& a) {
          return a.prime == 0 ? s.contains(a) : t.contains(a.unprimed());
        });
      }
      case Kind::restriction:
        return parent->related(agent, parent_index[u], parent_index[v]);
      case Kind::product: {
        if (!parent->related(agent, parent_index[u], parent_index[v])) return false;
        if (agent >= transformer->event_observation.size()) return true;
        const State& s = worlds[u];
        const State& t = worlds[v];
        return transformer->manager->evaluate(transformer->event_observation[agent], [&](const Atom& a) {
          return a.prime == 0 ? s.contains(a) : t.contains(a.unprimed());
        });
      }
    }
    return false;
  }
};

std::vector<State> subsets(std::span<const Atom> atoms) {
  std::vector<State> out;
  const std::size_t n = atoms.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Atom> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) members.push_back(atoms[i]);
    out.emplace_back(std::move(members));
  }
  return out;
}

bool naive_eval(const Layer& layer, std::size_t w, const Formula& phi) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::top:
      return true;
    case K::bottom:
      return false;
    case K::atom:
      return layer.worlds[w].contains(phi.atom());
    case K::negation:
      return !naive_eval(layer, w, phi.body());
    case K::conjunction:
      return naive_eval(layer, w, phi.child(0)) && naive_eval(layer, w, phi.child(1));
    case K::knows:
      for (std::size_t v = 0; v < layer.worlds.size(); ++v)
        if (layer.related(phi.agent(), w, v) && !naive_eval(layer, v, phi.body())) return false;
      return true;
    case K::announce: {
      if (!naive_eval(layer, w, phi.announced())) return true;
      Layer next{Layer::Kind::restriction};
      next.vocabulary = layer.vocabulary;
      next.parent = &layer;
      next.generation = layer.generation;
      std::size_t here = 0;
      for (std::size_t v = 0; v < layer.worlds.size(); ++v) {
        if (!naive_eval(layer, v, phi.announced())) continue;
        if (v == w) here = next.worlds.size();
        next.worlds.push_back(layer.worlds[v]);
        next.parent_index.push_back(v);
      }
      return naive_eval(next, here, phi.body());
    }
    case K::event: {
      const Transformer& x = *phi.event().transformer;
      for (const Atom& e : x.event_atoms)
        if (std::find(layer.vocabulary.begin(), layer.vocabulary.end(), e) != layer.vocabulary.end())
          throw StructureError("transformer '" + x.name + "' reuses an atom already in the vocabulary");
      const State& point = phi.event().point;
      if (!naive_eval(layer, w, subst_point(x.event_law, x.event_atoms, point))) return true;
      Layer next{Layer::Kind::product};
      next.parent = &layer;
      next.transformer = &x;
      next.generation = layer.generation + 1;
      next.vocabulary = layer.vocabulary;
      next.vocabulary.insert(next.vocabulary.end(), x.event_atoms.begin(), x.event_atoms.end());
      for (const Atom& q : x.modified) next.vocabulary.push_back(frozen_copy(q, next.generation));
      std::size_t here = 0;
      for (const State& y : subsets(x.event_atoms)) {
        Formula pre = subst_point(x.event_law, x.event_atoms, y);
        for (std::size_t v = 0; v < layer.worlds.size(); ++v) {
          if (!naive_eval(layer, v, pre)) continue;
          if (v == w && y == point) here = next.worlds.size();
          next.worlds.push_back(update_state(layer.worlds[v], x, y, next.generation));
          next.parent_index.push_back(v);
        }
      }
      return naive_eval(next, here, phi.body());
    }
  }
  return false;
}

}  // namespace

bool naive_check(const Structure& f, const State& s, const Formula& phi) {
  const Vocabulary& v = vocabulary_of(f);
  if (v.size() > kExplicitGuard)
    throw StructureError("naive evaluation refused: " + std::to_string(v.size()) + " atoms exceed the guard of " +
                         std::to_string(kExplicitGuard));
  if (!is_state_of(f, s)) throw StructureError("the given state is not a state of the structure");
  Layer base{Layer::Kind::knowledge};
  std::visit(overloaded{[&](const KnowledgeStructure& k) {
                          base.kind = Layer::Kind::knowledge;
                          base.knowledge = &k;
                        },
                        [&](const BeliefStructure& b) {
                          base.kind = Layer::Kind::belief;
                          base.belief = &b;
                          base.generation = b.generation;
                        }},
             f);
  base.vocabulary.assign(v.begin(), v.end());
  auto cursor = states_of(f);
  std::size_t here = 0;
  bool found = false;
  while (auto t = cursor.next()) {
    if (*t == s) here = base.worlds.size(), found = true;
    base.worlds.push_back(std::move(*t));
  }
  if (!found) throw StructureError("the given state is not a state of the structure");
  return naive_eval(base, here, phi);
}

bool eval_bdd_algo(const Structure& f, const State& s, const Formula& phi, TranslateStats* stats) {
  if (!is_state_of(f, s)) throw StructureError("the given state is not a state of the structure");
  Manager& mgr = manager_of(f);
  const std::size_t before = mgr.allocated();
  Bdd b = boolean_translate(f, phi);
  bool value = mgr.evaluate(b, [&](const Atom& a) { return s.contains(a); });
  if (stats) stats->nodes_allocated = mgr.allocated() - before;
  return value;
}

std::string structure_statistics(const Model& m) {
  std::ostringstream os;
  const Vocabulary& v = vocabulary_of(m.structure);
  os << "kind " << (std::holds_alternative<KnowledgeStructure>(m.structure) ? "knowledge" : "belief") << '\n';
  os << "vocabulary " << v.size() << '\n';
  os << "law_nodes " << m.manager->node_count(law_of(m.structure)) << '\n';
  std::visit(overloaded{[&](const KnowledgeStructure& k) {
                          for (std::size_t i = 0; i < k.observables.size(); ++i)
                            os << "agent " << m.agents.name(i) << " observables " << k.observables[i].size() << '\n';
                        },
                        [&](const BeliefStructure& b) {
                          for (std::size_t i = 0; i < b.observation.size(); ++i)
                            os << "agent " << m.agents.name(i) << " omega_nodes "
                               << m.manager->node_count(b.observation[i]) << '\n';
                        }},
             m.structure);
  os << "transformers " << m.transformers.size() << '\n';
  for (const auto& [name, x] : m.transformers) os << "transformer " << name << " size " << transformer_size(*x) << '\n';
  return os.str();
}

}  // namespace delsym
