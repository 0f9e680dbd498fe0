#include "doctest.h"
#include "delsym/kripke.hpp"
#include "support.hpp"

using namespace delsym;
using namespace delsym::testing;

namespace {

using Edges = std::set<std::pair<State, State>>;

Edges edges_of(const KripkeModel& m, std::size_t agent) {
  Edges out;
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (std::size_t v : m.successors[agent][w]) out.emplace(m.worlds[w], m.worlds[v]);
  return out;
}

PrenexQBF random_qbf(Rng& r) {
  PrenexQBF q;
  q.variables = 1 + static_cast<std::uint32_t>(r.below(6));
  std::size_t blocks = 1 + r.below(std::min<std::size_t>(3, q.variables));
  std::vector<std::uint32_t> vars(q.variables);
  for (std::uint32_t v = 0; v < q.variables; ++v) vars[v] = v + 1;
  std::shuffle(vars.begin(), vars.end(), r.engine());
  bool kind = r.coin();
  for (std::size_t b = 0; b < blocks; ++b, kind = !kind) q.blocks.push_back(QbfBlock{kind, {}});
  for (std::size_t i = 0; i < vars.size(); ++i)
    q.blocks[i < blocks ? i : r.below(blocks)].variables.push_back(vars[i]);
  for (std::size_t c = 0, n = 1 + r.below(6); c < n; ++c) {
    std::vector<int> clause;
    for (std::size_t l = 0, w = 1 + r.below(3); l < w; ++l) {
      int v = 1 + static_cast<int>(r.below(q.variables));
      clause.push_back(r.coin() ? v : -v);
    }
    q.clauses.push_back(clause);
  }
  return q;
}

}  // namespace

TEST_CASE("explicit model of the example structure") {
  Model m = parse_model(kExample1);
  Atom p = *m.signature->find("p"), q = *m.signature->find("q");
  KripkeModel k = structure_to_kripke(m.structure);
  CHECK(k.worlds.size() == 4);
  State pq{p, q}, sp{p}, sq{q}, none{};
  Edges a, b;
  for (const auto& w : {pq, sp, sq, none}) {
    a.emplace(w, sq);
    a.emplace(w, pq);
  }
  b = {{pq, pq}, {sq, pq}, {sp, sp}, {none, sp}};
  CHECK(edges_of(k, 0) == a);
  CHECK(edges_of(k, 1) == b);
  CHECK(k.edge_count(0) == 8);

  FormulaScope scope{m.signature, &m.agents, &m.transformers};
  std::size_t w = *k.index_of(pq);
  CHECK(kripke_check(k, w, parse_formula("K B q", scope)));
  CHECK_FALSE(kripke_check(k, w, parse_formula("K A p", scope)));
  CHECK(kripke_check(k, w, parse_formula("Khat A (q & ~p)", scope)));
  CHECK(kripke_check(k, w, parse_formula("[! p] K A p", scope)));

  Model ev = parse_model("vocab p\nomega a: p'\ntransformer x { vplus e }\n");
  FormulaScope evs{ev.signature, &ev.agents, &ev.transformers};
  CHECK_THROWS(kripke_check(structure_to_kripke(ev.structure), 0, parse_formula("[x:{e}] p", evs)));
}

TEST_CASE("empty and embedded models") {
  Playground g(2);
  KnowledgeStructure none{g.manager, Vocabulary(g.atoms), g.manager->bottom(), {{}}};
  CHECK(structure_to_kripke(none).worlds.empty());

  Rng r(61);
  for (int i = 0; i < 50; ++i) {
    Bdd law = compile_bool(random_bool(r, g.atoms, 3), *g.manager);
    std::vector<std::vector<Atom>> obs(2);
    for (auto& o : obs)
      for (const auto& a : g.atoms)
        if (r.coin()) o.push_back(a);
    KnowledgeStructure k{g.manager, Vocabulary(g.atoms), law, obs};
    KripkeModel direct = structure_to_kripke(k), embedded = structure_to_kripke(embed_s5(k));
    for (std::size_t a = 0; a < 2; ++a) CHECK(edges_of(direct, a) == edges_of(embedded, a));
  }
  Playground big(kExplicitGuard + 1);
  CHECK_THROWS(structure_to_kripke(KnowledgeStructure{big.manager, Vocabulary(big.atoms), big.manager->top(), {}}));
}

TEST_CASE("explicit models agree with the structure semantics") {
  Playground g(2);
  Rng r(62);
  for (std::uint64_t law = 0; law < 16; ++law) {
    Bdd theta = g.manager->bottom();
    for (std::uint64_t m = 0; m < 4; ++m)
      if (law >> m & 1u)
        theta = g.manager->disj(theta, compile_bool(characteristic(subset(g.atoms, m).atoms(), g.atoms), *g.manager));
    KnowledgeStructure k{g.manager, Vocabulary(g.atoms), theta, {{g.atoms[0]}, {g.atoms[1]}}};
    KripkeModel km = structure_to_kripke(k);
    for (int i = 0; i < 20; ++i) {
      Formula phi = random_pal(r, g.atoms, 2, 2, 2);
      for (std::size_t w = 0; w < km.worlds.size(); ++w) CHECK(kripke_check(km, w, phi) == naive_check(k, km.worlds[w], phi));
    }
  }
}

TEST_CASE("brute force quantified formulas") {
  CHECK(qbf_eval(parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n")));
  CHECK_FALSE(qbf_eval(parse_qdimacs("p cnf 2 2\ne 1 0\na 2 0\n1 -2 0\n-1 2 0\n")));
  CHECK(qbf_eval(PrenexQBF{}));
  PrenexQBF open{2, {QbfBlock{true, {1}}}, {{1, 2}}};
  CHECK_THROWS_AS(require_closed(open), LogicError);
}

TEST_CASE("reduction instances") {
  QbfInstance inst = qbf_to_instance(parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n"));
  CHECK(inst.atoms.size() == 2);
  CHECK(inst.knowledge.law.is_true());
  CHECK(inst.knowledge.observables == std::vector<std::vector<Atom>>{{inst.atoms[1]}, {inst.atoms[0]}});
  CHECK(inst.state.empty());
  Formula matrix = inst.formula.body().body().body().body();
  CHECK(inst.formula == Formula::knows(0, Formula::considers(1, matrix)));
  CHECK(check(inst.knowledge, {}, inst.state, inst.formula));

  QbfInstance one = qbf_to_instance(parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n"));
  CHECK(one.formula == Formula::considers(0, qbf_matrix(parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n"), one.atoms)));
}

TEST_CASE("reduction soundness on random formulas") {
  Rng r(63);
  for (int i = 0; i < 200; ++i) {
    PrenexQBF q = random_qbf(r);
    bool want = qbf_eval(q);
    QbfInstance inst = qbf_to_instance(q);
    CAPTURE(print_qdimacs(q));
    CHECK(check(inst.knowledge, {}, inst.state, inst.formula) == want);
    CHECK(check_delk(inst.belief, {}, inst.state, inst.formula) == want);
    CHECK(formula_length(inst.formula) <= inst.qbf_length + 2);
    for (const auto& omega : inst.belief.observation) CHECK(inst.manager->node_count(omega) <= 4 * inst.atoms.size());
  }
}
