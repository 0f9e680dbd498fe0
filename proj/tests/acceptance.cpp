// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "delsym/kripke.hpp"
#include "delsym/translate.hpp"
#include "support.hpp"

using namespace delsym;
using namespace delsym::testing;

namespace {

// Pinned thresholds.
constexpr double kAgreementRequired = 1.0;      // fraction of oracle agreement
constexpr std::size_t kQbfLengthSlack = 2;      // |formula| <= |QBF| + slack
constexpr std::size_t kOmegaNodesPerAtom = 4;   // K-variant observation law size bound
constexpr std::size_t kPspacePeakNodes = 64;    // pspace checker allocation ceiling
constexpr std::size_t kTauViolationsAllowed = 0;
constexpr double kBudgetSeconds[] = {60, 120, 60, 60, 120, 10, 120, 60, 60};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Tally {
  std::size_t cases = 0, agree = 0;
  void add(bool ok) {
    ++cases;
    agree += ok ? 1 : 0;
  }
  bool full() const { return cases > 0 && static_cast<double>(agree) / static_cast<double>(cases) >= kAgreementRequired; }
  std::string str() const { return std::to_string(agree) + "/" + std::to_string(cases); }
};

std::vector<State> all_states(const Structure& f) {
  std::vector<State> out;
  auto c = states_of(f);
  while (auto s = c.next()) out.push_back(*s);
  return out;
}

int k_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::knows:
      return 1 + k_depth(f.body());
    case Formula::Kind::negation:
    case Formula::Kind::event:
      return k_depth(f.body());
    case Formula::Kind::conjunction:
    case Formula::Kind::announce:
      return std::max(k_depth(f.child(0)), k_depth(f.child(1)));
    default:
      return 0;
  }
}

int ann_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::announce:
      return 1 + std::max(ann_depth(f.child(0)), ann_depth(f.child(1)));
    case Formula::Kind::knows:
    case Formula::Kind::negation:
    case Formula::Kind::event:
      return ann_depth(f.body());
    case Formula::Kind::conjunction:
      return std::max(ann_depth(f.child(0)), ann_depth(f.child(1)));
    default:
      return 0;
  }
}

bool same_relation(const Manager& mgr, Bdd omega, const Relation& r, std::span<const Atom> v) {
  for (const auto& s : powerset(v))
    for (const auto& t : powerset(v))
      if (mgr.evaluate(omega, pair_valuation(s, t)) != (r.count({s, t}) != 0)) return false;
  return true;
}

Relation relation_of_bdd(const Manager& mgr, Bdd omega, std::span<const Atom> v) {
  Relation out;
  for (const auto& s : powerset(v))
    for (const auto& t : powerset(v))
      if (mgr.evaluate(omega, pair_valuation(s, t))) out.emplace(s, t);
  return out;
}

// ---------------------------------------------------------------------------

Relation edges_of(const KripkeModel& m, std::size_t agent) {
  Relation out;
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (std::size_t v : m.successors[agent][w]) out.emplace(m.worlds[w], m.worlds[v]);
  return out;
}

Bdd state_law(Manager& mgr, std::span<const Atom> v, std::uint64_t table) {
  Bdd theta = mgr.bottom();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << v.size()); ++m)
    if (table >> m & 1u) theta = mgr.disj(theta, compile_bool(characteristic(subset(v, m).atoms(), v), mgr));
  return theta;
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
  for (std::size_t i = 0; i < vars.size(); ++i) q.blocks[i < blocks ? i : r.below(blocks)].variables.push_back(vars[i]);
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

// Shared corpora: programs over three atoms and relation diagrams.
constexpr std::size_t kProgramCorpus = 1000;
constexpr std::size_t kRelationCorpus = 500;

struct ProgramCorpus {
  Playground g{3};
  std::vector<MentalProgram> programs;
  ProgramCorpus() {
    Rng r(4004);
    for (std::size_t i = 0; i < kProgramCorpus; ++i) programs.push_back(random_program(r, g.atoms, 4));
  }
};

struct RelationCorpus {
  std::vector<Playground> grounds;
  std::vector<Bdd> relations;
  RelationCorpus() {
    Rng r(5005);
    grounds.reserve(kRelationCorpus);
    for (std::size_t i = 0; i < kRelationCorpus; ++i) {
      grounds.emplace_back(1 + i % 3);
      Playground& g = grounds.back();
      relations.push_back(compile_bool(random_bool(r, with_primes(g.atoms), 5), *g.manager));
    }
  }
};

const ProgramCorpus& program_corpus() {
  static const ProgramCorpus c;
  return c;
}

const RelationCorpus& relation_corpus() {
  static const RelationCorpus c;
  return c;
}

// ---------------------------------------------------------------------------

Outcome pal_equivalence() {
  Model base = parse_model("vocab p q\nlaw Top\nobs a: p\nobs b: q\n");
  FormulaScope scope{base.signature, &base.agents, nullptr};
  std::vector<Atom> v(vocabulary_of(base.structure).begin(), vocabulary_of(base.structure).end());
  std::vector<Formula> corpus;
  for (const char* text :
       {"K a p", "K a K b q", "Khat a (p & ~q)", "[! p] K a p", "[! K a p] K a p", "[! [! K a p] K a p] K a p",
        "[! p | q] K b (p | q)", "K a [! q] K b p", "[! K b q] [! K a p] (K a q | K b p)",
        "[! [! [! p] K a p] K b q] K a q", "~K a p & K b (p -> q)", "[! ~K a q] Khat b (p <-> q)"})
    corpus.push_back(parse_formula(text, scope));
  Rng r(1001);
  while (corpus.size() < 50) {
    Formula f = random_pal(r, v, 2, 2, 3, 6);
    if (k_depth(f) >= 1) corpus.push_back(f);
  }
  for (const auto& f : corpus)
    if (k_depth(f) > 2 || ann_depth(f) > 3) return {false, "corpus formula outside the depth bounds"};

  Tally t;
  for (std::uint64_t law = 0; law < 16; ++law) {
    Bdd theta = state_law(*base.manager, v, law);
    for (std::uint64_t obs = 0; obs < 16; ++obs) {
      State oa = subset(v, obs & 3u), ob = subset(v, obs >> 2);
      std::vector<std::vector<Atom>> observables{{oa.begin(), oa.end()}, {ob.begin(), ob.end()}};
      KnowledgeStructure k{base.manager, Vocabulary(v), theta, observables};
      KripkeModel km = structure_to_kripke(k);
      for (const auto& f : corpus)
        for (std::size_t w = 0; w < km.worlds.size(); ++w) {
          bool want = naive_check(k, km.worlds[w], f);
          t.add(check(k, {}, km.worlds[w], f) == want && kripke_check(km, w, f) == want);
        }
    }
  }
  return {t.full(), "check = naive = kripke on " + t.str() + " (structure, state, formula) triples"};
}

Outcome delk_equivalence() {
  Tally t, bdd;
  Rng r(2002);
  std::size_t stacked[3] = {0, 0, 0}, truths = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    Playground g(1 + r.below(3));
    BeliefStructure b = random_belief(r, g.manager, g.atoms, 2);
    std::size_t k = i % 3;
    ++stacked[k];
    std::vector<std::shared_ptr<const Transformer>> xs;
    std::vector<std::vector<Atom>> scopes{g.atoms};
    for (std::size_t j = 0; j < k; ++j) {
      xs.push_back(random_transformer(r, *g.signature, g.manager, scopes.back(), 2, "x" + std::to_string(j) + "e",
                                      (i / 3) % 2 == 0));
      std::vector<Atom> next = scopes.back();
      next.insert(next.end(), xs.back()->event_atoms.begin(), xs.back()->event_atoms.end());
      scopes.push_back(next);
    }
    Formula phi = random_pal(r, scopes.back(), 2, 2, 1, 4);
    for (std::size_t j = k; j-- > 0;) {
      State point;
      for (const auto& e : xs[j]->event_atoms)
        if (r.coin()) point.insert(e);
      phi = Formula::event(Event{xs[j], point}, phi);
      switch (r.below(4)) {
        case 0:
          phi = Formula::knows(r.below(2), phi);
          break;
        case 1:
          phi = Formula::negation(phi);
          break;
        case 2:
          phi = Formula::conjunction(random_pal(r, scopes[j], 2, 1, 1, 3), phi);
          break;
        default:
          break;
      }
    }
    for (const auto& s : all_states(b)) {
      bool want = naive_check(b, s, phi);
      truths += want ? 1 : 0;
      t.add(check_delk(b, {}, s, phi) == want);
      bdd.add(eval_bdd_algo(b, s, phi) == want);
    }
  }
  return {t.full() && bdd.full(), "check_delk = naive on " + t.str() + ", bdd = naive on " + bdd.str() + ", " +
                                      std::to_string(truths) + " true (transformers stacked 0/1/2: " + std::to_string(stacked[0]) + "/" +
                                      std::to_string(stacked[1]) + "/" + std::to_string(stacked[2]) + ")"};
}

Outcome qbf_reduction() {
  std::vector<PrenexQBF> corpus{parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n"),
                                parse_qdimacs("p cnf 2 2\ne 1 0\na 2 0\n1 -2 0\n-1 2 0\n")};
  Rng r(3003);
  for (int i = 0; i < 200; ++i) corpus.push_back(random_qbf(r));
  Tally t;
  std::size_t length_ok = 0, omega_ok = 0, worst_slack = 0;
  for (const auto& q : corpus) {
    bool want = qbf_eval(q);
    QbfInstance inst = qbf_to_instance(q);
    t.add(check(inst.knowledge, {}, inst.state, inst.formula) == want &&
          check_delk(inst.belief, {}, inst.state, inst.formula) == want);
    std::size_t len = formula_length(inst.formula);
    if (len <= inst.qbf_length + kQbfLengthSlack) ++length_ok;
    worst_slack = std::max(worst_slack, len > inst.qbf_length ? len - inst.qbf_length : 0);
    bool small = true;
    for (const auto& omega : inst.belief.observation)
      small = small && inst.manager->node_count(omega) <= kOmegaNodesPerAtom * inst.atoms.size();
    omega_ok += small ? 1 : 0;
  }
  bool pass = t.full() && length_ok == corpus.size() && omega_ok == corpus.size();
  return {pass, "truth " + t.str() + ", length within +" + std::to_string(kQbfLengthSlack) + " " +
                    std::to_string(length_ok) + "/" + std::to_string(corpus.size()) + " (max excess " +
                    std::to_string(worst_slack) + "), observation nodes within 4|V| " + std::to_string(omega_ok) +
                    "/" + std::to_string(corpus.size())};
}

Outcome program_diagrams() {
  const ProgramCorpus& c = program_corpus();
  Manager& m = *c.g.manager;
  auto states = powerset(c.g.atoms);
  Tally t;
  for (const auto& pi : c.programs) {
    Bdd omega = mp_to_bdd(pi, c.g.atoms, m);
    for (const auto& s : states)
      for (const auto& u : states) t.add(related(pi, c.g.atoms, s, u) == m.evaluate(omega, pair_valuation(s, u)));
  }
  return {t.full(), "related = diagram on " + t.str() + " (program, pair) cases"};
}

Outcome diagram_programs() {
  const RelationCorpus& rc = relation_corpus();
  Tally exact, round;
  for (std::size_t i = 0; i < rc.relations.size(); ++i) {
    Manager& m = *rc.grounds[i].manager;
    MentalProgram pi = bdd_to_mp(m, rc.relations[i], rc.grounds[i].atoms);
    exact.add(relation_of(pi, rc.grounds[i].atoms) == relation_of_bdd(m, rc.relations[i], rc.grounds[i].atoms));
  }
  const ProgramCorpus& pc = program_corpus();
  Manager& m = *pc.g.manager;
  for (const auto& pi : pc.programs) {
    MentalProgram back = bdd_to_mp(m, mp_to_bdd(pi, pc.g.atoms, m), pc.g.atoms);
    round.add(relation_of(back, pc.g.atoms) == relation_of(pi, pc.g.atoms));
  }
  return {exact.full() && round.full(),
          "relation-exact " + exact.str() + ", round trip through diagrams " + round.str()};
}

Outcome order_blowup() {
  bool pass = true;
  std::string detail;
  for (std::size_t n = 2; n <= 5; ++n) {
    Signature sig;
    BlowupWitness w = blowup_witness(n, sig);
    Manager bad(w.adversarial), good(w.contrast);
    std::size_t nodes = bad.node_count(mp_to_bdd(w.program, w.vocabulary, bad));
    std::size_t contrast = good.node_count(mp_to_bdd(w.program, w.vocabulary, good));
    pass = pass && nodes >= (std::size_t{1} << (n + 1));
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + std::to_string(nodes) +
              " >= " + std::to_string(std::size_t{1} << (n + 1)) + " (contrast " + std::to_string(contrast) + ")";
  }
  return {pass, detail};
}

Outcome tau_measure() {
  const RelationCorpus& rc = relation_corpus();
  TauStats total;
  for (std::size_t i = 0; i < rc.relations.size(); ++i) {
    TauStats st;
    bdd_to_mp(*rc.grounds[i].manager, rc.relations[i], rc.grounds[i].atoms, &st);
    total.calls += st.calls;
    total.measure_violations += st.measure_violations;
  }
  return {total.measure_violations <= kTauViolationsAllowed,
          std::to_string(total.measure_violations) + " violations in " + std::to_string(total.calls) + " calls"};
}

Outcome space_tradeoff() {
  bool pass = true;
  std::string detail;
  std::size_t previous_depth = 0;
  for (std::size_t d = 1; d <= 8; ++d) {
    auto sig = std::make_shared<Signature>();
    Atom p = sig->intern("p");
    KnowledgeStructure k{std::make_shared<Manager>(VarOrder::interleaved(std::vector{p})), Vocabulary({p}), {}, {{}}};
    k.law = k.manager->top();
    Formula knows = Formula::knows(0, Formula::atom(p));
    Formula phi = knows;
    for (std::size_t i = 0; i < d; ++i) phi = Formula::announce(phi, knows);
    State s{p};
    CheckStats st;
    bool value = check(k, {}, s, phi, &st);
    bool agree = value == eval_bdd_algo(k, s, phi) && value == naive_check(k, s, phi);
    bool ok = agree && st.peak_nodes == 0 && st.depth >= d && st.depth <= 2 * d + 2 && st.depth >= previous_depth;
    previous_depth = st.depth;
    pass = pass && ok;
    if (!ok) detail += "d=" + std::to_string(d) + " failed; ";
  }
  detail += "nested announcements d=1..8: peak 0, depth " + std::to_string(previous_depth) + " at d=8";
  for (std::size_t n = 2; n <= 5; ++n) {
    Signature sig;
    BlowupWitness w = blowup_witness(n, sig);
    Atom r = sig.intern("r");
    std::vector<Atom> atoms = w.vocabulary;
    atoms.push_back(r);
    VarOrder order = w.adversarial;
    order.append_interleaved(r);
    KnowledgeStructure k{std::make_shared<Manager>(order), Vocabulary(atoms), {}, {atoms}};
    k.law = k.manager->top();
    State s{w.vocabulary[0], w.vocabulary[n], r};
    Formula phi = Formula::announce(w.beta, Formula::atom(r));
    TranslateStats bst;
    bool via_bdd = eval_bdd_algo(k, s, phi, &bst);
    CheckStats st;
    bool via_pspace = check(k, {}, s, phi, &st);
    bool ok = via_bdd == via_pspace && bst.nodes_allocated >= (std::size_t{1} << (n + 1)) &&
              st.peak_nodes <= kPspacePeakNodes;
    pass = pass && ok;
    detail += "; n=" + std::to_string(n) + " bdd " + std::to_string(bst.nodes_allocated) + " pspace " +
              std::to_string(st.peak_nodes);
  }
  return {pass, detail};
}

Relation compose(const Relation& a, const Relation& b) {
  Relation out;
  for (const auto& [s, u] : a)
    for (const auto& [u2, t] : b)
      if (u == u2) out.emplace(s, t);
  return out;
}

Outcome worked_examples() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  Model m = parse_model(kExample1);
  FormulaScope scope{m.signature, &m.agents, &m.transformers};
  Atom p = *m.signature->find("p"), q = *m.signature->find("q");
  const auto& k = std::get<BeliefStructure>(m.structure);
  KripkeModel km = structure_to_kripke(m.structure);
  State pq{p, q};
  for (auto [text, want] : {std::pair{"K B q", true}, std::pair{"K A p", false}}) {
    Formula f = parse_formula(text, scope);
    bool all = true;
    for (Algorithm a : {Algorithm::pspace, Algorithm::bdd, Algorithm::naive})
      all = all && model_check(m, pq, f, a).value == want;
    all = all && check_delk(k, {}, pq, f) == want && kripke_check(km, *km.index_of(pq), f) == want;
    expect(all, std::string("example query ") + text);
  }
  std::vector<Atom> v{p, q};
  Manager& mgr = *m.manager;
  expect(mp_to_bdd(parse_program("(p <- F U p <- T) ; q <- T", m.signature).program, v, mgr) == k.observation[0],
         "agent A program");
  expect(mp_to_bdd(parse_program("p <- T", m.signature).program, v, mgr) == k.observation[1], "agent B program");

  using MP = MentalProgram;
  auto states = powerset(v);
  Relation all_pairs, identity;
  for (const auto& s : states)
    for (const auto& t : states) {
      all_pairs.emplace(s, t);
      if (s == t) identity.emplace(s, t);
    }
  auto observing = [&](std::span<const Atom> o) {
    Relation out;
    for (const auto& s : states)
      for (const auto& t : states) {
        bool same = true;
        for (const auto& a : o) same = same && s.contains(a) == t.contains(a);
        if (same) out.emplace(s, t);
      }
    return out;
  };
  auto kripke_relation = [&](std::span<const Atom> o) {
    KnowledgeStructure ks{m.manager, Vocabulary(v), mgr.top(), {{o.begin(), o.end()}}};
    return edges_of(structure_to_kripke(ks), 0);
  };
  Bdd pp = mgr.iff(mgr.var(p), mgr.var(p.primed())), qq = mgr.iff(mgr.var(q), mgr.var(q.primed()));
  std::vector<Atom> none, just_p{p}, just_q{q};

  struct Row {
    std::string name;
    MP program;
    Bdd diagram;
    std::optional<std::vector<Atom>> observed;
    Relation want;
  };
  std::vector<Row> rows{
      {"empty", MP::test(Formula::bottom()), mgr.bottom(), std::nullopt, {}},
      {"total", change(v), mgr.top(), none, all_pairs},
      {"observe p", change(just_q), pp, just_p, observing(just_p)},
      {"observe p q", change(none), mgr.conj(pp, qq), v, identity},
      {"identity", MP::test(Formula::top()), mgr.conj(pp, qq), v, identity},
  };
  std::map<Atom, Atom> prime_map{{p, p.primed()}, {q, q.primed()}};
  for (const auto& s : states)
    for (const auto& t : states) {
      MP edge = MP::sequence_of(std::vector{MP::test(of(s.atoms(), v)), change(v), MP::test(of(t.atoms(), v))});
      Bdd diagram = mgr.conj(compile_bool(of(s.atoms(), v), mgr), mgr.relabel(compile_bool(of(t.atoms(), v), mgr), prime_map));
      rows.push_back({"edge", edge, diagram, std::nullopt, Relation{{s, t}}});
    }
  for (const auto& row : rows) {
    expect(relation_of(row.program, v) == row.want, row.name + " program");
    expect(same_relation(mgr, row.diagram, row.want, v), row.name + " diagram");
    expect(same_relation(mgr, mp_to_bdd(row.program, v, mgr), row.want, v), row.name + " translated program");
    if (row.observed) {
      expect(kripke_relation(*row.observed) == row.want, row.name + " observables");
      expect(observation_of_observables(mgr, *row.observed) == row.diagram, row.name + " observation law");
    }
    Relation complement;
    for (const auto& pair : all_pairs)
      if (!row.want.count(pair)) complement.insert(pair);
    Bdd negated = mgr.negate(row.diagram);
    expect(same_relation(mgr, negated, complement, v), row.name + " complement diagram");
    expect(relation_of(bdd_to_mp(mgr, negated, v), v) == complement, row.name + " complement program");
  }

  std::map<Atom, Atom> swap{{p, p.primed()}, {p.primed(), p}, {q, q.primed()}, {q.primed(), q}};
  Rng r(9009);
  for (int i = 0; i < 100; ++i) {
    MP a = random_program(r, v, 3), b = random_program(r, v, 3);
    Relation ra = relation_of(a, v), rb = relation_of(b, v);
    Relation inverse;
    for (const auto& [s, t] : ra) inverse.emplace(t, s);
    Bdd da = mp_to_bdd(a, v, mgr), db = mp_to_bdd(b, v, mgr);
    expect(same_relation(mgr, mgr.relabel(da, swap), inverse, v), "inverse diagram");
    expect(relation_of(bdd_to_mp(mgr, mgr.relabel(da, swap), v), v) == inverse, "inverse program");

    Relation seq = compose(ra, rb);
    expect(relation_of(MP::sequence(a, b), v) == seq, "composition program");
    expect(same_relation(mgr, mp_to_bdd(MP::sequence(a, b), v, mgr), seq, v), "composition translation");
    std::map<Atom, Atom> to_mid_a{{p.primed(), p.with_prime(2)}, {q.primed(), q.with_prime(2)}};
    std::map<Atom, Atom> to_mid_b{{p, p.with_prime(2)}, {q, q.with_prime(2)}};
    std::vector<Atom> mids{p.with_prime(2), q.with_prime(2)};
    Bdd joined = mgr.exists(mids, mgr.conj(mgr.relabel(da, to_mid_a), mgr.relabel(db, to_mid_b)));
    expect(same_relation(mgr, joined, seq, v), "composition diagram");

    Relation meet;
    for (const auto& pair : ra)
      if (rb.count(pair)) meet.insert(pair);
    expect(relation_of(MP::intersection(a, b), v) == meet, "intersection program");
    expect(same_relation(mgr, mgr.conj(da, db), meet, v), "intersection diagram");
  }
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y) {
      State ox = subset(v, x), oy = subset(v, y), both = subset(v, x | y);
      Relation meet;
      Relation rx = kripke_relation(ox.atoms()), ry = kripke_relation(oy.atoms());
      for (const auto& pair : rx)
        if (ry.count(pair)) meet.insert(pair);
      expect(kripke_relation(both.atoms()) == meet, "intersection observables");
      expect(mgr.conj(observation_of_observables(mgr, ox.atoms()), observation_of_observables(mgr, oy.atoms())) ==
                 observation_of_observables(mgr, both.atoms()),
             "intersection observation laws");
      Bdd law = observation_of_observables(mgr, ox.atoms());
      expect(mgr.relabel(law, swap) == law, "observables are symmetric");
    }

  expect(successors(MP::assign(q, false), pq) == std::vector{State{p}}, "successors of q <- F");
  expect(successors(MP::choice(MP::assign(p, false), MP::assign(q, false)), pq) == std::vector{State{p}, State{q}},
         "successors of the choice");

  std::string detail = std::to_string(rows.size()) + " catalogue rows, 100 inverse/composition/intersection pairs";
  if (!failures.empty()) {
    detail = std::to_string(failures.size()) + " failures, first: " + failures.front();
  }
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"announcement logic agrees with explicit models", pal_equivalence},
      {"event logic agrees with explicit updates", delk_equivalence},
      {"quantified formulas reduce to model checking", qbf_reduction},
      {"programs translate to relation diagrams", program_diagrams},
      {"relation diagrams translate back to programs", diagram_programs},
      {"variable order blowup", order_blowup},
      {"diagram-to-program recursion decreases", tau_measure},
      {"space against diagram size", space_tradeoff},
      {"worked examples and relation catalogue", worked_examples},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= kBudgetSeconds[i];
    bool pass = out.pass && in_time;
    if (!in_time) out.detail += "; over the time budget";
    std::printf("criterion %zu: %s  %s  [%s] (%.2fs, budget %.0fs)\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].name,
                out.detail.c_str(), secs, kBudgetSeconds[i]);
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
