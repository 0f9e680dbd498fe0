#include "delsym/delsym.h"

#include <cstring>
#include <sstream>
#include <string>

#include "delsym/kripke.hpp"
#include "delsym/parse.hpp"
#include "delsym/pspace.hpp"
#include "delsym/translate.hpp"

struct delsym_model {
  delsym::Model model;
};

namespace {

thread_local std::string last_error;

delsym_status fail(delsym_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class Body>
delsym_status guarded(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const delsym::SourceError& e) {
    return fail(DELSYM_ERR_PARSE, e.what());
  } catch (const delsym::LogicError& e) {
    return fail(DELSYM_ERR_INPUT, e.what());
  } catch (const delsym::StructureError& e) {
    return fail(DELSYM_ERR_INPUT, e.what());
  } catch (const delsym::CheckError& e) {
    return fail(DELSYM_ERR_INPUT, e.what());
  } catch (const delsym::BddError& e) {
    return fail(DELSYM_ERR_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(DELSYM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DELSYM_ERR_INTERNAL, "unknown failure");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_names(const char* text) {
  std::vector<std::string> out;
  std::string current;
  for (const char* p = text; *p; ++p) {
    if (*p == ',' || *p == ' ' || *p == '\t' || *p == '\n') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += *p;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

delsym::FormulaScope scope_of(const delsym::Model& m) {
  delsym::FormulaScope s;
  s.signature = m.signature;
  s.agents = &m.agents;
  s.transformers = &m.transformers;
  const delsym::Vocabulary* v = &delsym::vocabulary_of(m.structure);
  s.allowed = [v](const delsym::Atom& a) { return v->contains(a); };
  return s;
}

struct RelationVocabulary {
  delsym::SignaturePtr signature = std::make_shared<delsym::Signature>();
  std::vector<delsym::Atom> atoms;
  std::shared_ptr<delsym::Manager> manager;
};

RelationVocabulary relation_vocabulary(const char* vocab, delsym_order order) {
  RelationVocabulary r;
  for (const auto& name : split_names(vocab)) {
    if (r.signature->find(name)) throw delsym::LogicError("atom '" + name + "' repeats in the vocabulary");
    r.atoms.push_back(r.signature->intern(name));
  }
  r.manager = std::make_shared<delsym::Manager>(order == DELSYM_ORDER_LISTED ? delsym::VarOrder::listed(r.atoms)
                                                                              : delsym::VarOrder::interleaved(r.atoms));
  return r;
}

delsym::Atom resolve_primed(const delsym::Signature& sig, std::string_view name) {
  std::size_t primes = 0;
  while (!name.empty() && name.back() == '\'') name.remove_suffix(1), ++primes;
  auto a = sig.find(name);
  if (!a || primes > 1) throw delsym::LogicError("unknown atom '" + std::string(name) + "'");
  return a->with_prime(static_cast<std::uint8_t>(primes));
}

}  // namespace

extern "C" {

const char* delsym_last_error(void) { return last_error.c_str(); }

void delsym_string_free(char* s) { std::free(s); }

delsym_status delsym_model_parse(const char* text, delsym_model** out) {
  if (!text || !out) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<delsym_model>();
    m->model = delsym::parse_model(text);
    *out = m.release();
    return DELSYM_OK;
  });
}

void delsym_model_free(delsym_model* model) { delete model; }

delsym_status delsym_model_check(const delsym_model* model, const char* state, const char* formula,
                                 delsym_algo algo, unsigned jobs, int* result, delsym_stats* stats) {
  if (!model || !formula || !result) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  if (algo != DELSYM_ALGO_PSPACE && algo != DELSYM_ALGO_BDD && algo != DELSYM_ALGO_NAIVE)
    return fail(DELSYM_ERR_ARGUMENT, "unknown algorithm");
  return guarded([&] {
    const delsym::Model& m = model->model;
    delsym::State s;
    if (state) {
      std::vector<delsym::Atom> atoms;
      const auto& v = delsym::vocabulary_of(m.structure);
      for (const auto& name : split_names(state)) {
        auto a = m.signature->find(name);
        if (!a || !v.contains(*a)) return fail(DELSYM_ERR_INPUT, "state mentions unknown atom '" + name + "'");
        atoms.push_back(*a);
      }
      s = delsym::State(atoms);
    } else if (m.designated) {
      s = *m.designated;
    } else {
      return fail(DELSYM_ERR_INPUT, "no state given and the model declares none");
    }
    delsym::Formula phi = delsym::parse_formula(formula, scope_of(m));
    delsym::CheckOptions options;
    options.jobs = jobs == 0 ? 1 : jobs;
    auto r = delsym::model_check(m, s, phi, static_cast<delsym::Algorithm>(algo), options);
    *result = r.value ? 1 : 0;
    if (stats) *stats = delsym_stats{r.stats.depth, r.stats.valuations, r.stats.peak_nodes};
    return DELSYM_OK;
  });
}

delsym_status delsym_model_summary(const delsym_model* model, char** out) {
  if (!model || !out) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = duplicate(delsym::structure_statistics(model->model));
    return DELSYM_OK;
  });
}

delsym_status delsym_formula_length(const delsym_model* model, const char* formula, uint64_t* out) {
  if (!model || !formula || !out) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = delsym::formula_length(delsym::parse_formula(formula, scope_of(model->model)));
    return DELSYM_OK;
  });
}

delsym_status delsym_translate_mp_to_bdd(const char* program, const char* vocab, delsym_order order, char** dump,
                                         uint64_t* node_count) {
  if (!program || !vocab || !dump) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    RelationVocabulary r = relation_vocabulary(vocab, order);
    auto src = delsym::parse_program(program, r.signature);
    delsym::Bdd b = delsym::mp_to_bdd(src.program, r.atoms, *r.manager);
    const auto& sig = *r.signature;
    *dump = duplicate(r.manager->dump(b, [&](const delsym::Atom& a) { return sig.name(a); }));
    if (node_count) *node_count = r.manager->node_count(b);
    return DELSYM_OK;
  });
}

delsym_status delsym_translate_bdd_to_mp(const char* dump, const char* vocab, delsym_order order, char** program,
                                         uint64_t* length) {
  if (!dump || !vocab || !program) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    RelationVocabulary r = relation_vocabulary(vocab, order);
    const auto& sig = *r.signature;
    delsym::Bdd b =
        delsym::parse_dump(dump, *r.manager, [&](std::string_view name) { return resolve_primed(sig, name); });
    delsym::MentalProgram pi = delsym::bdd_to_mp(*r.manager, b, r.atoms);
    *program = duplicate(delsym::print_program(pi, sig));
    if (length) *length = delsym::mp_length(pi);
    return DELSYM_OK;
  });
}

delsym_status delsym_translate_verify(const char* program, const char* vocab, int* equal) {
  if (!program || !vocab || !equal) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    RelationVocabulary r = relation_vocabulary(vocab, DELSYM_ORDER_INTERLEAVED);
    auto src = delsym::parse_program(program, r.signature);
    delsym::Bdd b = delsym::mp_to_bdd(src.program, r.atoms, *r.manager);
    delsym::MentalProgram back = delsym::bdd_to_mp(*r.manager, b, r.atoms);
    *equal = delsym::relation_of(src.program, r.atoms) == delsym::relation_of(back, r.atoms) ? 1 : 0;
    return DELSYM_OK;
  });
}

delsym_status delsym_qbf_run(const char* qdimacs, delsym_qbf_report* report) {
  if (!qdimacs || !report) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    delsym::PrenexQBF q = delsym::parse_qdimacs(qdimacs);
    delsym::QbfInstance inst = delsym::qbf_to_instance(q);
    report->brute = delsym::qbf_eval(q) ? 1 : 0;
    report->reduction = delsym::check(inst.knowledge, {}, inst.state, inst.formula) ? 1 : 0;
    report->belief_reduction = delsym::check_delk(inst.belief, {}, inst.state, inst.formula) ? 1 : 0;
    report->qbf_length = inst.qbf_length;
    report->formula_length = delsym::formula_length(inst.formula);
    return DELSYM_OK;
  });
}

delsym_status delsym_qbf_instance(const char* qdimacs, char** model, char** formula) {
  if (!qdimacs || !model || !formula) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    delsym::PrenexQBF q = delsym::parse_qdimacs(qdimacs);
    delsym::QbfInstance inst = delsym::qbf_to_instance(q);
    std::string text = delsym::print_knowledge_model(*inst.signature, inst.agents, inst.atoms, delsym::Formula::top(),
                                                     inst.knowledge.observables);
    text += "state\n";
    *model = duplicate(text);
    try {
      *formula = duplicate(delsym::print_formula(inst.formula, *inst.signature, inst.agents));
    } catch (...) {
      delsym_string_free(*model);
      *model = nullptr;
      throw;
    }
    return DELSYM_OK;
  });
}

delsym_status delsym_bench_blowup(unsigned n, delsym_blowup_row* row) {
  if (!row) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  if (n < 1 || n > 12) return fail(DELSYM_ERR_INPUT, "blowup size must be between 1 and 12");
  return guarded([&] {
    delsym::Signature sig;
    auto w = delsym::blowup_witness(n, sig);
    delsym::Manager adversarial(w.adversarial);
    delsym::Manager contrast(w.contrast);
    row->n = n;
    row->adversarial_nodes = adversarial.node_count(delsym::mp_to_bdd(w.program, w.vocabulary, adversarial));
    row->contrast_nodes = contrast.node_count(delsym::mp_to_bdd(w.program, w.vocabulary, contrast));
    row->bound = uint64_t{1} << (n + 1);
    row->program_length = delsym::mp_length(w.program);
    return DELSYM_OK;
  });
}

delsym_status delsym_bench_tradeoff(unsigned depth, delsym_tradeoff_row* row) {
  if (!row) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  if (depth < 1 || depth > 16) return fail(DELSYM_ERR_INPUT, "tradeoff depth must be between 1 and 16");
  return guarded([&] {
    auto sig = std::make_shared<delsym::Signature>();
    delsym::Atom p = sig->intern("p");
    delsym::KnowledgeStructure k;
    k.manager = std::make_shared<delsym::Manager>(delsym::VarOrder::interleaved(std::vector{p}));
    k.vocabulary = delsym::Vocabulary({p});
    k.law = k.manager->top();
    k.observables = {{}};
    delsym::Formula knows = delsym::Formula::knows(0, delsym::Formula::atom(p));
    delsym::Formula phi = knows;
    for (unsigned d = 0; d < depth; ++d) phi = delsym::Formula::announce(phi, knows);
    delsym::State s{p};
    delsym::CheckStats st;
    row->depth = depth;
    row->formula_length = delsym::formula_length(phi);
    row->pspace_value = delsym::check(k, {}, s, phi, &st) ? 1 : 0;
    row->pspace = delsym_stats{st.depth, st.valuations, st.peak_nodes};
    delsym::TranslateStats t;
    row->bdd_value = delsym::eval_bdd_algo(k, s, phi, &t) ? 1 : 0;
    row->bdd_peak_nodes = t.nodes_allocated;
    return DELSYM_OK;
  });
}

delsym_status delsym_bench_grid(unsigned v, delsym_grid_row* row) {
  if (!row) return fail(DELSYM_ERR_ARGUMENT, "null argument");
  if (v < 1 || v > 24) return fail(DELSYM_ERR_INPUT, "grid size must be between 1 and 24");
  return guarded([&] {
    delsym::Signature sig;
    std::vector<delsym::Atom> atoms;
    for (unsigned i = 1; i <= v; ++i) atoms.push_back(sig.intern("p" + std::to_string(i)));
    delsym::Manager mgr(delsym::VarOrder::interleaved(atoms));
    delsym::Bdd g = delsym::grid_relation(atoms, mgr);
    row->v = v;
    row->nodes = mgr.node_count(g);
    std::vector<delsym::Atom> both;
    for (const auto& a : atoms) {
      both.push_back(a);
      both.push_back(a.primed());
    }
    auto cursor = mgr.all_sat(g, both);
    std::vector<delsym::Atom> buffer;
    row->pairs = 0;
    while (cursor.next(buffer)) ++row->pairs;
    const std::size_t k = (v + 1) / 2;
    row->tau_length = delsym::mp_length(delsym::bdd_to_mp(mgr, g, atoms));
    row->enumerated_length = 0;
    if (v <= delsym::kRelationGuard) {
      delsym::Relation r;
      for (const auto& s : delsym::powerset(atoms))
        if (s.size() == k) r.emplace(s, s);
      row->enumerated_length = delsym::mp_length(delsym::program_of_relation(r, atoms));
    }
    return DELSYM_OK;
  });
}

}  // extern "C"
