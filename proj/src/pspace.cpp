#include "delsym/pspace.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace delsym {

namespace {

/// Visits the subsets of `free` added to `base`, in binary counting order
/// (or its reverse), until `visit` returns false.
template <class Visit>
bool for_each_extension(const State& base, const std::vector<Atom>& free, bool reverse, Visit&& visit) {
  if (free.size() >= 63) throw CheckError("too many atoms to enumerate");
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t mask = reverse ? count - 1 - i : i;
    State t = base;
    for (std::size_t b = 0; b < free.size(); ++b)
      if (mask >> (free.size() - 1 - b) & 1) t.insert(free[b]);
    if (!visit(std::move(t))) return false;
  }
  return true;
}

struct Counters {
  std::size_t depth = 0;
  std::size_t valuations = 0;

  void merge(const Counters& other) {
    depth = std::max(depth, other.depth);
    valuations += other.valuations;
  }
};

class DepthGuard {
 public:
  DepthGuard(Counters& c, std::size_t level) { c.depth = std::max(c.depth, level); }
};

// --------------------------------------------------------------------------
// Announcements on knowledge structures.

class PalChecker {
 public:
  PalChecker(const KnowledgeStructure& f, const CheckOptions& options) : f_(f), options_(options) {}

  bool run(std::vector<Formula>& list, const State& s, const Formula& phi, std::size_t level, Counters& c) const {
    DepthGuard guard(c, level);
    using K = Formula::Kind;
    switch (phi.kind()) {
      case K::top:
        return true;
      case K::bottom:
        return false;
      case K::atom:
        return s.contains(phi.atom());
      case K::negation:
        return !run(list, s, phi.body(), level + 1, c);
      case K::conjunction:
        return run(list, s, phi.child(0), level + 1, c) && run(list, s, phi.child(1), level + 1, c);
      case K::announce: {
        if (!run(list, s, phi.announced(), level + 1, c)) return true;
        list.push_back(phi.announced());
        bool value = run(list, s, phi.body(), level + 1, c);
        list.pop_back();
        return value;
      }
      case K::knows:
        return knows(list, s, phi.agent(), phi.body(), level, c);
      case K::event:
        throw CheckError("event modality handed to the announcement checker");
    }
    return false;
  }

 private:
  bool candidate(std::vector<Formula>& list, const State& t, const Formula& body, std::size_t level,
                 Counters& c) const {
    ++c.valuations;
    if (!f_.manager->evaluate(f_.law, [&](const Atom& a) { return t.contains(a); })) return true;
    for (std::size_t j = 0; j < list.size(); ++j) {
      std::vector<Formula> prefix(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(j));
      if (!run(prefix, t, list[j], level + 1, c)) return true;
    }
    return run(list, t, body, level + 1, c);
  }

  bool knows(std::vector<Formula>& list, const State& s, std::size_t agent, const Formula& body, std::size_t level,
             Counters& c) const {
    if (agent >= f_.observables.size()) throw CheckError("unknown agent index");
    const auto& obs = f_.observables[agent];
    State base;
    std::vector<Atom> free;
    for (const Atom& p : f_.vocabulary) {
      if (std::find(obs.begin(), obs.end(), p) == obs.end())
        free.push_back(p);
      else if (s.contains(p))
        base.insert(p);
    }
    if (level == 0 && options_.jobs > 1) return knows_parallel(list, base, free, body, level, c);
    return for_each_extension(base, free, options_.reverse,
                              [&](State t) { return candidate(list, t, body, level, c); });
  }

  bool knows_parallel(const std::vector<Formula>& list, const State& base, const std::vector<Atom>& free,
                      const Formula& body, std::size_t level, Counters& c) const {
    std::vector<State> candidates;
    for_each_extension(base, free, options_.reverse, [&](State t) {
      candidates.push_back(std::move(t));
      return true;
    });
    const unsigned workers = std::max(1u, std::min<unsigned>(options_.jobs, static_cast<unsigned>(candidates.size())));
    std::atomic<bool> refuted{false};
    std::vector<Counters> counters(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          std::vector<Formula> own = list;
          for (std::size_t i = w; i < candidates.size() && !refuted.load(); i += workers)
            if (!candidate(own, candidates[i], body, level, counters[w])) refuted.store(true);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const auto& k : counters) c.merge(k);
    return !refuted.load();
  }

  const KnowledgeStructure& f_;
  const CheckOptions& options_;
};

// --------------------------------------------------------------------------
// Events on belief structures.

class DelChecker {
 public:
  DelChecker(const BeliefStructure& f, const CheckOptions& options) : f_(f), options_(options) {}

  bool run(std::vector<Event>& list, const State& s, const Formula& phi, std::size_t level, Counters& c) const {
    DepthGuard guard(c, level);
    using K = Formula::Kind;
    switch (phi.kind()) {
      case K::top:
        return true;
      case K::bottom:
        return false;
      case K::atom:
        return final_state(list, s).contains(phi.atom());
      case K::negation:
        return !run(list, s, phi.body(), level + 1, c);
      case K::conjunction:
        return run(list, s, phi.child(0), level + 1, c) && run(list, s, phi.child(1), level + 1, c);
      case K::announce: {
        if (!run(list, s, phi.announced(), level + 1, c)) return true;
        list.push_back(Event{announcement_transformer(phi.announced(), 0, f_.manager), State{}});
        bool value = run(list, s, phi.body(), level + 1, c);
        list.pop_back();
        return value;
      }
      case K::event: {
        const Event& ev = phi.event();
        const Transformer& x = *ev.transformer;
        require_fresh(list, x);
        if (!run(list, s, subst_point(x.event_law, x.event_atoms, ev.point), level + 1, c)) return true;
        list.push_back(ev);
        bool value = run(list, s, phi.body(), level + 1, c);
        list.pop_back();
        return value;
      }
      case K::knows:
        return knows(list, s, phi.agent(), phi.body(), level, c);
    }
    return false;
  }

 private:
  std::uint32_t generation(std::size_t j) const { return f_.generation + static_cast<std::uint32_t>(j) + 1; }

  void require_fresh(const std::vector<Event>& list, const Transformer& x) const {
    for (const Atom& e : x.event_atoms) {
      bool clash = f_.vocabulary.contains(e);
      for (const Event& prior : list)
        for (const Atom& d : prior.transformer->event_atoms) clash = clash || d == e;
      if (clash) throw CheckError("transformer '" + x.name + "' reuses an atom already in the vocabulary");
    }
  }

  State final_state(const std::vector<Event>& list, const State& s) const {
    State u = s;
    for (std::size_t j = 0; j < list.size(); ++j)
      u = update_state(u, *list[j].transformer, list[j].point, generation(j));
    return u;
  }

  static bool observes(const Manager& mgr, Bdd omega, const State& s, const State& t) {
    return mgr.evaluate(omega, [&](const Atom& a) { return a.prime == 0 ? s.contains(a) : t.contains(a.unprimed()); });
  }

  struct Frame {
    const State& t;
    std::vector<Event> points;
    State s_trace;
    State t_trace;
  };

  /// Chooses the event points of candidate t for events j.. of the list.
  bool extend(std::vector<Event>& list, Frame& frame, std::size_t j, std::size_t agent, const Formula& body,
              std::size_t level, Counters& c) const {
    if (j == list.size()) {
      ++c.valuations;
      return run(frame.points, frame.t, body, level + 1, c);
    }
    const Transformer& x = *list[j].transformer;
    const State s_before = frame.s_trace;
    const State t_before = frame.t_trace;
    const State s_after = update_state(s_before, x, list[j].point, generation(j));
    std::vector<Atom> free(x.event_atoms.begin(), x.event_atoms.end());
    return for_each_extension(State{}, free, options_.reverse, [&](State point) {
      State t_after = update_state(t_before, x, point, generation(j));
      if (agent < x.event_observation.size() &&
          !observes(*x.manager, x.event_observation[agent], s_after, t_after))
        return true;
      std::vector<Event> prefix = frame.points;
      Formula pre = subst_point(x.event_law, x.event_atoms, point);
      if (!run(prefix, frame.t, pre, level + 1, c)) return true;
      frame.points.push_back(Event{list[j].transformer, point});
      frame.s_trace = s_after;
      frame.t_trace = t_after;
      bool value = extend(list, frame, j + 1, agent, body, level, c);
      frame.points.pop_back();
      frame.s_trace = s_before;
      frame.t_trace = t_before;
      return value;
    });
  }

  bool candidate(std::vector<Event>& list, const State& s, const State& t, std::size_t agent, const Formula& body,
                 std::size_t level, Counters& c) const {
    ++c.valuations;
    const Manager& mgr = *f_.manager;
    if (!mgr.evaluate(f_.law, [&](const Atom& a) { return t.contains(a); })) return true;
    if (!observes(mgr, f_.observation[agent], s, t)) return true;
    Frame frame{t, {}, s, t};
    return extend(list, frame, 0, agent, body, level, c);
  }

  bool knows(std::vector<Event>& list, const State& s, std::size_t agent, const Formula& body, std::size_t level,
             Counters& c) const {
    if (agent >= f_.observation.size()) throw CheckError("unknown agent index");
    std::vector<Atom> free(f_.vocabulary.begin(), f_.vocabulary.end());
    if (level == 0 && options_.jobs > 1) {
      std::vector<State> candidates;
      for_each_extension(State{}, free, options_.reverse, [&](State t) {
        candidates.push_back(std::move(t));
        return true;
      });
      const unsigned workers =
          std::max(1u, std::min<unsigned>(options_.jobs, static_cast<unsigned>(candidates.size())));
      std::atomic<bool> refuted{false};
      std::vector<Counters> counters(workers);
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            std::vector<Event> own = list;
            for (std::size_t i = w; i < candidates.size() && !refuted.load(); i += workers)
              if (!candidate(own, s, candidates[i], agent, body, level, counters[w])) refuted.store(true);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
      for (const auto& k : counters) c.merge(k);
      return !refuted.load();
    }
    return for_each_extension(State{}, free, options_.reverse,
                              [&](State t) { return candidate(list, s, t, agent, body, level, c); });
  }

  const BeliefStructure& f_;
  const CheckOptions& options_;
};

template <class F>
void require_state(const F& f, const State& s) {
  if (!is_state_of(Structure(f), s)) throw CheckError("the given state is not a state of the structure");
}

}  // namespace

bool check(const KnowledgeStructure& f, std::span<const Formula> announcements, const State& s, const Formula& phi,
           CheckStats* stats, const CheckOptions& options) {
  require_state(f, s);
  const std::size_t before = f.manager->allocated();
  PalChecker checker(f, options);
  std::vector<Formula> list(announcements.begin(), announcements.end());
  Counters c;
  bool value = checker.run(list, s, phi, 0, c);
  if (stats) *stats = CheckStats{c.depth, c.valuations, f.manager->allocated() - before};
  return value;
}

bool check_delk(const BeliefStructure& f, std::span<const Event> events, const State& s, const Formula& phi,
                CheckStats* stats, const CheckOptions& options) {
  require_state(f, s);
  const std::size_t before = f.manager->allocated();
  DelChecker checker(f, options);
  std::vector<Event> list(events.begin(), events.end());
  Counters c;
  bool value = checker.run(list, s, phi, 0, c);
  if (stats) *stats = CheckStats{c.depth, c.valuations, f.manager->allocated() - before};
  return value;
}

CheckResult model_check(const Model& model, const State& s, const Formula& phi, Algorithm algo,
                        const CheckOptions& options) {
  CheckResult r;
  switch (algo) {
    case Algorithm::pspace:
      if (const auto* k = std::get_if<KnowledgeStructure>(&model.structure)) {
        if (is_pal(phi)) {
          r.value = check(*k, {}, s, phi, &r.stats, options);
        } else {
          const std::size_t before = model.manager->allocated();
          BeliefStructure b = embed_s5(*k);
          r.value = check_delk(b, {}, s, phi, &r.stats, options);
          r.stats.peak_nodes = model.manager->allocated() - before;
        }
      } else {
        r.value = check_delk(std::get<BeliefStructure>(model.structure), {}, s, phi, &r.stats, options);
      }
      break;
    case Algorithm::bdd: {
      TranslateStats t;
      r.value = eval_bdd_algo(model.structure, s, phi, &t);
      r.stats.peak_nodes = t.nodes_allocated;
      break;
    }
    case Algorithm::naive: {
      const std::size_t before = model.manager->allocated();
      r.value = naive_check(model.structure, s, phi);
      r.stats.peak_nodes = model.manager->allocated() - before;
      break;
    }
  }
  return r;
}

}  // namespace delsym
