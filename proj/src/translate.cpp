#include "delsym/translate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

namespace delsym {

namespace {

class ProgramCompiler {
 public:
  ProgramCompiler(std::span<const Atom> vocabulary, Manager& mgr) : vocabulary_(vocabulary), mgr_(mgr) {
    for (const Atom& p : vocabulary_) {
      if (p.prime != 0) throw LogicError("program vocabularies hold unprimed atoms only");
      for (std::uint8_t level = 0; level < 3; ++level)
        if (!mgr.order().contains(p.with_prime(level)))
          throw BddError("atom of the program vocabulary is not ranked with its primed copies");
      lift_.emplace(p, p.primed());
      lift_.emplace(p.primed(), p.with_prime(2));
      lower_.emplace(p.with_prime(2), p.primed());
      primes_.push_back(p.primed());
    }
  }

  Bdd compile(const MentalProgram& pi) {
    if (auto it = memo_.find(pi.identity()); it != memo_.end()) return it->second;
    Bdd out;
    switch (pi.kind()) {
      case MentalProgram::Kind::assign: {
        require_member(pi.atom());
        Bdd target = mgr_.var(pi.atom().primed());
        out = mgr_.conj(pi.value() ? target : mgr_.negate(target), frame(&pi.atom()));
        break;
      }
      case MentalProgram::Kind::test:
        for (const Atom& a : atoms_of(pi.condition())) require_member(a);
        out = mgr_.conj(compile_bool(pi.condition(), mgr_), frame(nullptr));
        break;
      case MentalProgram::Kind::choice:
        out = mgr_.disj(compile(pi.left()), compile(pi.right()));
        break;
      case MentalProgram::Kind::intersection:
        out = mgr_.conj(compile(pi.left()), compile(pi.right()));
        break;
      case MentalProgram::Kind::sequence: {
        Bdd first = compile(pi.left());
        Bdd second = mgr_.relabel(compile(pi.right()), lift_);
        Bdd joined = mgr_.exists(primes_, mgr_.conj(first, second));
        out = mgr_.relabel(joined, lower_);
        break;
      }
    }
    memo_.emplace(pi.identity(), out);
    return out;
  }

 private:
  void require_member(const Atom& p) const {
    if (std::find(vocabulary_.begin(), vocabulary_.end(), p) == vocabulary_.end())
      throw LogicError("program mentions an atom outside its vocabulary");
  }

  Bdd frame(const Atom* except) {
    Bdd out = mgr_.top();
    for (auto it = vocabulary_.rbegin(); it != vocabulary_.rend(); ++it) {
      if (except && *it == *except) continue;
      out = mgr_.conj(mgr_.iff(mgr_.var(*it), mgr_.var(it->primed())), out);
    }
    return out;
  }

  std::span<const Atom> vocabulary_;
  Manager& mgr_;
  std::map<Atom, Atom> lift_;
  std::map<Atom, Atom> lower_;
  std::vector<Atom> primes_;
  std::unordered_map<const void*, Bdd> memo_;
};

MentalProgram free_choice(const Atom& p) {
  return MentalProgram::choice(MentalProgram::assign(p, false), MentalProgram::assign(p, true));
}

class Tau {
 public:
  Tau(Manager& mgr, std::span<const Atom> list, TauStats* stats) : mgr_(mgr), list_(list), stats_(stats) {
    std::optional<std::uint32_t> previous;
    for (std::size_t k = 0; k < list_.size(); ++k) {
      const Atom& p = list_[k];
      if (p.prime != 0) throw BddError("the atom list of the program translation holds unprimed atoms only");
      auto r0 = mgr.order().rank(p);
      auto r1 = mgr.order().rank(p.primed());
      if (!r0 || !r1 || *r1 <= *r0 || (previous && *r0 <= *previous))
        throw BddError(
            "diagram order is not interleaved (each atom directly followed by its primed copy); rebuild the "
            "diagram in a manager with an interleaved order");
      previous = *r1;
      position_.emplace(p, k);
    }
  }

  MentalProgram run(Bdd omega, std::size_t pos) {
    if (stats_) ++stats_->calls;
    auto key = std::pair{omega.id(), pos};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    MentalProgram out = expand(omega, pos);
    memo_.emplace(key, out);
    return out;
  }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint32_t, std::size_t>& k) const noexcept {
      return std::hash<std::uint64_t>()((std::uint64_t{k.first} << 32) ^ k.second);
    }
  };

  std::size_t size_of(Bdd b) {
    auto [it, fresh] = sizes_.try_emplace(b.id(), 0);
    if (fresh) it->second = mgr_.node_count(b);
    return it->second;
  }

  MentalProgram descend(Bdd from, std::size_t from_pos, Bdd to, std::size_t to_pos) {
    if (stats_) {
      std::size_t a = size_of(from), b = size_of(to);
      std::size_t la = list_.size() - from_pos, lb = list_.size() - to_pos;
      if (!(b < a || (b == a && lb < la))) ++stats_->measure_violations;
    }
    return run(to, to_pos);
  }

  MentalProgram expand(Bdd omega, std::size_t pos) {
    if (omega.is_false()) return MentalProgram::test(Formula::bottom());
    if (omega.is_true()) {
      if (pos == list_.size()) return MentalProgram::test(Formula::top());
      return MentalProgram::sequence(free_choice(list_[pos]), descend(omega, pos, omega, pos + 1));
    }
    const Atom& a = mgr_.atom_of(omega);
    auto it = position_.find(a.unprimed());
    if (a.prime > 1 || it == position_.end())
      throw BddError("diagram mentions an atom that is not in the atom list or its primed copy");
    if (it->second < pos || pos == list_.size())
      throw BddError("diagram tests an atom that the atom list has already consumed");
    const Atom& p = list_[pos];
    if (it->second != pos)
      return MentalProgram::sequence(free_choice(p), descend(omega, pos, omega, pos + 1));
    Bdd lo = mgr_.low(omega), hi = mgr_.high(omega);
    if (a.prime == 0) {
      Formula pf = Formula::atom(p);
      return MentalProgram::choice(
          MentalProgram::sequence(MentalProgram::test(Formula::negation(pf)), descend(omega, pos, lo, pos)),
          MentalProgram::sequence(MentalProgram::test(pf), descend(omega, pos, hi, pos)));
    }
    return MentalProgram::choice(MentalProgram::sequence(MentalProgram::assign(p, false), descend(omega, pos, lo, pos + 1)),
                                 MentalProgram::sequence(MentalProgram::assign(p, true), descend(omega, pos, hi, pos + 1)));
  }

  Manager& mgr_;
  std::span<const Atom> list_;
  TauStats* stats_;
  std::map<Atom, std::size_t> position_;
  std::unordered_map<std::pair<std::uint32_t, std::size_t>, MentalProgram, PairHash> memo_;
  std::unordered_map<std::uint32_t, std::size_t> sizes_;
};

}  // namespace

Bdd mp_to_bdd(const MentalProgram& pi, std::span<const Atom> vocabulary, Manager& mgr) {
  ProgramCompiler compiler(vocabulary, mgr);
  return compiler.compile(pi);
}

MentalProgram bdd_to_mp(Manager& mgr, Bdd omega, std::span<const Atom> list, TauStats* stats) {
  Tau tau(mgr, list, stats);
  return tau.run(omega, 0);
}

BlowupWitness blowup_witness(std::size_t n, Signature& sig) {
  if (n == 0) throw LogicError("the blowup witness needs n >= 1");
  BlowupWitness w;
  for (std::size_t i = 1; i <= 2 * n; ++i) w.vocabulary.push_back(sig.intern("p" + std::to_string(i)));
  std::vector<Formula> terms;
  for (std::size_t i = 0; i < n; ++i)
    terms.push_back(Formula::conjunction(Formula::atom(w.vocabulary[i]), Formula::atom(w.vocabulary[n + i])));
  w.beta = Formula::disjunction_of(terms);
  w.program = MentalProgram::test(w.beta);
  w.adversarial = VarOrder::interleaved(w.vocabulary);
  std::vector<Atom> paired;
  for (std::size_t i = 0; i < n; ++i) {
    paired.push_back(w.vocabulary[i]);
    paired.push_back(w.vocabulary[n + i]);
  }
  w.contrast = VarOrder::interleaved(paired);
  return w;
}

Bdd grid_relation(std::span<const Atom> vocabulary, Manager& mgr) {
  const std::size_t n = vocabulary.size();
  const std::size_t target = (n + 1) / 2;
  // exactly[c]: exactly c of the atoms from position i on are true, each
  // equal to its primed copy.
  std::vector<Bdd> exactly(target + 1, mgr.bottom());
  exactly[0] = mgr.top();
  for (std::size_t i = n; i-- > 0;) {
    const Atom& p = vocabulary[i];
    Bdd on = mgr.conj(mgr.var(p), mgr.var(p.primed()));
    Bdd off = mgr.conj(mgr.negate(mgr.var(p)), mgr.negate(mgr.var(p.primed())));
    std::vector<Bdd> next(target + 1, mgr.bottom());
    for (std::size_t c = 0; c <= target; ++c) {
      Bdd keep = mgr.conj(off, exactly[c]);
      Bdd take = c > 0 ? mgr.conj(on, exactly[c - 1]) : mgr.bottom();
      next[c] = mgr.disj(keep, take);
    }
    exactly = std::move(next);
  }
  return exactly[target];
}

}  // namespace delsym
