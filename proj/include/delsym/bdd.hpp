#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace delsym {

enum class Provenance : std::uint8_t { original = 0, event = 1, frozen = 2 };

/// A propositional variable as seen by the decision-diagram layer.
///
/// `prime` distinguishes p, p' and p''; `provenance` and `generation` keep
/// event atoms and frozen copies (the old value of a changed atom) apart
/// from the atoms of the original vocabulary.
struct Atom {
  std::uint32_t base = 0;
  std::uint8_t prime = 0;
  Provenance provenance = Provenance::original;
  std::uint32_t generation = 0;

  constexpr Atom with_prime(std::uint8_t level) const {
    Atom a = *this;
    a.prime = level;
    return a;
  }
  constexpr Atom unprimed() const { return with_prime(0); }
  constexpr Atom primed() const { return with_prime(1); }

  friend constexpr bool operator==(const Atom&, const Atom&) = default;
  friend constexpr std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.provenance <=> b.provenance; c != 0) return c;
    if (auto c = a.generation <=> b.generation; c != 0) return c;
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.prime <=> b.prime;
  }
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept {
    std::uint64_t h = a.base;
    h = h * 0x9E3779B97F4A7C15ull + a.prime;
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint8_t>(a.provenance);
    h = h * 0x9E3779B97F4A7C15ull + a.generation;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

class BddError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total order over atoms; the rank of an atom is its position.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<Atom> atoms);

  /// p0 < p0' < p0'' < p1 < p1' < ...
  static VarOrder interleaved(std::span<const Atom> bases);
  /// All plain atoms, then all primed ones, then all double-primed ones.
  static VarOrder listed(std::span<const Atom> bases);

  /// Appends base, base' and base'' at the end unless already ranked.
  void append_interleaved(const Atom& base);

  std::optional<std::uint32_t> rank(const Atom& a) const;
  bool contains(const Atom& a) const { return ranks_.count(a) != 0; }
  const Atom& at(std::uint32_t rank) const { return atoms_.at(rank); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  void push(const Atom& a);

  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::uint32_t, AtomHash> ranks_;
};

/// Handle to a node of one Manager. Only meaningful together with it.
class Bdd {
 public:
  Bdd() = default;

  std::uint32_t id() const { return id_; }
  std::uint32_t manager_id() const { return manager_; }
  bool is_false() const { return id_ == 0; }
  bool is_true() const { return id_ == 1; }
  bool is_constant() const { return id_ < 2; }

  friend bool operator==(const Bdd&, const Bdd&) = default;

 private:
  friend class Manager;
  Bdd(std::uint32_t manager, std::uint32_t id) : manager_(manager), id_(id) {}

  std::uint32_t manager_ = 0;
  std::uint32_t id_ = 0;
};

enum class BinOp : std::uint8_t { conj, disj, implies, iff, exclusive_or };
enum class Quantifier : std::uint8_t { exists, forall };

using AtomNamer = std::function<std::string(const Atom&)>;

/// Reduced ordered BDDs without complement edges. Nodes are hash-consed in a
/// unique table and never freed before the manager itself; the apply cache
/// lives as long as the manager.
///
/// A manager is single-writer. Read-only members (evaluate, node_count,
/// low/high, dump) may run concurrently as long as nobody builds nodes.
class Manager {
 public:
  explicit Manager(VarOrder order);
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  std::uint32_t id() const { return id_; }
  const VarOrder& order() const { return order_; }
  /// Ranks base, base' and base'' at the end of the order if needed.
  void declare(const Atom& base);

  Bdd bottom() const { return Bdd(id_, 0); }
  Bdd top() const { return Bdd(id_, 1); }
  Bdd constant(bool v) const { return v ? top() : bottom(); }

  Bdd var(const Atom& a);
  Bdd apply(BinOp op, Bdd a, Bdd b);
  Bdd negate(Bdd a);
  Bdd ite(Bdd f, Bdd g, Bdd h);

  Bdd conj(Bdd a, Bdd b) { return apply(BinOp::conj, a, b); }
  Bdd disj(Bdd a, Bdd b) { return apply(BinOp::disj, a, b); }
  Bdd implies(Bdd a, Bdd b) { return apply(BinOp::implies, a, b); }
  Bdd iff(Bdd a, Bdd b) { return apply(BinOp::iff, a, b); }

  Bdd quantify(Quantifier kind, std::span<const Atom> xs, Bdd a);
  Bdd exists(std::span<const Atom> xs, Bdd a) { return quantify(Quantifier::exists, xs, a); }
  Bdd forall(std::span<const Atom> xs, Bdd a) { return quantify(Quantifier::forall, xs, a); }

  /// Renames atoms; the map must be injective on the support of `a`
  /// (atoms not in the map keep their name).
  Bdd relabel(Bdd a, const std::map<Atom, Atom>& m);
  /// Functional composition a[p := g].
  Bdd compose(Bdd a, const Atom& p, Bdd g);
  /// Simultaneous substitution of diagrams for atoms.
  Bdd substitute(Bdd a, const std::map<Atom, Bdd>& sigma);
  Bdd restrict(Bdd a, const Atom& p, bool value);

  /// Evaluates under the valuation `truth(atom)`.
  template <class Truth>
    requires std::predicate<Truth&, const Atom&>
  bool evaluate(Bdd a, Truth&& truth) const {
    check_owner(a);
    std::uint32_t n = a.id();
    while (n > 1) {
      const Node& node = nodes_[n];
      n = truth(order_.at(node.rank)) ? node.high : node.low;
    }
    return n == 1;
  }
  /// Evaluates with exactly the listed atoms true.
  bool evaluate(Bdd a, std::span<const Atom> true_atoms) const;

  /// Reachable nodes including terminals; mk_var(p) has 3.
  std::size_t node_count(Bdd a) const;
  /// Atoms labelling at least one reachable node, in rank order.
  std::vector<Atom> support(Bdd a) const;

  const Atom& atom_of(Bdd a) const;
  Bdd low(Bdd a) const;
  Bdd high(Bdd a) const;

  /// Total number of nodes ever allocated, terminals included.
  std::size_t allocated() const { return nodes_.size(); }

  /// Lazy enumeration of satisfying subsets of `over` (which must contain
  /// the support of the diagram).
  class SatCursor {
   public:
    /// Advances to the next satisfying set; false once exhausted.
    bool next(std::vector<Atom>& true_atoms);

   private:
    friend class Manager;
    struct Frame {
      std::size_t pos;
      std::uint32_t node;
      std::uint8_t branch;
    };
    SatCursor(const Manager* mgr, std::vector<Atom> over, std::uint32_t root);

    const Manager* mgr_;
    std::vector<Atom> over_;
    std::vector<std::uint32_t> ranks_;
    std::vector<bool> assignment_;
    std::vector<Frame> stack_;
  };
  SatCursor all_sat(Bdd a, std::span<const Atom> over) const;

  /// Line-oriented dump: `root <id>` then `id atom else then` per node,
  /// children before parents, terminals written T/F.
  std::string dump(Bdd a, const AtomNamer& name) const;

  /// Checks reducedness and strictly increasing ranks on every path.
  bool well_formed(Bdd a) const;

 private:
  struct Node {
    std::uint32_t rank;
    std::uint32_t low;
    std::uint32_t high;
  };
  struct TripleHash {
    std::size_t operator()(const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>& t) const noexcept;
  };

  void check_owner(Bdd a) const;
  std::uint32_t rank_of(const Atom& a) const;
  std::uint32_t make(std::uint32_t rank, std::uint32_t low, std::uint32_t high);
  std::uint32_t node_rank(std::uint32_t n) const;
  std::uint32_t apply_rec(BinOp op, std::uint32_t a, std::uint32_t b);
  std::uint32_t negate_rec(std::uint32_t a);
  std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);

  std::uint32_t id_;
  VarOrder order_;
  std::vector<Node> nodes_;
  std::unordered_map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t, TripleHash> unique_;
  std::unordered_map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t, TripleHash> apply_cache_;
  std::unordered_map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t, TripleHash> ite_cache_;
  std::unordered_map<std::uint32_t, std::uint32_t> negate_cache_;
};

}  // namespace delsym
