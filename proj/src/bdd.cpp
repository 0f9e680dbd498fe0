#include "delsym/bdd.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <sstream>

namespace delsym {

namespace {

constexpr std::uint32_t kTerminalRank = std::numeric_limits<std::uint32_t>::max();

std::atomic<std::uint32_t> next_manager_id{1};

std::string describe(const Atom& a) {
  std::ostringstream os;
  os << "atom(base=" << a.base << ", prime=" << int(a.prime) << ", provenance=" << int(a.provenance)
     << ", generation=" << a.generation << ")";
  return os.str();
}

bool terminal_op(BinOp op, std::uint32_t a, std::uint32_t b, std::uint32_t& out) {
  switch (op) {
    case BinOp::conj:
      if (a == 0 || b == 0) return out = 0, true;
      if (a == 1) return out = b, true;
      if (b == 1 || a == b) return out = a, true;
      return false;
    case BinOp::disj:
      if (a == 1 || b == 1) return out = 1, true;
      if (a == 0) return out = b, true;
      if (b == 0 || a == b) return out = a, true;
      return false;
    case BinOp::implies:
      if (a == 0 || b == 1 || a == b) return out = 1, true;
      if (a == 1) return out = b, true;
      return false;
    case BinOp::iff:
      if (a == b) return out = 1, true;
      if (a < 2 && b < 2) return out = 0, true;
      if (a == 1) return out = b, true;
      if (b == 1) return out = a, true;
      return false;
    case BinOp::exclusive_or:
      if (a == b) return out = 0, true;
      if (a < 2 && b < 2) return out = 1, true;
      if (a == 0) return out = b, true;
      if (b == 0) return out = a, true;
      return false;
  }
  return false;
}

bool commutative(BinOp op) { return op != BinOp::implies; }

}  // namespace

VarOrder::VarOrder(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) push(a);
}

void VarOrder::push(const Atom& a) {
  if (!ranks_.emplace(a, static_cast<std::uint32_t>(atoms_.size())).second)
    throw BddError("duplicate atom in variable order: " + describe(a));
  atoms_.push_back(a);
}

VarOrder VarOrder::interleaved(std::span<const Atom> bases) {
  VarOrder order;
  for (const Atom& b : bases) order.append_interleaved(b);
  return order;
}

VarOrder VarOrder::listed(std::span<const Atom> bases) {
  VarOrder order;
  for (std::uint8_t level = 0; level < 3; ++level)
    for (const Atom& b : bases) order.push(b.with_prime(level));
  return order;
}

void VarOrder::append_interleaved(const Atom& base) {
  for (std::uint8_t level = 0; level < 3; ++level) {
    Atom a = base.with_prime(level);
    if (!contains(a)) push(a);
  }
}

std::optional<std::uint32_t> VarOrder::rank(const Atom& a) const {
  auto it = ranks_.find(a);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

std::size_t Manager::TripleHash::operator()(
    const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>& t) const noexcept {
  std::uint64_t h = std::get<0>(t);
  h = h * 0x9E3779B97F4A7C15ull + std::get<1>(t);
  h = h * 0x9E3779B97F4A7C15ull + std::get<2>(t);
  return static_cast<std::size_t>(h ^ (h >> 31));
}

Manager::Manager(VarOrder order) : id_(next_manager_id++), order_(std::move(order)) {
  nodes_.push_back({kTerminalRank, 0, 0});
  nodes_.push_back({kTerminalRank, 1, 1});
}

void Manager::declare(const Atom& base) { order_.append_interleaved(base.unprimed()); }

void Manager::check_owner(Bdd a) const {
  if (a.manager_id() != id_) throw BddError("diagram belongs to a different manager");
  if (a.id() >= nodes_.size()) throw BddError("dangling diagram handle");
}

std::uint32_t Manager::rank_of(const Atom& a) const {
  auto r = order_.rank(a);
  if (!r) throw BddError("unranked " + describe(a));
  return *r;
}

std::uint32_t Manager::node_rank(std::uint32_t n) const { return nodes_[n].rank; }

std::uint32_t Manager::make(std::uint32_t rank, std::uint32_t low, std::uint32_t high) {
  if (low == high) return low;
  auto key = std::make_tuple(rank, low, high);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({rank, low, high});
  unique_.emplace(key, id);
  return id;
}

Bdd Manager::var(const Atom& a) { return Bdd(id_, make(rank_of(a), 0, 1)); }

std::uint32_t Manager::apply_rec(BinOp op, std::uint32_t a, std::uint32_t b) {
  std::uint32_t out;
  if (terminal_op(op, a, b, out)) return out;
  if (commutative(op) && a > b) std::swap(a, b);
  auto key = std::make_tuple(static_cast<std::uint32_t>(op), a, b);
  if (auto it = apply_cache_.find(key); it != apply_cache_.end()) return it->second;

  std::uint32_t ra = node_rank(a), rb = node_rank(b);
  std::uint32_t top = std::min(ra, rb);
  std::uint32_t a0 = ra == top ? nodes_[a].low : a, a1 = ra == top ? nodes_[a].high : a;
  std::uint32_t b0 = rb == top ? nodes_[b].low : b, b1 = rb == top ? nodes_[b].high : b;
  std::uint32_t low = apply_rec(op, a0, b0);
  std::uint32_t high = apply_rec(op, a1, b1);
  out = make(top, low, high);
  apply_cache_.emplace(key, out);
  return out;
}

Bdd Manager::apply(BinOp op, Bdd a, Bdd b) {
  check_owner(a);
  check_owner(b);
  return Bdd(id_, apply_rec(op, a.id(), b.id()));
}

std::uint32_t Manager::negate_rec(std::uint32_t a) {
  if (a < 2) return 1 - a;
  if (auto it = negate_cache_.find(a); it != negate_cache_.end()) return it->second;
  Node n = nodes_[a];
  std::uint32_t low = negate_rec(n.low);
  std::uint32_t high = negate_rec(n.high);
  std::uint32_t out = make(n.rank, low, high);
  negate_cache_.emplace(a, out);
  return out;
}

Bdd Manager::negate(Bdd a) {
  check_owner(a);
  return Bdd(id_, negate_rec(a.id()));
}

std::uint32_t Manager::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
  if (f == 1) return g;
  if (f == 0) return h;
  if (g == h) return g;
  if (g == 1 && h == 0) return f;
  if (g == 0 && h == 1) return negate_rec(f);
  auto key = std::make_tuple(f, g, h);
  if (auto it = ite_cache_.find(key); it != ite_cache_.end()) return it->second;
  std::uint32_t top = std::min({node_rank(f), node_rank(g), node_rank(h)});
  auto cof = [&](std::uint32_t n, bool hi) {
    if (node_rank(n) != top) return n;
    return hi ? nodes_[n].high : nodes_[n].low;
  };
  std::uint32_t low = ite_rec(cof(f, false), cof(g, false), cof(h, false));
  std::uint32_t high = ite_rec(cof(f, true), cof(g, true), cof(h, true));
  std::uint32_t out = make(top, low, high);
  ite_cache_.emplace(key, out);
  return out;
}

Bdd Manager::ite(Bdd f, Bdd g, Bdd h) {
  check_owner(f);
  check_owner(g);
  check_owner(h);
  return Bdd(id_, ite_rec(f.id(), g.id(), h.id()));
}

Bdd Manager::quantify(Quantifier kind, std::span<const Atom> xs, Bdd a) {
  check_owner(a);
  std::set<std::uint32_t> ranks;
  for (const Atom& x : xs)
    if (auto r = order_.rank(x)) ranks.insert(*r);
  if (ranks.empty()) return a;
  const std::uint32_t last = *ranks.rbegin();
  const BinOp join = kind == Quantifier::exists ? BinOp::disj : BinOp::conj;
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t n) -> std::uint32_t {
    if (n < 2 || node_rank(n) > last) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Node node = nodes_[n];
    std::uint32_t low = rec(node.low);
    std::uint32_t high = rec(node.high);
    std::uint32_t out = ranks.count(node.rank) ? apply_rec(join, low, high) : make(node.rank, low, high);
    memo.emplace(n, out);
    return out;
  };
  return Bdd(id_, rec(a.id()));
}

Bdd Manager::substitute(Bdd a, const std::map<Atom, Bdd>& sigma) {
  check_owner(a);
  std::unordered_map<std::uint32_t, std::uint32_t> images;
  for (const auto& [atom, g] : sigma) {
    check_owner(g);
    if (auto r = order_.rank(atom)) images.emplace(*r, g.id());
  }
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t n) -> std::uint32_t {
    if (n < 2) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Node node = nodes_[n];
    std::uint32_t low = rec(node.low);
    std::uint32_t high = rec(node.high);
    auto img = images.find(node.rank);
    std::uint32_t guard = img != images.end() ? img->second : make(node.rank, 0, 1);
    std::uint32_t out = ite_rec(guard, high, low);
    memo.emplace(n, out);
    return out;
  };
  return Bdd(id_, rec(a.id()));
}

Bdd Manager::relabel(Bdd a, const std::map<Atom, Atom>& m) {
  check_owner(a);
  std::vector<Atom> occurring = support(a);
  std::set<Atom> images;
  std::map<Atom, Bdd> sigma;
  for (const Atom& x : occurring) {
    auto it = m.find(x);
    Atom y = it == m.end() ? x : it->second;
    if (!images.insert(y).second) throw BddError("relabelling is not injective on " + describe(y));
    if (it != m.end()) sigma.emplace(x, var(y));
  }
  return substitute(a, sigma);
}

Bdd Manager::compose(Bdd a, const Atom& p, Bdd g) { return substitute(a, {{p, g}}); }

Bdd Manager::restrict(Bdd a, const Atom& p, bool value) { return substitute(a, {{p, constant(value)}}); }

bool Manager::evaluate(Bdd a, std::span<const Atom> true_atoms) const {
  return evaluate(a, [&](const Atom& x) { return std::find(true_atoms.begin(), true_atoms.end(), x) != true_atoms.end(); });
}

std::size_t Manager::node_count(Bdd a) const {
  check_owner(a);
  std::vector<std::uint32_t> stack{a.id()};
  std::set<std::uint32_t> seen;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second || n < 2) continue;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return seen.size();
}

std::vector<Atom> Manager::support(Bdd a) const {
  check_owner(a);
  std::vector<std::uint32_t> stack{a.id()};
  std::set<std::uint32_t> seen, ranks;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (n < 2 || !seen.insert(n).second) continue;
    ranks.insert(nodes_[n].rank);
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  std::vector<Atom> out;
  for (std::uint32_t r : ranks) out.push_back(order_.at(r));
  return out;
}

const Atom& Manager::atom_of(Bdd a) const {
  check_owner(a);
  if (a.is_constant()) throw BddError("terminal has no atom");
  return order_.at(nodes_[a.id()].rank);
}

Bdd Manager::low(Bdd a) const {
  check_owner(a);
  if (a.is_constant()) throw BddError("terminal has no children");
  return Bdd(id_, nodes_[a.id()].low);
}

Bdd Manager::high(Bdd a) const {
  check_owner(a);
  if (a.is_constant()) throw BddError("terminal has no children");
  return Bdd(id_, nodes_[a.id()].high);
}

Manager::SatCursor::SatCursor(const Manager* mgr, std::vector<Atom> over, std::uint32_t root)
    : mgr_(mgr), over_(std::move(over)) {
  std::vector<std::pair<std::uint32_t, Atom>> ranked;
  for (const Atom& a : over_) ranked.emplace_back(mgr_->rank_of(a), a);
  std::sort(ranked.begin(), ranked.end());
  ranked.erase(std::unique(ranked.begin(), ranked.end()), ranked.end());
  over_.clear();
  for (auto& [r, a] : ranked) {
    ranks_.push_back(r);
    over_.push_back(a);
  }
  assignment_.assign(over_.size(), false);
  stack_.push_back({0, root, 0});
}

bool Manager::SatCursor::next(std::vector<Atom>& true_atoms) {
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    if (f.node == 0) {
      stack_.pop_back();
      continue;
    }
    if (f.pos == over_.size()) {
      if (f.node != 1) throw BddError("all_sat: diagram mentions atoms outside the enumeration set");
      bool fresh = f.branch == 0;
      stack_.pop_back();
      if (!fresh) continue;
      true_atoms.clear();
      for (std::size_t i = 0; i < over_.size(); ++i)
        if (assignment_[i]) true_atoms.push_back(over_[i]);
      return true;
    }
    if (f.branch == 2) {
      stack_.pop_back();
      continue;
    }
    bool value = f.branch++ == 1;
    std::uint32_t child = f.node;
    std::uint32_t r = mgr_->node_rank(f.node);
    if (r < ranks_[f.pos]) throw BddError("all_sat: diagram mentions atoms outside the enumeration set");
    if (r == ranks_[f.pos]) child = value ? mgr_->nodes_[f.node].high : mgr_->nodes_[f.node].low;
    assignment_[f.pos] = value;
    std::size_t pos = f.pos + 1;
    stack_.push_back({pos, child, 0});
  }
  return false;
}

Manager::SatCursor Manager::all_sat(Bdd a, std::span<const Atom> over) const {
  check_owner(a);
  return SatCursor(this, std::vector<Atom>(over.begin(), over.end()), a.id());
}

std::string Manager::dump(Bdd a, const AtomNamer& name) const {
  check_owner(a);
  std::vector<std::uint32_t> stack{a.id()};
  std::set<std::uint32_t> reach;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (n < 2 || !reach.insert(n).second) continue;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  // Children always have smaller ids than their parents.
  std::unordered_map<std::uint32_t, std::size_t> local;
  std::size_t next = 1;
  for (std::uint32_t n : reach) local.emplace(n, next++);
  auto ref = [&](std::uint32_t n) -> std::string {
    if (n == 0) return "F";
    if (n == 1) return "T";
    return std::to_string(local.at(n));
  };
  std::ostringstream os;
  os << "root " << ref(a.id()) << '\n';
  for (std::uint32_t n : reach)
    os << local.at(n) << ' ' << name(order_.at(nodes_[n].rank)) << ' ' << ref(nodes_[n].low) << ' '
       << ref(nodes_[n].high) << '\n';
  return os.str();
}

bool Manager::well_formed(Bdd a) const {
  check_owner(a);
  std::vector<std::uint32_t> stack{a.id()};
  std::set<std::uint32_t> seen;
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> triples;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (n < 2 || !seen.insert(n).second) continue;
    const Node& node = nodes_[n];
    if (node.low == node.high) return false;
    if (!triples.insert({node.rank, node.low, node.high}).second) return false;
    if (node_rank(node.low) <= node.rank || node_rank(node.high) <= node.rank) return false;
    stack.push_back(node.low);
    stack.push_back(node.high);
  }
  return true;
}

}  // namespace delsym
