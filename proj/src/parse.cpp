#include "delsym/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace delsym {

SourceError::SourceError(std::size_t offset, std::size_t line, std::size_t column, std::string expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Cursor {
 public:
  Cursor(std::string_view text, bool newline_is_space) : text_(text), newline_is_space_(newline_is_space) {}

  [[noreturn]] void fail(std::string expected) const { fail_at(pos_, std::move(expected)); }

  [[noreturn]] void fail_at(std::size_t offset, std::string expected) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SourceError(std::min(offset, text_.size()), line, column, std::move(expected));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || (c == '\n' && newline_is_space_)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool match(std::string_view literal) {
    skip_space();
    if (text_.substr(pos_).starts_with(literal)) {
      pos_ += literal.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view literal) {
    if (!match(literal)) fail("'" + std::string(literal) + "'");
  }

  /// Matches a whole identifier equal to `word`.
  bool match_word(std::string_view word) {
    skip_space();
    if (!text_.substr(pos_).starts_with(word)) return false;
    std::size_t after = pos_ + word.size();
    if (after < text_.size() && ident_char(text_[after])) return false;
    pos_ = after;
    return true;
  }

  bool at_ident() { return ident_start(peek()); }

  std::string_view ident(const char* what = "identifier") {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail(what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  /// Counts prime marks directly after the current position.
  std::size_t primes() {
    std::size_t n = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_, ++n;
    return n;
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  bool newline_is_space_;
  std::size_t pos_ = 0;
};

bool reserved(std::string_view w) { return w == "K" || w == "Khat" || w == "Top" || w == "Bot"; }

class FormulaParser {
 public:
  FormulaParser(Cursor& c, const FormulaScope& scope, bool boolean_only)
      : c_(c), scope_(scope), boolean_only_(boolean_only) {}

  Formula formula() { return iff(); }

 private:
  Formula iff() {
    Formula f = imp();
    while (c_.match("<->")) f = Formula::equivalence(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (c_.match("->")) return Formula::implication(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (c_.match("|")) f = Formula::disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (c_.match("&")) f = Formula::conjunction(f, unary());
    return f;
  }

  void modal_allowed(std::size_t at) const {
    if (boolean_only_) c_.fail_at(at, "a Boolean formula (modalities are not allowed here)");
  }

  std::size_t agent() {
    std::size_t at = c_.pos();
    std::string_view name = c_.ident("agent name");
    if (!scope_.agents) c_.fail_at(at, "a declared agent");
    auto i = scope_.agents->find(name);
    if (!i) c_.fail_at(at, "a declared agent (unknown agent '" + std::string(name) + "')");
    return *i;
  }

  Formula unary() {
    c_.skip_space();
    const std::size_t at = c_.pos();
    if (c_.match("~")) return Formula::negation(unary());
    if (c_.match("[!")) {
      modal_allowed(at);
      Formula announced = formula();
      c_.expect("]");
      return Formula::announce(announced, unary());
    }
    if (c_.match("[")) {
      modal_allowed(at);
      return event(at);
    }
    if (c_.match("(")) {
      Formula f = formula();
      c_.expect(")");
      return f;
    }
    if (c_.match_word("Khat")) {
      modal_allowed(at);
      std::size_t i = agent();
      return Formula::considers(i, unary());
    }
    if (c_.match_word("K")) {
      modal_allowed(at);
      std::size_t i = agent();
      return Formula::knows(i, unary());
    }
    if (c_.match_word("Top")) return Formula::top();
    if (c_.match_word("Bot")) return Formula::bottom();
    if (!c_.at_ident()) c_.fail("a formula");
    return Formula::atom(atom());
  }

  Atom atom() {
    const std::size_t at = c_.pos();
    std::string name(c_.ident("atom"));
    std::size_t primes = c_.primes();
    if (primes > 0 && !scope_.allow_primes) c_.fail_at(at, "an unprimed atom (primes are only allowed in observation laws)");
    if (primes > 1) c_.fail_at(at, "at most one prime");
    auto found = scope_.signature->find(name);
    if (!found) {
      if (!scope_.declare_unknown) c_.fail_at(at, "a declared atom (unknown atom '" + name + "')");
      found = scope_.signature->intern(name);
    }
    if (scope_.allowed && !scope_.allowed(*found)) c_.fail_at(at, "an atom of this vocabulary ('" + name + "' is not one)");
    return found->with_prime(static_cast<std::uint8_t>(primes));
  }

  Formula event(std::size_t at) {
    std::string name(c_.ident("transformer name"));
    if (!scope_.transformers) c_.fail_at(at, "a declared transformer");
    auto it = scope_.transformers->find(name);
    if (it == scope_.transformers->end()) c_.fail_at(at, "a declared transformer (unknown '" + name + "')");
    const Transformer& x = *it->second;
    c_.expect(":");
    c_.expect("{");
    std::vector<Atom> point;
    if (!c_.match("}")) {
      do {
        const std::size_t p_at = c_.pos();
        std::string_view e = c_.ident("event atom");
        auto a = scope_.signature->find(e);
        if (!a || std::find(x.event_atoms.begin(), x.event_atoms.end(), *a) == x.event_atoms.end())
          c_.fail_at(p_at, "an event atom of transformer '" + name + "'");
        point.push_back(*a);
      } while (c_.match(","));
      c_.expect("}");
    }
    c_.expect("]");
    return Formula::event(Event{it->second, State(point)}, unary());
  }

  Cursor& c_;
  const FormulaScope& scope_;
  bool boolean_only_;
};

Formula parse_whole(std::string_view text, const FormulaScope& scope, bool boolean_only) {
  Cursor c(text, true);
  FormulaParser p(c, scope, boolean_only);
  Formula f = p.formula();
  if (!c.at_end()) c.fail("end of formula");
  return f;
}

void print_rec(const Formula& f, const Signature& sig, const AgentSet& agents, bool operand, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::top:
      out += "Top";
      return;
    case K::bottom:
      out += "Bot";
      return;
    case K::atom:
      out += sig.name(f.atom());
      return;
    case K::negation:
      out += "~";
      print_rec(f.body(), sig, agents, true, out);
      return;
    case K::knows:
      out += "K " + agents.name(f.agent()) + " ";
      print_rec(f.body(), sig, agents, true, out);
      return;
    case K::announce:
      out += "[! ";
      print_rec(f.announced(), sig, agents, false, out);
      out += "] ";
      print_rec(f.body(), sig, agents, true, out);
      return;
    case K::event: {
      out += "[" + f.event().transformer->name + ":{";
      bool first = true;
      for (const Atom& a : f.event().point) {
        if (!first) out += ",";
        first = false;
        out += sig.name(a);
      }
      out += "}] ";
      print_rec(f.body(), sig, agents, true, out);
      return;
    }
    case K::conjunction:
      if (operand) out += "(";
      print_rec(f.child(0), sig, agents, false, out);
      out += " & ";
      print_rec(f.child(1), sig, agents, true, out);
      if (operand) out += ")";
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const FormulaScope& scope) { return parse_whole(text, scope, false); }

Formula parse_bool_formula(std::string_view text, const FormulaScope& scope) {
  return parse_whole(text, scope, true);
}

std::string print_formula(const Formula& f, const Signature& sig, const AgentSet& agents) {
  std::string out;
  print_rec(f, sig, agents, false, out);
  return out;
}

// --------------------------------------------------------------------------
// Model files.

namespace {

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : c_(text, false) {}

  Model run() {
    model_.signature = std::make_shared<Signature>();
    for (;;) {
      c_.skip_space();
      if (c_.at_end()) break;
      if (c_.match("\n") || c_.match(";")) continue;
      statement();
    }
    return finish();
  }

 private:
  void end_statement(bool in_block) {
    c_.skip_space();
    if (c_.at_end()) return;
    char ch = c_.peek();
    if (ch == '\n' || ch == ';') {
      c_.set_pos(c_.pos() + 1);
      return;
    }
    if (in_block && ch == '}') return;
    c_.fail(in_block ? "end of item (newline, ';' or '}')" : "end of statement (newline or ';')");
  }

  void require_vocab(std::size_t at) const {
    if (!model_.manager) c_.fail_at(at, "a 'vocab' statement before this one");
  }

  Atom vocabulary_atom() {
    const std::size_t at = c_.pos();
    std::string_view name = c_.ident("atom");
    auto a = model_.signature->find(name);
    if (!a || !vocab_.contains(*a)) c_.fail_at(at, "an atom of the vocabulary (unknown atom '" + std::string(name) + "')");
    return *a;
  }

  bool statement_done() {
    c_.skip_space();
    char ch = c_.peek();
    return c_.at_end() || ch == '\n' || ch == ';' || ch == '}';
  }

  FormulaScope scope(bool primes, const Transformer* within) {
    FormulaScope s;
    s.signature = model_.signature;
    s.agents = &model_.agents;
    s.transformers = &model_.transformers;
    s.allow_primes = primes;
    s.allowed = [this, within](const Atom& a) {
      if (vocab_.contains(a)) return true;
      return within && std::find(within->event_atoms.begin(), within->event_atoms.end(), a) != within->event_atoms.end();
    };
    return s;
  }

  Formula formula(const FormulaScope& scope, bool boolean_only) {
    FormulaParser p(c_, scope, boolean_only);
    return p.formula();
  }

  std::size_t declare_agent(std::size_t at, std::string_view name) {
    if (model_.agents.find(name)) c_.fail_at(at, "one observation statement per agent ('" + std::string(name) + "' repeats)");
    return model_.agents.add(name);
  }

  void statement() {
    const std::size_t at = c_.pos();
    std::string_view word = c_.ident("a statement keyword");
    if (word == "vocab") {
      if (model_.manager) c_.fail_at(at, "a single 'vocab' statement");
      while (!statement_done()) {
        const std::size_t a_at = c_.pos();
        std::string_view name = c_.ident("atom");
        if (reserved(name)) c_.fail_at(a_at, "an atom name (reserved word)");
        if (model_.signature->find(name)) c_.fail_at(a_at, "a fresh atom name ('" + std::string(name) + "' repeats)");
        vocab_.add(model_.signature->intern(name));
      }
      model_.manager = std::make_shared<Manager>(VarOrder::interleaved(vocab_.atoms()));
      law_ = model_.manager->top();
    } else if (word == "law") {
      require_vocab(at);
      law_ = compile_bool(formula(scope(false, nullptr), true), *model_.manager);
    } else if (word == "obs") {
      require_vocab(at);
      const std::size_t a_at = c_.pos();
      std::size_t i = declare_agent(a_at, c_.ident("agent name"));
      c_.expect(":");
      std::vector<Atom> observed;
      while (!statement_done()) {
        Atom a = vocabulary_atom();
        if (std::find(observed.begin(), observed.end(), a) == observed.end()) observed.push_back(a);
      }
      observables_.resize(i + 1);
      observables_[i] = std::move(observed);
      saw_obs_ = true;
      if (saw_omega_) c_.fail_at(at, "either 'obs' or 'omega' statements, not both");
    } else if (word == "omega") {
      require_vocab(at);
      const std::size_t a_at = c_.pos();
      std::size_t i = declare_agent(a_at, c_.ident("agent name"));
      c_.expect(":");
      Formula f = formula(scope(true, nullptr), true);
      observation_.resize(i + 1);
      observation_[i] = compile_bool(f, *model_.manager);
      saw_omega_ = true;
      if (saw_obs_) c_.fail_at(at, "either 'obs' or 'omega' statements, not both");
    } else if (word == "state") {
      require_vocab(at);
      std::vector<Atom> atoms;
      while (!statement_done()) atoms.push_back(vocabulary_atom());
      model_.designated = State(atoms);
    } else if (word == "transformer") {
      require_vocab(at);
      transformer();
      return;
    } else {
      c_.fail_at(at, "a statement keyword (vocab, law, obs, omega, state, transformer)");
    }
    end_statement(false);
  }

  void transformer() {
    const std::size_t n_at = c_.pos();
    std::string name(c_.ident("transformer name"));
    if (model_.transformers.count(name)) c_.fail_at(n_at, "a fresh transformer name");
    auto x = std::make_shared<Transformer>();
    x->name = name;
    x->manager = model_.manager;
    c_.expect("{");
    bool seen_law = false;
    for (;;) {
      c_.skip_space();
      if (c_.match("}")) break;
      if (c_.at_end()) c_.fail("'}'");
      if (c_.match("\n") || c_.match(";")) continue;
      const std::size_t at = c_.pos();
      std::string_view word = c_.ident("a transformer item (vplus, thetaplus, minus, omegaplus)");
      if (word == "vplus") {
        while (!statement_done()) {
          const std::size_t e_at = c_.pos();
          std::string_view e = c_.ident("event atom");
          if (reserved(e)) c_.fail_at(e_at, "an event atom name (reserved word)");
          auto existing = model_.signature->find(e);
          if (existing && existing->provenance == Provenance::original)
            c_.fail_at(e_at, "an event atom disjoint from the vocabulary ('" + std::string(e) + "' is a state atom)");
          if (existing) c_.fail_at(e_at, "a fresh event atom ('" + std::string(e) + "' is already declared)");
          Atom a = model_.signature->intern(e, Provenance::event);
          model_.manager->declare(a);
          x->event_atoms.push_back(a);
        }
      } else if (word == "thetaplus") {
        if (seen_law) c_.fail_at(at, "a single 'thetaplus' item");
        seen_law = true;
        x->event_law = formula(scope(false, x.get()), false);
      } else if (word == "minus") {
        Atom q = vocabulary_atom();
        if (x->change_law.count(q)) c_.fail_at(at, "one 'minus' item per atom");
        c_.expect(":");
        x->modified.push_back(q);
        x->change_law.emplace(q, formula(scope(false, x.get()), true));
      } else if (word == "omegaplus") {
        const std::size_t a_at = c_.pos();
        std::string_view agent = c_.ident("agent name");
        auto i = model_.agents.find(agent);
        if (!i) c_.fail_at(a_at, "an agent declared by an earlier 'obs' or 'omega' statement");
        c_.expect(":");
        Formula f = formula(scope(true, x.get()), true);
        if (x->event_observation.size() <= *i) x->event_observation.resize(*i + 1, model_.manager->top());
        x->event_observation[*i] = model_.manager->conj(x->event_observation[*i], compile_bool(f, *model_.manager));
      } else {
        c_.fail_at(at, "a transformer item (vplus, thetaplus, minus, omegaplus)");
      }
      end_statement(true);
    }
    std::sort(x->modified.begin(), x->modified.end());
    model_.transformers.emplace(name, std::move(x));
    end_statement(false);
  }

  Model finish() {
    if (!model_.manager) c_.fail_at(0, "a 'vocab' statement");
    for (auto& [name, x] : model_.transformers) {
      auto& mutable_x = const_cast<Transformer&>(*x);
      mutable_x.event_observation.resize(model_.agents.size(), model_.manager->top());
    }
    if (saw_omega_) {
      BeliefStructure b;
      b.manager = model_.manager;
      b.vocabulary = vocab_;
      b.law = law_;
      b.observation = observation_;
      model_.structure = b;
    } else {
      KnowledgeStructure k;
      k.manager = model_.manager;
      k.vocabulary = vocab_;
      k.law = law_;
      k.observables = observables_;
      model_.structure = k;
    }
    return std::move(model_);
  }

  Cursor c_;
  Model model_;
  Vocabulary vocab_;
  Bdd law_;
  std::vector<std::vector<Atom>> observables_;
  std::vector<Bdd> observation_;
  bool saw_obs_ = false;
  bool saw_omega_ = false;
};

}  // namespace

Model parse_model(std::string_view text) {
  ModelParser p(text);
  return p.run();
}

// --------------------------------------------------------------------------
// Programs.

namespace {

class ProgramParser {
 public:
  ProgramParser(std::string_view text, SignaturePtr sig) : c_(text, true) {
    source_.signature = sig ? std::move(sig) : std::make_shared<Signature>();
    scope_.signature = source_.signature;
    scope_.declare_unknown = true;
    scope_.allowed = [this](const Atom& a) {
      note(a);
      return true;
    };
  }

  ProgramSource run() {
    MentalProgram p = seq();
    if (!c_.at_end()) c_.fail("end of program");
    source_.program = p;
    return std::move(source_);
  }

 private:
  void note(const Atom& a) {
    if (std::find(source_.atoms.begin(), source_.atoms.end(), a) == source_.atoms.end()) source_.atoms.push_back(a);
  }

  MentalProgram seq() {
    MentalProgram p = par();
    while (c_.match(";")) p = MentalProgram::sequence(p, par());
    return p;
  }

  MentalProgram par() {
    MentalProgram p = atomic();
    for (;;) {
      if (c_.match_word("U")) {
        p = MentalProgram::choice(p, atomic());
      } else if (c_.match_word("cap") || c_.match("\xE2\x88\xA9")) {
        p = MentalProgram::intersection(p, atomic());
      } else {
        return p;
      }
    }
  }

  MentalProgram atomic() {
    if (c_.match("(")) {
      MentalProgram p = seq();
      c_.expect(")");
      return p;
    }
    if (c_.match("?")) {
      FormulaParser f(c_, scope_, true);
      return MentalProgram::test(f.formula());
    }
    const std::size_t at = c_.pos();
    if (!c_.at_ident()) c_.fail("a program (assignment, '?' test or '(')");
    std::string_view name = c_.ident("atom");
    if (reserved(name) || name == "U" || name == "cap") c_.fail_at(at, "an atom name (reserved word)");
    Atom a = source_.signature->intern(name);
    note(a);
    c_.expect("<-");
    if (c_.match_word("T")) return MentalProgram::assign(a, true);
    if (c_.match_word("F")) return MentalProgram::assign(a, false);
    c_.fail("'T' or 'F'");
  }

  Cursor c_;
  ProgramSource source_{MentalProgram::test(Formula::top()), nullptr, {}};
  FormulaScope scope_;
};

void print_program_rec(const MentalProgram& pi, const Signature& sig, int level, std::string& out) {
  static const AgentSet no_agents;
  switch (pi.kind()) {
    case MentalProgram::Kind::assign:
      out += sig.name(pi.atom()) + (pi.value() ? " <- T" : " <- F");
      return;
    case MentalProgram::Kind::test:
      out += "? ";
      out += pi.condition().is(Formula::Kind::conjunction) ? "(" + print_formula(pi.condition(), sig, no_agents) + ")"
                                                          : print_formula(pi.condition(), sig, no_agents);
      return;
    case MentalProgram::Kind::sequence:
      if (level >= 1) out += "(";
      print_program_rec(pi.left(), sig, 0, out);
      out += " ; ";
      print_program_rec(pi.right(), sig, 1, out);
      if (level >= 1) out += ")";
      return;
    case MentalProgram::Kind::choice:
    case MentalProgram::Kind::intersection:
      if (level >= 2) out += "(";
      print_program_rec(pi.left(), sig, 1, out);
      out += pi.is(MentalProgram::Kind::choice) ? " U " : " cap ";
      print_program_rec(pi.right(), sig, 2, out);
      if (level >= 2) out += ")";
      return;
  }
}

}  // namespace

ProgramSource parse_program(std::string_view text, SignaturePtr sig) {
  ProgramParser p(text, std::move(sig));
  return p.run();
}

std::string print_program(const MentalProgram& pi, const Signature& sig) {
  std::string out;
  print_program_rec(pi, sig, 0, out);
  return out;
}

// --------------------------------------------------------------------------
// QDIMACS.

PrenexQBF parse_qdimacs(std::string_view text) {
  Cursor c(text, false);
  PrenexQBF q;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::size_t line_start = 0;

  auto read_int = [&](std::string_view token, std::size_t at) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) c.fail_at(at, "an integer");
    return v;
  };

  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.emplace_back(line.substr(start, i - start), line_start + start);
    }
    const std::size_t here = line_start;
    line_start = line_end + 1;
    if (tokens.empty() || tokens[0].first == "c" || tokens[0].first.starts_with("c")) continue;
    if (tokens[0].first == "p") {
      if (header) c.fail_at(here, "a single problem line");
      if (tokens.size() != 4 || tokens[1].first != "cnf") c.fail_at(here, "'p cnf <variables> <clauses>'");
      long long nv = read_int(tokens[2].first, tokens[2].second);
      long long nc = read_int(tokens[3].first, tokens[3].second);
      if (nv < 0 || nc < 0 || nv > 1000000) c.fail_at(tokens[2].second, "nonnegative counts");
      q.variables = static_cast<std::uint32_t>(nv);
      declared_clauses = static_cast<std::size_t>(nc);
      header = true;
      continue;
    }
    if (!header) c.fail_at(here, "the problem line 'p cnf ...' first");
    bool quantifier = tokens[0].first == "a" || tokens[0].first == "e";
    std::size_t first = quantifier ? 1 : 0;
    if (read_int(tokens.back().first, tokens.back().second) != 0 || tokens.size() == first)
      c.fail_at(tokens.back().second, "a line terminated by 0");
    std::vector<int> values;
    for (std::size_t i = first; i + 1 < tokens.size(); ++i) {
      long long v = read_int(tokens[i].first, tokens[i].second);
      if (v == 0) c.fail_at(tokens[i].second, "0 only at the end of the line");
      long long mag = v < 0 ? -v : v;
      if (mag > q.variables) c.fail_at(tokens[i].second, "a variable between 1 and " + std::to_string(q.variables));
      if (quantifier && v < 0) c.fail_at(tokens[i].second, "a positive variable in a quantifier line");
      values.push_back(static_cast<int>(v));
    }
    if (quantifier) {
      if (!q.clauses.empty()) c.fail_at(here, "quantifier lines before the clauses");
      QbfBlock b;
      b.universal = tokens[0].first == "a";
      for (int v : values) b.variables.push_back(static_cast<std::uint32_t>(v));
      q.blocks.push_back(std::move(b));
    } else {
      q.clauses.push_back(std::move(values));
    }
  }
  if (!header) c.fail_at(text.size(), "the problem line 'p cnf ...'");
  if (q.clauses.size() != declared_clauses)
    c.fail_at(text.size(), std::to_string(declared_clauses) + " clauses (found " + std::to_string(q.clauses.size()) + ")");
  try {
    require_closed(q);
  } catch (const LogicError& e) {
    c.fail_at(0, std::string("a closed formula (") + e.what() + ")");
  }
  return q;
}

std::string print_qdimacs(const PrenexQBF& q) {
  std::ostringstream os;
  os << "p cnf " << q.variables << ' ' << q.clauses.size() << '\n';
  for (const auto& b : q.blocks) {
    os << (b.universal ? 'a' : 'e');
    for (auto v : b.variables) os << ' ' << v;
    os << " 0\n";
  }
  for (const auto& clause : q.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

std::string print_knowledge_model(const Signature& sig, const AgentSet& agents, std::span<const Atom> vocabulary,
                                  const Formula& law, const std::vector<std::vector<Atom>>& observables) {
  std::ostringstream os;
  os << "vocab";
  for (const Atom& p : vocabulary) os << ' ' << sig.name(p);
  os << "\nlaw " << print_formula(law, sig, agents) << '\n';
  for (std::size_t i = 0; i < observables.size(); ++i) {
    os << "obs " << agents.name(i) << ':';
    for (const Atom& p : observables[i]) os << ' ' << sig.name(p);
    os << '\n';
  }
  return os.str();
}

Bdd parse_dump(std::string_view text, Manager& mgr, const std::function<Atom(std::string_view)>& atom) {
  Cursor c(text, false);
  std::map<std::string, Bdd, std::less<>> nodes{{"T", mgr.top()}, {"F", mgr.bottom()}};
  auto line_tokens = [&]() {
    std::vector<std::pair<std::string, std::size_t>> tokens;
    c.skip_space();
    while (!c.at_end() && c.peek() != '\n') {
      std::size_t at = c.pos();
      std::string token;
      auto t = c.text();
      std::size_t i = at;
      while (i < t.size() && !std::isspace(static_cast<unsigned char>(t[i]))) token += t[i++];
      c.set_pos(i);
      tokens.emplace_back(std::move(token), at);
      c.skip_space();
    }
    if (!c.at_end()) c.set_pos(c.pos() + 1);
    return tokens;
  };
  auto lookup = [&](const std::pair<std::string, std::size_t>& tok) {
    auto it = nodes.find(tok.first);
    if (it == nodes.end()) c.fail_at(tok.second, "a node id defined on an earlier line, T or F");
    return it->second;
  };
  std::vector<std::pair<std::string, std::size_t>> root;
  for (;;) {
    if (c.at_end()) c.fail("'root <id>'");
    root = line_tokens();
    if (!root.empty()) break;
  }
  if (root.size() != 2 || root[0].first != "root") c.fail_at(root[0].second, "'root <id>'");
  while (!c.at_end()) {
    auto tokens = line_tokens();
    if (tokens.empty()) continue;
    if (tokens.size() != 4) c.fail_at(tokens[0].second, "'<id> <atom> <else> <then>'");
    if (nodes.count(tokens[0].first)) c.fail_at(tokens[0].second, "a fresh node id");
    Atom a;
    try {
      a = atom(tokens[1].first);
    } catch (const std::exception& e) {
      c.fail_at(tokens[1].second, std::string("a known atom (") + e.what() + ")");
    }
    Bdd lo = lookup(tokens[2]);
    Bdd hi = lookup(tokens[3]);
    nodes.emplace(tokens[0].first, mgr.ite(mgr.var(a), hi, lo));
  }
  return lookup(root[1]);
}

}  // namespace delsym
