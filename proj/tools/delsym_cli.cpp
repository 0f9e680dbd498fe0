#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "delsym/delsym.h"
#include "json.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailed = 1;
constexpr int kUsage = 2;
constexpr int kInput = 3;

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError{"cannot write '" + path.string() + "'"};
}

void require(delsym_status s) {
  if (s != DELSYM_OK) throw InputError{delsym_last_error()};
}

/// Owns a string handed out by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { delsym_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Common {
  std::string format = "text";
  bool deterministic = false;
};

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string model;
  std::optional<std::string> state;
  std::string formula;
  std::string formula_file;
  std::string algo = "pspace";
  std::string expect;
  bool stats = false;
  unsigned jobs = 1;
};

int run_check(const CheckArgs& a, const Common& c) {
  Clock clock;
  std::string text = read_file(a.model);
  std::string formula = a.formula_file.empty() ? a.formula : read_file(a.formula_file);
  while (!formula.empty() && (formula.back() == '\n' || formula.back() == '\r')) formula.pop_back();
  delsym_algo algo = a.algo == "bdd" ? DELSYM_ALGO_BDD : a.algo == "naive" ? DELSYM_ALGO_NAIVE : DELSYM_ALGO_PSPACE;

  delsym_model* model = nullptr;
  require(delsym_model_parse(text.c_str(), &model));
  std::unique_ptr<delsym_model, void (*)(delsym_model*)> owner(model, delsym_model_free);
  int result = 0;
  delsym_stats stats{};
  require(delsym_model_check(model, a.state ? a.state->c_str() : nullptr, formula.c_str(), algo, a.jobs, &result,
                             &stats));
  const bool value = result != 0;
  int code = kOk;
  if (!a.expect.empty() && value != (a.expect == "true")) code = kExpectationFailed;

  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "check";
    j["algo"] = a.algo;
    j["result"] = value;
    if (a.stats) j["stats"] = {{"depth", stats.depth}, {"valuations", stats.valuations}, {"peak_nodes", stats.peak_nodes}};
    if (!c.deterministic) j["wall_ms"] = clock.ms();
    j["exit_code"] = code;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << (value ? "true" : "false") << '\n';
    if (a.stats) {
      std::cout << "depth=" << stats.depth << " valuations=" << stats.valuations << " peak_nodes=" << stats.peak_nodes
                << '\n';
      if (!c.deterministic) std::cout << "wall_ms=" << fixed(clock.ms()) << '\n';
    }
  }
  if (code == kExpectationFailed) std::cerr << "result differs from --expect " << a.expect << '\n';
  return code;
}

// ---------------------------------------------------------------------------

struct TranslateArgs {
  std::string direction;
  std::string in;
  std::string vocab;
  std::string order = "interleaved";
  std::string out;
  bool verify = false;
};

int run_translate(const TranslateArgs& a, const Common& c) {
  Clock clock;
  std::string input = read_file(a.in);
  delsym_order order = a.order == "listed" ? DELSYM_ORDER_LISTED : DELSYM_ORDER_INTERLEAVED;
  LibString produced;
  std::uint64_t measure = 0;
  std::string program_text;
  if (a.direction == "mp2bdd") {
    require(delsym_translate_mp_to_bdd(input.c_str(), a.vocab.c_str(), order, &produced.p, &measure));
    program_text = input;
  } else {
    require(delsym_translate_bdd_to_mp(input.c_str(), a.vocab.c_str(), order, &produced.p, &measure));
    program_text = produced.str();
  }
  std::string body = produced.str();
  if (a.direction == "bdd2mp") body += '\n';
  int code = kOk;
  std::optional<bool> verified;
  if (a.verify) {
    int equal = 0;
    require(delsym_translate_verify(program_text.c_str(), a.vocab.c_str(), &equal));
    verified = equal != 0;
    if (!*verified) code = kExpectationFailed;
  }
  if (!a.out.empty()) write_file(a.out, body);
  const char* key = a.direction == "mp2bdd" ? "nodes" : "length";
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "translate";
    j["direction"] = a.direction;
    j[key] = measure;
    if (a.out.empty()) j["output"] = body;
    if (verified) j["verified"] = *verified;
    if (!c.deterministic) j["wall_ms"] = clock.ms();
    j["exit_code"] = code;
    std::cout << j.dump() << '\n';
  } else {
    if (a.out.empty()) std::cout << body;
    std::cout << key << '=' << measure << '\n';
    if (verified) std::cout << "verify=" << (*verified ? "ok" : "mismatch") << '\n';
  }
  return code;
}

// ---------------------------------------------------------------------------

struct QbfArgs {
  std::string in;
  std::string emit;
  bool check = false;
};

int run_qbf(const QbfArgs& a, const Common& c) {
  Clock clock;
  std::string text = read_file(a.in);
  delsym_qbf_report r{};
  require(delsym_qbf_run(text.c_str(), &r));
  bool ok = r.reduction == r.brute;
  if (a.check) ok = ok && r.belief_reduction == r.brute && r.formula_length <= r.qbf_length + 2;
  if (!a.emit.empty()) {
    LibString model, formula;
    require(delsym_qbf_instance(text.c_str(), &model.p, &formula.p));
    std::filesystem::create_directories(a.emit);
    write_file(std::filesystem::path(a.emit) / "instance.epi", model.str());
    write_file(std::filesystem::path(a.emit) / "instance.formula", formula.str() + "\n");
  }
  auto tf = [](int v) { return v ? "true" : "false"; };
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "qbf";
    j["reduction"] = r.reduction != 0;
    j["brute"] = r.brute != 0;
    if (a.check) {
      j["belief"] = r.belief_reduction != 0;
      j["formula_length"] = r.formula_length;
      j["qbf_length"] = r.qbf_length;
    }
    j["ok"] = ok;
    if (!c.deterministic) j["wall_ms"] = clock.ms();
    j["exit_code"] = ok ? kOk : kExpectationFailed;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "reduction=" << tf(r.reduction) << " brute=" << tf(r.brute) << ' ' << (ok ? "ok" : "mismatch") << '\n';
    if (a.check)
      std::cout << "belief=" << tf(r.belief_reduction) << " formula_length=" << r.formula_length
                << " qbf_length=" << r.qbf_length << '\n';
  }
  return ok ? kOk : kExpectationFailed;
}

// ---------------------------------------------------------------------------

void emit_rows(const Common& c, const std::string& bench, const std::vector<nlohmann::ordered_json>& rows) {
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "bench";
    j["bench"] = bench;
    j["rows"] = rows;
    std::cout << j.dump() << '\n';
    return;
  }
  for (const auto& row : rows) {
    bool first = true;
    for (const auto& [k, v] : row.items()) {
      if (!first) std::cout << ' ';
      first = false;
      std::cout << k << '=';
      if (v.is_boolean())
        std::cout << (v.get<bool>() ? "true" : "false");
      else if (v.is_number_float())
        std::cout << fixed(v.get<double>());
      else
        std::cout << v.dump();
    }
    std::cout << '\n';
  }
}

int run_blowup(unsigned n, const Common& c) {
  std::vector<nlohmann::ordered_json> rows;
  bool all = true;
  for (unsigned k = 1; k <= n; ++k) {
    Clock clock;
    delsym_blowup_row r{};
    require(delsym_bench_blowup(k, &r));
    bool ok = r.adversarial_nodes >= r.bound;
    all = all && ok;
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["nodes"] = r.adversarial_nodes;
    row["bound"] = r.bound;
    row["contrast_nodes"] = r.contrast_nodes;
    row["program_length"] = r.program_length;
    row["ok"] = ok;
    if (!c.deterministic) row["wall_ms"] = clock.ms();
    rows.push_back(std::move(row));
  }
  emit_rows(c, "blowup", rows);
  return all ? kOk : kExpectationFailed;
}

int run_tradeoff(unsigned depth, const Common& c) {
  std::vector<nlohmann::ordered_json> rows;
  bool all = true;
  for (unsigned d = 1; d <= depth; ++d) {
    Clock clock;
    delsym_tradeoff_row r{};
    require(delsym_bench_tradeoff(d, &r));
    all = all && r.pspace_value == r.bdd_value;
    nlohmann::ordered_json row;
    row["depth"] = r.depth;
    row["length"] = r.formula_length;
    row["value"] = r.pspace_value != 0;
    row["pspace_depth"] = r.pspace.depth;
    row["pspace_valuations"] = r.pspace.valuations;
    row["pspace_peak_nodes"] = r.pspace.peak_nodes;
    row["bdd_peak_nodes"] = r.bdd_peak_nodes;
    row["agree"] = r.pspace_value == r.bdd_value;
    if (!c.deterministic) row["wall_ms"] = clock.ms();
    rows.push_back(std::move(row));
  }
  emit_rows(c, "tradeoff", rows);
  return all ? kOk : kExpectationFailed;
}

int run_grid(unsigned v, const Common& c) {
  std::vector<nlohmann::ordered_json> rows;
  for (unsigned k = 1; k <= v; ++k) {
    Clock clock;
    delsym_grid_row r{};
    require(delsym_bench_grid(k, &r));
    nlohmann::ordered_json row;
    row["v"] = r.v;
    row["nodes"] = r.nodes;
    row["pairs"] = r.pairs;
    row["tau_length"] = r.tau_length;
    row["enumerated_length"] = r.enumerated_length;
    if (!c.deterministic) row["wall_ms"] = clock.ms();
    rows.push_back(std::move(row));
  }
  emit_rows(c, "grid", rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic model checking for epistemic logics over decision-diagram structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--deterministic", common.deterministic, "Omit wall-clock times");

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check", "Model check a formula at a state");
  cmd_check->add_option("--model", check.model, "Model file (.epi)")->required();
  cmd_check->add_option("--state", check.state, "Atoms true at the state, comma separated");
  auto* f_text = cmd_check->add_option("--formula", check.formula, "Formula text");
  auto* f_file = cmd_check->add_option("--formula-file", check.formula_file, "File holding the formula");
  f_text->excludes(f_file);
  cmd_check->add_option("--algo", check.algo, "pspace, bdd or naive")->check(CLI::IsMember({"pspace", "bdd", "naive"}));
  cmd_check->add_option("--expect", check.expect, "Exit 1 unless the result is this")
      ->check(CLI::IsMember({"true", "false"}));
  cmd_check->add_flag("--stats", check.stats, "Print depth, valuations and allocated nodes");
  cmd_check->add_option("--jobs", check.jobs, "Worker threads for the outer knowledge case")
      ->check(CLI::Range(1u, 256u));

  TranslateArgs translate;
  auto* cmd_translate = app.add_subcommand("translate", "Translate between programs and relation diagrams");
  cmd_translate->add_option("direction", translate.direction, "mp2bdd or bdd2mp")
      ->required()
      ->check(CLI::IsMember({"mp2bdd", "bdd2mp"}));
  cmd_translate->add_option("--in", translate.in, "Input file (.mp or diagram dump)")->required();
  cmd_translate->add_option("--vocab", translate.vocab, "Vocabulary, comma separated")->required();
  cmd_translate->add_option("--order", translate.order, "Variable order")
      ->check(CLI::IsMember({"interleaved", "listed"}));
  cmd_translate->add_option("--out", translate.out, "Output file (default: standard output)");
  cmd_translate->add_flag("--verify", translate.verify, "Check that the round trip preserves the relation");

  QbfArgs qbf;
  auto* cmd_qbf = app.add_subcommand("qbf", "Decide a QBF by reduction and by brute force");
  cmd_qbf->add_option("--in", qbf.in, "QDIMACS file")->required();
  cmd_qbf->add_option("--emit-instance", qbf.emit, "Directory for the generated model and formula");
  cmd_qbf->add_flag("--check", qbf.check, "Also check the belief variant and the length bound");

  auto* cmd_bench = app.add_subcommand("bench", "Benchmarks");
  cmd_bench->require_subcommand(1);
  cmd_bench->fallthrough();
  unsigned blowup_n = 4, tradeoff_depth = 6, grid_v = 6;
  auto* b_blowup = cmd_bench->add_subcommand("blowup", "Node counts of the order-sensitive witness");
  b_blowup->add_option("--n", blowup_n, "Largest witness size")->check(CLI::Range(1u, 12u));
  auto* b_tradeoff = cmd_bench->add_subcommand("tradeoff", "Nested announcements, pspace against translation");
  b_tradeoff->add_option("--depth", tradeoff_depth, "Largest nesting depth")->check(CLI::Range(1u, 16u));
  auto* b_grid = cmd_bench->add_subcommand("grid", "Half-weight identity relation");
  b_grid->add_option("--v", grid_v, "Largest vocabulary size")->check(CLI::Range(1u, 24u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (cmd_check->parsed() && check.formula_file.empty() && f_text->count() == 0) {
    std::cerr << "check: one of --formula or --formula-file is required\n";
    return kUsage;
  }

  try {
    if (cmd_check->parsed()) return run_check(check, common);
    if (cmd_translate->parsed()) return run_translate(translate, common);
    if (cmd_qbf->parsed()) return run_qbf(qbf, common);
    if (b_blowup->parsed()) return run_blowup(blowup_n, common);
    if (b_tradeoff->parsed()) return run_tradeoff(tradeoff_depth, common);
    if (b_grid->parsed()) return run_grid(grid_v, common);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
