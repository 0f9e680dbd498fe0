#include <cstring>
#include <string>

#include "delsym/delsym.h"
#include "doctest.h"

namespace {

const char* kModel =
    "vocab p q\n"
    "law Top\n"
    "omega A: q'\n"
    "omega B: p' & (q <-> q')\n"
    "state p q\n";

std::string take(char* s) {
  std::string out = s ? s : "";
  delsym_string_free(s);
  return out;
}

struct ModelHandle {
  delsym_model* m = nullptr;
  ~ModelHandle() { delsym_model_free(m); }
};

}  // namespace

TEST_CASE("parsing and checking through the C interface") {
  ModelHandle h;
  REQUIRE(delsym_model_parse(kModel, &h.m) == DELSYM_OK);
  int result = -1;
  delsym_stats st{};
  for (delsym_algo a : {DELSYM_ALGO_PSPACE, DELSYM_ALGO_BDD, DELSYM_ALGO_NAIVE}) {
    CHECK(delsym_model_check(h.m, "p,q", "K B q", a, 1, &result, &st) == DELSYM_OK);
    CHECK(result == 1);
    CHECK(delsym_model_check(h.m, nullptr, "K A p", a, 2, &result, nullptr) == DELSYM_OK);
    CHECK(result == 0);
    CHECK(delsym_model_check(h.m, "", "K A q", a, 1, &result, nullptr) == DELSYM_OK);
    CHECK(result == 1);
  }
  CHECK(delsym_model_check(h.m, "p q", "K B q", DELSYM_ALGO_PSPACE, 1, &result, &st) == DELSYM_OK);
  CHECK(st.depth >= 1);
  CHECK(st.peak_nodes == 0);

  std::uint64_t len = 0;
  CHECK(delsym_formula_length(h.m, "K A (p & q)", &len) == DELSYM_OK);
  CHECK(len == 4);
  char* summary = nullptr;
  CHECK(delsym_model_summary(h.m, &summary) == DELSYM_OK);
  CHECK(take(summary).find("kind belief") == 0);
}

TEST_CASE("errors are reported with codes and messages") {
  ModelHandle h;
  CHECK(delsym_model_parse("vocab p\nlaw p &\n", &h.m) == DELSYM_ERR_PARSE);
  CHECK(h.m == nullptr);
  CHECK(std::string(delsym_last_error()).find("2:") == 0);
  CHECK(delsym_model_parse(nullptr, &h.m) == DELSYM_ERR_ARGUMENT);
  REQUIRE(delsym_model_parse(kModel, &h.m) == DELSYM_OK);
  int result = 0;
  CHECK(delsym_model_check(h.m, "p", "K B (q", DELSYM_ALGO_PSPACE, 1, &result, nullptr) == DELSYM_ERR_PARSE);
  CHECK(delsym_model_check(h.m, "r", "q", DELSYM_ALGO_PSPACE, 1, &result, nullptr) == DELSYM_ERR_INPUT);
  CHECK(delsym_model_check(h.m, "p", "q", static_cast<delsym_algo>(9), 1, &result, nullptr) == DELSYM_ERR_ARGUMENT);
  CHECK(delsym_model_check(h.m, "p", "q", DELSYM_ALGO_PSPACE, 1, nullptr, nullptr) == DELSYM_ERR_ARGUMENT);
  CHECK(delsym_model_parse(kModel, &h.m) == DELSYM_OK);
  CHECK(std::strlen(delsym_last_error()) == 0);
}

TEST_CASE("translations through the C interface") {
  char* dump = nullptr;
  std::uint64_t nodes = 0;
  REQUIRE(delsym_translate_mp_to_bdd("q <- T", "p q", DELSYM_ORDER_INTERLEAVED, &dump, &nodes) == DELSYM_OK);
  std::string text = take(dump);
  CHECK(text.find("root ") == 0);
  CHECK(nodes == 6);

  char* program = nullptr;
  std::uint64_t length = 0;
  REQUIRE(delsym_translate_bdd_to_mp("root F\n", "p q", DELSYM_ORDER_INTERLEAVED, &program, &length) == DELSYM_OK);
  CHECK(take(program) == "? Bot");
  CHECK(length == 1);
  REQUIRE(delsym_translate_bdd_to_mp(text.c_str(), "p,q", DELSYM_ORDER_INTERLEAVED, &program, &length) == DELSYM_OK);
  int equal = 0;
  std::string back = take(program);
  CHECK(delsym_translate_verify(back.c_str(), "p q", &equal) == DELSYM_OK);
  CHECK(equal == 1);
  CHECK(delsym_translate_bdd_to_mp(text.c_str(), "p q", DELSYM_ORDER_LISTED, &program, &length) == DELSYM_ERR_INPUT);
  CHECK(delsym_translate_mp_to_bdd("r <- T", "p q", DELSYM_ORDER_INTERLEAVED, &dump, &nodes) == DELSYM_ERR_INPUT);
  CHECK(delsym_translate_verify("(p <- F U p <- T) ; q <- T", "p q", &equal) == DELSYM_OK);
  CHECK(equal == 1);
}

TEST_CASE("quantified formulas and benchmarks through the C interface") {
  delsym_qbf_report r{};
  REQUIRE(delsym_qbf_run("p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n", &r) == DELSYM_OK);
  CHECK(r.brute == 1);
  CHECK(r.reduction == 1);
  CHECK(r.belief_reduction == 1);
  CHECK(r.formula_length <= r.qbf_length + 2);
  REQUIRE(delsym_qbf_run("p cnf 2 2\ne 1 0\na 2 0\n1 -2 0\n-1 2 0\n", &r) == DELSYM_OK);
  CHECK(r.brute == 0);
  CHECK(r.reduction == 0);
  CHECK(delsym_qbf_run("p cnf 2 1\n1 2 0\n", &r) != DELSYM_OK);

  char *model = nullptr, *formula = nullptr;
  REQUIRE(delsym_qbf_instance("p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n", &model, &formula) == DELSYM_OK);
  std::string mtext = take(model), ftext = take(formula);
  ModelHandle h;
  REQUIRE(delsym_model_parse(mtext.c_str(), &h.m) == DELSYM_OK);
  int result = 0;
  CHECK(delsym_model_check(h.m, nullptr, ftext.c_str(), DELSYM_ALGO_PSPACE, 1, &result, nullptr) == DELSYM_OK);
  CHECK(result == 1);

  delsym_blowup_row b{};
  REQUIRE(delsym_bench_blowup(4, &b) == DELSYM_OK);
  CHECK(b.adversarial_nodes >= 32);
  CHECK(b.bound == 32);
  delsym_tradeoff_row t{};
  REQUIRE(delsym_bench_tradeoff(3, &t) == DELSYM_OK);
  CHECK(t.pspace_value == t.bdd_value);
  CHECK(t.pspace.peak_nodes == 0);
  delsym_grid_row g{};
  REQUIRE(delsym_bench_grid(4, &g) == DELSYM_OK);
  CHECK(g.pairs == 6);
  CHECK(delsym_bench_blowup(0, &b) == DELSYM_ERR_INPUT);
}
