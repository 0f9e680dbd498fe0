#ifndef DELSYM_DELSYM_H
#define DELSYM_DELSYM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DELSYM_API __declspec(dllexport)
#else
#define DELSYM_API __attribute__((visibility("default")))
#endif

typedef struct delsym_model delsym_model;

typedef enum delsym_status {
  DELSYM_OK = 0,
  DELSYM_ERR_ARGUMENT = 1, /* null pointer or unknown enum value */
  DELSYM_ERR_PARSE = 2,    /* malformed input text; the message carries line:column */
  DELSYM_ERR_INPUT = 3,    /* well-formed but rejected (unknown state, size guard, ...) */
  DELSYM_ERR_INTERNAL = 4
} delsym_status;

typedef enum delsym_algo { DELSYM_ALGO_PSPACE = 0, DELSYM_ALGO_BDD = 1, DELSYM_ALGO_NAIVE = 2 } delsym_algo;

typedef enum delsym_order { DELSYM_ORDER_INTERLEAVED = 0, DELSYM_ORDER_LISTED = 1 } delsym_order;

typedef struct delsym_stats {
  uint64_t depth;
  uint64_t valuations;
  uint64_t peak_nodes;
} delsym_stats;

/* Message of the last failed call on this thread; empty if none. */
DELSYM_API const char* delsym_last_error(void);

/* Strings returned through char** out parameters are released with this. */
DELSYM_API void delsym_string_free(char* s);

DELSYM_API delsym_status delsym_model_parse(const char* text, delsym_model** out);
DELSYM_API void delsym_model_free(delsym_model* model);

/* state: comma or space separated atoms ("" is the empty state); NULL picks
   the state declared in the model file. *result is 1 for true, 0 for false. */
DELSYM_API delsym_status delsym_model_check(const delsym_model* model, const char* state, const char* formula,
                                            delsym_algo algo, unsigned jobs, int* result, delsym_stats* stats);

DELSYM_API delsym_status delsym_model_summary(const delsym_model* model, char** out);
DELSYM_API delsym_status delsym_formula_length(const delsym_model* model, const char* formula, uint64_t* out);

/* Program text to relation diagram dump over the given vocabulary. */
DELSYM_API delsym_status delsym_translate_mp_to_bdd(const char* program, const char* vocab, delsym_order order,
                                                    char** dump, uint64_t* node_count);
/* Relation diagram dump to program text. The order must be interleaved. */
DELSYM_API delsym_status delsym_translate_bdd_to_mp(const char* dump, const char* vocab, delsym_order order,
                                                    char** program, uint64_t* length);
/* Translates a program to a diagram and back; *equal is 1 when both programs
   denote the same relation. */
DELSYM_API delsym_status delsym_translate_verify(const char* program, const char* vocab, int* equal);

typedef struct delsym_qbf_report {
  int brute;            /* truth by brute force */
  int reduction;        /* truth via the knowledge-structure instance */
  int belief_reduction; /* truth via the belief-structure instance */
  uint64_t qbf_length;
  uint64_t formula_length;
} delsym_qbf_report;

DELSYM_API delsym_status delsym_qbf_run(const char* qdimacs, delsym_qbf_report* report);
/* Model file text and formula text of the generated instance. */
DELSYM_API delsym_status delsym_qbf_instance(const char* qdimacs, char** model, char** formula);

typedef struct delsym_blowup_row {
  unsigned n;
  uint64_t adversarial_nodes;
  uint64_t contrast_nodes;
  uint64_t bound;
  uint64_t program_length;
} delsym_blowup_row;

typedef struct delsym_tradeoff_row {
  unsigned depth;
  uint64_t formula_length;
  int pspace_value;
  int bdd_value;
  delsym_stats pspace;
  uint64_t bdd_peak_nodes;
} delsym_tradeoff_row;

typedef struct delsym_grid_row {
  unsigned v;
  uint64_t nodes;
  uint64_t pairs;
  uint64_t tau_length;
  uint64_t enumerated_length; /* 0 when the vocabulary exceeds the relation guard */
} delsym_grid_row;

DELSYM_API delsym_status delsym_bench_blowup(unsigned n, delsym_blowup_row* row);
DELSYM_API delsym_status delsym_bench_tradeoff(unsigned depth, delsym_tradeoff_row* row);
DELSYM_API delsym_status delsym_bench_grid(unsigned v, delsym_grid_row* row);

#ifdef __cplusplus
}
#endif

#endif
