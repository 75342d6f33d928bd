#ifndef PERMSYM_PERMSYM_H
#define PERMSYM_PERMSYM_H

#include <stddef.h>
#include <stdint.h>

#if defined(PSYM_BUILDING)
#define PSYM_API __attribute__((visibility("default")))
#else
#define PSYM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psym_status {
  PSYM_OK = 0,
  PSYM_INVALID_ARGUMENT = 1,
  PSYM_PARSE_ERROR = 2,
  PSYM_DEGREE_MISMATCH = 3,
  PSYM_INVALID_ISOMORPHISM = 4,
  PSYM_UNKNOWN_NAME = 5,
  PSYM_BUDGET_EXCEEDED = 6,
  PSYM_PRECONDITION = 7,
  PSYM_SCHEMA = 8,
  PSYM_INTERNAL = 100
} psym_status;

typedef enum psym_effort { PSYM_EFFORT_QUICK = 0, PSYM_EFFORT_FULL = 1 } psym_effort;

/* Selection bits for psym_verify_paper; 0 selects everything. */
enum {
  PSYM_PAPER_TABLE1 = 1u << 0,
  PSYM_PAPER_TABLE1B = 1u << 1,
  PSYM_PAPER_TABLE2 = 1u << 2,
  PSYM_PAPER_LEMMA32 = 1u << 3,
  PSYM_PAPER_LEMMA33 = 1u << 4,
  PSYM_PAPER_THEOREM = 1u << 5
};

/* Opaque, immutable group handle; safe to share between threads. */
typedef struct psym_group psym_group;

typedef struct psym_search_options {
  uint64_t budget; /* 0 selects the default */
  uint64_t seed;   /* 0 selects the default */
  int randomized;
  size_t min_size;
  size_t max_size; /* SIZE_MAX for no limit */
} psym_search_options;

/* Message of the last failed call on this thread; never NULL. */
PSYM_API const char* psym_last_error(void);
PSYM_API const char* psym_version(void);
/* Releases strings returned through char** outputs. */
PSYM_API void psym_string_free(char* s);

/* A group-spec JSON document or a group name. */
PSYM_API psym_status psym_group_from_spec(const char* spec, psym_group** out);
PSYM_API psym_status psym_group_from_generators(size_t degree, const char* const* generators,
                                                size_t count, psym_group** out);
PSYM_API void psym_group_free(psym_group* g);

PSYM_API psym_status psym_group_degree(const psym_group* g, size_t* out);
/* Decimal order. */
PSYM_API psym_status psym_group_order(const psym_group* g, char** out);
PSYM_API psym_status psym_group_contains(const psym_group* g, const char* perm, int* out);
/* {degree, generators} document that psym_group_from_spec accepts. */
PSYM_API psym_status psym_group_spec(const psym_group* g, char** json_out);
/* Order, orbits, transitivity, primitivity, fixed points and identification. */
PSYM_API psym_status psym_group_info(const psym_group* g, char** json_out);

PSYM_API psym_status psym_regular_set(const psym_group* g, const psym_search_options* options,
                                      char** json_out);
/* Stabilizer report for a point set written {1,2,...}. */
PSYM_API psym_status psym_check_set(const psym_group* g, const char* set, char** json_out);
PSYM_API psym_status psym_distinguishing(const psym_group* g, uint32_t k_max, uint64_t budget,
                                         char** json_out);
PSYM_API psym_status psym_orbitals(const psym_group* g, int ordered, char** json_out);
PSYM_API psym_status psym_predict_d(const psym_group* g, char** json_out);
/* Splits the domain into x1 and its complement; both must be unions of orbits. */
PSYM_API psym_status psym_decompose(const psym_group* g, const char* x1, char** json_out);

PSYM_API psym_status psym_catalog_list(char** json_out);
PSYM_API psym_status psym_catalog_show(const char* id, char** json_out);
PSYM_API psym_status psym_verify_entry(const char* id, psym_effort effort, uint64_t seed,
                                       uint64_t budget, char** json_out);
PSYM_API psym_status psym_verify_paper(unsigned selection, psym_effort effort, uint64_t seed,
                                       uint64_t budget, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
