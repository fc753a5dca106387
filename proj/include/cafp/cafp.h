/* C interface to the cafp library.
 *
 * Every function returning cafp_status reports failures through the status
 * and a message retrievable with cafp_last_error(). Documents are returned as
 * NUL-terminated strings owned by the caller and released with
 * cafp_string_free(). Commands that produce a document and then find a
 * violated identity or an engine disagreement return the document together
 * with a nonzero status. */
#ifndef CAFP_H
#define CAFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) && defined(CAFP_BUILDING)
#define CAFP_API __declspec(dllexport)
#elif defined(_WIN32)
#define CAFP_API __declspec(dllimport)
#else
#define CAFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cafp_status {
  CAFP_OK = 0,
  CAFP_ERR_INTERNAL = 1,
  CAFP_ERR_PARSE = 2,
  CAFP_ERR_INVALID_MATRIX = 3,
  CAFP_ERR_IDENTITY = 4,
  CAFP_ERR_DISAGREEMENT = 5
} cafp_status;

/* Exchange matrix, 1-based mutation sequence, optional summation cap and
 * optional fixture seed. */
typedef struct cafp_pattern cafp_pattern;

CAFP_API const char* cafp_version(void);

/* Message of the last failed call on this thread; "" if none. Valid until the
 * next call into the library from the same thread. */
CAFP_API const char* cafp_last_error(void);

CAFP_API void cafp_string_free(char* s);

CAFP_API cafp_status cafp_pattern_from_json(const char* json, cafp_pattern** out);
/* rows is the n*n matrix in row-major order; seq holds 1-based directions. */
CAFP_API cafp_status cafp_pattern_create(size_t n, const int64_t* rows, const size_t* seq, size_t len,
                                         cafp_pattern** out);
/* Pattern from the flag forms: matrix_text is JSON rows or whitespace-separated
 * integers one row per line; seq and cap are comma lists ("1,2,1"). seq may
 * be NULL or empty for the empty sequence; cap may be NULL. */
CAFP_API cafp_status cafp_pattern_from_parts(const char* matrix_text, const char* seq, const char* cap,
                                             cafp_pattern** out);
/* [[0,r],[-r,0]] with the alternating sequence 1,2,1,... of the given length. */
CAFP_API cafp_status cafp_pattern_kronecker(int64_t r, size_t length, cafp_pattern** out);
/* cap has n entries; NULL removes the cap. */
CAFP_API cafp_status cafp_pattern_set_cap(cafp_pattern* p, const int64_t* cap);
CAFP_API cafp_status cafp_pattern_rank(const cafp_pattern* p, size_t* out);
CAFP_API cafp_status cafp_pattern_to_json(const cafp_pattern* p, char** out);
CAFP_API void cafp_pattern_free(cafp_pattern* p);

/* Mutation data along the sequence: d, per-step c, epsilon, c+, chat+, g, and
 * the exponent tables E and A. */
CAFP_API cafp_status cafp_trace(const cafp_pattern* p, char** out);

#define CAFP_FPOLY_TIMING 1u   /* include per-engine wall times */
#define CAFP_FPOLY_PARALLEL 2u /* run independent engines concurrently */

/* F-polynomial by one engine ("recurrence", "product", "sum", "fg") or by all
 * four with an agreement verdict ("all"). variable is 1-based; 0 selects the
 * last mutation direction. */
CAFP_API cafp_status cafp_fpoly(const cafp_pattern* p, const char* method, size_t variable, unsigned flags,
                                char** out);

#define CAFP_CHECK_DUALITIES 1u
#define CAFP_CHECK_SIGNCOHERENCE 2u
#define CAFP_CHECK_ENGINES 4u
#define CAFP_CHECK_INVOLUTION 8u
#define CAFP_CHECK_TILDEC 16u
#define CAFP_CHECK_ALL 31u

/* "all" or a comma-separated subset of dualities, signcoherence, engines,
 * involution, tildec. */
CAFP_API cafp_status cafp_parse_checks(const char* list, unsigned* out);

CAFP_API cafp_status cafp_verify(const cafp_pattern* p, unsigned checks, char** out);

typedef struct cafp_random_options {
  uint64_t seed;
  size_t count;
  size_t min_n;
  size_t max_n;
  int64_t max_entry;
  size_t max_len;
  uint64_t max_volume; /* 0: unbounded */
  unsigned checks;
  unsigned threads;
} cafp_random_options;

CAFP_API void cafp_random_options_default(cafp_random_options* opts);
CAFP_API cafp_status cafp_verify_random(const cafp_random_options* opts, char** out);

typedef enum cafp_bench_format { CAFP_BENCH_TEXT = 0, CAFP_BENCH_CSV = 1, CAFP_BENCH_JSON = 2 } cafp_bench_format;

/* labels may be NULL, in which case cases are numbered. */
CAFP_API cafp_status cafp_bench(const cafp_pattern* const* patterns, const char* const* labels, size_t count,
                                cafp_bench_format format, unsigned repeats, char** out);

#ifdef __cplusplus
}
#endif

#endif
