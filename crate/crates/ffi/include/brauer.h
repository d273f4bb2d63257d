#ifndef BRAUER_H
#define BRAUER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `BR_STATUS_OK` is zero.
typedef enum BrStatus {
  BR_STATUS_OK = 0,
  BR_STATUS_NULL_POINTER = 1,
  BR_STATUS_INVALID_UTF8 = 2,
  BR_STATUS_PARSE = 3,
  BR_STATUS_DIMENSION_MISMATCH = 4,
  BR_STATUS_OUT_OF_RANGE = 5,
  BR_STATUS_LIMIT_EXCEEDED = 6,
  BR_STATUS_BUDGET_EXCEEDED = 7,
  BR_STATUS_NON_EQUIVARIANT = 8,
  BR_STATUS_MATH = 9,
  BR_STATUS_PANIC = 10,
} BrStatus;

typedef enum BrMode {
  BR_MODE_EVEN = 0,
  BR_MODE_ODD = 1,
} BrMode;

typedef enum BrStrategy {
  BR_STRATEGY_AUTO = 0,
  BR_STRATEGY_EXACT = 1,
  BR_STRATEGY_TWO_PRIMES = 2,
} BrStrategy;

// An element of a Brauer algebra together with its parameter `δ`.
typedef struct BrElement BrElement;

// Outcome of comparing the Brauer image with the `osp` commutant.
typedef struct BrReport BrReport;

// Plain-data view of a [`BrReport`].
typedef struct BrReportSummary {
  size_t m;
  size_t n;
  size_t d;
  size_t brauer_dim;
  size_t image_rank;
  size_t commutant_dim;
  size_t commutant_even;
  size_t commutant_odd;
  bool injective;
  bool surjective;
  bool iso;
  bool hypotheses_satisfied;
} BrReportSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread, or an empty string.
// The pointer stays valid until the next call into this library.
const char *br_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *br_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void br_string_free(char *s);

// Evaluates a word such as `"s1 e2"` in `Br_d(δ)`; `delta` is a rational like `"-1/2"`.
//
// # Safety
// `word` and `delta` must be NUL-terminated strings and `out` writable.
enum BrStatus br_element_from_word(const char *word,
                                   size_t d,
                                   const char *delta,
                                   struct BrElement **out);

// `x·y` in the algebra of `x`; both factors must share `d` and `δ`.
//
// # Safety
// `x` and `y` must be live handles and `out` writable.
enum BrStatus br_element_multiply(const struct BrElement *x,
                                  const struct BrElement *y,
                                  struct BrElement **out);

// Number of diagrams with nonzero coefficient.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum BrStatus br_element_term_count(const struct BrElement *x, size_t *out);

// Text form, one `coefficient * diagram` per line, or `0`.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum BrStatus br_element_to_string(const struct BrElement *x, char **out);

// JSON object from diagram literals to `"p/q"` strings.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum BrStatus br_element_to_json(const struct BrElement *x, char **out);

// # Safety
// `x` must be null or a handle from this library that has not been freed.
void br_element_free(struct BrElement *x);

// Number of oriented diagrams from `s` to `t`, sequences over `^`, `v`, `o`.
//
// # Safety
// `s` and `t` must be NUL-terminated strings and `out` writable.
enum BrStatus br_hom_dim(const char *s, const char *t, size_t *out);

// Compares the image of `Br_d(δ)` on `V^{⊗d}` with the `osp` commutant.
// A `budget` of zero selects the default cap on `dim V^{⊗d}`.
//
// # Safety
// `out` must be writable.
enum BrStatus br_verify(size_t m,
                        size_t n,
                        enum BrMode mode,
                        size_t d,
                        enum BrStrategy strategy,
                        uint64_t seed,
                        size_t budget,
                        struct BrReport **out);

// # Safety
// `r` must be a live handle and `out` writable.
enum BrStatus br_report_summary(const struct BrReport *r, struct BrReportSummary *out);

// # Safety
// `r` must be a live handle and `out` writable.
enum BrStatus br_report_to_json(const struct BrReport *r, char **out);

// # Safety
// `r` must be null or a handle from this library that has not been freed.
void br_report_free(struct BrReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAUER_H */
