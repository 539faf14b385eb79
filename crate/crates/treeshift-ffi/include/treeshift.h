#ifndef TREESHIFT_H
#define TREESHIFT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  TS_OK = 0,
  /**
   * Malformed document or term.
   */
  TS_PARSE_ERROR = 1,
  /**
   * Semantic error: arity or alphabet mismatch, non-essential input,
   * invalid object.
   */
  TS_SEMANTIC_ERROR = 2,
  /**
   * A construction exceeded the state or table budget.
   */
  TS_BUDGET_EXCEEDED = 3,
  /**
   * A required pointer argument was null.
   */
  TS_NULL_ARGUMENT = 4,
  /**
   * Input text was not valid UTF-8.
   */
  TS_INVALID_UTF8 = 5,
} TsStatus;

typedef struct TsCa TsCa;

typedef struct TsFta TsFta;

typedef struct TsMoore TsMoore;

typedef struct TsPattern TsPattern;

typedef struct TsRabin TsRabin;

typedef struct TsSft TsSft;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread; valid until the next
 * failing call on the same thread.
 */
const char *ts_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a function of this library and not yet
 * freed; null is ignored.
 */
void ts_string_free(char *s);

/**
 * Parses a rabin document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_rabin_parse(const char *text, TsRabin **out);

/**
 * # Safety
 * `ptr` must come from `ts_rabin_parse` or a constructing call; null is ignored.
 */
void ts_rabin_free(TsRabin *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_rabin_to_text(const TsRabin *ptr);

/**
 * Parses an fta document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_fta_parse(const char *text, TsFta **out);

/**
 * # Safety
 * `ptr` must come from `ts_fta_parse` or a constructing call; null is ignored.
 */
void ts_fta_free(TsFta *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_fta_to_text(const TsFta *ptr);

/**
 * Parses an sft document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_sft_parse(const char *text, TsSft **out);

/**
 * # Safety
 * `ptr` must come from `ts_sft_parse` or a constructing call; null is ignored.
 */
void ts_sft_free(TsSft *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_sft_to_text(const TsSft *ptr);

/**
 * Parses a ca document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_ca_parse(const char *text, TsCa **out);

/**
 * # Safety
 * `ptr` must come from `ts_ca_parse` or a constructing call; null is ignored.
 */
void ts_ca_free(TsCa *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_ca_to_text(const TsCa *ptr);

/**
 * Parses a pattern document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_pattern_parse(const char *text, TsPattern **out);

/**
 * # Safety
 * `ptr` must come from `ts_pattern_parse`; null is ignored.
 */
void ts_pattern_free(TsPattern *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_pattern_to_text(const TsPattern *ptr);

/**
 * Parses a moore document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
TsStatus ts_moore_parse(const char *text, TsMoore **out);

/**
 * # Safety
 * `ptr` must come from `ts_moore_parse`; null is ignored.
 */
void ts_moore_free(TsMoore *ptr);

/**
 * Canonical document text; release with `ts_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle.
 */
char *ts_moore_to_text(const TsMoore *ptr);

/**
 * The canonical term of a pattern; release with `ts_string_free`.
 *
 * # Safety
 * `p` must be a live pattern handle.
 */
char *ts_pattern_term(const TsPattern *p);

/**
 * # Safety
 * `a` must be a live automaton handle and `out` a valid pointer.
 */
TsStatus ts_rabin_essentialize(const TsRabin *a, TsRabin **out);

/**
 * # Safety
 * `a` must be a live automaton handle; the out-pointers must be valid.
 */
TsStatus ts_rabin_classify(const TsRabin *a,
                           bool *deterministic,
                           bool *codeterministic,
                           bool *cocomplete);

/**
 * # Safety
 * `a` must be a live automaton handle and `out` a valid pointer.
 */
TsStatus ts_rabin_is_empty_shift(const TsRabin *a, bool *out);

/**
 * # Safety
 * `a` must be a live automaton handle and `out` a valid pointer.
 */
TsStatus ts_rabin_codeterminize(const TsRabin *a, uintptr_t max_states, TsRabin **out);

/**
 * # Safety
 * `a` and `b` must be live automaton handles and `out` a valid pointer.
 */
TsStatus ts_rabin_join(const TsRabin *a, const TsRabin *b, TsRabin **out);

/**
 * # Safety
 * `a` and `p` must be live handles and `out` a valid pointer.
 */
TsStatus ts_rabin_accepts(const TsRabin *a, const TsPattern *p, bool *out);

/**
 * # Safety
 * `g` and `p` must be live handles and `out` a valid pointer.
 */
TsStatus ts_fta_accepts(const TsFta *g, const TsPattern *p, bool *out);

/**
 * The finite-tree automaton recognizing the patterns the automaton's shift
 * is missing.
 *
 * # Safety
 * `a` must be a live automaton handle and `out` a valid pointer.
 */
TsStatus ts_rabin_complement(const TsRabin *a, uintptr_t max_states, TsFta **out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
TsStatus ts_fta_complement(const TsFta *g, uintptr_t max_states, TsFta **out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
TsStatus ts_fta_is_empty(const TsFta *g, uintptr_t max_states, bool *out);

/**
 * A minimal accepted pattern as a term, or null when the language is
 * empty; release the string with `ts_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
TsStatus ts_fta_sample(const TsFta *g, uintptr_t max_states, char **out);

/**
 * Membership of the configuration described by a Moore coloring. On
 * rejection `member` is false and `rejection_depth` holds a depth whose
 * truncation is already rejected.
 *
 * # Safety
 * `a` and `m` must be live handles; the out-pointers must be valid.
 */
TsStatus ts_rabin_member_moore(const TsRabin *a,
                               const TsMoore *m,
                               bool *member,
                               uintptr_t *rejection_depth);

/**
 * Canonical Rabin presentation of a shift of finite type.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
TsStatus ts_sft_present(const TsSft *x, uintptr_t max_states, TsRabin **out);

/**
 * Presents the automaton's shift as the image of a shift of finite type
 * over its bundles under a one-letter covering map.
 *
 * # Safety
 * `a` must be a live handle; `out_sft` and `out_ca` must be valid.
 */
TsStatus ts_sft_cover(const TsRabin *a, uintptr_t max_states, TsSft **out_sft, TsCa **out_ca);

/**
 * The composite `outer ∘ inner`.
 *
 * # Safety
 * `outer` and `inner` must be live handles and `out` a valid pointer.
 */
TsStatus ts_ca_compose(const TsCa *outer, const TsCa *inner, uintptr_t max_states, TsCa **out);

/**
 * Rabin presentation of the image of a shift of finite type under a
 * cellular automaton.
 *
 * # Safety
 * `ca` and `x` must be live handles and `out` a valid pointer.
 */
TsStatus ts_ca_image(const TsCa *ca, const TsSft *x, uintptr_t max_states, TsRabin **out);

/**
 * Whether the automaton presents the full shift; on a negative answer
 * `witness` receives a missed pattern (release with `ts_string_free`).
 *
 * # Safety
 * `a` must be a live handle; the out-pointers must be valid.
 */
TsStatus ts_is_full(const TsRabin *a, uintptr_t max_states, bool *answer, char **witness);

/**
 * Equality of the shifts presented by two automata; on inequality
 * `witness` receives a pattern of exactly one side.
 *
 * # Safety
 * `a` and `b` must be live handles; the out-pointers must be valid.
 */
TsStatus ts_equal(const TsRabin *a,
                  const TsRabin *b,
                  uintptr_t max_states,
                  bool *answer,
                  char **witness);

/**
 * Containment of the first presented shift in the second.
 *
 * # Safety
 * `a` and `b` must be live handles; the out-pointers must be valid.
 */
TsStatus ts_contained(const TsRabin *a,
                      const TsRabin *b,
                      uintptr_t max_states,
                      bool *answer,
                      char **witness);

/**
 * Surjectivity of a cellular automaton from the shift presented by `x`
 * onto the shift presented by `y`.
 *
 * # Safety
 * `ca`, `x` and `y` must be live handles; the out-pointers must be valid.
 */
TsStatus ts_surjective(const TsCa *ca,
                       const TsRabin *x,
                       const TsRabin *y,
                       uintptr_t max_states,
                       bool *answer,
                       char **witness);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TREESHIFT_H */
