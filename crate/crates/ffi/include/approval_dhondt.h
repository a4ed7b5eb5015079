#ifndef APPROVAL_DHONDT_H
#define APPROVAL_DHONDT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every fallible function.
typedef enum AdStatus {
  AD_STATUS_OK = 0,
  AD_STATUS_NULL_POINTER = 1,
  AD_STATUS_INVALID_UTF8 = 2,
  AD_STATUS_PARSE_ERROR = 3,
  AD_STATUS_CAP_EXCEEDED = 4,
  AD_STATUS_INVALID_ARGUMENT = 5,
  // The output buffer is too small; the required size is reported.
  AD_STATUS_BUFFER_TOO_SMALL = 6,
  AD_STATUS_INTERNAL = 7,
} AdStatus;

// Tie handling for rule evaluation.
typedef enum AdTieMode {
  AD_TIE_MODE_DETERMINISTIC = 0,
  AD_TIE_MODE_ENUMERATED = 1,
} AdTieMode;

// Outcome of an axiom check.
typedef enum AdVerdict {
  AD_VERDICT_SATISFIED = 0,
  AD_VERDICT_VIOLATED = 1,
  AD_VERDICT_INCONCLUSIVE = 2,
} AdVerdict;

// A parsed election.
typedef struct AdElection AdElection;

// The winners a rule produced on one election.
typedef struct AdReport AdReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf`.
//
// # Safety
// `buf` must have room for `len` bytes; `needed` may be null.
enum AdStatus ad_last_error(char *buf, size_t len, size_t *needed);

// Parses an election from the text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum AdStatus ad_election_parse(const char *text, struct AdElection **out);

// Releases an election. Null is ignored.
//
// # Safety
// `e` must come from `ad_election_parse` and not be freed twice.
void ad_election_free(struct AdElection *e);

// Number of candidates, or 0 for a null handle.
//
// # Safety
// `e` must be a live election handle or null.
size_t ad_election_num_candidates(const struct AdElection *e);

// Number of seats, or 0 for a null handle.
//
// # Safety
// `e` must be a live election handle or null.
size_t ad_election_seats(const struct AdElection *e);

// Copies the label of candidate `index` into `buf`.
//
// # Safety
// `e` must be a live handle; `buf` must have room for `len` bytes.
enum AdStatus ad_election_label(const struct AdElection *e,
                                size_t index,
                                char *buf,
                                size_t len,
                                size_t *needed);

// Runs a rule (`odh`, `oodh`, `av`, ...) and returns its winners.
//
// # Safety
// `e` must be a live handle, `rule` a NUL-terminated string and `out`
// writable.
enum AdStatus ad_compute(const struct AdElection *e,
                         const char *rule,
                         enum AdTieMode ties,
                         struct AdReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must come from `ad_compute` and not be freed twice.
void ad_report_free(struct AdReport *r);

// Number of tied winner sets, or 0 for a null handle.
//
// # Safety
// `r` must be a live report handle or null.
size_t ad_report_num_winner_sets(const struct AdReport *r);

// Whether the tie family was cut short by the tie cap.
//
// # Safety
// `r` must be a live report handle or null.
bool ad_report_truncated(const struct AdReport *r);

// Winner set `set` as a bitmask: bit `i` is candidate `i`.
//
// # Safety
// `r` must be a live handle and `mask` writable.
enum AdStatus ad_report_winner_mask(const struct AdReport *r, size_t set, uint64_t *mask);

// Max-min support of the candidates in `mask`, written as an exact `p/q`
// string (or an integer).
//
// # Safety
// `e` must be a live handle; `buf` must have room for `len` bytes.
enum AdStatus ad_maxmin_support(const struct AdElection *e,
                                uint64_t mask,
                                char *buf,
                                size_t len,
                                size_t *needed);

// Checks `axiom` (`jr`, `ejr`, `lower-quota`, `house-mono`, `pop-mono`,
// `closed-list`) for `rule` on the election. An inconclusive verdict
// leaves its reason in `ad_last_error`.
//
// # Safety
// `e` must be a live handle, `rule` and `axiom` NUL-terminated strings and
// `out` writable.
enum AdStatus ad_check_axiom(const struct AdElection *e,
                             const char *rule,
                             const char *axiom,
                             enum AdTieMode ties,
                             enum AdVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* APPROVAL_DHONDT_H */
