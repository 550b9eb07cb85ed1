#ifndef CROSSCAP_H
#define CROSSCAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrosscapFormat {
  CROSSCAP_FORMAT_TEXT = 0,
  CROSSCAP_FORMAT_JSON = 1,
  CROSSCAP_FORMAT_CAS = 2,
} CrosscapFormat;

typedef enum CrosscapStatus {
  CROSSCAP_STATUS_OK = 0,
  // A check ran to completion and found a relator that does not hold.
  CROSSCAP_STATUS_VERIFICATION_FAILED = 1,
  CROSSCAP_STATUS_NULL_ARGUMENT = 2,
  CROSSCAP_STATUS_INVALID_UTF8 = 3,
  CROSSCAP_STATUS_PARSE = 4,
  CROSSCAP_STATUS_DOMAIN = 5,
  CROSSCAP_STATUS_UNKNOWN_GENERATOR = 6,
  CROSSCAP_STATUS_STEP_MISMATCH = 7,
  CROSSCAP_STATUS_OVERFLOW = 8,
  CROSSCAP_STATUS_LIMIT_EXCEEDED = 9,
  CROSSCAP_STATUS_IO = 10,
  CROSSCAP_STATUS_INTERNAL = 11,
} CrosscapStatus;

// Opaque presentation handle.
typedef struct CrosscapPresentation CrosscapPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *crosscap_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void crosscap_string_free(char *s);

// Presentation of M(N_{g,n}); small genus uses the classical presentations.
//
// # Safety
// `out` must be a valid pointer.
enum CrosscapStatus crosscap_presentation_new(uint32_t genus,
                                              uint32_t boundary,
                                              struct CrosscapPresentation **out);

// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum CrosscapStatus crosscap_presentation_from_json(const char *json,
                                                    struct CrosscapPresentation **out);

// # Safety
// `p` must be NULL or a handle from this library, not yet freed.
void crosscap_presentation_free(struct CrosscapPresentation *p);

// # Safety
// `p` must be a live handle; NULL yields 0.
size_t crosscap_presentation_generator_count(const struct CrosscapPresentation *p);

// # Safety
// `p` must be a live handle; NULL yields 0.
size_t crosscap_presentation_relator_count(const struct CrosscapPresentation *p);

// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum CrosscapStatus crosscap_presentation_emit(const struct CrosscapPresentation *p,
                                               enum CrosscapFormat format,
                                               char **out);

// First homology as JSON `{"free_rank":..,"torsion":[..]}`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum CrosscapStatus crosscap_presentation_h1(const struct CrosscapPresentation *p, char **out);

// Group order by coset enumeration over the trivial subgroup.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum CrosscapStatus crosscap_presentation_order(const struct CrosscapPresentation *p,
                                                size_t max_cosets,
                                                size_t *out);

// Verifies the built-in presentation and derived relations of N_{g,n}.
// `tier` 0 runs every tier. The JSON report is written even when
// verification fails, in which case the status is `VerificationFailed`.
//
// # Safety
// `out_report` must be a valid pointer.
enum CrosscapStatus crosscap_verify_surface(uint32_t genus,
                                            uint32_t boundary,
                                            uint8_t tier,
                                            char **out_report);

// Verifies the relators of a presentation handle; see `crosscap_verify_surface`.
//
// # Safety
// `p` must be a live handle and `out_report` a valid pointer.
enum CrosscapStatus crosscap_verify_presentation(const struct CrosscapPresentation *p,
                                                 uint8_t tier,
                                                 char **out_report);

// Replays a derivation script given as JSON and checks its endpoints in the
// representations. On success `out_end` receives the final word.
//
// # Safety
// `script_json` must be a nul-terminated string and `out_end` a valid pointer.
enum CrosscapStatus crosscap_replay(const char *script_json, char **out_end);

// Parses a word and writes its free reduction.
//
// # Safety
// `word` must be a nul-terminated string and `out` a valid pointer.
enum CrosscapStatus crosscap_word_reduce(const char *word, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSCAP_H */
