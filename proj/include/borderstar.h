/* C interface to the feasibility engine.
 *
 * Every call runs one command against a JSON request string and returns an
 * opaque result handle. The request has the shape
 *   {"input": <document>, "options": {...}}
 * matching the CLI's file format and flags. The returned status mirrors the
 * CLI exit codes: 0 = feasible / pass, 1 = infeasible / fail (a witness is
 * included in the JSON), 2 = input error.
 */
#ifndef BORDERSTAR_H
#define BORDERSTAR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bsr_result bsr_result;

/* Runs `command` ("check-beliefs", "check-reduced-form", "construct-game",
 * "construct-info", "agreement", "auction-check", "copula-scan",
 * "core-slack", "example1") on `request_json`. Returns the status code and
 * stores a handle in *out (always, except on allocation failure, where it
 * returns 2 and sets *out to NULL). The handle must be released with
 * bsr_result_free. */
int bsr_run(const char* command, const char* request_json, bsr_result** out);

/* Status code of the result: 0, 1, or 2 as above. */
int bsr_result_status(const bsr_result* r);

/* Machine-readable output as a JSON string owned by the handle. */
const char* bsr_result_json(const bsr_result* r);

/* Human-readable rendering of the same output, owned by the handle. */
const char* bsr_result_table(const bsr_result* r);

void bsr_result_free(bsr_result* r);

/* Library version string. */
const char* bsr_version(void);

#ifdef __cplusplus
}
#endif

#endif /* BORDERSTAR_H */
