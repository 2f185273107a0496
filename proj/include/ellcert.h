/* C interface for the non-divisibility certifier.
 *
 * All numeric parameters cross the boundary as decimal strings so that
 * arbitrary-size integers survive the trip. Results are heap-allocated JSON
 * strings owned by the caller; release them with ec_string_free. Every entry
 * point returns an error code; on failure *err_out (when non-NULL) receives a
 * heap-allocated message.
 */
#ifndef ELLCERT_H
#define ELLCERT_H

#ifdef __cplusplus
extern "C" {
#endif

#define EC_OK 0
#define EC_ERR_RANGE 1   /* input outside the domain of validity */
#define EC_ERR_BUDGET 2  /* a configured computation budget was exhausted */
#define EC_ERR_PARSE 3   /* malformed number or JSON */
#define EC_ERR_INTERNAL 4

typedef struct ec_options ec_options;

ec_options* ec_options_new(void);
void ec_options_free(ec_options* opt);
int ec_options_set_precision(ec_options* opt, unsigned bits);
int ec_options_set_prime_budget(ec_options* opt, const char* budget);
int ec_options_set_witness_cap(ec_options* opt, unsigned cap);

/* Certificate for (n, t) as one JSON object (the JSONL record format). */
int ec_certify(const char* n, const char* t, const ec_options* opt,
               char** json_out, char** err_out);

/* Re-validate a certificate. *ok_out becomes 1 (accepted) or 0 (rejected);
 * when rejected and reason_out is non-NULL it receives the reason. */
int ec_verify(const char* certificate_json, int* ok_out, char** reason_out,
              char** err_out);

/* Real and imaginary periods of the minimal model of E_n(t). */
int ec_periods(const char* n, const char* t, unsigned precision,
               char** json_out, char** err_out);

/* Canonical height of the point (x, y) on the minimal model; x and y are
 * rationals in "p/q" or integer form, given in minimal-model coordinates. */
int ec_height(const char* n, const char* t, const char* x, const char* y,
              unsigned precision, char** json_out, char** err_out);

/* Local reduction data (Kodaira type, Tamagawa number) at every bad prime,
 * plus the derived global height floor. */
int ec_tate(const char* n, const char* t, char** json_out, char** err_out);

/* Certify every pair in the box [n_min, n_max] x [t_min, t_max] (t = 0 is
 * skipped), appending JSONL records to out_path. With resume != 0, pairs
 * already present in the file are not recomputed. Returns summary counts as
 * JSON. */
int ec_sweep(const char* n_min, const char* n_max, const char* t_min,
             const char* t_max, const char* out_path, int resume,
             const ec_options* opt, char** json_out, char** err_out);

void ec_string_free(char* s);

const char* ec_version(void);

#ifdef __cplusplus
}
#endif

#endif
