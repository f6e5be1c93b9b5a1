/* C interface to the secrecy-rate bound library. All entry points return a
 * status code; outputs are written through pointers. On failure the outputs
 * are untouched and vlcsec_last_error() describes the problem (thread-local).
 */
#ifndef VLCSEC_H
#define VLCSEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    VLCSEC_OK = 0,
    VLCSEC_ERR_CONFIG = 1,        /* bad configuration or arguments */
    VLCSEC_ERR_DOMAIN = 2,        /* parameters outside a formula's domain */
    VLCSEC_ERR_IO = 3,            /* file read/write failure */
    VLCSEC_ERR_NO_SECURE_LED = 4  /* channel-adaptive selection has no candidate */
};

enum {
    VLCSEC_SCHEME_US = 0,  /* equi-probable selection */
    VLCSEC_SCHEME_CAS = 1, /* margin-proportional selection */
    VLCSEC_SCHEME_GS = 2   /* best-margin selection */
};

enum {
    VLCSEC_SCENARIO_AVG = 0, /* mean intensity constraint only */
    VLCSEC_SCENARIO_PEAK = 1 /* mean and peak intensity constraints */
};

enum {
    VLCSEC_TABLE_SWEEP = 0,
    VLCSEC_TABLE_GAP = 1
};

typedef struct vlcsec_link vlcsec_link;
typedef struct vlcsec_table vlcsec_table;
typedef struct vlcsec_rng vlcsec_rng;

typedef struct {
    double lower;     /* clamped at 0 */
    double upper;     /* clamped at 0 */
    double raw_lower; /* weighted sum before clamping */
    double raw_upper;
    int clamped; /* 1 when clamping changed a value */
} vlcsec_bounds;

const char* vlcsec_version(void);
/* Message for the most recent failure on this thread; empty string if none. */
const char* vlcsec_last_error(void);

/* ---- channels ---- */

/* Per-LED gains for the legitimate receiver (h_b) and the eavesdropper
 * (h_e), both of length led_count. */
int vlcsec_link_create(const double* h_b, const double* h_e, size_t led_count,
                       double sigma_b, double sigma_e, vlcsec_link** out);
/* h_b = 1, h_e = 1/ratio on every LED, equal noise levels. */
int vlcsec_link_create_ratio(double ratio, size_t led_count, double sigma, vlcsec_link** out);
/* Room-layout file; requires both bob.pos and eve.pos. */
int vlcsec_link_from_layout(const char* path, vlcsec_link** out);
size_t vlcsec_link_led_count(const vlcsec_link* link);
void vlcsec_link_free(vlcsec_link* link);

/* ---- selection ---- */

/* probs must hold led_count doubles. clamped_any (may be NULL) is set to 1
 * when negative margins were clamped to probability zero. */
int vlcsec_selection_probs(const vlcsec_link* link, int scheme, double* probs, int* clamped_any);

int vlcsec_rng_create(uint64_t seed, vlcsec_rng** out);
void vlcsec_rng_free(vlcsec_rng* rng);

/* One activation draw; writes the 0-based LED index. */
int vlcsec_sample_led(const vlcsec_link* link, int scheme, vlcsec_rng* rng, size_t* out_index);

/* ---- bounds ---- */

/* peak is ignored for VLCSEC_SCENARIO_AVG. */
int vlcsec_bounds_for_scheme(const vlcsec_link* link, int scheme, int scenario, double nominal,
                             double peak, double xi, vlcsec_bounds* out);
int vlcsec_bounds_weighted(const vlcsec_link* link, const double* weights, size_t led_count,
                           int scenario, double nominal, double peak, double xi,
                           vlcsec_bounds* out);
/* Per-LED terms; each array (if non-NULL) must hold led_count entries.
 * branches holds 'A' (low intensity), 'B' (saturated), '0' (zero-rated),
 * '-' (not applicable). */
int vlcsec_per_led_terms(const vlcsec_link* link, int scenario, double nominal, double peak,
                         double xi, double* lower_terms, double* upper_terms, int* branches);

/* High-intensity limits of the weighted bounds (unclamped; may be inf). */
int vlcsec_asymptotic_bounds(const vlcsec_link* link, const double* weights, size_t led_count,
                             int scenario, double xi, double alpha, double* lower, double* upper);
/* Channel-independent high-intensity gap; alpha is ignored for the
 * average-only scenario. */
int vlcsec_asymptotic_gap(int scenario, double alpha, double* out);

/* Shape parameter c with E[X]/peak = alpha for the truncated exponential. */
int vlcsec_solve_c(double alpha, double peak, double* out);

/* ---- experiments ---- */

/* Sweep spec in the key = value file format. */
int vlcsec_sweep_run_file(const char* path, vlcsec_table** out);
int vlcsec_sweep_run_text(const char* text, const char* origin, vlcsec_table** out);
int vlcsec_gap_table(int scenario, const double* ratios, size_t n_ratios, const double* p_db,
                     size_t n_p, double xi, vlcsec_table** out);
/* Receiver-plane average sweep over the dimming target. */
int vlcsec_plane_run_file(const char* path, vlcsec_table** out);
int vlcsec_plane_run_text(const char* text, const char* origin, vlcsec_table** out);

/* ---- tables ---- */

int vlcsec_table_kind(const vlcsec_table* table);
size_t vlcsec_table_rows(const vlcsec_table* table);
size_t vlcsec_table_cols(const vlcsec_table* table);
/* Sweep tables: columns x, lower, upper, clamped. Gap tables: column 0 is
 * the nominal intensity in dB, then one gap per ratio. */
int vlcsec_table_cell(const vlcsec_table* table, size_t row, size_t col, double* out);
/* Sweep tables only. branch_buf (if non-NULL) receives the per-LED case
 * letters, NUL-terminated, truncated to buflen - 1. */
int vlcsec_table_sweep_row(const vlcsec_table* table, size_t row, double* x, int* scheme,
                           double* lower, double* upper, int* clamped, char* branch_buf,
                           size_t buflen);
/* CSV text; free with vlcsec_string_free. */
int vlcsec_table_csv(const vlcsec_table* table, char** out);
int vlcsec_table_write_csv(const vlcsec_table* table, const char* path);
/* Sweep tables only: standalone SVG line plot. */
int vlcsec_table_write_svg(const vlcsec_table* table, const char* path);
void vlcsec_table_free(vlcsec_table* table);

void vlcsec_string_free(char* s);

/* ---- diagnostics ---- */

/* Runs the cross-validation suites. report_out (optional, free with
 * vlcsec_string_free) receives the human-readable report; all_passed
 * (optional) is set to 1 when every suite passed. */
int vlcsec_selfcheck(uint64_t seed, size_t draws, char** report_out, int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VLCSEC_H */
