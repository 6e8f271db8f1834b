/*
 * colorcoal C API.
 *
 * Every function that can fail returns a cc_status; on failure a
 * human-readable message is available from cc_last_error() on the calling
 * thread until the next failing call. Objects are opaque handles created by
 * *_create and released by the matching *_destroy. Matrices are copied out
 * row-major into caller-provided buffers.
 */
#ifndef COLORCOAL_H
#define COLORCOAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(COLORCOAL_BUILDING_LIBRARY)
#define COLORCOAL_API __attribute__((visibility("default")))
#else
#define COLORCOAL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cc_status {
  CC_OK = 0,
  CC_INVALID_ARGUMENT = 1,
  CC_SINGULAR_MATRIX = 2,
  CC_NOT_LUMPABLE = 3,
  CC_UNDEFINED_POSTERIOR = 4,
  CC_BUFFER_TOO_SMALL = 5,
  CC_INTERNAL_ERROR = 6
} cc_status;

typedef enum cc_parity { CC_EVEN = 0, CC_ODD = 1 } cc_parity;

COLORCOAL_API const char* cc_version(void);
COLORCOAL_API const char* cc_status_string(cc_status status);
COLORCOAL_API const char* cc_last_error(void);

/* ---- generator on the colored lattice ---------------------------------- */

typedef struct cc_generator cc_generator;

COLORCOAL_API cc_status cc_generator_create(int n, double x, cc_generator** out);
COLORCOAL_API void cc_generator_destroy(cc_generator* g);
COLORCOAL_API size_t cc_generator_size(const cc_generator* g);
COLORCOAL_API cc_status cc_generator_state(const cc_generator* g, size_t index, int* black,
                                           int* white);
/* size*size doubles. */
COLORCOAL_API cc_status cc_generator_rates(const cc_generator* g, double* out, size_t capacity);
COLORCOAL_API cc_status cc_generator_jump_chain(const cc_generator* g, double* out,
                                                size_t capacity);

/* (n+1) x 2 absorption probabilities from level n: columns (0,1), (1,0). */
COLORCOAL_API cc_status cc_absorption_probabilities(int n, double x, double* out,
                                                    size_t capacity);

/* ---- closed forms with matrix-oracle cross-checks ---------------------- */

typedef struct cc_exact_result {
  double p_white_root;
  double p_black_root;
  double e_time_white;
  double e_time_black;
  double e_time_any;
  /* Same quantities from the lattice: block products, phase-type means of
     the conditional process, and the fundamental matrix. */
  double oracle_p_white_root;
  double oracle_p_black_root;
  double oracle_e_time_white;
  double oracle_e_time_black;
  double oracle_e_time_any;
} cc_exact_result;

COLORCOAL_API cc_status cc_exact(int n1, int n2, double x, cc_exact_result* out);

/* ---- coalescent-time CCDF ---------------------------------------------- */

typedef enum cc_ccdf_form { CC_CCDF_CORRECTED = 0, CC_CCDF_UNCORRECTED = 1 } cc_ccdf_form;

typedef struct cc_ccdf cc_ccdf;

COLORCOAL_API cc_status cc_ccdf_create(int n, cc_parity start, cc_parity target, double x,
                                       cc_ccdf_form form, cc_ccdf** out);
COLORCOAL_API void cc_ccdf_destroy(cc_ccdf* c);
COLORCOAL_API double cc_ccdf_eval(const cc_ccdf* c, double t);
COLORCOAL_API double cc_ccdf_integral(const cc_ccdf* c);
COLORCOAL_API size_t cc_ccdf_term_count(const cc_ccdf* c);
COLORCOAL_API cc_status cc_ccdf_term(const cc_ccdf* c, size_t i, double* coefficient,
                                     double* rate);

/* CCDF of the time to the MRCA with colors ignored. */
COLORCOAL_API cc_status cc_ccdf_create_total(int n, cc_ccdf** out);

/* Matrix-exponential survival of the conditional process at
   t = t0 + i*step, i < count, from the canonical state of parity `start`. */
COLORCOAL_API cc_status cc_ccdf_oracle(int n, cc_parity start, cc_parity target, double x,
                                       double t0, double step, size_t count, double* out);

/* ---- parity lumping ---------------------------------------------------- */

typedef struct cc_lump_result {
  double generator_residual;   /* ||VUQV - QV||_inf */
  double diagram_residual;     /* jump chain of the lump vs lump of the jump chain */
  double fundamental_residual; /* U0 N V0 vs fundamental matrix of the lumped chain */
} cc_lump_result;

/* semigroup_residuals[i] = ||U e^{t_i Q} V - e^{t_i UQV}||_inf */
COLORCOAL_API cc_status cc_lump_check(int n, double x, const double* times, size_t count,
                                      cc_lump_result* out, double* semigroup_residuals);

COLORCOAL_API cc_status cc_parity_distribution(int k, double x, cc_parity rho0, double* even,
                                               double* odd);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef enum cc_sim_mode { CC_SIM_FULL = 0, CC_SIM_LUMPED = 1, CC_SIM_CONDITIONAL = 2 } cc_sim_mode;

typedef struct cc_sim_config {
  int n;
  int n1;
  double x;
  uint64_t replicates;
  uint64_t seed;
  cc_sim_mode mode;
  cc_parity target;
  const double* ccdf_grid;
  size_t ccdf_grid_len;
  unsigned threads; /* 0 = hardware concurrency */
} cc_sim_config;

typedef struct cc_sim_summary {
  uint64_t seed;
  uint64_t replicates;
  double freq_white_root;
  double freq_black_root;
  double stderr_freq;
  double mean_time_any;
  double stderr_time_any;
  double mean_time_white;
  double stderr_time_white;
  double mean_time_black;
  double stderr_time_black;
} cc_sim_summary;

typedef struct cc_sim_report cc_sim_report;

COLORCOAL_API cc_status cc_simulate(const cc_sim_config* cfg, cc_sim_report** out);
COLORCOAL_API void cc_sim_report_destroy(cc_sim_report* r);
COLORCOAL_API cc_status cc_sim_report_summary(const cc_sim_report* r, cc_sim_summary* out);
COLORCOAL_API size_t cc_sim_report_ccdf_size(const cc_sim_report* r);
COLORCOAL_API cc_status cc_sim_report_ccdf_point(const cc_sim_report* r, size_t i, double* t,
                                                 double* value);
/* Fraction of replicates with even parity after k events, k < n. */
COLORCOAL_API size_t cc_sim_report_parity_size(const cc_sim_report* r);
COLORCOAL_API cc_status cc_sim_report_parity_even(const cc_sim_report* r, size_t k,
                                                  double* fraction);

/* ---- Wright-Fisher ----------------------------------------------------- */

typedef struct cc_wf_config {
  int population;
  int n_black;
  int n_white;
  uint64_t replicates;
  uint64_t seed;
  unsigned threads;
} cc_wf_config;

typedef struct cc_wf_summary {
  uint64_t replicates;
  double mean_tmrca_generations;
  double mean_tmrca_coalescent;
  double stderr_tmrca_coalescent;
  double freq_black_root;
  double freq_white_root;
  double stderr_freq;
  double limit_tmrca;
  double limit_p_black_root;
} cc_wf_summary;

COLORCOAL_API cc_status cc_wright_fisher(const cc_wf_config* cfg, double x, cc_wf_summary* out);

/* children[i] nonzero = black. */
COLORCOAL_API cc_status cc_parent_color_posterior(double p, double q, const int* children,
                                                  size_t count, double prior_black,
                                                  double* post_black, double* post_white);

#ifdef __cplusplus
}
#endif

#endif /* COLORCOAL_H */
