/* stefanfront: spreading speeds of reaction-diffusion fronts with Stefan
 * free-boundary conditions.
 *
 * C interface to the solver library. All functions that can fail return an
 * stf_status; 0 means success. On failure a thread-local message is available
 * from stf_last_error(). Objects returned through handle out-parameters are
 * owned by the caller and released with the matching *_free function.
 * Handles are immutable after creation and may be shared across threads.
 */
#ifndef STEFANFRONT_H
#define STEFANFRONT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stf_status {
    STF_OK = 0,
    STF_ERR_INVALID_ARGUMENT = 1, /* bad parameter or precondition violation */
    STF_ERR_NO_WAVE = 2,          /* no traveling wave detected */
    STF_ERR_NUMERICAL = 3,        /* tolerance not met / instability / divergence */
    STF_ERR_UNKNOWN = 4
} stf_status;

/* Message for the most recent failure on this thread. */
const char* stf_last_error(void);

const char* stf_version(void);

/* ---- reaction terms f(u) on [0,1] ------------------------------------- */

typedef struct stf_reaction stf_reaction;

typedef struct stf_reaction_info {
    char case_label; /* 'A' monostable, 'B' bistable, 'C' combustion,
                        'D' degenerate (f'(0)=0), 'O' other */
    double fprime0;
    double fprime1_left;
    double integral01;
} stf_reaction_info;

/* Builtins: "fisher" (no params), "mkpp" (m >= 1),
 * "combustion" (a in (0,1), optional shape >= 1),
 * "bistable_cubic" (a in (0,1)).
 * keys/values hold n named parameters (both may be NULL when n = 0). */
stf_status stf_reaction_builtin(const char* name, const char* const* keys,
                                const double* values, int n, stf_reaction** out);

/* JSON schema: {"type":"builtin","name":...,"params":{...}}
 *            | {"type":"polynomial","coefficients":[c0,c1,...]}
 *            | {"type":"piecewise","pieces":[{"from":..,"to":..,
 *                                             "coefficients":[...]},...]}
 * Polynomials are in u; pieces must cover [0,1] contiguously. f(0) and f(1)
 * must vanish to 1e-9. */
stf_status stf_reaction_from_json(const char* json_text, stf_reaction** out);

void stf_reaction_free(stf_reaction* r);

stf_status stf_reaction_eval(const stf_reaction* r, double u, double* out);
stf_status stf_reaction_info_get(const stf_reaction* r, stf_reaction_info* out);

/* Re-derive the case label from sign patterns on a grid_n-point grid
 * (grid_n >= 256) plus endpoint derivatives. */
stf_status stf_reaction_classify(const stf_reaction* r, int grid_n, char* label_out);

/* ---- numerical kernels ------------------------------------------------- */

/* Gauss hypergeometric 2F1(a,b;c;z) for z <= 0 or |z| < 1. */
stf_status stf_hyp2f1(double a, double b, double c, double z, double* out);

typedef struct stf_quad_result {
    double value;
    double abs_error;
    long evaluations;
    int converged;
} stf_quad_result;

/* Adaptive Gauss-Kronrod integration of fn over [lo, hi]. */
stf_status stf_integrate(double (*fn)(double x, void* ctx), void* ctx, double lo,
                         double hi, double rel_tol, stf_quad_result* out);

/* ---- phase-plane shooting ---------------------------------------------- */

typedef struct stf_profile stf_profile;

typedef struct stf_profile_info {
    double c;
    double kappa;
    double mu;          /* saddle slope at q=1 */
    double p0;          /* p at q=0 (0 when touched down) */
    int has_touchdown;
    double touchdown_q;
    int degenerate_saddle;
    long n;             /* number of samples */
} stf_profile_info;

/* Integrate the traveling-wave phase plane p dp/dq - c p + f(q) = 0 backward
 * from the saddle at q=1; the profile is sampled on n_steps points. */
stf_status stf_shoot_profile(const stf_reaction* r, double c, double kappa_hint,
                             double eps, long n_steps, stf_profile** out);

stf_status stf_profile_info_get(const stf_profile* p, stf_profile_info* out);

/* q and p must each hold info.n doubles. */
stf_status stf_profile_copy(const stf_profile* p, double* q, double* pvals);

void stf_profile_free(stf_profile* p);

typedef struct stf_speed_result {
    double c_star;
    double c_lo, c_hi;        /* final bisection bracket */
    double residual;          /* |p(0;c*) - c*/kappa| */
    double c_rd_reference;    /* standard (kappa -> inf) front speed */
} stf_speed_result;

/* The Stefan front speed at a given kappa: bisection on
 * p(0;c) = c/kappa inside [tol, c_rd]. profile_out may be NULL. */
stf_status stf_stefan_speed(const stf_reaction* r, double kappa, double tol,
                            stf_speed_result* out, stf_profile** profile_out);

/* ---- variational bounds ------------------------------------------------ */

typedef struct stf_trial stf_trial;

/* Families: "linear" (theta = {lambda in (0,1)}), "exp" (lambda > 0),
 * "rational" (lambda > 0), "zfk" (no theta; lambda = kappa),
 * "power_pair" (theta = {alpha in (0,1)}; uses kappa). */
stf_status stf_trial_make(const char* family, const double* theta, int n_theta,
                          double kappa, stf_trial** out);

/* The reconstructed optimizer g-hat from a touchdown-free Stefan profile. */
stf_status stf_optimal_g(const stf_profile* p, stf_trial** out);

stf_status stf_trial_eval(const stf_trial* t, double q, double* g, double* h);

void stf_trial_free(stf_trial* t);

typedef struct stf_bound_result {
    double c_lower;
    double numerator;   /* 2 int f g */
    double denominator; /* int g^2/h + 1/kappa^2 */
    double kappa;
    char trial_id[32];
    double theta[4];
    int n_theta;
    double closed_form_c; /* NaN when not applicable */
    double paper_c1;      /* NaN when not applicable */
} stf_bound_result;

/* Lower bound c^2 >= 2 int f g / (int g^2/h + 1/kappa^2). kappa may be
 * INFINITY, which drops the 1/kappa^2 term (standard problem). */
stf_status stf_bound_value(const stf_reaction* r, double kappa, const stf_trial* t,
                           stf_bound_result* out);

/* c >= kappa/(1+kappa) sqrt(2 int f); cases A, C, D only. */
stf_status stf_zfk_bound(const stf_reaction* r, double kappa, stf_bound_result* out);

/* Fisher bounds: the linear trial in closed form (with the published
 * 0.23141 k/(1+0.0556737 k^2) value attached as paper_c1), and the
 * power-pair trial with its closed hypergeometric form attached. */
stf_status stf_fisher_bound_simple(double kappa, double lambda, stf_bound_result* out);
stf_status stf_fisher_bound_hyper(double kappa, stf_bound_result* out);

/* Maximize the bound over theta in [theta_lo, theta_hi] for a 1-parameter
 * family. */
stf_status stf_optimize_bound(const stf_reaction* r, double kappa, const char* family,
                              double theta_lo, double theta_hi, stf_bound_result* out);

/* Feynman-Hellmann sensitivities of c^2 (see the library documentation). */
stf_status stf_sensitivity_kappa(const stf_reaction* r, double kappa, double* out);
stf_status stf_sensitivity_m(double kappa, double m, double* out);

/* ---- free-boundary PDE simulation -------------------------------------- */

typedef struct stf_trajectory stf_trajectory;

typedef struct stf_sim_params {
    double kappa;
    double L0;
    double amplitude;   /* u0 = amplitude * cos(pi x / (2 L0)) when no callback */
    long n_xi;          /* >= 201 */
    double dt;          /* 0 -> stability bound 0.4 (dxi L_min)^2 */
    double t_end;
    double L_min_floor; /* 0 -> L0 */
} stf_sim_params;

enum { STF_OUTCOME_SPREADING = 0, STF_OUTCOME_VANISHING = 1, STF_OUTCOME_UNDECIDED = 2 };

/* u0 may be NULL (cosine initial data scaled by params->amplitude). */
stf_status stf_simulate(const stf_reaction* r, const stf_sim_params* params,
                        double (*u0)(double x, void* ctx), void* u0_ctx,
                        stf_trajectory** out);

long stf_trajectory_size(const stf_trajectory* t);
stf_status stf_trajectory_copy(const stf_trajectory* t, double* times, double* L,
                               double* Ldot);
long stf_trajectory_profile_size(const stf_trajectory* t);
stf_status stf_trajectory_profile_copy(const stf_trajectory* t, double* xi, double* u);
stf_status stf_trajectory_outcome(const stf_trajectory* t, int* outcome);

/* Mean Ldot over the trailing window (fraction of the run, in (0, 0.5]);
 * cross-checked against a linear fit of L(t) to 1%. */
stf_status stf_measure_speed(const stf_trajectory* t, double window_fraction, double* out);

void stf_trajectory_free(stf_trajectory* t);

/* ---- acceptance selftest ------------------------------------------------ */

/* Run the acceptance suite, printing one PASS/FAIL line per criterion to
 * stdout. n_failed receives the number of failing criteria. */
stf_status stf_selftest(int* n_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STEFANFRONT_H */
