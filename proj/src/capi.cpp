// Glue between the public C interface and the C++ core.
#include "stefanfront.h"

#include <cmath>
#include <cstring>
#include <string>

#include "hyp2f1.hpp"
#include "pdesim.hpp"
#include "phaseplane.hpp"
#include "quadrature.hpp"
#include "reaction.hpp"
#include "selftest.hpp"
#include "trial.hpp"
#include "varbound.hpp"

using namespace stefanfront;

struct stf_reaction {
    ReactionTerm term;
};
struct stf_profile {
    PhaseProfile profile;
};
struct stf_trial {
    TrialFunction trial;
};
struct stf_trajectory {
    SimTrajectory traj;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
stf_status guarded(Fn&& fn) {
    try {
        fn();
        return STF_OK;
    } catch (const NoTravelingWave& e) {
        set_error(e.what());
        return STF_ERR_NO_WAVE;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return STF_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return STF_ERR_NUMERICAL;
    } catch (...) {
        set_error("unknown error");
        return STF_ERR_UNKNOWN;
    }
}

stf_status require(bool ok, const char* msg) {
    if (!ok) {
        set_error(msg);
        return STF_ERR_INVALID_ARGUMENT;
    }
    return STF_OK;
}

void fill_bound(const BoundResult& b, stf_bound_result* out) {
    out->c_lower = b.c_lower;
    out->numerator = b.numerator;
    out->denominator = b.denominator;
    out->kappa = b.kappa;
    std::snprintf(out->trial_id, sizeof(out->trial_id), "%s", b.trial_id.c_str());
    out->n_theta = static_cast<int>(std::min<size_t>(b.theta.size(), 4));
    for (int i = 0; i < 4; ++i) {
        out->theta[i] = i < out->n_theta ? b.theta[i] : 0.0;
    }
    const auto cf = b.diagnostics.find("closed_form_c");
    const auto pc = b.diagnostics.find("paper_c1");
    out->closed_form_c = cf == b.diagnostics.end() ? NAN : cf->second;
    out->paper_c1 = pc == b.diagnostics.end() ? NAN : pc->second;
}

}  // namespace

extern "C" {

const char* stf_last_error(void) { return g_last_error.c_str(); }

const char* stf_version(void) { return "0.1.0"; }

stf_status stf_reaction_builtin(const char* name, const char* const* keys,
                                const double* values, int n, stf_reaction** out) {
    if (auto s = require(name && out && n >= 0 && (n == 0 || (keys && values)),
                         "stf_reaction_builtin: bad arguments"))
        return s;
    return guarded([&] {
        std::map<std::string, double> params;
        for (int i = 0; i < n; ++i) params[keys[i]] = values[i];
        *out = new stf_reaction{ReactionTerm::builtin(name, params)};
    });
}

stf_status stf_reaction_from_json(const char* json_text, stf_reaction** out) {
    if (auto s = require(json_text && out, "stf_reaction_from_json: bad arguments")) return s;
    return guarded([&] { *out = new stf_reaction{ReactionTerm::from_json(json_text)}; });
}

void stf_reaction_free(stf_reaction* r) { delete r; }

stf_status stf_reaction_eval(const stf_reaction* r, double u, double* out) {
    if (auto s = require(r && out, "stf_reaction_eval: bad arguments")) return s;
    return guarded([&] { *out = r->term(u); });
}

stf_status stf_reaction_info_get(const stf_reaction* r, stf_reaction_info* out) {
    if (auto s = require(r && out, "stf_reaction_info_get: bad arguments")) return s;
    out->case_label = case_label_char(r->term.label());
    out->fprime0 = r->term.fprime0();
    out->fprime1_left = r->term.fprime1_left();
    out->integral01 = r->term.integral01();
    return STF_OK;
}

stf_status stf_reaction_classify(const stf_reaction* r, int grid_n, char* label_out) {
    if (auto s = require(r && label_out, "stf_reaction_classify: bad arguments")) return s;
    return guarded([&] { *label_out = case_label_char(classify(r->term, grid_n)); });
}

stf_status stf_hyp2f1(double a, double b, double c, double z, double* out) {
    if (auto s = require(out != nullptr, "stf_hyp2f1: bad arguments")) return s;
    return guarded([&] { *out = hyp2f1(a, b, c, z); });
}

stf_status stf_integrate(double (*fn)(double, void*), void* ctx, double lo, double hi,
                         double rel_tol, stf_quad_result* out) {
    if (auto s = require(fn && out, "stf_integrate: bad arguments")) return s;
    return guarded([&] {
        const QuadResult q = integrate([fn, ctx](double x) { return fn(x, ctx); }, lo, hi,
                                       rel_tol);
        out->value = q.value;
        out->abs_error = q.abs_error;
        out->evaluations = q.evaluations;
        out->converged = q.converged ? 1 : 0;
        if (!q.converged) throw std::runtime_error("integrate: tolerance not met");
    });
}

stf_status stf_shoot_profile(const stf_reaction* r, double c, double kappa_hint, double eps,
                             long n_steps, stf_profile** out) {
    if (auto s = require(r && out, "stf_shoot_profile: bad arguments")) return s;
    return guarded([&] {
        *out = new stf_profile{
            shoot_profile(r->term, c, kappa_hint, eps, static_cast<int>(n_steps))};
    });
}

stf_status stf_profile_info_get(const stf_profile* p, stf_profile_info* out) {
    if (auto s = require(p && out, "stf_profile_info_get: bad arguments")) return s;
    const PhaseProfile& prof = p->profile;
    out->c = prof.c;
    out->kappa = prof.kappa;
    out->mu = prof.mu;
    out->p0 = prof.touchdown ? 0.0 : prof.p.front();
    out->has_touchdown = prof.touchdown ? 1 : 0;
    out->touchdown_q = prof.touchdown.value_or(0.0);
    out->degenerate_saddle = prof.degenerate_saddle ? 1 : 0;
    out->n = static_cast<long>(prof.q.size());
    return STF_OK;
}

stf_status stf_profile_copy(const stf_profile* p, double* q, double* pvals) {
    if (auto s = require(p && q && pvals, "stf_profile_copy: bad arguments")) return s;
    std::memcpy(q, p->profile.q.data(), p->profile.q.size() * sizeof(double));
    std::memcpy(pvals, p->profile.p.data(), p->profile.p.size() * sizeof(double));
    return STF_OK;
}

void stf_profile_free(stf_profile* p) { delete p; }

stf_status stf_stefan_speed(const stf_reaction* r, double kappa, double tol,
                            stf_speed_result* out, stf_profile** profile_out) {
    if (auto s = require(r && out, "stf_stefan_speed: bad arguments")) return s;
    return guarded([&] {
        SpeedResult sr = stefan_speed(r->term, kappa, tol);
        out->c_star = sr.c_star;
        out->c_lo = sr.c_lo;
        out->c_hi = sr.c_hi;
        out->residual = sr.residual;
        out->c_rd_reference = sr.c_rd_reference;
        if (profile_out) *profile_out = new stf_profile{std::move(sr.profile)};
    });
}

stf_status stf_trial_make(const char* family, const double* theta, int n_theta, double kappa,
                          stf_trial** out) {
    if (auto s = require(family && out && n_theta >= 0 && (n_theta == 0 || theta),
                         "stf_trial_make: bad arguments"))
        return s;
    return guarded([&] {
        std::vector<double> th(theta, theta + n_theta);
        if (th.empty()) th = trial_default_theta(family, kappa);
        *out = new stf_trial{make_trial(family, th, kappa)};
    });
}

stf_status stf_optimal_g(const stf_profile* p, stf_trial** out) {
    if (auto s = require(p && out, "stf_optimal_g: bad arguments")) return s;
    return guarded([&] { *out = new stf_trial{optimal_g(p->profile)}; });
}

stf_status stf_trial_eval(const stf_trial* t, double q, double* g, double* h) {
    if (auto s = require(t && g && h, "stf_trial_eval: bad arguments")) return s;
    return guarded([&] {
        *g = t->trial.eval_g(q);
        *h = t->trial.eval_h(q);
    });
}

void stf_trial_free(stf_trial* t) { delete t; }

stf_status stf_bound_value(const stf_reaction* r, double kappa, const stf_trial* t,
                           stf_bound_result* out) {
    if (auto s = require(r && t && out, "stf_bound_value: bad arguments")) return s;
    return guarded([&] { fill_bound(bound_value(r->term, kappa, t->trial), out); });
}

stf_status stf_zfk_bound(const stf_reaction* r, double kappa, stf_bound_result* out) {
    if (auto s = require(r && out, "stf_zfk_bound: bad arguments")) return s;
    return guarded([&] { fill_bound(zfk_bound(r->term, kappa), out); });
}

stf_status stf_fisher_bound_simple(double kappa, double lambda, stf_bound_result* out) {
    if (auto s = require(out != nullptr, "stf_fisher_bound_simple: bad arguments")) return s;
    return guarded([&] { fill_bound(fisher_bound_simple(kappa, lambda), out); });
}

stf_status stf_fisher_bound_hyper(double kappa, stf_bound_result* out) {
    if (auto s = require(out != nullptr, "stf_fisher_bound_hyper: bad arguments")) return s;
    return guarded([&] { fill_bound(fisher_bound_hyper(kappa), out); });
}

stf_status stf_optimize_bound(const stf_reaction* r, double kappa, const char* family,
                              double theta_lo, double theta_hi, stf_bound_result* out) {
    if (auto s = require(r && family && out, "stf_optimize_bound: bad arguments")) return s;
    return guarded(
        [&] { fill_bound(optimize_bound(r->term, kappa, family, {theta_lo, theta_hi}), out); });
}

stf_status stf_sensitivity_kappa(const stf_reaction* r, double kappa, double* out) {
    if (auto s = require(r && out, "stf_sensitivity_kappa: bad arguments")) return s;
    return guarded([&] { *out = sensitivity_kappa(r->term, kappa); });
}

stf_status stf_sensitivity_m(double kappa, double m, double* out) {
    if (auto s = require(out != nullptr, "stf_sensitivity_m: bad arguments")) return s;
    return guarded([&] { *out = sensitivity_m(kappa, m); });
}

stf_status stf_simulate(const stf_reaction* r, const stf_sim_params* params,
                        double (*u0)(double, void*), void* u0_ctx, stf_trajectory** out) {
    if (auto s = require(r && params && out, "stf_simulate: bad arguments")) return s;
    return guarded([&] {
        SimConfig cfg;
        cfg.f = r->term;
        cfg.kappa = params->kappa;
        cfg.L0 = params->L0;
        cfg.n_xi = static_cast<int>(params->n_xi);
        cfg.dt = params->dt;
        cfg.t_end = params->t_end;
        cfg.L_min_floor = params->L_min_floor;
        if (u0) {
            cfg.u0 = [u0, u0_ctx](double x) { return u0(x, u0_ctx); };
        } else {
            cfg.u0 = cosine_initial(params->amplitude, params->L0);
        }
        *out = new stf_trajectory{simulate(cfg)};
    });
}

long stf_trajectory_size(const stf_trajectory* t) {
    return t ? static_cast<long>(t->traj.times.size()) : 0;
}

stf_status stf_trajectory_copy(const stf_trajectory* t, double* times, double* L,
                               double* Ldot) {
    if (auto s = require(t && times && L && Ldot, "stf_trajectory_copy: bad arguments"))
        return s;
    const size_t n = t->traj.times.size();
    std::memcpy(times, t->traj.times.data(), n * sizeof(double));
    std::memcpy(L, t->traj.L_series.data(), n * sizeof(double));
    std::memcpy(Ldot, t->traj.Ldot_series.data(), n * sizeof(double));
    return STF_OK;
}

long stf_trajectory_profile_size(const stf_trajectory* t) {
    return t ? static_cast<long>(t->traj.xi_grid.size()) : 0;
}

stf_status stf_trajectory_profile_copy(const stf_trajectory* t, double* xi, double* u) {
    if (auto s = require(t && xi && u, "stf_trajectory_profile_copy: bad arguments")) return s;
    const size_t n = t->traj.xi_grid.size();
    std::memcpy(xi, t->traj.xi_grid.data(), n * sizeof(double));
    std::memcpy(u, t->traj.final_u.data(), n * sizeof(double));
    return STF_OK;
}

stf_status stf_trajectory_outcome(const stf_trajectory* t, int* outcome) {
    if (auto s = require(t && outcome, "stf_trajectory_outcome: bad arguments")) return s;
    switch (t->traj.outcome) {
        case Outcome::spreading: *outcome = STF_OUTCOME_SPREADING; break;
        case Outcome::vanishing: *outcome = STF_OUTCOME_VANISHING; break;
        default: *outcome = STF_OUTCOME_UNDECIDED; break;
    }
    return STF_OK;
}

stf_status stf_measure_speed(const stf_trajectory* t, double window_fraction, double* out) {
    if (auto s = require(t && out, "stf_measure_speed: bad arguments")) return s;
    return guarded([&] { *out = measure_speed(t->traj, window_fraction); });
}

void stf_trajectory_free(stf_trajectory* t) { delete t; }

stf_status stf_selftest(int* n_failed) {
    if (auto s = require(n_failed != nullptr, "stf_selftest: bad arguments")) return s;
    return guarded([&] { *n_failed = run_acceptance_suite(stdout); });
}

}  // extern "C"
