#include "selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "hyp2f1.hpp"
#include "pdesim.hpp"
#include "phaseplane.hpp"
#include "reaction.hpp"
#include "trial.hpp"
#include "varbound.hpp"

namespace stefanfront {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// The builtin matrix with f >= 0 (cases A, C, D) used by criteria 4, 5, 8.
std::vector<std::pair<std::string, ReactionTerm>> nonnegative_builtins() {
    std::vector<std::pair<std::string, ReactionTerm>> v;
    v.emplace_back("fisher", ReactionTerm::builtin("fisher"));
    v.emplace_back("mkpp(1.5)", ReactionTerm::builtin("mkpp", {{"m", 1.5}}));
    v.emplace_back("mkpp(2)", ReactionTerm::builtin("mkpp", {{"m", 2.0}}));
    v.emplace_back("mkpp(3)", ReactionTerm::builtin("mkpp", {{"m", 3.0}}));
    v.emplace_back("combustion(0.3)", ReactionTerm::builtin("combustion", {{"a", 0.3}}));
    return v;
}

using Check = std::function<CriterionResult()>;

CriterionResult c01_kpp_limit() {
    CriterionResult r{1, "kpp-limit: stefan_speed(fisher, 1e6) = 2 +- 1e-3", false, "", 0};
    const SpeedResult sr = stefan_speed(ReactionTerm::builtin("fisher"), 1e6, 1e-6);
    r.pass = std::abs(sr.c_star - 2.0) <= 1e-3;
    r.detail = fmt("c*=%.6f, |c*-2|=%.4g (c_rd ref %.4f)", sr.c_star,
                   std::abs(sr.c_star - 2.0), sr.c_rd_reference);
    return r;
}

CriterionResult c02_vanishing_limit() {
    CriterionResult r{2, "vanishing-limit: stefan_speed(fisher, 1e-4) <= 1e-2", false, "", 0};
    const SpeedResult sr = stefan_speed(ReactionTerm::builtin("fisher"), 1e-4, 1e-8);
    r.pass = sr.c_star <= 1e-2;
    r.detail = fmt("c*=%.3e", sr.c_star);
    return r;
}

CriterionResult c03_variational_equality() {
    CriterionResult r{3, "variational-equality: bound(ghat) = c*^2 to 1e-4 rel", true, "", 0};
    double worst = 0.0;
    std::vector<std::pair<std::string, ReactionTerm>> cases;
    cases.emplace_back("fisher", ReactionTerm::builtin("fisher"));
    cases.emplace_back("combustion(0.3)", ReactionTerm::builtin("combustion", {{"a", 0.3}}));
    for (const auto& [name, f] : cases) {
        double c_rd = 0.0;
        for (double kappa : {0.5, 1.0, 5.0}) {
            const SpeedResult sr = stefan_speed(f, kappa, 1e-10, c_rd);
            c_rd = sr.c_rd_reference;
            const BoundResult b = bound_value(f, kappa, optimal_g(sr.profile));
            const double c2 = sr.c_star * sr.c_star;
            const double rel = std::abs(b.numerator / b.denominator - c2) / c2;
            worst = std::max(worst, rel);
            if (rel > 1e-4) {
                r.pass = false;
                r.detail += fmt("[%s k=%g rel=%.3g] ", name.c_str(), kappa, rel);
            }
        }
    }
    if (r.pass) r.detail = fmt("worst rel dev %.3g", worst);
    return r;
}

CriterionResult c04_soundness_sandwich() {
    CriterionResult r{4, "soundness: bound <= c* + 1e-6 for all catalog trials", true, "", 0};
    double worst_margin = -1e300;
    for (const auto& [name, f] : nonnegative_builtins()) {
        double c_rd = 0.0;
        for (double kappa : {0.1, 1.0, 10.0}) {
            const SpeedResult sr = stefan_speed(f, kappa, 1e-8, c_rd);
            c_rd = sr.c_rd_reference;
            for (const auto& family : trial_catalog()) {
                const auto theta = trial_default_theta(family, kappa);
                const BoundResult b = bound_value(f, kappa, make_trial(family, theta, kappa));
                const double margin = b.c_lower - sr.c_star;
                worst_margin = std::max(worst_margin, margin);
                if (margin > 1e-6) {
                    r.pass = false;
                    r.detail += fmt("[%s k=%g %s viol=%.3g] ", name.c_str(), kappa,
                                    family.c_str(), margin);
                }
            }
        }
    }
    if (r.pass) r.detail = fmt("max (bound - c*) = %.3g", worst_margin);
    return r;
}

CriterionResult c05_zfk_bound() {
    CriterionResult r{5, "generalized-zfk: c* >= kappa/(1+kappa) c_ZFK", true, "", 0};
    double worst_margin = -1e300;
    for (const auto& [name, f] : nonnegative_builtins()) {
        double c_rd = 0.0;
        for (double kappa : {0.1, 1.0, 10.0}) {
            const SpeedResult sr = stefan_speed(f, kappa, 1e-8, c_rd);
            c_rd = sr.c_rd_reference;
            const BoundResult b = zfk_bound(f, kappa);
            const double margin = b.c_lower - sr.c_star;
            worst_margin = std::max(worst_margin, margin);
            if (margin > 1e-6) {
                r.pass = false;
                r.detail += fmt("[%s k=%g viol=%.3g] ", name.c_str(), kappa, margin);
            }
        }
    }
    if (r.pass) r.detail = fmt("max (zfk - c*) = %.3g", worst_margin);
    return r;
}

CriterionResult c06_hyper_crosscheck() {
    CriterionResult r{6, "hypergeometric bound: closed form = quadrature to 1e-6", true, "", 0};
    double worst = 0.0;
    for (double kappa : {0.25, 1.0, 4.0, 20.0}) {
        const BoundResult b = fisher_bound_hyper(kappa);
        const double rel = b.diagnostics.at("closed_vs_direct_rel");
        worst = std::max(worst, rel);
        if (rel > 1e-6) {
            r.pass = false;
            r.detail += fmt("[k=%g rel=%.3g] ", kappa, rel);
        }
    }
    if (r.pass) {
        r.detail = fmt("worst rel %.3g (printed closed form confirmed)", worst);
    } else {
        r.detail += "(quadrature value governs)";
    }
    return r;
}

CriterionResult c07_hyp2f1_kernel() {
    CriterionResult r{7, "2F1 kernel: ln2 value, z=0 normalization, (a,b) symmetry", true, "",
                      0};
    const double ln2 = std::log(2.0);
    const double v = hyp2f1(1.0, 1.0, 2.0, -1.0);
    if (std::abs(v - ln2) > 1e-12) {
        r.pass = false;
        r.detail += fmt("[2F1(1,1;2;-1)=%.15f vs ln2] ", v);
    }
    for (double a : {-1.5, 0.3, 2.0}) {
        if (hyp2f1(a, 0.7, 1.9, 0.0) != 1.0) {
            r.pass = false;
            r.detail += "[2F1(.,.;.;0) != 1] ";
        }
    }
    std::mt19937 rng(20240815u);
    std::uniform_real_distribution<double> par(-2.0, 2.0), cpar(0.5, 5.0), zpar(-3.0, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = par(rng), b = par(rng), c = cpar(rng), z = zpar(rng);
        const double d1 = hyp2f1(a, b, c, z);
        const double d2 = hyp2f1(b, a, c, z);
        const double rel = std::abs(d1 - d2) / std::max(1.0, std::abs(d1));
        worst = std::max(worst, rel);
    }
    if (worst > 1e-12) {
        r.pass = false;
        r.detail += fmt("[symmetry worst %.3g] ", worst);
    }
    if (r.pass) r.detail = fmt("symmetry worst rel %.3g", worst);
    return r;
}

CriterionResult c08_kappa_monotonicity() {
    CriterionResult r{8, "kappa-monotonicity: c* strictly increasing in kappa", true, "", 0};
    auto builtins = nonnegative_builtins();
    builtins.emplace_back("bistable_cubic(0.25)",
                          ReactionTerm::builtin("bistable_cubic", {{"a", 0.25}}));
    for (const auto& [name, f] : builtins) {
        double c_rd = 0.0;
        double prev = 0.0;
        for (double kappa : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
            const SpeedResult sr = stefan_speed(f, kappa, 1e-8, c_rd);
            c_rd = sr.c_rd_reference;
            if (!(sr.c_star > prev)) {
                r.pass = false;
                r.detail += fmt("[%s k=%g c=%.8f <= prev %.8f] ", name.c_str(), kappa,
                                sr.c_star, prev);
            }
            prev = sr.c_star;
        }
    }
    if (r.pass) r.detail = "strict on kappa in {0.1,...,100} for all builtins";
    return r;
}

CriterionResult c09_m_monotonicity() {
    CriterionResult r{9, "m-monotonicity: c* decreasing in m; dc^2/dm <= 0, FD match 2%", true,
                      "", 0};
    for (double kappa : {0.5, 2.0}) {
        double prev = 1e300;
        for (double m : {1.0, 1.5, 2.0, 3.0}) {
            const ReactionTerm f = ReactionTerm::builtin("mkpp", {{"m", m}});
            const SpeedResult sr = stefan_speed(f, kappa, 1e-10);
            if (!(sr.c_star < prev)) {
                r.pass = false;
                r.detail += fmt("[k=%g m=%g not decreasing] ", kappa, m);
            }
            prev = sr.c_star;
            const double sens = sensitivity_m(kappa, m);
            if (!(sens <= 0.0)) {
                r.pass = false;
                r.detail += fmt("[k=%g m=%g dc2/dm=%.3g > 0] ", kappa, m, sens);
            }
        }
    }
    // Finite-difference match at two representative points.
    const std::pair<double, double> fd_points[] = {{0.5, 1.0}, {2.0, 2.0}};
    for (const auto& [kappa, m] : fd_points) {
        const double h = 1e-3;
        auto c2 = [&](double mm) {
            const double c =
                stefan_speed(ReactionTerm::builtin("mkpp", {{"m", mm}}), kappa, 1e-10).c_star;
            return c * c;
        };
        const double fd = (c2(m + h) - c2(m - h)) / (2.0 * h);
        const double sens = sensitivity_m(kappa, m);
        const double rel = std::abs(sens - fd) / std::abs(fd);
        if (rel > 0.02) {
            r.pass = false;
            r.detail += fmt("[k=%g m=%g FD=%.6g formula=%.6g rel=%.3g] ", kappa, m, fd, sens,
                            rel);
        } else {
            r.detail += fmt("[k=%g m=%g rel=%.2g] ", kappa, m, rel);
        }
    }
    return r;
}

CriterionResult c10_feynman_hellmann() {
    CriterionResult r{10, "feynman-hellmann: dc^2/dkappa matches FD to 1% at fisher k=1",
                      false, "", 0};
    const ReactionTerm f = ReactionTerm::builtin("fisher");
    const double sens = sensitivity_kappa(f, 1.0);
    const double h = 1e-3;
    const double c_rd = standard_speed(f, 1e-8);
    auto c2 = [&](double k) {
        const double c = stefan_speed(f, k, 1e-10, c_rd).c_star;
        return c * c;
    };
    const double fd = (c2(1.0 + h) - c2(1.0 - h)) / (2.0 * h);
    const double rel = std::abs(sens - fd) / std::abs(fd);
    r.pass = rel <= 0.01 && sens > 0.0;
    r.detail = fmt("formula=%.6g FD=%.6g rel=%.3g", sens, fd, rel);
    return r;
}

CriterionResult c11_pde_ode_consistency() {
    CriterionResult r{11, "pde-ode: simulated speed within 2% at n_xi=801; order >= 1.7",
                      false, "", 0};
    const ReactionTerm f = ReactionTerm::builtin("fisher");
    const double c_ref = stefan_speed(f, 1.0, 1e-10).c_star;

    auto speed_at = [&](int n_xi) {
        SimConfig cfg;
        cfg.f = f;
        cfg.kappa = 1.0;
        cfg.L0 = 20.0;
        cfg.u0 = cosine_initial(1.0, cfg.L0);
        cfg.n_xi = n_xi;
        cfg.t_end = 110.0;
        const SimTrajectory traj = simulate(cfg);
        return measure_speed(traj, 0.25);
    };
    const double c201 = speed_at(201);
    const double c401 = speed_at(401);
    const double c801 = speed_at(801);
    const double rel801 = std::abs(c801 - c_ref) / c_ref;
    const double order = std::log2(std::abs(c201 - c401) / std::abs(c401 - c801));
    r.pass = rel801 <= 0.02 && order >= 1.7;
    r.detail = fmt("c_ref=%.6f c(201)=%.6f c(401)=%.6f c(801)=%.6f rel801=%.3g order=%.2f",
                   c_ref, c201, c401, c801, rel801, order);
    return r;
}

CriterionResult c12_dichotomy() {
    CriterionResult r{12, "dichotomy: reference configs spread and vanish respectively",
                      false, "", 0};
    SimConfig spread;
    spread.f = ReactionTerm::builtin("fisher");
    spread.kappa = 1.0;
    spread.L0 = 20.0;
    spread.u0 = cosine_initial(1.0, spread.L0);
    spread.n_xi = 201;
    spread.t_end = 110.0;
    const Outcome o1 = simulate(spread).outcome;

    SimConfig vanish;
    vanish.f = ReactionTerm::builtin("fisher");
    vanish.kappa = 0.02;
    vanish.L0 = 0.1;
    vanish.u0 = cosine_initial(0.01, vanish.L0);
    vanish.n_xi = 201;
    vanish.t_end = 0.05;
    const Outcome o2 = simulate(vanish).outcome;

    r.pass = o1 == Outcome::spreading && o2 == Outcome::vanishing;
    auto name = [](Outcome o) {
        return o == Outcome::spreading ? "spreading"
                                       : (o == Outcome::vanishing ? "vanishing" : "undecided");
    };
    r.detail = fmt("front-like run: %s; small-seed run: %s", name(o1), name(o2));
    return r;
}

CriterionResult c13_exact_bistable_profile() {
    CriterionResult r{13, "exact-bistable: p(q) = q(1-q)/sqrt(2) at c = sqrt(2)/4", false, "",
                      0};
    const double c = std::sqrt(2.0) / 4.0;
    const ReactionTerm f = ReactionTerm::builtin("bistable_cubic", {{"a", 0.25}});
    const PhaseProfile prof = shoot_profile(f, c, 1.0, 1e-8, 2001);
    if (prof.touchdown) {
        r.detail = "unexpected touchdown";
        return r;
    }
    double sup = 0.0;
    for (size_t j = 0; j < prof.q.size(); ++j) {
        const double exact = prof.q[j] * (1.0 - prof.q[j]) / std::sqrt(2.0);
        sup = std::max(sup, std::abs(prof.p[j] - exact));
    }
    r.pass = sup <= 1e-6;
    r.detail = fmt("sup-norm deviation %.3g", sup);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int only_id) {
    const std::vector<Check> checks = {
        c01_kpp_limit,        c02_vanishing_limit, c03_variational_equality,
        c04_soundness_sandwich, c05_zfk_bound,     c06_hyper_crosscheck,
        c07_hyp2f1_kernel,    c08_kappa_monotonicity, c09_m_monotonicity,
        c10_feynman_hellmann, c11_pde_ode_consistency, c12_dichotomy,
        c13_exact_bistable_profile};

    std::vector<CriterionResult> results;
    for (size_t i = 0; i < checks.size(); ++i) {
        if (only_id != 0 && only_id != static_cast<int>(i + 1)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = checks[i]();
        } catch (const std::exception& e) {
            r.id = static_cast<int>(i + 1);
            r.name = "criterion threw";
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

int run_acceptance_suite(std::FILE* out, int only_id) {
    const auto results = run_acceptance(only_id);
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        if (out) {
            std::fprintf(out, "[%s] criterion %2d  %-62s  %s  (%.2fs)\n",
                         r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                         r.seconds);
            std::fflush(out);
        }
    }
    if (out && only_id == 0) {
        std::fprintf(out, "%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
                     results.size());
    }
    return failed;
}

}  // namespace stefanfront
