#include "varbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyp2f1.hpp"
#include "phaseplane.hpp"
#include "quadrature.hpp"
#include "rootopt.hpp"

namespace stefanfront {

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (size_t j = 1; j < x.size(); ++j) {
        acc += 0.5 * (x[j] - x[j - 1]) * (y[j] + y[j - 1]);
    }
    return acc;
}

double inv_kappa2(double kappa) {
    if (std::isinf(kappa)) return 0.0;
    if (!(kappa > 0.0)) throw std::invalid_argument("bound: requires kappa > 0");
    return 1.0 / (kappa * kappa);
}

BoundResult assemble(double numerator, double denominator, double kappa,
                     const TrialFunction& trial) {
    if (!(denominator > 0.0) || !std::isfinite(denominator) || !std::isfinite(numerator)) {
        throw std::runtime_error("bound: non-finite or non-positive functional pieces");
    }
    BoundResult r;
    r.numerator = numerator;
    r.denominator = denominator;
    r.kappa = kappa;
    r.trial_id = trial.id;
    r.theta = trial.theta;
    r.c_lower = numerator >= 0.0 ? std::sqrt(numerator / denominator) : 0.0;
    return r;
}

}  // namespace

BoundResult bound_value(const ReactionTerm& f, double kappa, const TrialFunction& trial,
                        double rel_tol) {
    const double invk2 = inv_kappa2(kappa);
    if (trial.sampled) {
        const auto& q = trial.qs;
        std::vector<double> fg(q.size()), gp(q.size());
        for (size_t j = 0; j < q.size(); ++j) {
            fg[j] = f(q[j]) * trial.gs[j];
            gp[j] = trial.gs[j] * trial.ps[j] / trial.c;
        }
        const double num = 2.0 * trapezoid(q, fg);
        const double den = trapezoid(q, gp) + invk2;
        return assemble(num, den, kappa, trial);
    }

    std::vector<double> breaks = f.breakpoints();
    breaks.insert(breaks.end(), trial.breakpoints.begin(), trial.breakpoints.end());

    const QuadResult qn = integrate_split([&](double q) { return f(q) * trial.g(q); }, 0.0, 1.0,
                                          breaks, rel_tol);
    const QuadResult qd = integrate_split(trial.weight, 0.0, 1.0, breaks, rel_tol);
    if (!qn.converged || !qd.converged) {
        throw std::runtime_error("bound: quadrature failed to reach tolerance");
    }
    return assemble(2.0 * qn.value, qd.value + invk2, kappa, trial);
}

BoundResult zfk_bound(const ReactionTerm& f, double kappa) {
    const CaseLabel label = f.label();
    if (label != CaseLabel::A && label != CaseLabel::C && label != CaseLabel::D) {
        throw std::invalid_argument(
            "zfk_bound: derivation requires f >= 0 on (0,1) (cases A, C, D); got case " +
            std::string(1, case_label_char(label)));
    }
    const double invk2 = inv_kappa2(kappa);
    const double prefactor = std::isinf(kappa) ? 1.0 : kappa / (1.0 + kappa);

    BoundResult r;
    r.numerator = 2.0 * f.integral01();
    r.denominator = std::isinf(kappa) ? 1.0 : (1.0 + kappa) * (1.0 + kappa) * invk2;
    r.kappa = kappa;
    r.trial_id = "zfk_closed";
    r.c_lower = prefactor * std::sqrt(2.0 * f.integral01());
    return r;
}

BoundResult fisher_bound_simple(double kappa, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("fisher_bound_simple: lambda must lie in (0,1)");
    }
    const double invk2 = inv_kappa2(kappa);
    // Closed-form polynomial integrals for f = q(1-q), g = 1 - lambda q:
    //   2 int f g = 1/3 - lambda/6
    //   int g^2/h = (1 - (1-lambda)^3) / (3 lambda^2)
    const double num = 1.0 / 3.0 - lambda / 6.0;
    const double den = (1.0 - std::pow(1.0 - lambda, 3)) / (3.0 * lambda * lambda) + invk2;

    BoundResult r;
    r.numerator = num;
    r.denominator = den;
    r.kappa = kappa;
    r.trial_id = "linear";
    r.theta = {lambda};
    r.c_lower = std::sqrt(num / den);
    r.diagnostics["paper_c1"] =
        std::isinf(kappa) ? 0.0 : 0.23141 * kappa / (1.0 + 0.0556737 * kappa * kappa);
    return r;
}

BoundResult fisher_bound_hyper(double kappa) {
    if (!(kappa > 0.0) || std::isinf(kappa)) {
        throw std::invalid_argument("fisher_bound_hyper: requires finite kappa > 0");
    }
    const ReactionTerm fisher = ReactionTerm::builtin("fisher");
    const double alpha = kappa / (1.0 + kappa);
    BoundResult direct = bound_value(fisher, kappa, make_trial("power_pair", {alpha}, kappa));
    direct.trial_id = "power_pair";

    // Closed form: c^2 >= 2 k^2 (1+k) [(3+4k)(2 - F1) - (2+k) F2]
    //                     / ((1+2k)(3+4k)(2 + 3k + k(1+k) F3))
    // with F1 = 2F1(1, k1; 3+k1; -k), F2 = 2F1(1, k1; 4+k1; -k),
    //      F3 = 2F1(1, k2; 3+k1; -k), k1 = k/(k+1), k2 = -1/(k+1).
    const double k = kappa;
    const double k1 = k / (k + 1.0);
    const double k2 = -1.0 / (k + 1.0);
    const double f1 = hyp2f1(1.0, k1, 3.0 + k1, -k);
    const double f2 = hyp2f1(1.0, k1, 4.0 + k1, -k);
    const double f3 = hyp2f1(1.0, k2, 3.0 + k1, -k);
    const double num = 2.0 * k * k * (1.0 + k) * ((3.0 + 4.0 * k) * (2.0 - f1) - (2.0 + k) * f2);
    const double den = (1.0 + 2.0 * k) * (3.0 + 4.0 * k) *
                       (2.0 + 3.0 * k + k * (1.0 + k) * f3);
    const double closed_c = std::sqrt(num / den);

    direct.diagnostics["closed_form_c"] = closed_c;
    direct.diagnostics["closed_vs_direct_rel"] =
        std::abs(closed_c - direct.c_lower) / std::max(direct.c_lower, 1e-300);
    return direct;
}

BoundResult optimize_bound(const ReactionTerm& f, double kappa, const std::string& family,
                           std::pair<double, double> theta_box) {
    const auto [lo, hi] = theta_box;
    if (!(lo < hi)) throw std::invalid_argument("optimize_bound: empty theta box");

    bool any_failed = false;
    auto objective = [&](double theta) {
        try {
            return bound_value(f, kappa, make_trial(family, {theta}, kappa)).c_lower;
        } catch (const std::exception&) {
            any_failed = true;
            return -1.0;
        }
    };
    const ScalarOpt best = maximize_scalar(objective, lo, hi, 1e-8 * (hi - lo));
    if (best.value < 0.0) {
        throw std::runtime_error("optimize_bound: no feasible trial in the theta box");
    }
    BoundResult r = bound_value(f, kappa, make_trial(family, {best.arg}, kappa));
    if (any_failed) r.diagnostics["warning"] = 1.0;
    return r;
}

double sensitivity_kappa(const ReactionTerm& f, double kappa, double tol) {
    if (!(kappa > 0.0) || std::isinf(kappa)) {
        throw std::invalid_argument("sensitivity_kappa: requires finite kappa > 0");
    }
    const SpeedResult sr = stefan_speed(f, kappa, tol);
    const TrialFunction ghat = optimal_g(sr.profile);
    const auto& q = ghat.qs;
    std::vector<double> fg(q.size()), gp(q.size());
    for (size_t j = 0; j < q.size(); ++j) {
        fg[j] = f(q[j]) * ghat.gs[j];
        gp[j] = ghat.gs[j] * ghat.ps[j] / ghat.c;
    }
    const double num = trapezoid(q, fg);
    const double den = trapezoid(q, gp) + 1.0 / (kappa * kappa);
    return 4.0 / (kappa * kappa * kappa) * num / (den * den);
}

double sensitivity_m(double kappa, double m, double tol) {
    if (!(m >= 1.0)) throw std::invalid_argument("sensitivity_m: requires m >= 1");
    const ReactionTerm f = ReactionTerm::builtin("mkpp", {{"m", m}});
    const SpeedResult sr = stefan_speed(f, kappa, tol);
    const TrialFunction ghat = optimal_g(sr.profile);
    const auto& q = ghat.qs;
    std::vector<double> integrand(q.size()), gp(q.size());
    for (size_t j = 0; j < q.size(); ++j) {
        // q^m (1-q) ln q -> 0 at both endpoints for m >= 1.
        integrand[j] = q[j] > 0.0 ? std::pow(q[j], m) * (1.0 - q[j]) * std::log(q[j]) *
                                        ghat.gs[j]
                                  : 0.0;
        gp[j] = ghat.gs[j] * ghat.ps[j] / ghat.c;
    }
    const double num = 2.0 * trapezoid(q, integrand);
    const double den = trapezoid(q, gp) + 1.0 / (kappa * kappa);
    return num / den;
}

}  // namespace stefanfront
