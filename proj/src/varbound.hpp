#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reaction.hpp"
#include "trial.hpp"

namespace stefanfront {

/// A variational lower bound on the front speed:
///   c^2 >= numerator / denominator
///   numerator   = 2 int_0^1 f g dq
///   denominator = int_0^1 g^2/h dq + 1/kappa^2     (g(0) = 1 convention)
/// c_lower = sqrt(numerator/denominator) when the numerator is >= 0, else 0
/// (a negative numerator makes the inequality vacuous, not violated).
struct BoundResult {
    double c_lower = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double kappa = 0.0;
    std::string trial_id;
    std::vector<double> theta;
    std::map<std::string, double> diagnostics;
};

/// Evaluate the bound functional for a trial function. kappa may be
/// +infinity, which drops the 1/kappa^2 term and recovers the standard
/// reaction-diffusion bound. Sampled trials (g-hat) are integrated by
/// trapezoid sums with g^2/h taken as g*p/c.
BoundResult bound_value(const ReactionTerm& f, double kappa, const TrialFunction& trial,
                        double rel_tol = 1e-10);

/// Generalized ZFK bound c >= kappa/(1+kappa) * sqrt(2 int_0^1 f) for f >= 0
/// (cases A, C, D); rejects case-B reactions.
BoundResult zfk_bound(const ReactionTerm& f, double kappa);

/// Fisher bound from the linear trial g = 1 - lambda q, evaluated in closed
/// form. The published fit-like formula 0.23141 k/(1+0.0556737 k^2) is
/// attached as diagnostics["paper_c1"] for comparison; the direct functional
/// value governs.
BoundResult fisher_bound_simple(double kappa, double lambda = 0.22);

/// Fisher bound from g2 = ((1-q)/(1+kq))^(k/(1+k)). c_lower comes from the
/// direct quadrature of the bound functional; the closed hypergeometric form
/// is attached as diagnostics["closed_form_c"] together with the relative
/// difference diagnostics["closed_vs_direct_rel"].
BoundResult fisher_bound_hyper(double kappa);

/// Maximize the bound over a 1-parameter trial family on [theta_box]; returns
/// the best bound with the argmax written into theta. diagnostics["warning"]
/// is set to 1 when some evaluations failed and were skipped.
BoundResult optimize_bound(const ReactionTerm& f, double kappa, const std::string& family,
                           std::pair<double, double> theta_box);

/// dc^2/dkappa = (4/kappa^3) int f ghat / (int ghat^2/hhat + 1/kappa^2)^2,
/// with g-hat reconstructed from the Stefan profile at kappa. Positive for
/// every reaction term.
double sensitivity_kappa(const ReactionTerm& f, double kappa, double tol = 1e-10);

/// dc^2/dm for the mkpp family f = u^m (1-u):
///   2 int q^m (1-q) ln(q) ghat dq / (int ghat^2/hhat + 1/kappa^2)  <= 0.
double sensitivity_m(double kappa, double m, double tol = 1e-10);

}  // namespace stefanfront
