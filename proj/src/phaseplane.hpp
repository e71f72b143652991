#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "reaction.hpp"
#include "trial.hpp"

namespace stefanfront {

struct NoTravelingWave : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampled solution p(q) of the phase-plane problem
///   p dp/dq - c p + f(q) = 0,  p(1) = 0,  p > 0 in (0,1),
/// obtained by backward shooting from the saddle at q=1.
struct PhaseProfile {
    double c = 0.0;
    double kappa = 0.0;
    double mu = 0.0;  // saddle slope: positive root of mu^2 + c mu + f'(1) = 0
    std::vector<double> q;
    std::vector<double> p;
    std::optional<double> touchdown;  // interior q* where p reached 0
    bool degenerate_saddle = false;   // f'(1)=0 fallback start was used

    /// p at q=0; throws if the profile touched down before reaching 0.
    double p0() const;
};

/// Integrate dp/dq = c - f(q)/p backward from q = 1-eps with the analytic
/// start p = mu*eps (or the degenerate-saddle fallback sqrt(2 int_{1-eps}^1 f)
/// when f'(1) = 0). Internally the equation is advanced in v = p^2/2, whose
/// right-hand side c*sqrt(2v) - f(q) stays bounded through touchdowns.
/// The profile is sampled on a uniform n_steps grid over [0,1].
PhaseProfile shoot_profile(const ReactionTerm& f, double c, double kappa_hint,
                           double eps = 1e-8, int n_steps = 2001);

struct SpeedResult {
    double c_star = 0.0;
    double c_lo = 0.0, c_hi = 0.0;   // final bisection bracket
    double residual = 0.0;           // |p(0; c_star) - c_star/kappa|
    double c_rd_reference = 0.0;     // standard (kappa = inf) speed, same f
    PhaseProfile profile;
};

/// Speed of the standard reaction-diffusion front (the kappa->inf limit),
/// found by bisecting between "trajectory reaches q=0 with p(0)>0" and
/// "trajectory touches down". Used as the upper bracket for stefan_speed.
double standard_speed(const ReactionTerm& f, double tol = 1e-8);

/// The Stefan front speed: the root of G(c) = p(0;c) - c/kappa (G := -1 on
/// touchdown), bisected inside [tol, c_rd]. Throws NoTravelingWave when no
/// sign change exists.
SpeedResult stefan_speed(const ReactionTerm& f, double kappa, double tol = 1e-8,
                         double c_rd_hint = 0.0);

/// Reconstruct the optimizing trial function
///   g-hat(q) = exp(-c int_0^q ds/p(s)),  h-hat = (c/p) g-hat
/// from a touchdown-free profile by cumulative trapezoidal integration.
/// The returned trial is in sampled form; h-hat at q=1 (where p=0) is
/// extrapolated flat and is not used by the bound quadratures.
TrialFunction optimal_g(const PhaseProfile& profile);

}  // namespace stefanfront
