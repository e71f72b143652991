#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stefanfront {

/// A positive decreasing trial function g on [0,1] with g(0)=1 and
/// h = -g' > 0, used in the variational speed bound. `weight` evaluates
/// g^2/h in a closed form that stays finite where g and h both vanish.
///
/// Sampled trials (the reconstructed optimal g-hat) carry grids instead of
/// callables; for those, integrals are taken as trapezoid sums and the
/// g^2/h weight simplifies to g*p/c on the phase-plane samples.
struct TrialFunction {
    std::string id;
    std::vector<double> theta;
    std::function<double(double)> g;
    std::function<double(double)> h;
    std::function<double(double)> weight;
    std::vector<double> breakpoints;

    bool sampled = false;
    std::vector<double> qs, gs, hs, ps;
    double c = 0.0;  // wave speed of the generating profile (sampled form)

    double eval_g(double q) const;
    double eval_h(double q) const;
};

/// Closed-form families (theta is the 1-vector {lambda} or {alpha}):
///   linear      g = 1 - lambda q,            lambda in (0,1)
///   exp         g = exp(-lambda q),          lambda > 0
///   rational    g = 1/(1 + lambda q),        lambda > 0
///   zfk         rational with lambda = kappa (theta ignored)
///   power_pair  g = ((1-q)/(1+kappa q))^alpha, alpha in (0,1)
/// kappa is only consulted by the zfk and power_pair families.
TrialFunction make_trial(const std::string& family, const std::vector<double>& theta,
                         double kappa);

/// Family names of the closed-form trial catalog.
const std::vector<std::string>& trial_catalog();

/// Default theta for a family at a given kappa (power_pair: kappa/(1+kappa)).
std::vector<double> trial_default_theta(const std::string& family, double kappa);

}  // namespace stefanfront
