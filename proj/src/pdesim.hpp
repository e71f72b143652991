#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reaction.hpp"

namespace stefanfront {

/// Configuration for the free-boundary simulation of
///   u_t = u_xx + f(u),  u_x(0,t)=0,  u(L(t),t)=0,  dL/dt = -kappa u_x(L,t)
/// solved in front-fixed coordinates xi = x/L(t) on a uniform grid.
struct SimConfig {
    ReactionTerm f = ReactionTerm::builtin("fisher");
    double kappa = 1.0;
    double L0 = 10.0;
    /// Initial profile on [0, L0]; must satisfy u0 >= 0, u0(L0) = 0,
    /// u0'(0) = 0 and u0 <= 1 + 1e-9.
    std::function<double(double)> u0;
    int n_xi = 401;       // spatial nodes, >= 201
    double dt = 0.0;      // 0 -> the stability bound 0.4 (dxi L_min)^2
    double t_end = 50.0;
    double L_min_floor = 0.0;  // 0 -> L0; enters the dt stability bound
    int record_stride = 0;     // 0 -> about 4000 trajectory records
};

enum class Outcome { spreading, vanishing, undecided };

struct SimTrajectory {
    std::vector<double> times;
    std::vector<double> L_series;
    std::vector<double> Ldot_series;
    std::vector<double> xi_grid;
    std::vector<double> final_u;
    Outcome outcome = Outcome::undecided;
    double max_u_final = 0.0;
    double L0 = 0.0;
};

/// Cosine cap A cos(pi x / (2 L0)): the reference initial-data family.
std::function<double(double)> cosine_initial(double amplitude, double L0);

/// March the front-fixed system with explicit Heun (RK2) steps; the Stefan
/// velocity is refreshed at every stage. Throws on an unstable dt or
/// non-finite state.
SimTrajectory simulate(const SimConfig& cfg);

/// Mean of Ldot over the trailing window_fraction of the run. The slope of a
/// linear fit of L(t) over the same window is a consistency diagnostic; the
/// two must agree to 1% or the measurement throws. Requires a spreading run.
double measure_speed(const SimTrajectory& traj, double window_fraction = 0.25);

}  // namespace stefanfront
