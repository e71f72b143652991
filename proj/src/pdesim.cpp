#include "pdesim.hpp"

#include <cmath>
#include <stdexcept>

namespace stefanfront {

namespace {

struct State {
    std::vector<double> u;
    double L = 0.0;
};

struct Deriv {
    std::vector<double> du;
    double Ldot = 0.0;
};

}  // namespace

std::function<double(double)> cosine_initial(double amplitude, double L0) {
    return [amplitude, L0](double x) { return amplitude * std::cos(M_PI * x / (2.0 * L0)); };
}

SimTrajectory simulate(const SimConfig& cfg) {
    if (cfg.n_xi < 201) throw std::invalid_argument("simulate: n_xi must be >= 201");
    if (!(cfg.kappa > 0.0)) throw std::invalid_argument("simulate: kappa must be > 0");
    if (!(cfg.L0 > 0.0)) throw std::invalid_argument("simulate: L0 must be > 0");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be > 0");
    if (!cfg.u0) throw std::invalid_argument("simulate: initial profile u0 is required");

    const int n = cfg.n_xi;
    const double dxi = 1.0 / (n - 1);
    const double L_min = cfg.L_min_floor > 0.0 ? cfg.L_min_floor : cfg.L0;
    const double dt_bound = 0.4 * (dxi * L_min) * (dxi * L_min);
    const double dt = cfg.dt > 0.0 ? cfg.dt : dt_bound;
    if (dt > dt_bound * (1.0 + 1e-12)) {
        throw std::invalid_argument("simulate: dt exceeds the stability bound 0.4 (dxi L_min)^2");
    }

    State s;
    s.L = cfg.L0;
    s.u.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = cfg.L0 * i * dxi;
        s.u[i] = cfg.u0(x);
        if (!(s.u[i] >= 0.0) || s.u[i] > 1.0 + 1e-9) {
            throw std::invalid_argument("simulate: u0 must lie within [0, 1+1e-9]");
        }
    }
    if (std::abs(s.u[n - 1]) > 1e-9) {
        throw std::invalid_argument("simulate: u0(L0) must vanish");
    }
    s.u[n - 1] = 0.0;

    auto derive = [&](const State& st, Deriv& d) {
        const auto& u = st.u;
        const double L = st.L;
        // Second-order one-sided flux at xi=1 (u[n-1] = 0).
        const double uxi1 = (-4.0 * u[n - 2] + u[n - 3]) / (2.0 * dxi);
        const double Ldot = -cfg.kappa * uxi1 / L;
        d.Ldot = Ldot;
        d.du.resize(n);
        const double invL2dxi2 = 1.0 / (L * L * dxi * dxi);
        const double adv = Ldot / (L * 2.0 * dxi);
        d.du[0] = 2.0 * (u[1] - u[0]) * invL2dxi2 + cfg.f(u[0]);  // Neumann ghost
        for (int i = 1; i < n - 1; ++i) {
            const double xi = i * dxi;
            d.du[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * invL2dxi2 +
                      xi * adv * (u[i + 1] - u[i - 1]) + cfg.f(u[i]);
        }
        d.du[n - 1] = 0.0;  // Dirichlet
    };

    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / dt));
    const long stride = cfg.record_stride > 0
                            ? cfg.record_stride
                            : std::max(1L, n_steps / 4000);

    SimTrajectory traj;
    traj.L0 = cfg.L0;
    traj.xi_grid.resize(n);
    for (int i = 0; i < n; ++i) traj.xi_grid[i] = i * dxi;

    Deriv k1, k2;
    State s1;
    double t = 0.0;
    for (long step = 0; step < n_steps; ++step) {
        const double h = std::min(dt, cfg.t_end - t);
        derive(s, k1);
        if (step % stride == 0) {
            traj.times.push_back(t);
            traj.L_series.push_back(s.L);
            traj.Ldot_series.push_back(k1.Ldot);
        }
        s1.u.resize(n);
        for (int i = 0; i < n; ++i) s1.u[i] = s.u[i] + h * k1.du[i];
        s1.L = s.L + h * k1.Ldot;
        derive(s1, k2);
        for (int i = 0; i < n; ++i) s.u[i] += 0.5 * h * (k1.du[i] + k2.du[i]);
        s.L += 0.5 * h * (k1.Ldot + k2.Ldot);
        t += h;

        if (step % 256 == 0) {
            if (!std::isfinite(s.L) || !std::isfinite(s.u[n / 2])) {
                throw std::runtime_error("simulate: instability detected (non-finite state)");
            }
        }
    }
    derive(s, k1);
    traj.times.push_back(t);
    traj.L_series.push_back(s.L);
    traj.Ldot_series.push_back(k1.Ldot);
    traj.final_u = s.u;

    double umax = 0.0;
    for (double v : s.u) umax = std::max(umax, v);
    if (!std::isfinite(umax)) {
        throw std::runtime_error("simulate: instability detected (non-finite state)");
    }
    traj.max_u_final = umax;
    if (s.L > 3.0 * cfg.L0 && umax > 0.5) {
        traj.outcome = Outcome::spreading;
    } else if (umax < 1e-3) {
        traj.outcome = Outcome::vanishing;
    } else {
        traj.outcome = Outcome::undecided;
    }
    return traj;
}

double measure_speed(const SimTrajectory& traj, double window_fraction) {
    if (traj.outcome != Outcome::spreading) {
        throw std::invalid_argument("measure_speed: trajectory is not in the spreading regime");
    }
    if (!(window_fraction > 0.0 && window_fraction <= 0.5)) {
        throw std::invalid_argument("measure_speed: window_fraction must lie in (0, 0.5]");
    }
    const double t_end = traj.times.back();
    const double t_from = t_end - window_fraction * (t_end - traj.times.front());

    double mean = 0.0;
    long count = 0;
    double st = 0.0, sL = 0.0, stt = 0.0, stL = 0.0;
    for (size_t j = 0; j < traj.times.size(); ++j) {
        if (traj.times[j] < t_from) continue;
        mean += traj.Ldot_series[j];
        st += traj.times[j];
        sL += traj.L_series[j];
        stt += traj.times[j] * traj.times[j];
        stL += traj.times[j] * traj.L_series[j];
        ++count;
    }
    if (count < 4) throw std::runtime_error("measure_speed: too few records in the window");
    mean /= static_cast<double>(count);
    const double denom = count * stt - st * st;
    const double slope = (count * stL - st * sL) / denom;
    if (std::abs(slope - mean) > 0.01 * std::max(std::abs(mean), 1e-12)) {
        throw std::runtime_error(
            "measure_speed: mean Ldot and the L(t) fit slope disagree beyond 1%");
    }
    return mean;
}

}  // namespace stefanfront
