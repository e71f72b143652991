#include "phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadrature.hpp"

namespace stefanfront {

namespace {

constexpr double kTouchdownP = 1e-12;   // p below this is a touchdown
constexpr double kProjectP = 1e-6;      // projection window for f <= 0 regions
constexpr double kSlaveP = 1e-7;        // slaved-decay cutoff (f ~ c p, p -> 0)
constexpr double kDegenerateFp1 = 1e-10;
constexpr double kMaxStep = 0.02;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct ShotOutcome {
    bool touchdown = false;
    double q_star = 0.0;
    double p0 = 0.0;
};

// Backward integration of v = p^2/2 from (q_start, v_start) to q=0.
// When grid/p_out are given, p is recorded at every grid point <= q_start
// (grid ascending; filled from the top down by clamping steps).
ShotOutcome integrate_shot(const ReactionTerm& f, double c, double q_start, double v_start,
                           const std::vector<double>* grid, std::vector<double>* p_out) {
    const double rtol = 1e-10;
    auto rhs = [&](double q, double v) {
        return c * std::sqrt(std::max(2.0 * v, 0.0)) - f(q);
    };

    double q = q_start;
    double v = v_start;
    long next_grid = -1;
    if (grid) {
        next_grid = static_cast<long>(grid->size()) - 1;
        while (next_grid >= 0 && (*grid)[next_grid] > q_start) --next_grid;
    }
    auto record_until = [&](double qnow) {
        while (next_grid >= 0 && (*grid)[next_grid] >= qnow - 1e-14) {
            (*p_out)[next_grid] = std::sqrt(std::max(2.0 * v, 0.0));
            --next_grid;
        }
    };

    double h = -1e-6;
    long steps = 0;
    while (q > 0.0) {
        const double p = std::sqrt(std::max(2.0 * v, 0.0));
        const double fq = f(q);
        if (p < kTouchdownP) {
            return {true, q, 0.0};
        }
        if (p < kProjectP && fq <= 1e-14) {
            // With f <= 0 below, p must keep falling; project the landing.
            const double dq = fq < -1e-12 ? v / (-fq) : p / std::max(c, 1e-300);
            const double q_star = q - dq;
            if (q_star > kTouchdownP) return {true, q_star, 0.0};
        }
        if (p < kSlaveP && fq <= 1.25 * c * p && q > 1e-9) {
            // Slaved to p ~ f(q)/c: p(0) <= p here, and the off-manifold mode
            // (rate c/p) makes explicit steps collapse; classify as touchdown.
            return {true, q, 0.0};
        }

        h = std::max(h, -kMaxStep);
        if (grid && next_grid >= 0 && q + h < (*grid)[next_grid]) {
            h = (*grid)[next_grid] - q;
        }
        if (q + h < 0.0) h = -q;

        double k[7];
        k[0] = rhs(q, v);
        for (int i = 1; i < 7; ++i) {
            double vi = v;
            for (int j = 0; j < i; ++j) vi += h * kA[i][j] * k[j];
            k[i] = rhs(q + kC[i] * h, std::max(vi, 0.0));
        }
        double v5 = v, v4 = v;
        for (int i = 0; i < 7; ++i) {
            v5 += h * kB5[i] * k[i];
            v4 += h * kB4[i] * k[i];
        }
        const double err = std::abs(v5 - v4);
        // Absolute floor: v = p^2/2 only needs resolving down to the
        // touchdown threshold (v ~ 5e-25); pure relative control would crawl
        // along slaved stretches where p ~ f(q)/c underflows toward zero.
        const double tol = 1e-26 + rtol * std::abs(v);
        if (err <= tol) {
            q += h;
            v = std::max(v5, 0.0);
            record_until(q);
        } else if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(q))) {
            throw std::runtime_error("shoot_profile: step size underflow");
        }
        const double fac = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        h = std::max(h, -kMaxStep);
        if (++steps > 5000000) {
            throw std::runtime_error("shoot_profile: step budget exhausted");
        }
    }
    return {false, 0.0, std::sqrt(std::max(2.0 * v, 0.0))};
}

struct SaddleStart {
    double mu = 0.0;
    double p_start = 0.0;
    bool degenerate = false;
};

SaddleStart saddle_start(const ReactionTerm& f, double c, double eps) {
    const double fp1 = f.fprime1_left();
    SaddleStart s;
    if (fp1 < -kDegenerateFp1) {
        s.mu = 0.5 * (-c + std::sqrt(c * c - 4.0 * fp1));
        s.p_start = s.mu * eps;
    } else if (fp1 <= kDegenerateFp1) {
        // Degenerate saddle: leading balance p(1-eps) = sqrt(2 int_{1-eps}^1 f).
        const double tail = integrate(std::ref(f), 1.0 - eps, 1.0, 1e-10).value;
        if (!(tail > 0.0)) {
            throw NoTravelingWave("shoot_profile: degenerate saddle with no reaction mass near u=1");
        }
        s.p_start = std::sqrt(2.0 * tail);
        s.mu = s.p_start / eps;
        s.degenerate = true;
    } else {
        throw std::invalid_argument("shoot_profile: f'(1) > 0, q=1 is not a saddle");
    }
    return s;
}

// p(0) for the bisections; NaN signals touchdown.
double bare_p0(const ReactionTerm& f, double c, double eps) {
    const SaddleStart s = saddle_start(f, c, eps);
    const ShotOutcome out =
        integrate_shot(f, c, 1.0 - eps, 0.5 * s.p_start * s.p_start, nullptr, nullptr);
    return out.touchdown ? std::numeric_limits<double>::quiet_NaN() : out.p0;
}

}  // namespace

double PhaseProfile::p0() const {
    if (touchdown) throw std::runtime_error("PhaseProfile: touched down before q=0");
    return p.front();
}

PhaseProfile shoot_profile(const ReactionTerm& f, double c, double kappa_hint, double eps,
                           int n_steps) {
    if (!(c > 0.0)) throw std::invalid_argument("shoot_profile: requires c > 0");
    if (!(eps > 0.0 && eps <= 1e-3)) {
        throw std::invalid_argument("shoot_profile: requires eps in (0, 1e-3]");
    }
    if (n_steps < 8) throw std::invalid_argument("shoot_profile: requires n_steps >= 8");

    const SaddleStart s = saddle_start(f, c, eps);

    std::vector<double> grid(n_steps);
    for (int j = 0; j < n_steps; ++j) {
        grid[j] = static_cast<double>(j) / (n_steps - 1);
    }
    std::vector<double> pvals(n_steps, 0.0);

    const ShotOutcome out =
        integrate_shot(f, c, 1.0 - eps, 0.5 * s.p_start * s.p_start, &grid, &pvals);

    PhaseProfile prof;
    prof.c = c;
    prof.kappa = kappa_hint;
    prof.mu = s.mu;
    prof.degenerate_saddle = s.degenerate;
    if (out.touchdown) {
        prof.touchdown = out.q_star;
        // Keep samples above the touchdown point; terminate the profile there.
        size_t first = 0;
        while (first < grid.size() && grid[first] < out.q_star) ++first;
        prof.q.assign(grid.begin() + first, grid.end());
        prof.p.assign(pvals.begin() + first, pvals.end());
        prof.q.insert(prof.q.begin(), out.q_star);
        prof.p.insert(prof.p.begin(), 0.0);
    } else {
        pvals[0] = out.p0;
        prof.q = std::move(grid);
        prof.p = std::move(pvals);
    }
    // q=1 endpoint carries the exact boundary value.
    if (!prof.q.empty() && prof.q.back() == 1.0) prof.p.back() = 0.0;
    return prof;
}

double standard_speed(const ReactionTerm& f, double tol) {
    if (!(tol >= 1e-10)) throw std::invalid_argument("standard_speed: tol must be >= 1e-10");
    const double eps = 1e-8;
    auto high = [&](double c) {
        const double p0 = bare_p0(f, c, eps);
        return std::isnan(p0) || p0 <= kTouchdownP;
    };
    double lo = 1e-9;
    if (high(lo)) {
        throw NoTravelingWave("standard_speed: no spreading front (trajectory touches down as c->0)");
    }
    double hi = 1.0;
    while (!high(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("standard_speed: no upper bracket below 1e6");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (high(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

SpeedResult stefan_speed(const ReactionTerm& f, double kappa, double tol, double c_rd_hint) {
    if (!(kappa > 0.0)) throw std::invalid_argument("stefan_speed: requires kappa > 0");
    if (!(tol >= 1e-10)) throw std::invalid_argument("stefan_speed: tol must be >= 1e-10");
    const double eps = 1e-8;

    const double c_rd = c_rd_hint > 0.0 ? c_rd_hint : standard_speed(f, tol);

    // G(c) = p(0;c) - c/kappa, with G := -1 on touchdown.
    auto G = [&](double c) {
        const double p0 = bare_p0(f, c, eps);
        return std::isnan(p0) ? -1.0 : p0 - c / kappa;
    };

    double lo = tol;
    double hi = c_rd;
    const double glo = G(lo);
    if (glo <= 0.0) {
        if (glo > -1.0) {
            throw NoTravelingWave("stefan_speed: front speed at or below the bisection floor tol");
        }
        throw NoTravelingWave("stefan_speed: no traveling wave detected (no sign change in [tol, c_rd])");
    }
    if (G(hi) > 0.0) {
        // c < c_rd should make G(c_rd) < 0; widen defensively once.
        hi = 1.5 * c_rd;
        if (G(hi) > 0.0) {
            throw NoTravelingWave("stefan_speed: no traveling wave detected (G > 0 up to 1.5 c_rd)");
        }
    }

    double mid = 0.5 * (lo + hi);
    double gmid = G(mid);
    const double width_floor = 8.0 * std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 400; ++it) {
        if (hi - lo <= tol && std::abs(gmid) <= tol) break;
        if (hi - lo <= width_floor * std::max(hi, 1.0)) break;
        (gmid > 0.0 ? lo : hi) = mid;
        mid = 0.5 * (lo + hi);
        gmid = G(mid);
    }

    SpeedResult res;
    res.c_star = mid;
    res.c_lo = lo;
    res.c_hi = hi;
    res.c_rd_reference = c_rd;
    res.profile = shoot_profile(f, mid, kappa, eps, 2001);
    res.residual = res.profile.touchdown ? std::abs(gmid)
                                         : std::abs(res.profile.p0() - mid / kappa);
    return res;
}

TrialFunction optimal_g(const PhaseProfile& profile) {
    if (profile.touchdown) {
        throw std::invalid_argument("optimal_g: profile touched down; no optimizer exists");
    }
    const auto& q = profile.q;
    const auto& p = profile.p;
    if (q.size() < 8 || q.front() != 0.0) {
        throw std::invalid_argument("optimal_g: profile must be sampled down to q=0");
    }
    if (!(p.front() > 0.0)) {
        throw std::invalid_argument("optimal_g: requires p(0) > 0");
    }
    const double c = profile.c;
    const size_t n = q.size();

    TrialFunction t;
    t.id = "ghat";
    t.sampled = true;
    t.c = c;
    t.qs = q;
    t.ps = p;
    t.gs.assign(n, 0.0);
    t.hs.assign(n, 0.0);

    // g-hat = exp(-c int_0^q ds/p); the q=1 endpoint is the exact limit 0.
    double acc = 0.0;
    t.gs[0] = 1.0;
    t.hs[0] = c / p[0];
    for (size_t j = 1; j + 1 < n; ++j) {
        acc += 0.5 * (q[j] - q[j - 1]) * (c / p[j] + c / p[j - 1]);
        t.gs[j] = std::exp(-acc);
        t.hs[j] = c * t.gs[j] / p[j];
    }
    t.gs[n - 1] = 0.0;
    t.hs[n - 1] = t.hs[n - 2];
    return t;
}

}  // namespace stefanfront
