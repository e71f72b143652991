#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stefanfront {

namespace {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double integral = 0.0;
    double error = 0.0;
};

Panel gk15(const std::function<double(double)>& fn, double a, double b, long& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = half * kXgk[j];
        double fsum;
        if (j == 7) {
            fsum = fn(center);
        } else {
            fsum = fn(center - dx) + fn(center + dx);
        }
        if (!std::isfinite(fsum)) {
            throw std::runtime_error("integrate: non-finite integrand value");
        }
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) {
            resg += kWg[j / 2] * fsum;  // paired Gauss nodes
        } else if (j == 7) {
            resg += kWg[3] * fsum;      // center Gauss node
        }
    }
    evals += 15;
    Panel p;
    p.integral = resk * half;
    p.error = std::abs((resk - resg) * half);
    return p;
}

void adapt(const std::function<double(double)>& fn, double a, double b, double tol_abs,
           int depth, QuadResult& acc) {
    Panel p = gk15(fn, a, b, acc.evaluations);
    if (p.error <= tol_abs || depth >= 40) {
        acc.value += p.integral;
        acc.abs_error += p.error;
        if (p.error > tol_abs) acc.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(fn, a, mid, 0.5 * tol_abs, depth + 1, acc);
    adapt(fn, mid, b, 0.5 * tol_abs, depth + 1, acc);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     double rel_tol) {
    return integrate_split(fn, lo, hi, {}, rel_tol);
}

QuadResult integrate_split(const std::function<double(double)>& fn, double lo, double hi,
                           const std::vector<double>& interior_breaks, double rel_tol) {
    if (!(lo < hi)) throw std::invalid_argument("integrate: requires lo < hi");
    if (!(rel_tol > 0)) throw std::invalid_argument("integrate: rel_tol must be > 0");

    std::vector<double> edges;
    edges.push_back(lo);
    for (double b : interior_breaks) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    QuadResult acc;
    // First pass sets the magnitude used for the relative-error target.
    double rough = 0.0;
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        rough += gk15(fn, edges[k], edges[k + 1], acc.evaluations).integral;
    }
    const double scale = std::max(std::abs(rough), 1e-16);
    const double tol_abs = rel_tol * scale;
    const size_t panels = edges.size() - 1;
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        adapt(fn, edges[k], edges[k + 1], tol_abs / static_cast<double>(panels), 0, acc);
    }
    return acc;
}

}  // namespace stefanfront
