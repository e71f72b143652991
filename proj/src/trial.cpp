#include "trial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stefanfront {

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t j = static_cast<size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

double theta1(const std::vector<double>& theta, const char* family) {
    if (theta.size() != 1) {
        throw std::invalid_argument(std::string("trial ") + family +
                                    ": expects exactly one parameter");
    }
    return theta[0];
}

}  // namespace

double TrialFunction::eval_g(double q) const {
    return sampled ? interp(qs, gs, q) : g(q);
}

double TrialFunction::eval_h(double q) const {
    return sampled ? interp(qs, hs, q) : h(q);
}

TrialFunction make_trial(const std::string& family, const std::vector<double>& theta,
                         double kappa) {
    TrialFunction t;
    t.id = family;
    t.theta = theta;
    if (family == "linear") {
        const double lam = theta1(theta, "linear");
        if (!(lam > 0.0 && lam < 1.0)) {
            throw std::invalid_argument("trial linear: lambda must lie in (0,1)");
        }
        t.g = [lam](double q) { return 1.0 - lam * q; };
        t.h = [lam](double) { return lam; };
        t.weight = [lam](double q) {
            const double g = 1.0 - lam * q;
            return g * g / lam;
        };
    } else if (family == "exp") {
        const double lam = theta1(theta, "exp");
        if (!(lam > 0.0)) throw std::invalid_argument("trial exp: lambda must be > 0");
        t.g = [lam](double q) { return std::exp(-lam * q); };
        t.h = [lam](double q) { return lam * std::exp(-lam * q); };
        t.weight = [lam](double q) { return std::exp(-lam * q) / lam; };
    } else if (family == "rational" || family == "zfk") {
        double lam;
        if (family == "zfk") {
            if (!(kappa > 0.0) || std::isinf(kappa)) {
                throw std::invalid_argument("trial zfk: requires finite kappa > 0");
            }
            lam = kappa;
            t.theta = {lam};
        } else {
            lam = theta1(theta, "rational");
            if (!(lam > 0.0)) throw std::invalid_argument("trial rational: lambda must be > 0");
        }
        t.g = [lam](double q) { return 1.0 / (1.0 + lam * q); };
        t.h = [lam](double q) {
            const double d = 1.0 + lam * q;
            return lam / (d * d);
        };
        t.weight = [lam](double) { return 1.0 / lam; };
    } else if (family == "power_pair") {
        const double alpha = theta1(theta, "power_pair");
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("trial power_pair: alpha must lie in (0,1)");
        }
        if (!(kappa > 0.0) || std::isinf(kappa)) {
            throw std::invalid_argument("trial power_pair: requires finite kappa > 0");
        }
        const double k = kappa;
        t.g = [alpha, k](double q) {
            return std::pow((1.0 - q) / (1.0 + k * q), alpha);
        };
        // h = alpha (1+k) g / ((1-q)(1+kq)); diverges at q=1 for alpha<1.
        t.h = [alpha, k, g = t.g](double q) {
            return alpha * (1.0 + k) * g(q) / ((1.0 - q) * (1.0 + k * q));
        };
        // g^2/h = (1-q)^(1+alpha) (1+kq)^(1-alpha) / (alpha (1+k)): bounded.
        t.weight = [alpha, k](double q) {
            return std::pow(1.0 - q, 1.0 + alpha) * std::pow(1.0 + k * q, 1.0 - alpha) /
                   (alpha * (1.0 + k));
        };
    } else {
        throw std::invalid_argument("trial: unknown family '" + family +
                                    "' (expected linear, exp, rational, zfk or power_pair)");
    }
    return t;
}

const std::vector<std::string>& trial_catalog() {
    static const std::vector<std::string> kCatalog = {"linear", "exp", "rational", "zfk",
                                                      "power_pair"};
    return kCatalog;
}

std::vector<double> trial_default_theta(const std::string& family, double kappa) {
    if (family == "linear") return {0.22};
    if (family == "exp") return {1.0};
    if (family == "rational") return {1.0};
    if (family == "zfk") return {kappa};
    if (family == "power_pair") return {kappa / (1.0 + kappa)};
    throw std::invalid_argument("trial: unknown family '" + family + "'");
}

}  // namespace stefanfront
