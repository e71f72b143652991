#include "hyp2f1.hpp"

#include <cmath>
#include <stdexcept>

namespace stefanfront {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double series(double a, double b, double c, double z) {
    // Direct power series, valid for 0 <= z < 1.
    double term = 1.0;
    double sum = 1.0;
    for (long n = 0; n < 1000000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        if (term == 0.0) return sum;  // terminating (polynomial) case
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
        if (!std::isfinite(sum)) {
            throw std::runtime_error("hyp2f1: series diverged");
        }
    }
    throw std::runtime_error("hyp2f1: series did not converge within 1e6 terms");
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
        throw std::invalid_argument("hyp2f1: non-finite argument");
    }
    if (is_nonpositive_integer(c)) {
        throw std::invalid_argument("hyp2f1: c must not be a nonpositive integer");
    }
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        // Pfaff transformation; series argument z/(z-1) lies in (0,1).
        return std::pow(1.0 - z, -a) * series(a, c - b, c, z / (z - 1.0));
    }
    if (z < 1.0) return series(a, b, c, z);
    throw std::invalid_argument("hyp2f1: z must satisfy z <= 0 or z < 1");
}

}  // namespace stefanfront
