#pragma once

namespace stefanfront {

/// Gauss hypergeometric function 2F1(a,b;c;z) for z <= 0 or 0 <= z < 1.
///
/// For z < 0 the Pfaff transformation
///   2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
/// maps the argument into [0,1) where the power series converges; the series
/// is truncated once a term drops below 1e-16 relative to the partial sum.
/// Throws std::invalid_argument when c is a nonpositive integer or z >= 1,
/// std::runtime_error if the series fails to converge within 1e6 terms.
double hyp2f1(double a, double b, double c, double z);

}  // namespace stefanfront
