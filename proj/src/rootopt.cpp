#include "rootopt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stefanfront {

double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect: requires lo <= hi");
    if (!(tol > 0)) throw std::invalid_argument("bisect: tol must be > 0");
    double flo = fn(lo);
    double fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("bisect: no sign change on [lo, hi]");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid);
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

ScalarOpt maximize_scalar(const std::function<double(double)>& fn, double lo, double hi,
                          double tol) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: requires lo < hi");
    constexpr double kInvPhi = 0.6180339887498949;
    ScalarOpt best{lo, fn(lo)};
    auto consider = [&](double x, double v) {
        if (v > best.value) best = {x, v};
    };
    consider(hi, fn(hi));

    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
            consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
            consider(x1, f1);
        }
    }
    return best;
}

VectorOpt nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                      const std::vector<double>& x0, double tol) {
    const size_t dim = x0.size();
    if (dim == 0 || dim > 6) throw std::invalid_argument("nelder_mead: dimension must be 1..6");

    auto neg = [&](const std::vector<double>& x) {
        const double v = fn(x);
        if (!std::isfinite(v)) throw std::runtime_error("nelder_mead: non-finite objective");
        return -v;
    };

    using Vertex = std::pair<std::vector<double>, double>;
    std::vector<Vertex> simplex;
    auto init_simplex = [&](const std::vector<double>& center) {
        simplex.clear();
        simplex.emplace_back(center, neg(center));
        for (size_t i = 0; i < dim; ++i) {
            std::vector<double> x = center;
            x[i] += 0.05 * (std::abs(x[i]) + 1.0);
            simplex.emplace_back(x, neg(x));
        }
    };
    init_simplex(x0);

    long iter = 0;
    int restarts = 0;
    while (true) {
        if (++iter > 10000) throw std::runtime_error("nelder_mead: iteration cap reached");
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& u, const Vertex& v) { return u.second < v.second; });
        const Vertex& best = simplex.front();
        const Vertex& worst = simplex.back();

        double spread = 0.0;
        for (size_t i = 0; i < dim; ++i) {
            spread = std::max(spread, std::abs(worst.first[i] - best.first[i]));
        }
        const double fspread = std::abs(worst.second - best.second);
        if (spread <= tol && fspread <= tol * (1.0 + std::abs(best.second))) break;

        // Simplex collapse without value agreement: restart around the best point.
        if (spread <= 1e-14 && fspread > tol) {
            if (++restarts > 3) break;
            init_simplex(best.first);
            continue;
        }

        std::vector<double> centroid(dim, 0.0);
        for (size_t v = 0; v + 1 < simplex.size(); ++v) {
            for (size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].first[i];
        }
        for (size_t i = 0; i < dim; ++i) centroid[i] /= static_cast<double>(dim);

        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (size_t i = 0; i < dim; ++i) {
                x[i] = centroid[i] + t * (simplex.back().first[i] - centroid[i]);
            }
            return x;
        };

        const auto xr = along(-1.0);
        const double fr = neg(xr);
        if (fr < simplex.front().second) {
            const auto xe = along(-2.0);
            const double fe = neg(xe);
            simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < simplex[simplex.size() - 2].second) {
            simplex.back() = {xr, fr};
        } else {
            const auto xc = along(0.5);
            const double fc = neg(xc);
            if (fc < simplex.back().second) {
                simplex.back() = {xc, fc};
            } else {
                for (size_t v = 1; v < simplex.size(); ++v) {
                    for (size_t i = 0; i < dim; ++i) {
                        simplex[v].first[i] =
                            0.5 * (simplex[v].first[i] + simplex.front().first[i]);
                    }
                    simplex[v].second = neg(simplex[v].first);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& u, const Vertex& v) { return u.second < v.second; });
    VectorOpt out;
    out.arg = simplex.front().first;
    out.value = -simplex.front().second;
    out.iterations = iter;
    return out;
}

}  // namespace stefanfront
