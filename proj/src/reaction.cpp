#include "reaction.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "quadrature.hpp"

namespace stefanfront {

namespace {

constexpr double kZeroTol = 1e-12;    // "f > 0" sampled-positivity tolerance
constexpr double kDerivTol = 1e-8;    // endpoint-derivative sign threshold
constexpr double kEndpointTol = 1e-9; // allowed |f(0)|, |f(1)| for customs
constexpr double kFdStep = 1e-6;

void require_param_keys(const std::map<std::string, double>& params,
                        const std::vector<std::string>& allowed, const std::string& family) {
    for (const auto& [k, v] : params) {
        (void)v;
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == k;
        if (!ok) {
            throw std::invalid_argument("reaction " + family + ": unknown parameter '" + k + "'");
        }
    }
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

// One-sided second-order endpoint derivatives with step 1e-6; f is not
// assumed to extend beyond [0,1].
double fd_fprime0(const std::function<double(double)>& f) {
    return (-3.0 * f(0.0) + 4.0 * f(kFdStep) - f(2.0 * kFdStep)) / (2.0 * kFdStep);
}

double fd_fprime1(const std::function<double(double)>& f) {
    return (3.0 * f(1.0) - 4.0 * f(1.0 - kFdStep) + f(1.0 - 2.0 * kFdStep)) / (2.0 * kFdStep);
}

}  // namespace

char case_label_char(CaseLabel label) {
    switch (label) {
        case CaseLabel::A: return 'A';
        case CaseLabel::B: return 'B';
        case CaseLabel::C: return 'C';
        case CaseLabel::D: return 'D';
        default: return 'O';
    }
}

ReactionTerm make_custom(std::function<double(double)> eval, std::string name,
                         std::vector<double> breakpoints) {
    ReactionTerm r;
    r.eval_ = std::move(eval);
    r.name_ = std::move(name);
    r.breakpoints_ = std::move(breakpoints);

    if (std::abs(r.eval_(0.0)) > kEndpointTol || std::abs(r.eval_(1.0)) > kEndpointTol) {
        throw std::invalid_argument("reaction: f(0) and f(1) must vanish (|.| <= 1e-9)");
    }
    for (int i = 0; i <= 1024; ++i) {
        const double u = static_cast<double>(i) / 1024.0;
        if (!std::isfinite(r.eval_(u))) {
            throw std::invalid_argument("reaction: non-finite evaluation at u=" +
                                        std::to_string(u));
        }
    }
    r.fprime0_ = fd_fprime0(r.eval_);
    r.fprime1_left_ = fd_fprime1(r.eval_);
    r.integral01_ = integrate_split(r.eval_, 0.0, 1.0, r.breakpoints_, 1e-12).value;
    r.label_ = classify(r);
    return r;
}

ReactionTerm ReactionTerm::builtin(const std::string& name,
                                   const std::map<std::string, double>& params) {
    ReactionTerm r;
    r.name_ = name;
    r.params_ = params;
    if (name == "fisher") {
        require_param_keys(params, {}, name);
        r.eval_ = [](double u) { return u * (1.0 - u); };
        r.fprime0_ = 1.0;
        r.fprime1_left_ = -1.0;
        r.integral01_ = 1.0 / 6.0;
        r.label_ = CaseLabel::A;
    } else if (name == "mkpp") {
        require_param_keys(params, {"m"}, name);
        const double m = param_or(params, "m", 1.0);
        if (!(m >= 1.0) || !std::isfinite(m)) {
            throw std::invalid_argument("reaction mkpp: requires exponent m >= 1");
        }
        r.params_["m"] = m;
        r.eval_ = [m](double u) { return std::pow(u, m) * (1.0 - u); };
        r.fprime0_ = m == 1.0 ? 1.0 : 0.0;
        r.fprime1_left_ = -1.0;
        r.integral01_ = 1.0 / ((m + 1.0) * (m + 2.0));
        r.label_ = m == 1.0 ? CaseLabel::A : CaseLabel::D;
    } else if (name == "combustion") {
        require_param_keys(params, {"a", "shape"}, name);
        const double a = param_or(params, "a", 0.3);
        const double s = param_or(params, "shape", 1.0);
        if (!(a > 0.0 && a < 1.0)) {
            throw std::invalid_argument("reaction combustion: requires a in (0,1)");
        }
        if (!(s >= 1.0) || !std::isfinite(s)) {
            throw std::invalid_argument("reaction combustion: requires shape >= 1");
        }
        r.params_["a"] = a;
        r.params_["shape"] = s;
        r.eval_ = [a, s](double u) {
            return u > a ? std::pow(u - a, s) * (1.0 - u) : 0.0;
        };
        r.fprime0_ = 0.0;
        r.fprime1_left_ = -std::pow(1.0 - a, s);
        r.integral01_ = std::pow(1.0 - a, s + 2.0) / ((s + 1.0) * (s + 2.0));
        r.label_ = CaseLabel::C;
        r.breakpoints_ = {a};
    } else if (name == "bistable_cubic") {
        require_param_keys(params, {"a"}, name);
        const double a = param_or(params, "a", 0.25);
        if (!(a > 0.0 && a < 1.0)) {
            throw std::invalid_argument("reaction bistable_cubic: requires a in (0,1)");
        }
        r.params_["a"] = a;
        r.eval_ = [a](double u) { return u * (1.0 - u) * (u - a); };
        r.fprime0_ = -a;
        r.fprime1_left_ = a - 1.0;
        r.integral01_ = (1.0 - 2.0 * a) / 12.0;
        // Case B needs int f > 0, i.e. a < 1/2.
        r.label_ = a < 0.5 ? CaseLabel::B : CaseLabel::Other;
    } else {
        throw std::invalid_argument(
            "reaction: unknown builtin '" + name +
            "' (expected fisher, mkpp, combustion or bistable_cubic)");
    }
    return r;
}

ReactionTerm ReactionTerm::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("reaction config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type")) {
        throw std::invalid_argument("reaction config: expected an object with a 'type' field");
    }
    const std::string type = doc.at("type").get<std::string>();

    if (type == "builtin") {
        std::map<std::string, double> params;
        if (doc.contains("params")) {
            for (const auto& [k, v] : doc.at("params").items()) {
                params[k] = v.get<double>();
            }
        }
        return builtin(doc.at("name").get<std::string>(), params);
    }

    if (type == "polynomial") {
        const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
        if (coeffs.empty()) {
            throw std::invalid_argument("reaction config: empty coefficient list");
        }
        auto eval = [coeffs](double u) {
            double acc = 0.0;
            for (size_t k = coeffs.size(); k-- > 0;) acc = acc * u + coeffs[k];
            return acc;
        };
        return make_custom(eval, "custom:polynomial", {});
    }

    if (type == "piecewise") {
        struct Piece {
            double from, to;
            std::vector<double> coeffs;
        };
        std::vector<Piece> pieces;
        for (const auto& pj : doc.at("pieces")) {
            pieces.push_back({pj.at("from").get<double>(), pj.at("to").get<double>(),
                              pj.at("coefficients").get<std::vector<double>>()});
        }
        if (pieces.empty()) throw std::invalid_argument("reaction config: no pieces");
        if (std::abs(pieces.front().from) > 1e-12 || std::abs(pieces.back().to - 1.0) > 1e-12) {
            throw std::invalid_argument("reaction config: pieces must cover [0,1]");
        }
        std::vector<double> breaks;
        for (size_t k = 0; k + 1 < pieces.size(); ++k) {
            if (std::abs(pieces[k].to - pieces[k + 1].from) > 1e-12) {
                throw std::invalid_argument("reaction config: pieces must be contiguous");
            }
            breaks.push_back(pieces[k].to);
        }
        auto eval = [pieces](double u) {
            const Piece* sel = &pieces.back();
            for (const auto& p : pieces) {
                if (u < p.to) {
                    sel = &p;
                    break;
                }
            }
            double acc = 0.0;
            for (size_t k = sel->coeffs.size(); k-- > 0;) acc = acc * u + sel->coeffs[k];
            return acc;
        };
        return make_custom(eval, "custom:piecewise", breaks);
    }

    throw std::invalid_argument("reaction config: unknown type '" + type + "'");
}

CaseLabel classify(const ReactionTerm& f, int grid_n) {
    if (grid_n < 256) throw std::invalid_argument("classify: grid_n must be >= 256");

    // Run-length encode the sign pattern on the open grid
    // (P positive, N negative, Z within tolerance of zero).
    std::string runs;
    for (int i = 1; i <= grid_n; ++i) {
        const double u = static_cast<double>(i) / (grid_n + 1.0);
        const double v = f(u);
        if (!std::isfinite(v)) return CaseLabel::Other;
        const char s = v > kZeroTol ? 'P' : (v < -kZeroTol ? 'N' : 'Z');
        if (runs.empty() || runs.back() != s) runs.push_back(s);
    }

    if (runs == "P") {
        // f > 0 throughout (0,1): monostable A or degenerate D.
        if (f.fprime0() > kDerivTol && f.fprime1_left() < -kDerivTol) return CaseLabel::A;
        if (std::abs(f.fprime0()) <= kDerivTol) return CaseLabel::D;
        return CaseLabel::Other;
    }
    if (runs == "ZP") return CaseLabel::C;  // f = 0 on (0,a), f > 0 on (a,1)
    if (runs == "NP" || runs == "NZP") {
        // Negative on (0,a), positive on (a,1) with a tolerance-zero crossing
        // run allowed; bistable additionally needs int f > 0.
        return f.integral01() > 0.0 ? CaseLabel::B : CaseLabel::Other;
    }
    return CaseLabel::Other;
}

}  // namespace stefanfront
