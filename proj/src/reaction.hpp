#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace stefanfront {

enum class CaseLabel { A, B, C, D, Other };

char case_label_char(CaseLabel label);

/// A reaction term f(u) on [0,1] with f(0)=f(1)=0, together with the
/// quantities the speed bounds need. Immutable after construction and safe
/// to evaluate concurrently.
class ReactionTerm {
  public:
    double operator()(double u) const { return eval_(u); }

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    CaseLabel label() const { return label_; }
    double fprime0() const { return fprime0_; }
    double fprime1_left() const { return fprime1_left_; }
    double integral01() const { return integral01_; }
    /// Interior points where f or f' jumps; used to split quadratures.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// Builtin families:
    ///   fisher                    f = u(1-u)
    ///   mkpp      (m >= 1)        f = u^m (1-u)
    ///   combustion(a, shape=1)    f = (u-a)^shape (1-u) for u > a, else 0
    ///   bistable_cubic(a)         f = u(1-u)(u-a)
    static ReactionTerm builtin(const std::string& name,
                                const std::map<std::string, double>& params = {});

    /// Construct from the JSON reaction schema (type polynomial | piecewise |
    /// builtin); rejects f with |f(0)| or |f(1)| > 1e-9 or non-finite values.
    static ReactionTerm from_json(const std::string& json_text);

  private:
    ReactionTerm() = default;

    std::function<double(double)> eval_;
    std::string name_;
    std::map<std::string, double> params_;
    CaseLabel label_ = CaseLabel::Other;
    double fprime0_ = 0.0;
    double fprime1_left_ = 0.0;
    double integral01_ = 0.0;
    std::vector<double> breakpoints_;

    friend ReactionTerm make_custom(std::function<double(double)> eval, std::string name,
                                    std::vector<double> breakpoints);
};

/// Classify f by its sampled sign pattern on an open uniform grid plus the
/// endpoint derivatives. Returns Other when no pattern matches.
CaseLabel classify(const ReactionTerm& f, int grid_n = 1024);

}  // namespace stefanfront
