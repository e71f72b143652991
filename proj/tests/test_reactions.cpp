#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"
#include "reaction.hpp"

using namespace stefanfront;

namespace {

// One-sided second-order differences, the independent endpoint-slope oracle.
double fd0(const ReactionTerm& f, double h = 1e-6) {
    return (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
}
double fd1(const ReactionTerm& f, double h = 1e-6) {
    return (3.0 * f(1.0) - 4.0 * f(1.0 - h) + f(1.0 - 2.0 * h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("fisher builtin") {
    const ReactionTerm f = ReactionTerm::builtin("fisher");
    CHECK(f(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(f.fprime0() == 1.0);
    CHECK(f.fprime1_left() == -1.0);
    CHECK(f.integral01() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(f.label() == CaseLabel::A);
}

TEST_CASE("mkpp builtin") {
    const ReactionTerm f2 = ReactionTerm::builtin("mkpp", {{"m", 2.0}});
    CHECK(f2.fprime0() == 0.0);
    CHECK(f2.label() == CaseLabel::D);
    CHECK(f2.integral01() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

    CHECK(ReactionTerm::builtin("mkpp", {{"m", 1.0}}).label() == CaseLabel::A);
    CHECK_THROWS_AS(ReactionTerm::builtin("mkpp", {{"m", 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::builtin("mkpp", {{"q", 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::builtin("brusselator"), std::invalid_argument);
}

TEST_CASE("combustion builtin") {
    const ReactionTerm f = ReactionTerm::builtin("combustion", {{"a", 0.3}});
    CHECK(f(0.2) == 0.0);
    CHECK(f(0.5) == doctest::Approx(0.2 * 0.5).epsilon(1e-15));
    CHECK(f.fprime1_left() == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(f.integral01() == doctest::Approx(0.343 / 6.0).epsilon(1e-14));
    CHECK(f.label() == CaseLabel::C);
    CHECK(f.breakpoints().size() == 1);

    const ReactionTerm s2 = ReactionTerm::builtin("combustion", {{"a", 0.3}, {"shape", 2.0}});
    CHECK(s2.integral01() == doctest::Approx(std::pow(0.7, 4) / 12.0).epsilon(1e-14));
    CHECK(s2.label() == CaseLabel::C);
    CHECK_THROWS_AS(ReactionTerm::builtin("combustion", {{"a", 1.2}}), std::invalid_argument);
}

TEST_CASE("bistable builtin") {
    const ReactionTerm f = ReactionTerm::builtin("bistable_cubic", {{"a", 0.25}});
    CHECK(f.integral01() == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(f.label() == CaseLabel::B);
    CHECK(f.fprime0() == doctest::Approx(-0.25));
    // int f < 0 once a > 1/2: no longer case B
    CHECK(ReactionTerm::builtin("bistable_cubic", {{"a", 0.7}}).label() == CaseLabel::Other);
}

TEST_CASE("builtin metadata agrees with differencing and quadrature oracles") {
    std::vector<ReactionTerm> catalog;
    catalog.push_back(ReactionTerm::builtin("fisher"));
    catalog.push_back(ReactionTerm::builtin("mkpp", {{"m", 1.5}}));
    catalog.push_back(ReactionTerm::builtin("mkpp", {{"m", 3.0}}));
    catalog.push_back(ReactionTerm::builtin("combustion", {{"a", 0.3}}));
    catalog.push_back(ReactionTerm::builtin("combustion", {{"a", 0.5}, {"shape", 2.0}}));
    catalog.push_back(ReactionTerm::builtin("bistable_cubic", {{"a", 0.25}}));
    for (const auto& f : catalog) {
        CAPTURE(f.name());
        CHECK(f.fprime0() == doctest::Approx(fd0(f)).epsilon(1e-8).scale(1.0));
        CHECK(f.fprime1_left() == doctest::Approx(fd1(f)).epsilon(1e-8).scale(1.0));
        const double quad = integrate_split(std::ref(f), 0.0, 1.0, f.breakpoints(), 1e-12).value;
        CHECK(f.integral01() == doctest::Approx(quad).epsilon(1e-10));
    }
}

TEST_CASE("classify catalog") {
    CHECK(classify(ReactionTerm::builtin("fisher")) == CaseLabel::A);
    CHECK(classify(ReactionTerm::builtin("combustion", {{"a", 0.3}})) == CaseLabel::C);
    CHECK(classify(ReactionTerm::builtin("bistable_cubic", {{"a", 0.25}})) == CaseLabel::B);
    for (double m : {1.5, 2.0, 3.0, 5.0}) {
        CHECK(classify(ReactionTerm::builtin("mkpp", {{"m", m}})) == CaseLabel::D);
    }
    CHECK(classify(ReactionTerm::builtin("mkpp", {{"m", 1.0}})) == CaseLabel::A);
    for (double a : {0.1, 0.3, 0.8}) {
        CHECK(classify(ReactionTerm::builtin("combustion", {{"a", a}})) == CaseLabel::C);
    }
    for (double a : {0.1, 0.25, 0.4}) {
        CHECK(classify(ReactionTerm::builtin("bistable_cubic", {{"a", a}})) == CaseLabel::B);
    }
    // f == 0 has no sign pattern
    CHECK(ReactionTerm::from_json(R"({"type":"polynomial","coefficients":[0]})").label() ==
          CaseLabel::Other);
    CHECK_THROWS_AS(classify(ReactionTerm::builtin("fisher"), 128), std::invalid_argument);
}

TEST_CASE("classify consistency for all builtins equals the documented label") {
    struct Row {
        std::string name;
        std::map<std::string, double> params;
    };
    const std::vector<Row> rows = {
        {"fisher", {}},
        {"mkpp", {{"m", 1.0}}},
        {"mkpp", {{"m", 2.0}}},
        {"combustion", {{"a", 0.2}}},
        {"combustion", {{"a", 0.6}, {"shape", 1.5}}},
        {"bistable_cubic", {{"a", 0.3}}},
        {"bistable_cubic", {{"a", 0.6}}},
    };
    for (const auto& row : rows) {
        const ReactionTerm f = ReactionTerm::builtin(row.name, row.params);
        CHECK(classify(f) == f.label());
    }
}

TEST_CASE("custom polynomial matches the fisher builtin") {
    const ReactionTerm f =
        ReactionTerm::from_json(R"({"type":"polynomial","coefficients":[0,1,-1]})");
    const ReactionTerm fisher = ReactionTerm::builtin("fisher");
    CHECK(f.label() == CaseLabel::A);
    CHECK(f(0.37) == doctest::Approx(fisher(0.37)).epsilon(1e-15));
    CHECK(f.fprime0() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.fprime1_left() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(f.integral01() == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("custom piecewise combustion-like term") {
    const char* doc = R"({
        "type": "piecewise",
        "pieces": [
            {"from": 0.0, "to": 0.3, "coefficients": [0]},
            {"from": 0.3, "to": 1.0, "coefficients": [-0.3, 1.3, -1]}
        ]
    })";
    const ReactionTerm f = ReactionTerm::from_json(doc);
    CHECK(f.label() == CaseLabel::C);
    CHECK(f(0.1) == 0.0);
    CHECK(f(0.6) == doctest::Approx(0.3 * 0.4).epsilon(1e-12));
    CHECK(f.breakpoints() == std::vector<double>{0.3});
    const ReactionTerm ref = ReactionTerm::builtin("combustion", {{"a", 0.3}});
    CHECK(f.integral01() == doctest::Approx(ref.integral01()).epsilon(1e-9));
}

TEST_CASE("custom terms accepted and rejected on endpoint values") {
    // u - u^3 vanishes at both ends: accepted, monostable.
    const ReactionTerm ok =
        ReactionTerm::from_json(R"({"type":"polynomial","coefficients":[0,1,0,-1]})");
    CHECK(ok.label() == CaseLabel::A);

    CHECK_THROWS_AS(ReactionTerm::from_json(R"({"type":"polynomial","coefficients":[0.1,1]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::from_json(R"({"type":"polynomial","coefficients":[0,1]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::from_json(R"({"type":"spline"})"), std::invalid_argument);
    CHECK_THROWS_AS(ReactionTerm::from_json(R"({
        "type":"piecewise",
        "pieces":[{"from":0.0,"to":0.4,"coefficients":[0]},
                  {"from":0.5,"to":1.0,"coefficients":[0]}]})"),
                    std::invalid_argument);
}

TEST_CASE("builtin via json") {
    const ReactionTerm f =
        ReactionTerm::from_json(R"({"type":"builtin","name":"mkpp","params":{"m":2}})");
    CHECK(f.label() == CaseLabel::D);
    CHECK(f.integral01() == doctest::Approx(1.0 / 12.0));
}
