#include <doctest.h>

#include <cmath>
#include <limits>

#include "wzbc/problem.hpp"
#include "wzbc/problem_io.hpp"

using namespace wzbc;

namespace {

GaussianProblem gaussian_a()
{
    return {1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)};
}

template <class Fn>
std::string error_of(Fn&& fn)
{
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("core")
{
    TEST_CASE("rational normalises and parses")
    {
        CHECK(Rational(2, 4) == Rational(1, 2));
        CHECK(Rational(3, -6) == Rational(-1, 2));
        CHECK(Rational::parse("1/2") == Rational(1, 2));
        CHECK(Rational::parse(" 3 ") == Rational(3));
        CHECK(Rational::parse("4/2").is_one() == false);
        CHECK(Rational::parse("2/2").is_one());
        CHECK(Rational(1, 3).to_string() == "1/3");
        CHECK(Rational(5).to_string() == "5");
        CHECK_THROWS(Rational::parse("1/0"));
        CHECK_THROWS(Rational::parse("abc"));
        CHECK_THROWS(Rational::parse("1/2/3"));
    }

    TEST_CASE("valid gaussian problem passes unchanged")
    {
        const GaussianProblem g = gaussian_a();
        const GaussianProblem checked = validate_problem(g);
        CHECK(checked.power == g.power);
        CHECK(checked.noise_vars == g.noise_vars);
        CHECK(checked.sideinfo_vars == g.sideinfo_vars);
        CHECK(checked.kappa == g.kappa);
    }

    TEST_CASE("validation errors name the field and value")
    {
        GaussianProblem g = gaussian_a();
        g.power = 0.0;
        CHECK(error_of([&] { validate_problem(g); }).find("power must be positive") != std::string::npos);

        BinaryProblem b{{0.6, 0.1}, {0.2, 0.1}, Rational(1)};
        const std::string msg = error_of([&] { validate_problem(b); });
        CHECK(msg.find("crossover exceeds 1/2") != std::string::npos);
        CHECK(msg.find("0.6") != std::string::npos);

        g = gaussian_a();
        g.sideinfo_vars[1] = 1.5;
        CHECK(error_of([&] { validate_problem(g); }).find("N[1]") != std::string::npos);

        g = gaussian_a();
        g.noise_vars = {1.0};
        g.sideinfo_vars = {0.5};
        CHECK_THROWS_AS(validate_problem(g), ProblemError);

        g = gaussian_a();
        g.kappa = Rational(0);
        CHECK_THROWS_AS(validate_problem(g), ProblemError);

        g = gaussian_a();
        g.noise_vars[0] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_problem(g), ProblemError);
    }

    TEST_CASE("validation is idempotent")
    {
        const Problem p = BinaryProblem{{0.05, 0.1}, {0.2, 0.1}, Rational(1, 2)};
        const Problem once = validate_problem(p);
        const Problem twice = validate_problem(once);
        CHECK(to_json(once) == to_json(twice));
        CHECK(to_json(once) == to_json(p));
    }

    TEST_CASE("problem JSON round trip")
    {
        const Problem p = parse_problem(R"({"kind":"gaussian","P":2,"W":[1,0.5],"N":[0.8,0.4],"kappa":"3/2"})");
        const auto& g = std::get<GaussianProblem>(p);
        CHECK(g.power == 2.0);
        CHECK(g.kappa == Rational(3, 2));
        const Problem again = parse_problem(to_json(p));
        CHECK(to_json(again) == to_json(p));

        const Problem b = parse_problem(R"({"kind":"binary","p":[0.05,0.1],"beta":[0.2,0.1],"kappa":2})");
        CHECK(std::get<BinaryProblem>(b).kappa == Rational(2));

        const Problem dflt = parse_problem(R"({"kind":"binary","p":[0.05,0.1],"beta":[0.2,0.1]})");
        CHECK(std::get<BinaryProblem>(dflt).kappa.is_one());
    }

    TEST_CASE("malformed problem JSON")
    {
        CHECK_THROWS_AS(parse_problem("{"), ProblemError);
        CHECK_THROWS_AS(parse_problem(R"({"kind":"poisson"})"), ProblemError);
        CHECK_THROWS_AS(parse_problem(R"({"kind":"gaussian","W":[1,1],"N":[1,1]})"), ProblemError);
        CHECK_THROWS_AS(parse_problem(R"({"kind":"binary","p":[0.1,"x"],"beta":[0.1,0.1]})"), ProblemError);
        CHECK_THROWS_AS(parse_problem(R"({"kind":"binary","p":[0.1,0.1],"beta":[0.1,0.1],"kappa":0.5})"),
                        ProblemError);
        CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), ProblemError);
    }

    TEST_CASE("role assignment and layered gates")
    {
        CHECK(RoleAssignment::make(1, 0, 2).swapped() == RoleAssignment{0, 1});
        CHECK_THROWS_AS(RoleAssignment::make(0, 0, 2), ProblemError);
        CHECK_THROWS_AS(RoleAssignment::make(0, 2, 2), ProblemError);
        CHECK_THROWS_AS(require_two_receivers(3, "lds"), ReceiverCountError);
        CHECK_NOTHROW(require_two_receivers(2, "lds"));
        CHECK_THROWS_AS(require_matched_bandwidth(Rational(2), "uncoded"), BandwidthMismatchError);
        CHECK(error_of([] { require_matched_bandwidth(Rational(1, 2), "uncoded"); })
                  .find("uncoded requires bandwidth match") != std::string::npos);
    }

    TEST_CASE("rate clamping")
    {
        const ClampedRates a = clamp_rates({0.5, -0.25, 0.1});
        CHECK(a.clamped);
        CHECK(a.rates.cr == 0.0);
        CHECK(a.rates.cc == 0.5);

        const ClampedRates b = clamp_rates({-1e-14, 0.2, 0.0});
        CHECK_FALSE(b.clamped);
        CHECK(b.rates.cc == 0.0);

        const ClampedRates c = clamp_rates({std::nan(""), 0.2, 0.0});
        CHECK(c.clamped);
        CHECK(c.rates.cc == 0.0);

        CHECK(RateTriple{0.1, 0.2, 0.3}.dominated_by({0.1, 0.2, 0.3}));
        CHECK_FALSE(RateTriple{0.1, 0.2, 0.31}.dominated_by({0.1, 0.2, 0.3}));
    }

    TEST_CASE("distortion bounds check")
    {
        DistortionPoint pt;
        pt.D = {0.8, 0.4};
        CHECK(within_bounds(pt, gaussian_a()));
        pt.D = {0.8 + 1e-9, 0.4};
        CHECK_FALSE(within_bounds(pt, gaussian_a()));
        pt.D = {-1e-9, 0.1};
        CHECK_FALSE(within_bounds(pt, gaussian_a()));
        BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
        pt.D = {0.2, 0.1};
        CHECK(within_bounds(pt, b));
    }
}
