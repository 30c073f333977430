#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wzbc/gaussian.hpp"
#include "wzbc/optimize.hpp"

using namespace wzbc;

namespace {

DistortionPoint dp(double x, double y)
{
    DistortionPoint p;
    p.D = {x, y};
    return p;
}

std::vector<Point2> random_cloud(oracle::Rng& rng, std::size_t n)
{
    std::vector<Point2> pts(n);
    const bool quantised = rng.uniform(0.0, 1.0) < 0.3;
    for (auto& p : pts) {
        p = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        if (quantised)
            p = {std::round(p.x * 8) / 8, std::round(p.y * 8) / 8};
    }
    return pts;
}

bool slopes_nondecreasing(const std::vector<Point2>& env)
{
    for (std::size_t i = 2; i < env.size(); ++i) {
        const double s1 = (env[i - 1].y - env[i - 2].y) / (env[i - 1].x - env[i - 2].x);
        const double s2 = (env[i].y - env[i - 1].y) / (env[i].x - env[i - 1].x);
        if (s2 < s1 - 1e-12)
            return false;
    }
    return true;
}

bool nothing_below(const std::vector<Point2>& env, const std::vector<Point2>& cloud)
{
    for (const auto& p : cloud) {
        const auto v = curve_value_at(env, p.x);
        if (!v)
            return false; // no input lies left of the first vertex
        if (p.y < *v - 1e-12)
            return false;
    }
    return true;
}

} // namespace

TEST_SUITE("optimize")
{
    TEST_CASE("grid axis endpoints are exact")
    {
        const GridAxis g{"gamma", -1.0, 2.0, 400};
        CHECK(g.value(0) == -1.0);
        CHECK(g.value(399) == 2.0);
        CHECK(g.value(133) == 0.0);
        CHECK(g.value(266) == 1.0);
        CHECK(GridAxis{"x", 0.3, 0.3, 1}.value(0) == 0.3);
    }

    TEST_CASE("grid validation")
    {
        GridSpec g;
        CHECK_THROWS(g.validate());
        g.axes = {{"a", 1.0, 0.0, 3}};
        CHECK_THROWS(g.validate());
        g.axes = {{"a", 0.0, 1.0, 0}};
        CHECK_THROWS(g.validate());
        g.axes = {{"a", 0.0, 1.0, 5000}, {"b", 0.0, 1.0, 5000}};
        CHECK_THROWS_AS(g.validate(), std::length_error);
        g.cell_cap = 25'000'000;
        CHECK_NOTHROW(g.validate());
    }

    TEST_CASE("sweep basics")
    {
        GridSpec one;
        one.axes = {{"a", 0.5, 0.5, 1}};
        const auto single = sweep(one, [](std::span<const double> v) -> std::optional<DistortionPoint> {
            return dp(v[0], 1.0 - v[0]);
        });
        CHECK(single.points.size() == 1);
        CHECK(single.evaluated == 1);

        const auto none = sweep(one, [](std::span<const double>) -> std::optional<DistortionPoint> {
            return std::nullopt;
        });
        CHECK(none.points.empty());
        CHECK(none.rejected == 1);
        CHECK(none.warnings.size() == 1);
    }

    TEST_CASE("sweep is deterministic across thread counts")
    {
        GridSpec g;
        g.axes = {{"a", 0.0, 1.0, 37}, {"b", 0.0, 2.0, 23}, {"c", -1.0, 1.0, 5}};
        const CellEvaluator ev = [](std::span<const double> v) -> std::optional<DistortionPoint> {
            if (v[0] + v[2] > 1.3)
                return std::nullopt;
            return dp(v[0] * v[1], v[2] + v[1]);
        };
        const auto a = sweep(g, ev, 1);
        const auto b = sweep(g, ev, 4);
        const auto c = sweep(g, ev, 7);
        REQUIRE(a.points.size() == b.points.size());
        REQUIRE(a.points.size() == c.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].D == b.points[i].D);
            CHECK(a.points[i].D == c.points[i].D);
        }
        CHECK(a.evaluated == 37u * 23u * 5u);
    }

    TEST_CASE("sweep propagates evaluator exceptions")
    {
        GridSpec g;
        g.axes = {{"a", 0.0, 1.0, 8}};
        CHECK_THROWS_AS(sweep(g,
                              [](std::span<const double> v) -> std::optional<DistortionPoint> {
                                  if (v[0] > 0.5)
                                      throw std::runtime_error("boom");
                                  return std::nullopt;
                              },
                              3),
                        std::runtime_error);
    }

    TEST_CASE("envelope examples")
    {
        const std::vector<Point2> tri{{0, 1}, {1, 0}, {0.5, 0.6}};
        CHECK(lower_convex_envelope(tri) == std::vector<Point2>{{0, 1}, {1, 0}});

        const std::vector<Point2> line{{0, 1}, {0.25, 0.75}, {0.5, 0.5}, {1, 0}};
        CHECK(lower_convex_envelope(line) == std::vector<Point2>{{0, 1}, {1, 0}});

        const std::vector<Point2> one{{0.3, 0.2}};
        CHECK(lower_convex_envelope(one) == one);

        CHECK_THROWS(lower_convex_envelope(std::vector<Point2>{}));
        CHECK_THROWS(lower_convex_envelope(std::vector<Point2>{{0, NAN}}));
    }

    TEST_CASE("envelope tie and trimming rules")
    {
        // Same x keeps the smaller y.
        const std::vector<Point2> ties{{0, 1}, {0, 0.5}, {1, 0}};
        CHECK(lower_convex_envelope(ties) == std::vector<Point2>{{0, 0.5}, {1, 0}});
        // Rising tail is dropped.
        const std::vector<Point2> tail{{0, 1}, {0.5, 0.2}, {1, 0.6}};
        CHECK(lower_convex_envelope(tail) == std::vector<Point2>{{0, 1}, {0.5, 0.2}});
        // Flat bottom keeps only its left end.
        const std::vector<Point2> flat{{0, 1}, {0.5, 0}, {1, 0}};
        CHECK(lower_convex_envelope(flat) == std::vector<Point2>{{0, 1}, {0.5, 0}});
    }

    TEST_CASE("curve_value_at")
    {
        const std::vector<Point2> env{{0.2, 1}, {0.6, 0.2}, {1.0, 0.0}};
        CHECK_FALSE(curve_value_at(env, 0.1).has_value());
        CHECK(*curve_value_at(env, 0.2) == 1.0);
        CHECK(*curve_value_at(env, 0.4) == doctest::Approx(0.6));
        CHECK(*curve_value_at(env, 2.0) == 0.0);
    }

    TEST_CASE("envelope properties on random point sets")
    {
        oracle::Rng rng(99);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto cloud = random_cloud(rng, 1 + trial % 60);
            const auto env = lower_convex_envelope(cloud);
            REQUIRE(!env.empty());
            for (std::size_t i = 1; i < env.size(); ++i) {
                CHECK(env[i].x > env[i - 1].x);
                CHECK(env[i].y < env[i - 1].y);
            }
            CHECK(slopes_nondecreasing(env));
            CHECK(nothing_below(env, cloud));
            // Idempotence.
            CHECK(lower_convex_envelope(env) == env);
        }
    }

    TEST_CASE("pareto merge")
    {
        TradeoffCurve a;
        a.points = {dp(0, 1), dp(0.5, 0.4), dp(1, 0)};
        TradeoffCurve b;
        b.points = {dp(0.2, 0.5), dp(0.8, 0.05)};

        const TradeoffCurve aa = pareto_merge({a, a});
        const TradeoffCurve a1 = pareto_merge({a});
        REQUIRE(aa.points.size() == a1.points.size());
        for (std::size_t i = 0; i < aa.points.size(); ++i)
            CHECK(aa.points[i].D == a1.points[i].D);

        const TradeoffCurve ab = pareto_merge({a, b});
        const TradeoffCurve ba = pareto_merge({b, a});
        REQUIRE(ab.points.size() == ba.points.size());
        for (std::size_t i = 0; i < ab.points.size(); ++i)
            CHECK(ab.points[i].D == ba.points[i].D);
        CHECK(ab.envelope_applied);

        TradeoffCurve p;
        p.points = {dp(0.3, 0.3)};
        TradeoffCurve q;
        q.points = {dp(0.4, 0.4)};
        const TradeoffCurve pq = pareto_merge({p, q});
        REQUIRE(pq.points.size() == 1);
        CHECK(pq.points[0].D == std::vector<double>{0.3, 0.3});

        CHECK_THROWS(pareto_merge({}));
    }

    TEST_CASE("nu-axis sweep with pinned gamma reproduces the closed form")
    {
        for (const GaussianProblem g : {GaussianProblem{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)},
                                        GaussianProblem{2.0, {0.5, 1.5}, {0.9, 0.25}, Rational(1)}}) {
            const RoleAssignment a = choose_refinement_receiver(g);
            const double gamma = g.noise_vars[a.common] > g.noise_vars[a.refinement] ? 0.0 : 1.0;
            GridSpec grid;
            grid.axes = {{"nu", 0.0, 1.0, 2001}};
            const auto res = sweep(grid, [&](std::span<const double> v) -> std::optional<DistortionPoint> {
                const double gm = v[0] == 0.0 ? 0.0 : gamma;
                const ClampedRates r = gaussian_lds_channel_rates(g, a, {v[0], gm});
                if (r.clamped)
                    return std::nullopt;
                return gaussian_lds_distortions(g, a, r.rates);
            });
            std::vector<Point2> xy;
            for (const auto& p : res.points)
                xy.push_back({p.D[a.common], p.D[a.refinement]});
            const auto env = lower_convex_envelope(xy);
            const Interval dom = gaussian_lds_domain(g, a);
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double dc = dom.lower + (dom.upper - dom.lower) * i / 49.0;
                worst = std::max(worst, std::abs(*curve_value_at(env, dc) - gaussian_lds_closed_form(g, a, dc)));
            }
            CHECK(worst < 1e-4);
        }
    }
}
