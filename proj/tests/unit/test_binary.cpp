#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "wzbc/binary.hpp"
#include "wzbc/infotheory.hpp"

using namespace wzbc;

namespace {

const BinaryProblem inst{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};

double cap(double p, double kappa = 1.0)
{
    return kappa * (1.0 - oracle::h2(p));
}

std::set<std::pair<double, double>> as_set(const std::vector<RegionSample>& s)
{
    std::set<std::pair<double, double>> out;
    for (const auto& x : s)
        out.insert({x.D[0], x.D[1]});
    return out;
}

std::set<std::pair<double, double>> as_set(const std::vector<DistortionPoint>& s)
{
    std::set<std::pair<double, double>> out;
    for (const auto& x : s)
        out.insert({x.D[0], x.D[1]});
    return out;
}

} // namespace

TEST_SUITE("binary")
{
    TEST_CASE("wyner-ziv distortion-rate examples")
    {
        for (double beta : {0.0, 0.1, 0.25, 0.5}) {
            CHECK(binary_wz_distortion(beta, 0.0) == beta);
            CHECK(binary_wz_distortion(beta, oracle::h2(beta)) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(binary_wz_distortion(beta, 5.0) == doctest::Approx(0.0).epsilon(1e-12));
        }
        // Brute-force 2000-point grid gives 0.10407830840294; refinement lands slightly lower.
        const double v = binary_wz_distortion(0.25, 0.4);
        CHECK(v == doctest::Approx(0.10407830695200).epsilon(1e-9));
        CHECK(v <= oracle::binary_wz(0.25, 0.4) + 1e-15);
        CHECK(oracle::binary_wz(0.25, 0.4) - v < 1e-8);
        CHECK_THROWS_AS(binary_wz_distortion(0.6, 0.1), ProblemError);
        CHECK_THROWS_AS(binary_wz_distortion(0.2, -0.1), ProblemError);
    }

    TEST_CASE("wyner-ziv distortion-rate agrees with brute force and is nonincreasing")
    {
        oracle::Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            const double beta = rng.uniform(0.01, 0.5);
            const double r1 = rng.uniform(0.0, oracle::h2(beta));
            const double r2 = rng.uniform(0.0, oracle::h2(beta));
            const double d1 = binary_wz_distortion(beta, r1);
            const double d2 = binary_wz_distortion(beta, r2);
            CHECK(std::abs(d1 - oracle::binary_wz(beta, r1)) < 1e-5);
            CHECK(d1 <= oracle::binary_wz(beta, r1) + 1e-15);
            if (r1 <= r2)
                CHECK(d1 >= d2 - 1e-12);
            else
                CHECK(d2 >= d1 - 1e-12);
            CHECK(d1 <= beta);
        }
    }

    TEST_CASE("uncoded and capacity")
    {
        const auto u = binary_uncoded(inst);
        CHECK(u.D == std::vector<double>{0.05, 0.1});
        CHECK(binary_uncoded({{0.1, 0.2}, {0.0, 0.3}, Rational(1)}).D == std::vector<double>{0.0, 0.2});
        CHECK(binary_uncoded({{0.0, 0.2}, {0.3, 0.3}, Rational(1)}).D[0] == 0.0);
        CHECK_THROWS_AS(binary_uncoded({{0.1, 0.2}, {0.1, 0.1}, Rational(2)}), BandwidthMismatchError);
        CHECK(binary_channel_capacity(0.11, Rational(3, 2)) == doctest::Approx(1.5 * cap(0.11)).epsilon(1e-14));
        CHECK(binary_channel_capacity(0.5, Rational(1)) == 0.0);
    }

    TEST_CASE("trivial converse")
    {
        const auto lo = binary_trivial_converse(inst);
        CHECK(lo[0] == doctest::Approx(oracle::binary_wz(0.2, cap(0.05))).epsilon(1e-6));
        CHECK(lo[1] == doctest::Approx(0.0).epsilon(1e-12));
        const auto curve = binary_converse_curve(inst);
        REQUIRE(curve.points.size() == 3);
        CHECK(curve.points[1].D == lo);
    }

    TEST_CASE("single description region")
    {
        const auto pts = binary_cds_points(inst);
        const auto set = as_set(pts);
        CHECK(set.count({0.2, 0.1}) == 1);
        for (const auto& p : pts) {
            const double q = p.params[0].second, a = p.params[1].second;
            CHECK(q * oracle::r(a, 0.2) <= cap(0.05) + 1e-12);
            CHECK(q * oracle::r(a, 0.1) <= cap(0.1) + 1e-12);
        }
        const BinaryProblem dead{{0.5, 0.1}, {0.2, 0.1}, Rational(1)};
        for (const auto& p : binary_cds_points(dead)) {
            const double q = p.params[0].second, a = p.params[1].second;
            CHECK((q == 0.0 || std::abs(oracle::r(a, 0.2)) < 1e-12));
        }
        const auto env = binary_cds_region(inst);
        CHECK(env.envelope_applied);
        CHECK(curve_value_at(env, 0.2).value() <= 0.1);
    }

    TEST_CASE("single description touches both converse corners when the rates match")
    {
        // At q = 1, alpha = a: r(a, beta_k) = 1 - H2(p_k) for both k.
        const double a = 0.025;
        const double b1 = 0.2, b2 = 0.3;
        auto p_for = [&](double beta) {
            const double target = 1.0 - oracle::r(a, beta);
            double lo = 0.0, hi = 0.5;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                (oracle::h2(mid) < target ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        };
        const BinaryProblem g{{p_for(b1), p_for(b2)}, {b1, b2}, Rational(1)};
        REQUIRE(oracle::binary_wz(b1, oracle::r(a, b1)) == doctest::Approx(a).epsilon(1e-6));
        REQUIRE(oracle::binary_wz(b2, oracle::r(a, b2)) == doctest::Approx(a).epsilon(1e-6));
        const auto pts = binary_cds_points(g, 41);
        const auto lo = binary_trivial_converse(g);
        bool corner = false;
        for (const auto& p : pts)
            if (std::abs(p.D[0] - lo[0]) < 1e-7 && std::abs(p.D[1] - lo[1]) < 1e-7)
                corner = true;
        CHECK(corner);
    }

    TEST_CASE("layered source rates")
    {
        const auto tie = binary_lds_source_rates({0.6, 0.6, 0.2, 0.2}, 0.25, 0.1);
        CHECK(tie.rates.rr == 0.0);
        CHECK_FALSE(tie.clamped);
        const auto nocl = binary_lds_source_rates({0.0, 0.7, 0.3, 0.05}, 0.25, 0.1);
        CHECK(nocl.rates.cc == 0.0);
        CHECK(nocl.rates.cr == 0.0);
        CHECK(nocl.rates.rr == doctest::Approx(0.7 * oracle::r(0.05, 0.1)).epsilon(1e-13));
        const auto half = binary_lds_source_rates({0.5, 0.9, 0.5, 0.1}, 0.25, 0.1);
        CHECK(std::abs(half.rates.cc) < 1e-15);
        CHECK(std::abs(half.rates.cr) < 1e-15);
        CHECK_THROWS_AS(binary_lds_source_rates({0.8, 0.5, 0.2, 0.1}, 0.2, 0.1), ProblemError);
        CHECK_THROWS_AS(binary_lds_source_rates({0.2, 0.5, 0.1, 0.2}, 0.2, 0.1), ProblemError);
    }

    TEST_CASE("layered channel rates")
    {
        const Rational one(1);
        for (double pc : {0.05, 0.2}) {
            for (double pr : {0.01, 0.1}) {
                const auto z = binary_lds_channel_rates(pc, pr, {0.5, 0.0, AuxChoice::t_equals_uc}, one);
                CHECK(z.rates.cc == doctest::Approx(cap(pc)).epsilon(1e-13));
                CHECK(z.rates.cr == doctest::Approx(cap(pr)).epsilon(1e-13));
                CHECK(z.rates.rr == doctest::Approx(0.0).epsilon(1e-13));

                const auto x = binary_lds_channel_rates(pc, pr, {0.5, 0.3, AuxChoice::t_equals_uc_xor_ur}, one);
                CHECK(x.rates.cc == doctest::Approx(cap(pc)).epsilon(1e-12));
                CHECK(x.rates.cr == doctest::Approx(cap(pr)).epsilon(1e-12));
                CHECK(std::abs(x.rates.rr) < 1e-12);

                // gamma_r = 1/2 splits capacity between the two layers.
                const auto h = binary_lds_channel_rates(pc, pr, {0.2, 0.5, AuxChoice::t_equals_uc_xor_ur}, one);
                CHECK(h.rates.cc + h.rates.rr == doctest::Approx(cap(pc)).epsilon(1e-12));
                CHECK(h.rates.rr == doctest::Approx(oracle::r(0.2, 0.5)).epsilon(1e-12));
                CHECK_FALSE(h.clamped);
            }
        }
        // A noisy common channel makes the raw XOR common rate negative.
        const double g = oracle::star(0.05, 0.05);
        const double raw_cc = oracle::r(0.45, g) - oracle::r(0.05, 0.05);
        REQUIRE(raw_cc < 0.0);
        const BinaryChannelParams neg{0.05, 0.05, AuxChoice::t_equals_uc_xor_ur};
        CHECK(binary_lds_channel_rates_raw(0.45, 0.4, neg, one).cc == doctest::Approx(raw_cc).epsilon(1e-12));
        const auto h = binary_lds_channel_rates(0.45, 0.4, neg, one);
        CHECK(h.clamped);
        CHECK(h.rates.cc == 0.0);
        const auto k2 = binary_lds_channel_rates(0.05, 0.1, {0.5, 0.0, AuxChoice::t_equals_uc}, Rational(2));
        CHECK(k2.rates.cc == doctest::Approx(2 * cap(0.05)).epsilon(1e-13));
        CHECK(std::string(to_string(AuxChoice::t_equals_uc_xor_ur)).size() > 0);
    }

    TEST_CASE("channel triples never exceed the refinement receiver capacity")
    {
        const auto grid = BinaryLdsGrid::uniform(41);
        oracle::Rng rng(12);
        for (int i = 0; i < 40; ++i) {
            const double pc = rng.uniform(0.0, 0.5), pr = rng.uniform(0.0, 0.5);
            for (double gc : grid.gamma_values) {
                for (double gr : grid.gamma_values) {
                    for (AuxChoice aux : grid.aux) {
                        const auto cr = binary_lds_channel_rates(pc, pr, {gc, gr, aux}, Rational(1));
                        if (cr.clamped)
                            continue;
                        CHECK(cr.rates.cr + cr.rates.rr <= cap(pr) + 1e-12);
                    }
                }
            }
        }
    }

    TEST_CASE("grid construction")
    {
        CHECK_THROWS_WITH_AS(BinaryLdsGrid::uniform(2), doctest::Contains("grid too coarse"), ProblemError);
        CHECK_THROWS_WITH_AS(BinarySeparateGrid::uniform(1), doctest::Contains("grid too coarse"), ProblemError);
        const auto g = BinaryLdsGrid::uniform(41);
        CHECK(g.alpha_values[1] == doctest::Approx(0.0125).epsilon(1e-14));
        CHECK(g.q_values.back() == 1.0);
    }

    TEST_CASE("layered region with pinned layers equals the single description points")
    {
        for (const BinaryProblem& p : {inst, BinaryProblem{{0.2, 0.03}, {0.05, 0.3}, Rational(1)},
                                       BinaryProblem{{0.1, 0.1}, {0.2, 0.2}, Rational(2)}}) {
            BinaryLdsGrid g = BinaryLdsGrid::uniform(41);
            g.tie_layers = true;
            g.gamma_values = {0.0};
            g.aux = {AuxChoice::t_equals_uc};
            g.assignments = {{0, 1}};
            CHECK(as_set(binary_lds_points(p, g)) == as_set(binary_cds_points(p, 41)));
        }
    }

    TEST_CASE("layered region: corners, bounds and converse")
    {
        const auto grid = BinaryLdsGrid::uniform(11);
        const auto pts = binary_lds_points(inst, grid);
        const auto lo = binary_trivial_converse(inst);
        bool corner = false;
        for (const auto& s : pts) {
            corner = corner || (s.D[0] == 0.2 && s.D[1] == 0.1);
            CHECK(s.D[0] <= 0.2 + 1e-12);
            CHECK(s.D[1] <= 0.1 + 1e-12);
            CHECK(s.D[0] >= lo[0] - 1e-9);
            CHECK(s.D[1] >= lo[1] - 1e-9);
            // Every emitted cell really is feasible.
            const BinaryLdsCell c = describe_lds_cell(grid, s.cell);
            const double bc = inst.sideinfo_crossovers[c.assign.common];
            const double br = inst.sideinfo_crossovers[c.assign.refinement];
            const auto src = binary_lds_source_rates(c.source, bc, br);
            const auto ch = binary_lds_channel_rates(inst.crossovers[c.assign.common],
                                                     inst.crossovers[c.assign.refinement], c.channel, inst.kappa);
            CHECK_FALSE(ch.clamped);
            CHECK(src.rates.dominated_by(ch.rates));
        }
        CHECK(corner);
    }

    TEST_CASE("grid slack against the converse shrinks with resolution")
    {
        const auto lo = binary_trivial_converse(inst);
        auto slack = [&](std::size_t res) {
            const auto pts = binary_lds_points(inst, BinaryLdsGrid::uniform(res));
            double m = 1e9;
            for (const auto& s : pts)
                m = std::min(m, s.D[0] - lo[0]);
            return m;
        };
        const double s11 = slack(11), s21 = slack(21);
        CHECK(s21 >= -1e-9);
        CHECK(s21 <= s11 + 1e-15);
    }

    TEST_CASE("layered region is deterministic across thread counts")
    {
        const auto grid = BinaryLdsGrid::uniform(9);
        const auto a = binary_lds_points(inst, grid, 1);
        const auto b = binary_lds_points(inst, grid, 5);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].cell == b[i].cell);
            CHECK(a[i].D == b[i].D);
        }
    }

    TEST_CASE("layered region rejects K != 2")
    {
        const BinaryProblem three{{0.1, 0.1, 0.2}, {0.1, 0.2, 0.3}, Rational(1)};
        CHECK_THROWS_AS(binary_lds_region(three, 5), ReceiverCountError);
        CHECK_THROWS_AS(binary_separate_region(three, 5), ReceiverCountError);
        CHECK_NOTHROW(binary_cds_points(three, 5));
    }

    TEST_CASE("scheme 3 region")
    {
        const auto grid = BinaryLdsGrid::uniform(9);
        const auto pts = binary_scheme3_points(inst, grid);
        const auto lo = binary_trivial_converse(inst);
        REQUIRE(!pts.empty());
        for (const auto& s : pts) {
            CHECK(s.D[0] >= lo[0] - 1e-9);
            CHECK(s.D[1] >= lo[1] - 1e-9);
            const BinaryLdsCell c = describe_scheme3_cell(grid, s.cell);
            const auto ch = binary_scheme3_channel_rates(inst.crossovers[c.assign.common],
                                                         inst.crossovers[c.assign.refinement], c.channel, inst.kappa);
            CHECK_FALSE(ch.clamped);
            CHECK(ch.rates.cr + ch.rates.rr <= cap(inst.crossovers[c.assign.refinement]) + 1e-12);
        }
        // gamma_c = 1/2, gamma_r = 0 gives the single-description rates.
        const auto r = binary_scheme3_channel_rates(0.05, 0.1, {0.5, 0.0, AuxChoice::t_equals_uc}, Rational(1));
        CHECK(r.rates.cc == doctest::Approx(cap(0.05)).epsilon(1e-13));
        CHECK(r.rates.cr == doctest::Approx(cap(0.1)).epsilon(1e-13));
        CHECK(std::abs(r.rates.rr) < 1e-13);
    }

    TEST_CASE("separate coding roles and broadcast bounds")
    {
        const auto s = binary_separate_roles(inst);
        CHECK(s.bad == 1);
        CHECK(s.good == 0);
        const BinaryProblem tie{{0.1, 0.1}, {0.3, 0.2}, Rational(1)};
        CHECK(binary_separate_roles(tie).good == 1);

        const auto [b0, g0] = binary_broadcast_bounds(inst, 0.0);
        CHECK(b0 == doctest::Approx(cap(0.1)).epsilon(1e-13));
        CHECK(g0 == 0.0);
        const auto [bh, gh] = binary_broadcast_bounds(inst, 0.5);
        CHECK(std::abs(bh) < 1e-15);
        CHECK(gh == doctest::Approx(cap(0.05)).epsilon(1e-13));
        CHECK_THROWS_AS(binary_broadcast_bounds(inst, 0.7), ProblemError);
    }

    TEST_CASE("separate coding feasibility")
    {
        CHECK(binary_separate_feasible(inst, {0.3, 0.0, 0.0, 0.5, 0.5}));
        // Not nested.
        CHECK_FALSE(binary_separate_feasible(inst, {0.0, 0.2, 0.1, 0.2, 0.1}));
        // Too much rate for the bad receiver.
        CHECK_FALSE(binary_separate_feasible(inst, {0.0, 1.0, 1.0, 0.0, 0.0}));
        // theta = 0 with a shared layer: the good receiver's worse side information binds.
        BinarySeparateParams prm;
        prm.theta = 0.0;
        prm.alpha_b = prm.alpha_g = 0.0;
        prm.q_b = prm.q_g = cap(0.1) / oracle::h2(0.2);
        CHECK(binary_separate_feasible(inst, prm));
        prm.q_b = prm.q_g = prm.q_g * 1.001;
        CHECK_FALSE(binary_separate_feasible(inst, prm));
    }

    TEST_CASE("separate region")
    {
        const auto grid = BinarySeparateGrid::uniform(11);
        const auto pts = binary_separate_points(inst, grid);
        const auto lo = binary_trivial_converse(inst);
        bool corner = false;
        for (const auto& s : pts) {
            corner = corner || (s.D[0] == 0.2 && s.D[1] == 0.1);
            CHECK(s.D[0] >= lo[0] - 1e-9);
            CHECK(s.D[1] >= lo[1] - 1e-9);
            CHECK(binary_separate_feasible(inst, describe_separate_cell(grid, s.cell)));
        }
        CHECK(corner);
        const auto env = binary_separate_region(inst, 11);
        CHECK(env.envelope_applied);
        CHECK(!env.points.empty());
    }
}
