#include <doctest.h>

#include <cmath>

#include "wzbc/gaussian.hpp"
#include "wzbc/mcsim.hpp"

using namespace wzbc;

namespace {

SimConfig cfg(std::uint64_t samples, std::uint64_t seed = 42, std::size_t threads = 0)
{
    SimConfig c;
    c.samples = samples;
    c.seed = seed;
    c.threads = threads;
    return c;
}

} // namespace

TEST_SUITE("mcsim")
{
    TEST_CASE("generators")
    {
        std::uint64_t s = 0;
        const std::uint64_t a = mc::splitmix64(s);
        const std::uint64_t b = mc::splitmix64(s);
        CHECK(a != b);
        CHECK(mc::substream_seed(42, 0, 0) != mc::substream_seed(42, 0, 1));
        CHECK(mc::substream_seed(42, 0, 0) != mc::substream_seed(42, 1, 0));
        CHECK(mc::substream_seed(42, 3, 2) == mc::substream_seed(42, 3, 2));

        std::mt19937_64 rng(1);
        double lo = 1.0, hi = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double u = mc::uniform(rng);
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        CHECK(lo >= 0.0);
        CHECK(hi < 1.0);

        mc::NormalSource g(9);
        double m = 0.0, m2 = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double x = g.next();
            m += x;
            m2 += x * x;
        }
        CHECK(std::abs(m / n) < 0.02);
        CHECK(std::abs(m2 / n - 1.0) < 0.02);
    }

    TEST_CASE("uncoded gaussian matches the analytic distortion")
    {
        const GaussianProblem g{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)};
        const auto est = simulate_uncoded_gaussian(g, cfg(1'000'000));
        const auto target = gaussian_uncoded(g);
        REQUIRE(est.size() == 2);
        CHECK(within_sigmas(est[0], target.D[0]));
        CHECK(within_sigmas(est[1], target.D[1]));
        CHECK(est[0].std_error > 0.0);

        const GaussianProblem noside{2.0, {1.0, 3.0}, {1.0, 1.0}, Rational(1)};
        const auto e2 = simulate_uncoded_gaussian(noside, cfg(400'000, 7));
        CHECK(within_sigmas(e2[0], 1.0 / 3.0));
        CHECK(within_sigmas(e2[1], 3.0 / 5.0));

        CHECK_THROWS_AS(simulate_uncoded_gaussian({1.0, {1, 1}, {0.5, 0.5}, Rational(2)}, cfg(10)),
                        BandwidthMismatchError);
        CHECK_THROWS_AS(simulate_uncoded_gaussian(g, cfg(0)), ProblemError);
    }

    TEST_CASE("uncoded binary matches the analytic distortion")
    {
        const BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
        const auto est = simulate_uncoded_binary(b, cfg(1'000'000));
        CHECK(within_sigmas(est[0], 0.05));
        CHECK(within_sigmas(est[1], 0.1));

        const auto clean = simulate_uncoded_binary({{0.0, 0.3}, {0.2, 0.3}, Rational(1)}, cfg(100'000));
        CHECK(clean[0].mean == 0.0);
        CHECK(within_sigmas(clean[1], 0.3));
        CHECK_THROWS_AS(simulate_uncoded_binary({{0.1, 0.1}, {0.1, 0.1}, Rational(1, 2)}, cfg(10)),
                        BandwidthMismatchError);
    }

    TEST_CASE("results do not depend on thread count and repeat bit for bit")
    {
        const GaussianProblem g{1.5, {0.7, 2.0}, {0.6, 0.3}, Rational(1)};
        const auto a = simulate_uncoded_gaussian(g, cfg(300'001, 5, 1));
        const auto b = simulate_uncoded_gaussian(g, cfg(300'001, 5, 6));
        const auto c = simulate_uncoded_gaussian(g, cfg(300'001, 5, 6));
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(a[k].mean == b[k].mean);
            CHECK(a[k].std_error == b[k].std_error);
            CHECK(b[k].mean == c[k].mean);
        }
        const BinaryProblem bp{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
        const auto x = simulate_uncoded_binary(bp, cfg(200'000, 11, 1));
        const auto y = simulate_uncoded_binary(bp, cfg(200'000, 11, 3));
        CHECK(x[0].mean == y[0].mean);
        CHECK(x[1].mean == y[1].mean);
        const auto z = simulate_uncoded_binary(bp, cfg(200'000, 12, 3));
        CHECK(z[0].mean != x[0].mean);
    }

    TEST_CASE("standard error shrinks as one over root samples")
    {
        // Four times the samples halves the standard error.
        const GaussianProblem g{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)};
        for (std::uint64_t seed : {1, 2, 3}) {
            const auto small = simulate_uncoded_gaussian(g, cfg(100'000, seed));
            const auto big = simulate_uncoded_gaussian(g, cfg(400'000, seed + 100));
            for (std::size_t k = 0; k < 2; ++k) {
                const double ratio = big[k].std_error / small[k].std_error;
                CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
            }
        }
    }

    TEST_CASE("wyner-ziv estimator")
    {
        CHECK(gaussian_wz_estimator_mse(0.4, 1.0 / 3.0) == doctest::Approx(0.4 / 1.8).epsilon(1e-14));
        CHECK(gaussian_wz_estimator_mse(0.7, 1.0) == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(gaussian_wz_estimator_mse(1.0, 0.25) == doctest::Approx(0.25).epsilon(1e-14));

        CHECK(within_sigmas(simulate_gaussian_wz_estimator(0.4, 1.0 / 3.0, cfg(1'000'000)), 0.4 / 1.8));
        CHECK(within_sigmas(simulate_gaussian_wz_estimator(0.7, 1.0, cfg(200'000)), 0.7));
        CHECK(within_sigmas(simulate_gaussian_wz_estimator(1.0, 0.25, cfg(200'000)), 0.25));
        CHECK_THROWS_AS(simulate_gaussian_wz_estimator(0.0, 0.5, cfg(10)), ProblemError);
        CHECK_THROWS_AS(gaussian_wz_estimator_mse(0.5, 1.5), ProblemError);
    }
}
