#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wzbc/problem.hpp"

namespace wzbc {

struct SimConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::size_t threads = 0;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

constexpr double acceptance_sigmas = 4.0;

inline bool within_sigmas(const Estimate& e, double target, double sigmas = acceptance_sigmas)
{
    const double slack = sigmas * e.std_error;
    return e.mean >= target - slack - 1e-15 && e.mean <= target + slack + 1e-15;
}

namespace mc {

/// Samples are processed in fixed-size batches. Batch b, component c draws
/// from mt19937_64 seeded with splitmix64 applied to
/// seed ^ (b * golden) ^ (c * other), so every (batch, component) stream is
/// fixed by the master seed alone.
constexpr std::uint64_t batch_size = std::uint64_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t batch, std::uint64_t component);

/// Uniform on [0,1) with 53 random bits.
double uniform(std::mt19937_64& rng);

/// Standard normal pairs by the Box-Muller transform; caches the second value.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
    double next();
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mc

/// Analog transmission of sqrt(P) X; each receiver forms the linear MMSE
/// estimate of X from its channel output and side information.
std::vector<Estimate> simulate_uncoded_gaussian(const GaussianProblem& problem, const SimConfig& cfg);

/// Uncoded binary transmission; each receiver outputs the less noisy of its
/// channel output and side information.
std::vector<Estimate> simulate_uncoded_binary(const BinaryProblem& problem, const SimConfig& cfg);

/// Backward test channel X = Z + S with the linear combiner of Z and Y.
Estimate simulate_gaussian_wz_estimator(double sideinfo_var, double s_var, const SimConfig& cfg);

/// N / (1 - N + N / S_var).
double gaussian_wz_estimator_mse(double sideinfo_var, double s_var);

} // namespace wzbc
