#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wzbc/optimize.hpp"
#include "wzbc/problem.hpp"

namespace wzbc {

/// Distortion of one erasure/flip layer: q min(alpha, beta) + (1-q) beta.
double layer_distortion(double q, double alpha, double beta);

/// Binary Wyner-Ziv distortion-rate function. alpha is searched on a grid
/// over [0, beta] with q = min(1, R / r(alpha, beta)), then refined by
/// golden-section search around the best grid point.
double binary_wz_distortion(double beta, double rate, std::size_t grid_resolution = 2001);

/// binary_wz_distortion(beta_k, kappa (1 - H2(p_k))) for every receiver.
std::vector<double> binary_trivial_converse(const BinaryProblem& problem);

/// D_k = min(p_k, beta_k); kappa must be 1.
DistortionPoint binary_uncoded(const BinaryProblem& problem);

/// kappa (1 - H2(p)).
double binary_channel_capacity(double crossover, const Rational& kappa);

/// Feasible (q, alpha) grid points of the single-description scheme; any K.
/// params carry q and alpha.
std::vector<DistortionPoint> binary_cds_points(const BinaryProblem& problem, std::size_t resolution = 41);
TradeoffCurve binary_cds_region(const BinaryProblem& problem, std::size_t resolution = 41);

struct BinarySourceParams {
    double q_c = 0.0;
    double q_r = 0.0;
    double alpha_c = 0.5;
    double alpha_r = 0.5;
};

/// Throws ProblemError unless q_c <= q_r, alpha_c >= alpha_r and all values are in range.
void validate_source_params(const BinarySourceParams& src);

RateTriple binary_lds_source_rates_raw(const BinarySourceParams& src, double beta_c, double beta_r);
ClampedRates binary_lds_source_rates(const BinarySourceParams& src, double beta_c, double beta_r);

enum class AuxChoice {
    t_equals_uc,
    t_equals_uc_xor_ur,
};

const char* to_string(AuxChoice aux);

struct BinaryChannelParams {
    double gamma_c = 0.5;
    double gamma_r = 0.0;
    AuxChoice t_choice = AuxChoice::t_equals_uc;
};

/// Signed channel rates for a given (gamma_c, gamma_r). For T = U_c the
/// general form uses gamma_c as given.
RateTriple binary_lds_channel_rates_raw(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa);

/// Clamped channel rates. For T = U_c, gamma_c is fixed to 1/2.
ClampedRates binary_lds_channel_rates(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa);

struct BinaryLdsGrid {
    std::vector<double> q_values;
    std::vector<double> alpha_values;
    /// Used for gamma_r, and for gamma_c under T = U_c xor U_r.
    std::vector<double> gamma_values;
    std::vector<AuxChoice> aux{AuxChoice::t_equals_uc, AuxChoice::t_equals_uc_xor_ur};
    std::vector<RoleAssignment> assignments{{0, 1}, {1, 0}};
    /// Pin q_c = q_r and alpha_c = alpha_r.
    bool tie_layers = false;

    /// Evenly spaced axes: q on [0,1], alpha and gamma on [0,1/2].
    /// Throws ProblemError ("grid too coarse") below 3 points per axis.
    static BinaryLdsGrid uniform(std::size_t resolution);
};

struct RegionSample {
    std::array<double, 2> D{};
    std::uint64_t cell = 0;
};

struct BinaryLdsCell {
    RoleAssignment assign;
    BinarySourceParams source;
    BinaryChannelParams channel;
};

/// Every source tuple whose rate triple is dominated by the channel triple
/// of at least one channel grid point. Output order is deterministic.
std::vector<RegionSample> binary_lds_points(const BinaryProblem& problem, const BinaryLdsGrid& grid,
                                            std::size_t threads = 0);
BinaryLdsCell describe_lds_cell(const BinaryLdsGrid& grid, std::uint64_t cell);

TradeoffCurve binary_lds_region(const BinaryProblem& problem, const BinaryLdsGrid& grid, std::size_t threads = 0);
TradeoffCurve binary_lds_region(const BinaryProblem& problem, std::size_t resolution = 41, std::size_t threads = 0);

/// Reversed decoding order at r: (R_cc as in the layered scheme,
/// kappa I(T;V_r|U_r), kappa I(U_r;V_r)). Both branches sweep gamma_c.
RateTriple binary_scheme3_channel_rates_raw(double p_c, double p_r, const BinaryChannelParams& ch,
                                            const Rational& kappa);
ClampedRates binary_scheme3_channel_rates(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa);

std::vector<RegionSample> binary_scheme3_points(const BinaryProblem& problem, const BinaryLdsGrid& grid,
                                                std::size_t threads = 0);
BinaryLdsCell describe_scheme3_cell(const BinaryLdsGrid& grid, std::uint64_t cell);
TradeoffCurve binary_scheme3_region(const BinaryProblem& problem, const BinaryLdsGrid& grid, std::size_t threads = 0);
TradeoffCurve binary_scheme3_region(const BinaryProblem& problem, std::size_t resolution = 41,
                                    std::size_t threads = 0);

/// Separate coding labels: bad = larger p; on equal p, good = smaller beta, then index 0.
struct BinarySeparateRoles {
    std::size_t bad = 1;
    std::size_t good = 0;
};

BinarySeparateRoles binary_separate_roles(const BinaryProblem& problem);

/// Rate bound for the bad receiver's message and the private increment for
/// the good receiver under superposition with U_g ~ Ber(theta).
std::pair<double, double> binary_broadcast_bounds(const BinaryProblem& problem, double theta);

struct BinarySeparateParams {
    double theta = 0.0;
    double q_b = 0.0;
    double q_g = 0.0;
    double alpha_b = 0.5;
    double alpha_g = 0.5;
};

/// Both rate conditions; the good receiver's cumulative rate is compared
/// against the sum of the two broadcast bounds. Source layers must be nested.
bool binary_separate_feasible(const BinaryProblem& problem, const BinarySeparateParams& params);

struct BinarySeparateGrid {
    std::vector<double> theta_values;
    std::vector<double> q_values;
    std::vector<double> alpha_values;

    static BinarySeparateGrid uniform(std::size_t resolution);
};

std::vector<RegionSample> binary_separate_points(const BinaryProblem& problem, const BinarySeparateGrid& grid,
                                                 std::size_t threads = 0);
BinarySeparateParams describe_separate_cell(const BinarySeparateGrid& grid, std::uint64_t cell);

TradeoffCurve binary_separate_region(const BinaryProblem& problem, const BinarySeparateGrid& grid,
                                     std::size_t threads = 0);
TradeoffCurve binary_separate_region(const BinaryProblem& problem, std::size_t resolution = 41,
                                     std::size_t threads = 0);

TradeoffCurve binary_converse_curve(const BinaryProblem& problem);

} // namespace wzbc
