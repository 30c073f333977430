#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wzbc/rational.hpp"

namespace wzbc {

/// Invalid problem or parameter value. The message names the offending
/// field and value.
class ProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A layered (two-receiver) operation was called on a problem with K != 2.
class ReceiverCountError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closed form or strategy that needs kappa == 1 was called with another ratio.
class BandwidthMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadratic Gaussian instance with unit-variance source and side information.
/// sideinfo_vars[k] is the MMSE of X given Y_k, so rho_k = sqrt(1 - N_k).
struct GaussianProblem {
    double power = 1.0;
    std::vector<double> noise_vars;
    std::vector<double> sideinfo_vars;
    Rational kappa{1};

    std::size_t receivers() const { return noise_vars.size(); }
};

/// Binary Hamming instance: BSC(p_k) channels, Ber(1/2) source, side
/// information through BSC(beta_k).
struct BinaryProblem {
    std::vector<double> crossovers;
    std::vector<double> sideinfo_crossovers;
    Rational kappa{1};

    std::size_t receivers() const { return crossovers.size(); }
};

using Problem = std::variant<GaussianProblem, BinaryProblem>;

/// Throws ProblemError naming the first violated invariant; otherwise returns
/// the argument unchanged.
GaussianProblem validate_problem(GaussianProblem problem);
BinaryProblem validate_problem(BinaryProblem problem);
Problem validate_problem(Problem problem);

void require_two_receivers(std::size_t receivers, const char* operation);
void require_matched_bandwidth(const Rational& kappa, const char* operation);

/// Receiver indices are zero-based; index 0 is "receiver 1" in printed output.
struct RoleAssignment {
    std::size_t common = 0;
    std::size_t refinement = 1;

    static RoleAssignment make(std::size_t common, std::size_t refinement, std::size_t receivers);
    RoleAssignment swapped() const { return {refinement, common}; }

    friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

enum class Scheme {
    converse,
    uncoded,
    cds,
    lds,
    separate,
    scheme1,
    scheme2,
    scheme3,
};

const char* to_string(Scheme scheme);

using ParamList = std::vector<std::pair<std::string, double>>;

/// Per-receiver expected distortion plus the parameters that generated it.
struct DistortionPoint {
    std::vector<double> D;
    Scheme scheme = Scheme::cds;
    ParamList params;
    bool rate_clamped = false;
};

/// Checks 0 <= D_k <= N_k (Gaussian) or 0 <= D_k <= beta_k (binary), within tol.
bool within_bounds(const DistortionPoint& point, const GaussianProblem& problem, double tol = 1e-12);
bool within_bounds(const DistortionPoint& point, const BinaryProblem& problem, double tol = 1e-12);

/// (R_cc, R_cr, R_rr): common layer to c, common layer to r, refinement to r.
/// Signed values are allowed here; ClampedRates carries the floored version.
struct RateTriple {
    double cc = 0.0;
    double cr = 0.0;
    double rr = 0.0;

    bool dominated_by(const RateTriple& other, double tol = 1e-12) const
    {
        return cc <= other.cc + tol && cr <= other.cr + tol && rr <= other.rr + tol;
    }
};

struct ClampedRates {
    RateTriple rates;
    bool clamped = false;
};

/// Floors negative components at zero. Values in [-tol, 0) count as exact
/// zeros and do not set the flag.
ClampedRates clamp_rates(const RateTriple& raw, double tol = 1e-12);

/// Points sorted by D_1; when envelope_applied the points are the lower-left
/// convex boundary (strictly decreasing D_2).
struct TradeoffCurve {
    std::vector<DistortionPoint> points;
    bool envelope_applied = false;
};

} // namespace wzbc
