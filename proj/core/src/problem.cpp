#include "wzbc/problem.hpp"

#include <cmath>
#include <sstream>

namespace wzbc {

namespace {

std::string describe(const char* field, std::size_t k, double value)
{
    std::ostringstream os;
    os << field << "[" << k << "] = " << value;
    return os.str();
}

void check_kappa(const Rational& kappa)
{
    if (!kappa.is_positive())
        throw ProblemError("kappa must be positive (kappa = " + kappa.to_string() + ")");
}

} // namespace

GaussianProblem validate_problem(GaussianProblem problem)
{
    if (!(problem.power > 0.0) || !std::isfinite(problem.power)) {
        std::ostringstream os;
        os << "power must be positive (P = " << problem.power << ")";
        throw ProblemError(os.str());
    }
    const std::size_t k = problem.noise_vars.size();
    if (k < 2)
        throw ProblemError("at least two receivers are required (W has " + std::to_string(k) + " entries)");
    if (problem.sideinfo_vars.size() != k)
        throw ProblemError("W and N must have the same length (" + std::to_string(k) + " vs "
                           + std::to_string(problem.sideinfo_vars.size()) + ")");
    for (std::size_t i = 0; i < k; ++i) {
        const double w = problem.noise_vars[i];
        if (!(w > 0.0) || !std::isfinite(w))
            throw ProblemError("noise variance must be positive: " + describe("W", i, w));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double n = problem.sideinfo_vars[i];
        if (!(n > 0.0 && n <= 1.0))
            throw ProblemError("side-information variance must lie in (0,1]: " + describe("N", i, n));
    }
    check_kappa(problem.kappa);
    return problem;
}

BinaryProblem validate_problem(BinaryProblem problem)
{
    const std::size_t k = problem.crossovers.size();
    if (k < 2)
        throw ProblemError("at least two receivers are required (p has " + std::to_string(k) + " entries)");
    if (problem.sideinfo_crossovers.size() != k)
        throw ProblemError("p and beta must have the same length (" + std::to_string(k) + " vs "
                           + std::to_string(problem.sideinfo_crossovers.size()) + ")");
    for (std::size_t i = 0; i < k; ++i) {
        const double p = problem.crossovers[i];
        if (!(p >= 0.0))
            throw ProblemError("crossover is negative: " + describe("p", i, p));
        if (!(p <= 0.5))
            throw ProblemError("crossover exceeds 1/2: " + describe("p", i, p));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double b = problem.sideinfo_crossovers[i];
        if (!(b >= 0.0))
            throw ProblemError("side-information crossover is negative: " + describe("beta", i, b));
        if (!(b <= 0.5))
            throw ProblemError("side-information crossover exceeds 1/2: " + describe("beta", i, b));
    }
    check_kappa(problem.kappa);
    return problem;
}

Problem validate_problem(Problem problem)
{
    return std::visit([](auto p) -> Problem { return validate_problem(std::move(p)); }, std::move(problem));
}

void require_two_receivers(std::size_t receivers, const char* operation)
{
    if (receivers != 2)
        throw ReceiverCountError(std::string(operation) + " is defined for exactly two receivers (K = "
                                 + std::to_string(receivers) + ")");
}

void require_matched_bandwidth(const Rational& kappa, const char* operation)
{
    if (!kappa.is_one())
        throw BandwidthMismatchError(std::string(operation) + " requires bandwidth match, kappa = 1 (kappa = "
                                     + kappa.to_string() + ")");
}

RoleAssignment RoleAssignment::make(std::size_t common, std::size_t refinement, std::size_t receivers)
{
    if (common >= receivers || refinement >= receivers)
        throw ProblemError("receiver index out of range");
    if (common == refinement)
        throw ProblemError("common and refinement receivers must differ");
    return {common, refinement};
}

const char* to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::converse: return "converse";
    case Scheme::uncoded: return "uncoded";
    case Scheme::cds: return "cds";
    case Scheme::lds: return "lds";
    case Scheme::separate: return "separate";
    case Scheme::scheme1: return "scheme1";
    case Scheme::scheme2: return "scheme2";
    case Scheme::scheme3: return "scheme3";
    }
    return "unknown";
}

namespace {

bool within(const std::vector<double>& d, const std::vector<double>& upper, double tol)
{
    if (d.size() != upper.size())
        return false;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (!(d[k] >= -tol && d[k] <= upper[k] + tol))
            return false;
    }
    return true;
}

} // namespace

bool within_bounds(const DistortionPoint& point, const GaussianProblem& problem, double tol)
{
    return within(point.D, problem.sideinfo_vars, tol);
}

bool within_bounds(const DistortionPoint& point, const BinaryProblem& problem, double tol)
{
    return within(point.D, problem.sideinfo_crossovers, tol);
}

ClampedRates clamp_rates(const RateTriple& raw, double tol)
{
    ClampedRates out{raw, false};
    for (double* v : {&out.rates.cc, &out.rates.cr, &out.rates.rr}) {
        if (std::isnan(*v) || *v < 0.0) {
            if (!(*v >= -tol))
                out.clamped = true;
            *v = 0.0;
        }
    }
    return out;
}

} // namespace wzbc
