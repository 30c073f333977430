#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzbc/problem.hpp"

namespace wzbc::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_validation_failure = 1,
    exit_usage = 2,
};

/// Bad command line or manifest; maps to exit_usage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scheme names accepted by compare and point.
const std::vector<std::string>& known_schemes();

struct RunManifest {
    std::string command;
    std::filesystem::path problem_file;
    std::vector<std::string> schemes;
    /// 0 picks the default: 41 grid points (binary), 201 curve samples (Gaussian).
    std::size_t resolution = 0;
    std::filesystem::path out_dir;
    std::uint64_t seed = 42;
    std::optional<Rational> kappa_override;
    bool extend_flat = false;
    std::size_t threads = 0;

    /// Throws UsageError on an empty or unknown scheme list or an unusable output directory.
    void validate() const;
    std::string to_json() const;
};

struct SchemeFailure {
    std::string scheme;
    std::string message;
};

struct CompareResult {
    std::vector<std::filesystem::path> files;
    std::vector<SchemeFailure> failures;
};

/// Loads the problem (with kappa override), writes one CSV per scheme plus
/// converse.csv, manifest.json and plot.gp. A scheme that fails is reported
/// and the others still run.
CompareResult cmd_compare(const RunManifest& manifest);

/// Loads a problem file and applies the override.
Problem load_with_override(const std::filesystem::path& file, const std::optional<Rational>& kappa);

/// Curve for one scheme name. Throws ProblemError, BandwidthMismatchError,
/// ReceiverCountError or UsageError.
TradeoffCurve scheme_curve(const Problem& problem, const std::string& scheme, std::size_t resolution,
                           bool extend_flat, std::size_t threads = 0);

/// "# scheme=..., params=..." header, "# D1,D2" and one row per point.
std::string format_csv(const std::string& scheme, const std::string& params, const TradeoffCurve& curve);

std::string gnuplot_script(const std::vector<std::string>& schemes);

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    double tolerance = 0.0;
};

struct ValidateOptions {
    std::string suite;
    std::optional<double> tolerance;
    std::uint64_t seed = 42;
    std::uint64_t samples = 1'000'000;
    std::size_t threads = 0;
};

const std::vector<std::string>& known_suites();

/// Runs a named property suite. Throws UsageError for an unknown suite.
std::vector<CheckResult> cmd_validate(const ValidateOptions& options);

struct PointRequest {
    std::filesystem::path problem_file;
    std::string scheme;
    ParamList params;
    std::optional<Rational> kappa_override;
};

/// JSON object {scheme, D1, D2, params, flags}.
std::string cmd_point(const PointRequest& request);
std::string evaluate_point(const Problem& problem, const std::string& scheme, const ParamList& params);

/// Full command-line entry point; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wzbc::cli
