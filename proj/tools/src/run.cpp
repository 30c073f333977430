#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "wzbc/cli.hpp"

namespace wzbc::cli {

namespace {

std::optional<Rational> parse_kappa(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid --kappa-override: ") + e.what());
    }
}

ParamList parse_params(const std::vector<std::string>& items)
{
    ParamList out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects name=value, got \"" + item + "\"");
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size())
            throw UsageError("parameter " + name + " is not a number: \"" + value + "\"");
        out.emplace_back(name, v);
    }
    return out;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Distortion tradeoff regions for source broadcast with receiver side information", "wzbc"};
    app.require_subcommand(1);

    RunManifest manifest;
    manifest.command = "compare";
    std::string compare_kappa;
    std::string problem_path, out_path;
    auto* compare = app.add_subcommand("compare", "Compute scheme curves and write CSV files plus a gnuplot script");
    compare->add_option("--problem", problem_path, "Problem JSON file")->required();
    compare->add_option("--schemes", manifest.schemes, "Comma-separated scheme names")->delimiter(',')->required();
    compare->add_option("--resolution", manifest.resolution, "Grid points per axis (binary) or curve samples (Gaussian)");
    compare->add_option("--out", out_path, "Output directory")->required();
    compare->add_option("--seed", manifest.seed, "Random seed");
    compare->add_option("--kappa-override", compare_kappa, "Replace the problem's bandwidth ratio");
    compare->add_flag("--extend-flat", manifest.extend_flat, "Continue the layered closed form flat past D_c max");

    ValidateOptions vopt;
    double tolerance = -1.0;
    auto* validate = app.add_subcommand("validate", "Run a named property suite");
    validate->add_option("suite", vopt.suite, "Suite name")->required();
    validate->add_option("--tolerance", tolerance, "Override the suite's tolerances");
    validate->add_option("--seed", vopt.seed, "Random seed");
    validate->add_option("--samples", vopt.samples, "Monte Carlo sample count");

    PointRequest preq;
    std::string point_kappa, point_problem;
    std::vector<std::string> raw_params;
    auto* point = app.add_subcommand("point", "Evaluate one scheme at explicit parameters and print JSON");
    point->add_option("--problem", point_problem, "Problem JSON file")->required();
    point->add_option("--scheme", preq.scheme, "Scheme name")->required();
    point->add_option("--param", raw_params, "Parameter as name=value (repeatable)");
    point->add_option("--kappa-override", point_kappa, "Replace the problem's bandwidth ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (compare->parsed()) {
            manifest.problem_file = problem_path;
            manifest.out_dir = out_path;
            manifest.kappa_override = parse_kappa(compare_kappa);
            const CompareResult r = cmd_compare(manifest);
            for (const auto& f : r.files)
                out << "wrote " << f.string() << "\n";
            for (const auto& f : r.failures)
                err << "error: " << f.scheme << ": " << f.message << "\n";
            return r.failures.empty() ? exit_ok : exit_validation_failure;
        }
        if (validate->parsed()) {
            if (tolerance >= 0.0)
                vopt.tolerance = tolerance;
            else if (validate->count("--tolerance"))
                throw UsageError("tolerance must be nonnegative");
            const auto results = cmd_validate(vopt);
            bool ok = true;
            for (const auto& c : results) {
                ok = ok && c.pass;
                out << (c.pass ? "PASS " : "FAIL ") << c.name << "  max_deviation=" << std::setprecision(6)
                    << c.deviation << " tolerance=" << c.tolerance << "\n";
            }
            out << (ok ? "suite passed" : "suite FAILED") << "\n";
            return ok ? exit_ok : exit_validation_failure;
        }
        if (point->parsed()) {
            preq.problem_file = point_problem;
            preq.kappa_override = parse_kappa(point_kappa);
            preq.params = parse_params(raw_params);
            out << cmd_point(preq) << "\n";
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation_failure;
    }
    return exit_usage;
}

} // namespace wzbc::cli
