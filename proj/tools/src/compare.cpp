#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wzbc/binary.hpp"
#include "wzbc/cli.hpp"
#include "wzbc/gaussian.hpp"
#include "wzbc/problem_io.hpp"

namespace wzbc::cli {

namespace {

constexpr std::size_t default_binary_resolution = 41;
constexpr std::size_t default_gaussian_samples = 201;

std::string number(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

TradeoffCurve single(DistortionPoint p)
{
    TradeoffCurve c;
    c.points.push_back(std::move(p));
    return c;
}

TradeoffCurve gaussian_scheme3_closed_curve(const GaussianProblem& g, std::size_t samples)
{
    require_matched_bandwidth(g.kappa, "scheme3-closed-form");
    require_two_receivers(g.receivers(), "scheme3-closed-form");
    const RoleAssignment a = choose_refinement_receiver(g);
    const Interval dom = gaussian_scheme3_domain(g, a);
    TradeoffCurve c;
    const std::size_t n = std::max<std::size_t>(samples, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double dc = dom.lower + (dom.upper - dom.lower) * static_cast<double>(i) / static_cast<double>(n - 1);
        DistortionPoint p;
        p.scheme = Scheme::scheme3;
        p.D.assign(2, 0.0);
        p.D[a.common] = dc;
        p.D[a.refinement] = gaussian_scheme3_closed_form(g, a, dc);
        p.params = {{"D_c", dc}};
        c.points.push_back(std::move(p));
    }
    std::sort(c.points.begin(), c.points.end(),
              [](const DistortionPoint& l, const DistortionPoint& r) { return l.D[0] < r.D[0]; });
    return c;
}

TradeoffCurve gaussian_curve(const GaussianProblem& g, const std::string& scheme, std::size_t resolution,
                             bool extend_flat, std::size_t threads)
{
    GaussianCurveOptions opt;
    opt.samples = resolution ? resolution : default_gaussian_samples;
    opt.extend_flat = extend_flat;
    opt.sweep.threads = threads;
    if (scheme == "converse")
        return gaussian_converse_curve(g);
    if (scheme == "uncoded")
        return single(gaussian_uncoded(g));
    if (scheme == "cds")
        return single(gaussian_cds(g));
    if (scheme == "lds")
        return gaussian_lds_curve(g, opt);
    if (scheme == "separate")
        return gaussian_separate_curve(g, opt);
    if (scheme == "scheme3")
        return gaussian_scheme3_curve(g, opt);
    if (scheme == "scheme3-closed-form")
        return gaussian_scheme3_closed_curve(g, opt.samples);
    throw UsageError("unknown scheme \"" + scheme + "\"");
}

TradeoffCurve binary_curve(const BinaryProblem& b, const std::string& scheme, std::size_t resolution,
                           std::size_t threads)
{
    const std::size_t res = resolution ? resolution : default_binary_resolution;
    if (scheme == "converse")
        return binary_converse_curve(b);
    if (scheme == "uncoded")
        return single(binary_uncoded(b));
    if (scheme == "cds")
        return binary_cds_region(b, res);
    if (scheme == "lds")
        return binary_lds_region(b, res, threads);
    if (scheme == "separate")
        return binary_separate_region(b, res, threads);
    if (scheme == "scheme3")
        return binary_scheme3_region(b, res, threads);
    if (scheme == "scheme3-closed-form")
        throw ProblemError("gaussian-only scheme: scheme3-closed-form has no binary counterpart");
    throw UsageError("unknown scheme \"" + scheme + "\"");
}

bool is_single_point(const std::string& scheme)
{
    return scheme == "uncoded";
}

} // namespace

const std::vector<std::string>& known_schemes()
{
    static const std::vector<std::string> names{"converse", "uncoded",  "cds",
                                                "lds",      "separate", "scheme3",
                                                "scheme3-closed-form"};
    return names;
}

void RunManifest::validate() const
{
    if (problem_file.empty())
        throw UsageError("--problem is required");
    if (schemes.empty())
        throw UsageError("scheme list is empty");
    for (const auto& s : schemes)
        if (std::find(known_schemes().begin(), known_schemes().end(), s) == known_schemes().end())
            throw UsageError("unknown scheme \"" + s + "\"");
    if (out_dir.empty())
        throw UsageError("--out is required");
}

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["problem_file"] = problem_file.string();
    j["schemes"] = schemes;
    j["resolution"] = resolution;
    j["out_dir"] = out_dir.string();
    j["seed"] = seed;
    j["kappa_override"] = kappa_override ? kappa_override->to_string() : std::string();
    j["extend_flat"] = extend_flat;
    return j.dump(2) + "\n";
}

Problem load_with_override(const std::filesystem::path& file, const std::optional<Rational>& kappa)
{
    Problem p = load_problem(file);
    if (kappa)
        std::visit([&](auto& q) { q.kappa = *kappa; }, p);
    return validate_problem(std::move(p));
}

TradeoffCurve scheme_curve(const Problem& problem, const std::string& scheme, std::size_t resolution,
                           bool extend_flat, std::size_t threads)
{
    if (const auto* g = std::get_if<GaussianProblem>(&problem))
        return gaussian_curve(*g, scheme, resolution, extend_flat, threads);
    return binary_curve(std::get<BinaryProblem>(problem), scheme, resolution, threads);
}

std::string format_csv(const std::string& scheme, const std::string& params, const TradeoffCurve& curve)
{
    std::ostringstream os;
    os << "# scheme=" << scheme << ", params=" << params << "\n";
    const std::size_t k = curve.points.empty() ? 2 : curve.points.front().D.size();
    os << "# ";
    for (std::size_t i = 0; i < k; ++i)
        os << (i ? "," : "") << 'D' << (i + 1);
    os << "\n";
    for (const auto& p : curve.points) {
        for (std::size_t i = 0; i < p.D.size(); ++i)
            os << (i ? "," : "") << number(p.D[i]);
        os << "\n";
    }
    return os.str();
}

std::string gnuplot_script(const std::vector<std::string>& schemes)
{
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set xlabel 'D1'\n"
       << "set ylabel 'D2'\n"
       << "set key top right\n"
       << "set grid\n"
       << "plot \\\n";
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const std::string& s = schemes[i];
        os << "  '" << s << ".csv' using 1:2 with " << (is_single_point(s) ? "points pt 7" : "linespoints")
           << " title '" << s << "'" << (i + 1 < schemes.size() ? ", \\\n" : "\n");
    }
    return os.str();
}

CompareResult cmd_compare(const RunManifest& manifest)
{
    manifest.validate();
    const Problem problem = load_with_override(manifest.problem_file, manifest.kappa_override);

    std::error_code ec;
    std::filesystem::create_directories(manifest.out_dir, ec);
    if (ec || !std::filesystem::is_directory(manifest.out_dir))
        throw UsageError("cannot create output directory " + manifest.out_dir.string());

    std::vector<std::string> order;
    order.push_back("converse");
    for (const auto& s : manifest.schemes)
        if (std::find(order.begin(), order.end(), s) == order.end())
            order.push_back(s);

    CompareResult result;
    std::vector<std::string> written;
    auto write = [&](const std::filesystem::path& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        f << text;
        if (!f)
            throw UsageError("cannot write " + path.string());
        result.files.push_back(path);
    };

    nlohmann::ordered_json params;
    params["resolution"] = manifest.resolution ? manifest.resolution
                                               : std::holds_alternative<GaussianProblem>(problem)
                                                   ? default_gaussian_samples
                                                   : default_binary_resolution;
    params["extend_flat"] = manifest.extend_flat;
    params["problem"] = nlohmann::ordered_json::parse(to_json(problem));
    const std::string params_text = params.dump();

    for (const auto& s : order) {
        try {
            const TradeoffCurve c = scheme_curve(problem, s, manifest.resolution, manifest.extend_flat,
                                                 manifest.threads);
            write(manifest.out_dir / (s + ".csv"), format_csv(s, params_text, c));
            written.push_back(s);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            result.failures.push_back({s, e.what()});
        }
    }
    write(manifest.out_dir / "manifest.json", manifest.to_json());
    write(manifest.out_dir / "plot.gp", gnuplot_script(written));
    return result;
}

} // namespace wzbc::cli
