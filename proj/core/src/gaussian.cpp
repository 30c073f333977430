#include "wzbc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wzbc {

namespace {

constexpr double range_tol = 1e-12;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_pair(const GaussianProblem& problem, RoleAssignment assign, const char* op)
{
    require_two_receivers(problem.receivers(), op);
    RoleAssignment::make(assign.common, assign.refinement, problem.receivers());
}

double channel_gain(const GaussianProblem& problem, std::size_t k)
{
    // ((1 + P/W_k)^kappa - 1) / N_k
    const double kappa = problem.kappa.value();
    return std::expm1(kappa * std::log1p(problem.power / problem.noise_vars[k])) / problem.sideinfo_vars[k];
}

void require_refinement_rule(const GaussianProblem& problem, RoleAssignment a, const char* op)
{
    const double wc = problem.noise_vars[a.common] * problem.sideinfo_vars[a.common];
    const double wr = problem.noise_vars[a.refinement] * problem.sideinfo_vars[a.refinement];
    if (wc < wr * (1.0 - 1e-12))
        throw ProblemError(std::string(op) + ": the common receiver must have W_c N_c >= W_r N_r (W_c N_c = "
                           + fmt(wc) + ", W_r N_r = " + fmt(wr) + ")");
}

double checked_in(const Interval& dom, double v, const char* what)
{
    if (!dom.contains(v, range_tol))
        throw ProblemError(std::string(what) + " = " + fmt(v) + " is outside [" + fmt(dom.lower) + ", "
                           + fmt(dom.upper) + "]");
    return std::clamp(v, dom.lower, dom.upper);
}

void check_nu(double nu)
{
    if (!(nu >= 0.0 && nu <= 1.0))
        throw ProblemError("power split must lie in [0,1] (nu = " + fmt(nu) + ")");
}

std::vector<double> to_receivers(RoleAssignment a, double dc, double dr)
{
    std::vector<double> d(2);
    d[a.common] = dc;
    d[a.refinement] = dr;
    return d;
}

void sort_by_d1(TradeoffCurve& curve)
{
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const DistortionPoint& a, const DistortionPoint& b) { return a.D[0] < b.D[0]; });
}

GridAxis sample_axis(const char* name, const Interval& dom, std::size_t samples)
{
    return GridAxis{name, dom.lower, dom.upper, std::max<std::size_t>(samples, 2)};
}

} // namespace

double gaussian_capacity(double power, double noise_var)
{
    if (!(power > 0.0) || !(noise_var > 0.0))
        throw ProblemError("capacity needs P > 0 and W > 0 (P = " + fmt(power) + ", W = " + fmt(noise_var) + ")");
    return 0.5 * std::log2(1.0 + power / noise_var);
}

double gaussian_wz_distortion(double sideinfo_var, double rate)
{
    if (!(sideinfo_var > 0.0 && sideinfo_var <= 1.0))
        throw ProblemError("side-information variance must lie in (0,1] (N = " + fmt(sideinfo_var) + ")");
    if (!(rate >= 0.0))
        throw ProblemError("rate must be nonnegative (R = " + fmt(rate) + ")");
    return sideinfo_var * std::exp2(-2.0 * rate);
}

std::vector<double> gaussian_trivial_converse(const GaussianProblem& problem)
{
    const double kappa = problem.kappa.value();
    std::vector<double> out;
    for (std::size_t k = 0; k < problem.receivers(); ++k)
        out.push_back(problem.sideinfo_vars[k] * std::exp(-kappa * std::log1p(problem.power / problem.noise_vars[k])));
    return out;
}

DistortionPoint gaussian_uncoded(const GaussianProblem& problem)
{
    require_matched_bandwidth(problem.kappa, "uncoded");
    DistortionPoint pt;
    pt.scheme = Scheme::uncoded;
    for (std::size_t k = 0; k < problem.receivers(); ++k) {
        const double n = problem.sideinfo_vars[k];
        const double w = problem.noise_vars[k];
        pt.D.push_back(n * w / (w + n * problem.power));
    }
    return pt;
}

DistortionPoint gaussian_cds(const GaussianProblem& problem)
{
    double m = channel_gain(problem, 0);
    for (std::size_t k = 1; k < problem.receivers(); ++k)
        m = std::min(m, channel_gain(problem, k));
    DistortionPoint pt;
    pt.scheme = Scheme::cds;
    for (std::size_t k = 0; k < problem.receivers(); ++k)
        pt.D.push_back(1.0 / (1.0 / problem.sideinfo_vars[k] + m));
    return pt;
}

RoleAssignment choose_refinement_receiver(const GaussianProblem& problem)
{
    require_two_receivers(problem.receivers(), "choose_refinement_receiver");
    bool first_is_common;
    if (problem.kappa.is_one())
        first_is_common = problem.noise_vars[0] * problem.sideinfo_vars[0]
                          >= problem.noise_vars[1] * problem.sideinfo_vars[1];
    else
        first_is_common = channel_gain(problem, 0) <= channel_gain(problem, 1);
    return first_is_common ? RoleAssignment{0, 1} : RoleAssignment{1, 0};
}

RateTriple gaussian_lds_channel_rates_raw(const GaussianProblem& problem, RoleAssignment assign,
                                          GaussianLdsParams params)
{
    require_pair(problem, assign, "gaussian_lds_channel_rates");
    check_nu(params.nu);
    if (params.nu == 0.0 && params.gamma != 0.0)
        throw ProblemError("nu = 0 requires gamma = 0 (gamma = " + fmt(params.gamma) + ")");
    const double p = problem.power;
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    const double nubar = 1.0 - params.nu;
    const double g = params.gamma;
    const double self = params.nu > 0.0 ? g * g / (params.nu * p) : 0.0;
    const double ac = nubar * p * (self + (1.0 - g) * (1.0 - g) / wc);
    const double ar = nubar * p * (self + (1.0 - g) * (1.0 - g) / wr);
    RateTriple r;
    r.cc = 0.5 * std::log2((1.0 + p / wc) / (1.0 + ac));
    r.cr = 0.5 * std::log2((1.0 + p / wr) / (1.0 + ar));
    r.rr = 0.5 * std::log2(1.0 + ar);
    return r;
}

ClampedRates gaussian_lds_channel_rates(const GaussianProblem& problem, RoleAssignment assign,
                                        GaussianLdsParams params)
{
    return clamp_rates(gaussian_lds_channel_rates_raw(problem, assign, params));
}

DistortionPoint gaussian_lds_distortions(const GaussianProblem& problem, RoleAssignment assign,
                                         const RateTriple& rates)
{
    require_pair(problem, assign, "gaussian_lds_distortions");
    if (!(rates.cc >= 0.0 && rates.cr >= 0.0 && rates.rr >= 0.0))
        throw ProblemError("rates must be nonnegative (" + fmt(rates.cc) + ", " + fmt(rates.cr) + ", "
                           + fmt(rates.rr) + ")");
    const double kappa = problem.kappa.value();
    const double nc = problem.sideinfo_vars[assign.common];
    const double nr = problem.sideinfo_vars[assign.refinement];
    const double phi = std::min(std::expm1(2.0 * kappa * rates.cc * std::log(2.0)) / nc,
                                std::expm1(2.0 * kappa * rates.cr * std::log(2.0)) / nr);
    DistortionPoint pt;
    pt.scheme = Scheme::lds;
    pt.D = to_receivers(assign, nc / (1.0 + nc * phi), nr / (1.0 + nr * phi) * std::exp2(-2.0 * kappa * rates.rr));
    return pt;
}

double gaussian_lds_dc_max(const GaussianProblem& problem, RoleAssignment assign)
{
    require_pair(problem, assign, "gaussian_lds_closed_form");
    require_matched_bandwidth(problem.kappa, "gaussian_lds_closed_form");
    require_refinement_rule(problem, assign, "gaussian_lds_closed_form");
    const double p = problem.power;
    const double nc = problem.sideinfo_vars[assign.common];
    const double nr = problem.sideinfo_vars[assign.refinement];
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    if (nc < nr)
        return nc * std::min(1.0, nr * (wc - wr) / ((p + wc) * (nr - nc)));
    if (wc >= wr)
        return nc;
    return nc * (wc / (p + wc) + p * (wc * nc - wr * nr) / ((p + wc) * (nc - nr) * wr));
}

Interval gaussian_lds_domain(const GaussianProblem& problem, RoleAssignment assign, bool extend_flat)
{
    const double upper = gaussian_lds_dc_max(problem, assign);
    const double p = problem.power;
    const double nc = problem.sideinfo_vars[assign.common];
    const double wc = problem.noise_vars[assign.common];
    return {nc * wc / (p + wc), extend_flat ? nc : upper};
}

double gaussian_lds_closed_form(const GaussianProblem& problem, RoleAssignment assign, double dc, bool extend_flat)
{
    const Interval strict = gaussian_lds_domain(problem, assign, false);
    const Interval dom = extend_flat ? gaussian_lds_domain(problem, assign, true) : strict;
    dc = checked_in(dom, dc, "D_c");
    const double p = problem.power;
    const double nc = problem.sideinfo_vars[assign.common];
    const double nr = problem.sideinfo_vars[assign.refinement];
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    if (dc > strict.upper)
        return nr * wr / (p + wr);
    const double lead = nr * nc * nc / (dc * nc + nr * (nc - dc));
    if (wc > wr)
        return lead * wr * dc / ((wr - wc) * nc + (p + wc) * dc);
    return lead * wc / (p + wc);
}

GaussianLdsParams gaussian_lds_optimal_params(const GaussianProblem& problem, RoleAssignment assign, double dc)
{
    const Interval dom = gaussian_lds_domain(problem, assign, false);
    dc = checked_in(dom, dc, "D_c");
    const double p = problem.power;
    const double nc = problem.sideinfo_vars[assign.common];
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    if (wc > wr)
        return {std::clamp((1.0 - dc / nc) * (1.0 + wc / p), 0.0, 1.0), 0.0};
    return {std::clamp(wc * nc / (dc * (p + wc)), 0.0, 1.0), 1.0};
}

SeparateRoles gaussian_separate_roles(const GaussianProblem& problem)
{
    require_two_receivers(problem.receivers(), "separate coding");
    const auto& w = problem.noise_vars;
    const auto& n = problem.sideinfo_vars;
    if (w[0] > w[1])
        return {0, 1};
    if (w[1] > w[0])
        return {1, 0};
    return n[0] <= n[1] ? SeparateRoles{1, 0} : SeparateRoles{0, 1};
}

Interval gaussian_separate_domain(const GaussianProblem& problem)
{
    const SeparateRoles s = gaussian_separate_roles(problem);
    const double nb = problem.sideinfo_vars[s.bad];
    const double wb = problem.noise_vars[s.bad];
    return {nb * wb / (problem.power + wb), nb};
}

double gaussian_separate_closed_form(const GaussianProblem& problem, double db)
{
    require_matched_bandwidth(problem.kappa, "gaussian_separate_closed_form");
    const SeparateRoles s = gaussian_separate_roles(problem);
    db = checked_in(gaussian_separate_domain(problem), db, "D_b");
    const double p = problem.power;
    const double nb = problem.sideinfo_vars[s.bad];
    const double ng = problem.sideinfo_vars[s.good];
    const double wb = problem.noise_vars[s.bad];
    const double wg = problem.noise_vars[s.good];
    const double denom = (wg - wb) * nb + (p + wb) * db;
    if (ng <= nb)
        return ng * nb * nb * wg * db / ((db * nb + ng * (nb - db)) * denom);
    const double second = nb * (ng * wg - (p + wb) * db - nb * (wg - wb)) / (ng - nb);
    return ng / denom * std::max(wg * db, second);
}

namespace {

struct SplitFactors {
    double a;
    double b;
};

SplitFactors split_factors(const GaussianProblem& problem, SeparateRoles s, double nu)
{
    check_nu(nu);
    const double kappa = problem.kappa.value();
    const double p = problem.power;
    const double wb = problem.noise_vars[s.bad];
    const double wg = problem.noise_vars[s.good];
    const double nubar = 1.0 - nu;
    return {std::pow(1.0 + nu * p / (nubar * p + wb), kappa), std::pow(1.0 + nubar * p / wg, kappa)};
}

} // namespace

bool gaussian_separate_feasible(const GaussianProblem& problem, double nu, double db, double dg)
{
    const SeparateRoles s = gaussian_separate_roles(problem);
    const SplitFactors f = split_factors(problem, s, nu);
    if (!(db > 0.0) || !(dg > 0.0))
        return false;
    constexpr double rel = 1e-10;
    const double nb = problem.sideinfo_vars[s.bad];
    const double ng = problem.sideinfo_vars[s.good];
    if (nb / db > f.a * (1.0 + rel))
        return false;
    double need;
    if (ng <= nb)
        need = nb * nb * ng / (dg * (ng * nb + db * (nb - ng)));
    else
        need = ng / std::min(dg, db + db * dg * (ng - nb) / (nb * ng));
    return need <= f.a * f.b * (1.0 + rel);
}

std::pair<double, double> gaussian_separate_boundary(const GaussianProblem& problem, double nu)
{
    const SeparateRoles s = gaussian_separate_roles(problem);
    const SplitFactors f = split_factors(problem, s, nu);
    const double nb = problem.sideinfo_vars[s.bad];
    const double ng = problem.sideinfo_vars[s.good];
    const double ab = f.a * f.b;
    const double db = nb / f.a;
    double dg;
    if (ng <= nb)
        dg = nb * nb * ng / (ab * (ng * nb + db * (nb - ng)));
    else
        dg = std::max(ng / ab, (ng / (ab * db) - 1.0) * nb * ng / (ng - nb));
    return {db, dg};
}

RateTriple gaussian_scheme3_channel_rates(const GaussianProblem& problem, RoleAssignment assign, double nu)
{
    require_pair(problem, assign, "gaussian_scheme3_channel_rates");
    check_nu(nu);
    const double p = problem.power;
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    return {0.5 * std::log2(1.0 + nu * p / wc), 0.5 * std::log2(1.0 + nu * p / wr),
            0.5 * std::log2(1.0 + (1.0 - nu) * p / (nu * p + wr))};
}

Interval gaussian_scheme3_domain(const GaussianProblem& problem, RoleAssignment assign)
{
    require_pair(problem, assign, "gaussian_scheme3_closed_form");
    const double nc = problem.sideinfo_vars[assign.common];
    const double wc = problem.noise_vars[assign.common];
    return {nc * wc / (problem.power + wc), nc};
}

double gaussian_scheme3_closed_form(const GaussianProblem& problem, RoleAssignment assign, double dc)
{
    require_matched_bandwidth(problem.kappa, "gaussian_scheme3_closed_form");
    dc = checked_in(gaussian_scheme3_domain(problem, assign), dc, "D_c");
    const double p = problem.power;
    const double nc = problem.sideinfo_vars[assign.common];
    const double nr = problem.sideinfo_vars[assign.refinement];
    const double wc = problem.noise_vars[assign.common];
    const double wr = problem.noise_vars[assign.refinement];
    return nr * wr / (p + wr) * (dc * nc + nc * wc / wr * (nc - dc)) / (dc * nc + nr * (nc - dc));
}

SweepResult gaussian_lds_grid(const GaussianProblem& problem, RoleAssignment assign, const LdsSweepOptions& options)
{
    require_pair(problem, assign, "gaussian_lds_sweep");
    GridSpec grid;
    grid.axes = {GridAxis{"nu", 0.0, 1.0, options.nu_points},
                 GridAxis{"gamma", options.gamma_lower, options.gamma_upper, options.gamma_points}};
    return sweep(grid, [&](std::span<const double> v) -> std::optional<DistortionPoint> {
        const GaussianLdsParams params{v[0], v[1]};
        if (params.nu == 0.0 && params.gamma != 0.0)
            return std::nullopt;
        const ClampedRates rates = gaussian_lds_channel_rates(problem, assign, params);
        if (rates.clamped)
            return std::nullopt;
        DistortionPoint pt = gaussian_lds_distortions(problem, assign, rates.rates);
        pt.params = {{"nu", params.nu}, {"gamma", params.gamma}};
        return pt;
    }, options.threads);
}

TradeoffCurve gaussian_lds_sweep(const GaussianProblem& problem, RoleAssignment assign, const LdsSweepOptions& options)
{
    SweepResult grid = gaussian_lds_grid(problem, assign, options);
    if (grid.points.empty())
        return TradeoffCurve{{}, true};
    return lower_convex_envelope(std::move(grid.points));
}

TradeoffCurve gaussian_converse_curve(const GaussianProblem& problem)
{
    require_two_receivers(problem.receivers(), "gaussian_converse_curve");
    const auto lo = gaussian_trivial_converse(problem);
    const auto& n = problem.sideinfo_vars;
    TradeoffCurve curve;
    for (const auto& d : {std::vector<double>{lo[0], n[1]}, std::vector<double>{lo[0], lo[1]},
                          std::vector<double>{n[0], lo[1]}}) {
        DistortionPoint pt;
        pt.scheme = Scheme::converse;
        pt.D = d;
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

TradeoffCurve gaussian_lds_curve(const GaussianProblem& problem, const GaussianCurveOptions& options)
{
    require_two_receivers(problem.receivers(), "gaussian_lds_curve");
    if (!problem.kappa.is_one()) {
        const RoleAssignment a = choose_refinement_receiver(problem);
        return pareto_merge({gaussian_lds_sweep(problem, a, options.sweep),
                             gaussian_lds_sweep(problem, a.swapped(), options.sweep)});
    }
    const RoleAssignment a = choose_refinement_receiver(problem);
    const Interval strict = gaussian_lds_domain(problem, a, false);
    const GridAxis axis = sample_axis("D_c", gaussian_lds_domain(problem, a, options.extend_flat), options.samples);
    TradeoffCurve curve;
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double dc = axis.value(i);
        DistortionPoint pt;
        pt.scheme = Scheme::lds;
        pt.D = to_receivers(a, dc, gaussian_lds_closed_form(problem, a, dc, options.extend_flat));
        pt.params = {{"D_c", dc}};
        if (dc <= strict.upper) {
            const GaussianLdsParams best = gaussian_lds_optimal_params(problem, a, dc);
            pt.params.emplace_back("nu", best.nu);
            pt.params.emplace_back("gamma", best.gamma);
        }
        curve.points.push_back(std::move(pt));
    }
    sort_by_d1(curve);
    return curve;
}

TradeoffCurve gaussian_separate_curve(const GaussianProblem& problem, const GaussianCurveOptions& options)
{
    const SeparateRoles s = gaussian_separate_roles(problem);
    const RoleAssignment as_roles{s.bad, s.good};
    TradeoffCurve curve;
    if (!problem.kappa.is_one()) {
        const GridAxis axis{"nu", 0.0, 1.0, std::max<std::size_t>(options.samples, 2)};
        std::vector<DistortionPoint> pts;
        for (std::size_t i = 0; i < axis.count; ++i) {
            const double nu = axis.value(i);
            const auto [db, dg] = gaussian_separate_boundary(problem, nu);
            DistortionPoint pt;
            pt.scheme = Scheme::separate;
            pt.D = to_receivers(as_roles, db, dg);
            pt.params = {{"nu", nu}};
            pts.push_back(std::move(pt));
        }
        return lower_convex_envelope(std::move(pts));
    }
    const GridAxis axis = sample_axis("D_b", gaussian_separate_domain(problem), options.samples);
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double db = axis.value(i);
        DistortionPoint pt;
        pt.scheme = Scheme::separate;
        pt.D = to_receivers(as_roles, db, gaussian_separate_closed_form(problem, db));
        pt.params = {{"D_b", db}};
        curve.points.push_back(std::move(pt));
    }
    sort_by_d1(curve);
    return curve;
}

TradeoffCurve gaussian_scheme3_curve(const GaussianProblem& problem, const GaussianCurveOptions& options)
{
    const RoleAssignment a = choose_refinement_receiver(problem);
    TradeoffCurve curve;
    if (!problem.kappa.is_one()) {
        const GridAxis axis{"nu", 0.0, 1.0, std::max<std::size_t>(options.samples, 2)};
        std::vector<DistortionPoint> pts;
        for (std::size_t i = 0; i < axis.count; ++i) {
            const double nu = axis.value(i);
            DistortionPoint pt = gaussian_lds_distortions(problem, a, gaussian_scheme3_channel_rates(problem, a, nu));
            pt.scheme = Scheme::scheme3;
            pt.params = {{"nu", nu}};
            pts.push_back(std::move(pt));
        }
        return lower_convex_envelope(std::move(pts));
    }
    const GridAxis axis = sample_axis("D_c", gaussian_scheme3_domain(problem, a), options.samples);
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double dc = axis.value(i);
        DistortionPoint pt;
        pt.scheme = Scheme::scheme3;
        pt.D = to_receivers(a, dc, gaussian_scheme3_closed_form(problem, a, dc));
        pt.params = {{"D_c", dc}};
        curve.points.push_back(std::move(pt));
    }
    sort_by_d1(curve);
    return curve;
}

} // namespace wzbc
