#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "wzbc/binary.hpp"
#include "wzbc/cli.hpp"
#include "wzbc/gaussian.hpp"
#include "wzbc/infotheory.hpp"

namespace wzbc::cli {

namespace {

using nlohmann::ordered_json;

/// Named parameters with defaults; rejects names the scheme does not use.
class Params {
public:
    Params(const ParamList& list, std::string scheme, std::vector<std::string> allowed) : scheme_(std::move(scheme))
    {
        for (const auto& [k, v] : list) {
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ProblemError("unknown parameter \"" + k + "\" for scheme " + scheme_);
            if (!std::isfinite(v))
                throw ProblemError("parameter " + k + " must be finite");
            values_[k] = v;
        }
    }

    double get(const std::string& name) const
    {
        const auto it = values_.find(name);
        if (it == values_.end())
            throw ProblemError("missing parameter \"" + name + "\" for scheme " + scheme_);
        return it->second;
    }

    double get(const std::string& name, double fallback) const
    {
        const auto it = values_.find(name);
        return it == values_.end() ? fallback : it->second;
    }

    bool has(const std::string& name) const { return values_.count(name) != 0; }

private:
    std::string scheme_;
    std::map<std::string, double> values_;
};

RoleAssignment common_from(const Params& p, RoleAssignment fallback)
{
    if (!p.has("common"))
        return fallback;
    const double c = p.get("common");
    if (c != 1.0 && c != 2.0)
        throw ProblemError("parameter common must be 1 or 2 (common = " + std::to_string(c) + ")");
    const std::size_t ci = c == 1.0 ? 0 : 1;
    return {ci, 1 - ci};
}

struct Evaluated {
    std::vector<double> D;
    ordered_json params = ordered_json::object();
    ordered_json flags = ordered_json::object();
};

Evaluated gaussian_point(const GaussianProblem& g, const std::string& scheme, const ParamList& list)
{
    Evaluated out;
    if (scheme == "converse" || scheme == "uncoded" || scheme == "cds") {
        (void)Params(list, scheme, {});
        if (scheme == "converse")
            out.D = gaussian_trivial_converse(g);
        else
            out.D = (scheme == "uncoded" ? gaussian_uncoded(g) : gaussian_cds(g)).D;
        return out;
    }
    require_two_receivers(g.receivers(), scheme.c_str());
    if (scheme == "lds" || scheme == "scheme3") {
        const bool lds = scheme == "lds";
        const Params p(list, scheme, lds ? std::vector<std::string>{"nu", "gamma", "common"}
                                         : std::vector<std::string>{"nu", "common"});
        const RoleAssignment a = common_from(p, choose_refinement_receiver(g));
        const double nu = p.get("nu");
        RateTriple rates;
        bool clamped = false;
        if (lds) {
            const double gamma = p.get("gamma", 0.0);
            const ClampedRates cr = gaussian_lds_channel_rates(g, a, {nu, gamma});
            rates = cr.rates;
            clamped = cr.clamped;
            out.params["gamma"] = gamma;
        } else {
            rates = gaussian_scheme3_channel_rates(g, a, nu);
        }
        out.D = gaussian_lds_distortions(g, a, rates).D;
        out.params["nu"] = nu;
        out.params["common"] = a.common + 1;
        out.flags["rate_clamped"] = clamped;
        return out;
    }
    if (scheme == "scheme3-closed-form") {
        const Params p(list, scheme, {"D_c", "common"});
        require_matched_bandwidth(g.kappa, "scheme3-closed-form");
        const RoleAssignment a = common_from(p, choose_refinement_receiver(g));
        const double dc = p.get("D_c");
        out.D.assign(2, 0.0);
        out.D[a.common] = dc;
        out.D[a.refinement] = gaussian_scheme3_closed_form(g, a, dc);
        out.params["D_c"] = dc;
        out.params["common"] = a.common + 1;
        return out;
    }
    if (scheme == "separate") {
        const Params p(list, scheme, {"nu"});
        const double nu = p.get("nu");
        const SeparateRoles s = gaussian_separate_roles(g);
        const auto [db, dg] = gaussian_separate_boundary(g, nu);
        out.D.assign(2, 0.0);
        out.D[s.bad] = db;
        out.D[s.good] = dg;
        out.params["nu"] = nu;
        out.params["bad"] = s.bad + 1;
        return out;
    }
    throw UsageError("unknown scheme \"" + scheme + "\"");
}

Evaluated binary_point(const BinaryProblem& b, const std::string& scheme, const ParamList& list)
{
    Evaluated out;
    if (scheme == "converse" || scheme == "uncoded") {
        (void)Params(list, scheme, {});
        out.D = scheme == "converse" ? binary_trivial_converse(b) : binary_uncoded(b).D;
        return out;
    }
    if (scheme == "cds") {
        const Params p(list, scheme, {"q", "alpha"});
        const double q = p.get("q"), alpha = p.get("alpha");
        if (!(q >= 0.0 && q <= 1.0) || !(alpha >= 0.0 && alpha <= 0.5))
            throw ProblemError("cds needs q in [0,1] and alpha in [0,1/2]");
        bool feasible = true;
        for (std::size_t k = 0; k < b.receivers(); ++k) {
            const double beta = b.sideinfo_crossovers[k];
            out.D.push_back(layer_distortion(q, alpha, beta));
            feasible = feasible
                       && q * wz_rate_kernel(alpha, beta)
                              <= binary_channel_capacity(b.crossovers[k], b.kappa) + 1e-12;
        }
        out.params["q"] = q;
        out.params["alpha"] = alpha;
        out.flags["feasible"] = feasible;
        return out;
    }
    require_two_receivers(b.receivers(), scheme.c_str());
    if (scheme == "lds" || scheme == "scheme3") {
        const Params p(list, scheme, {"q_c", "q_r", "alpha_c", "alpha_r", "gamma_c", "gamma_r", "t_xor", "common"});
        const RoleAssignment a = common_from(p, {0, 1});
        const BinarySourceParams src{p.get("q_c"), p.get("q_r"), p.get("alpha_c"), p.get("alpha_r")};
        const double t = p.get("t_xor", 0.0);
        if (t != 0.0 && t != 1.0)
            throw ProblemError("parameter t_xor must be 0 or 1");
        const BinaryChannelParams ch{p.get("gamma_c", 0.5), p.get("gamma_r", 0.0),
                                     t == 1.0 ? AuxChoice::t_equals_uc_xor_ur : AuxChoice::t_equals_uc};
        const double bc = b.sideinfo_crossovers[a.common], br = b.sideinfo_crossovers[a.refinement];
        const ClampedRates need = binary_lds_source_rates(src, bc, br);
        const double pc = b.crossovers[a.common], pr = b.crossovers[a.refinement];
        const ClampedRates have = scheme == "lds" ? binary_lds_channel_rates(pc, pr, ch, b.kappa)
                                                  : binary_scheme3_channel_rates(pc, pr, ch, b.kappa);
        out.D.assign(2, 0.0);
        out.D[a.common] = layer_distortion(src.q_c, src.alpha_c, bc);
        out.D[a.refinement] = layer_distortion(src.q_r, src.alpha_r, br);
        out.params["common"] = a.common + 1;
        out.params["q_c"] = src.q_c;
        out.params["q_r"] = src.q_r;
        out.params["alpha_c"] = src.alpha_c;
        out.params["alpha_r"] = src.alpha_r;
        out.params["gamma_c"] = scheme == "lds" && t == 0.0 ? 0.5 : ch.gamma_c;
        out.params["gamma_r"] = ch.gamma_r;
        out.params["t_xor"] = t;
        out.flags["rate_clamped"] = have.clamped;
        out.flags["feasible"] = !have.clamped && need.rates.dominated_by(have.rates);
        return out;
    }
    if (scheme == "separate") {
        const Params p(list, scheme, {"theta", "q_b", "q_g", "alpha_b", "alpha_g"});
        const BinarySeparateParams prm{p.get("theta"), p.get("q_b"), p.get("q_g"), p.get("alpha_b"),
                                       p.get("alpha_g")};
        const bool feasible = binary_separate_feasible(b, prm);
        const BinarySeparateRoles s = binary_separate_roles(b);
        out.D.assign(2, 0.0);
        out.D[s.bad] = layer_distortion(prm.q_b, prm.alpha_b, b.sideinfo_crossovers[s.bad]);
        out.D[s.good] = layer_distortion(prm.q_g, prm.alpha_g, b.sideinfo_crossovers[s.good]);
        out.params["theta"] = prm.theta;
        out.params["q_b"] = prm.q_b;
        out.params["q_g"] = prm.q_g;
        out.params["alpha_b"] = prm.alpha_b;
        out.params["alpha_g"] = prm.alpha_g;
        out.flags["feasible"] = feasible;
        return out;
    }
    if (scheme == "scheme3-closed-form")
        throw ProblemError("gaussian-only scheme: scheme3-closed-form has no binary counterpart");
    throw UsageError("unknown scheme \"" + scheme + "\"");
}

} // namespace

std::string evaluate_point(const Problem& problem, const std::string& scheme, const ParamList& params)
{
    if (std::find(known_schemes().begin(), known_schemes().end(), scheme) == known_schemes().end())
        throw UsageError("unknown scheme \"" + scheme + "\"");
    Evaluated e;
    if (const auto* g = std::get_if<GaussianProblem>(&problem))
        e = gaussian_point(*g, scheme, params);
    else
        e = binary_point(std::get<BinaryProblem>(problem), scheme, params);
    ordered_json j;
    j["scheme"] = scheme;
    for (std::size_t k = 0; k < e.D.size(); ++k)
        j["D" + std::to_string(k + 1)] = e.D[k];
    j["params"] = e.params;
    j["flags"] = e.flags;
    return j.dump();
}

std::string cmd_point(const PointRequest& request)
{
    if (request.problem_file.empty())
        throw UsageError("--problem is required");
    if (request.scheme.empty())
        throw UsageError("--scheme is required");
    const Problem p = load_with_override(request.problem_file, request.kappa_override);
    return evaluate_point(p, request.scheme, request.params);
}

} // namespace wzbc::cli
