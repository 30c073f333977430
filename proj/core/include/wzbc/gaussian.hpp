#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wzbc/optimize.hpp"
#include "wzbc/problem.hpp"

namespace wzbc {

/// Power split and Costa parameter of the layered scheme. nu is the share of
/// power given to the common layer; nu == 0 forces gamma == 0.
struct GaussianLdsParams {
    double nu = 1.0;
    double gamma = 0.0;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double v, double tol = 1e-12) const { return v >= lower - tol && v <= upper + tol; }
};

/// 1/2 log2(1 + P/W) bits per channel use.
double gaussian_capacity(double power, double noise_var);

/// N 2^(-2R).
double gaussian_wz_distortion(double sideinfo_var, double rate);

/// N_k / (1 + P/W_k)^kappa for every receiver.
std::vector<double> gaussian_trivial_converse(const GaussianProblem& problem);

/// Analog transmission of sqrt(P) X with LMMSE decoding. kappa must be 1.
DistortionPoint gaussian_uncoded(const GaussianProblem& problem);

/// Single description decoded by every receiver; any K >= 2.
DistortionPoint gaussian_cds(const GaussianProblem& problem);

/// Receiver with the smaller ((1+P/W)^kappa - 1)/N takes the common role.
/// Ties go to receiver index 0.
RoleAssignment choose_refinement_receiver(const GaussianProblem& problem);

/// Signed channel rates of the layered scheme; negative values are possible.
RateTriple gaussian_lds_channel_rates_raw(const GaussianProblem& problem, RoleAssignment assign,
                                          GaussianLdsParams params);
ClampedRates gaussian_lds_channel_rates(const GaussianProblem& problem, RoleAssignment assign,
                                        GaussianLdsParams params);

/// Per-receiver distortions (indexed by receiver, not by role) given rates.
DistortionPoint gaussian_lds_distortions(const GaussianProblem& problem, RoleAssignment assign,
                                         const RateTriple& rates);

/// Upper end of the closed-form D_c range (kappa == 1).
double gaussian_lds_dc_max(const GaussianProblem& problem, RoleAssignment assign);

/// [N_c W_c/(P+W_c), D_c_max], or up to N_c when extend_flat is set.
Interval gaussian_lds_domain(const GaussianProblem& problem, RoleAssignment assign, bool extend_flat = false);

/// Optimal D_r for a given D_c (kappa == 1, assignment following
/// choose_refinement_receiver). With extend_flat, D_c beyond D_c_max maps to
/// the refinement receiver's point-to-point optimum.
double gaussian_lds_closed_form(const GaussianProblem& problem, RoleAssignment assign, double dc,
                                bool extend_flat = false);

/// Power split and Costa parameter that attain the closed form at D_c.
GaussianLdsParams gaussian_lds_optimal_params(const GaussianProblem& problem, RoleAssignment assign, double dc);

/// Separate coding labels: bad = larger W; on equal W, good = smaller N, then index 0.
struct SeparateRoles {
    std::size_t bad = 1;
    std::size_t good = 0;
};

SeparateRoles gaussian_separate_roles(const GaussianProblem& problem);

/// [N_b W_b/(P+W_b), N_b].
Interval gaussian_separate_domain(const GaussianProblem& problem);

/// Best D_g for a given D_b under separate source and channel coding (kappa == 1).
double gaussian_separate_closed_form(const GaussianProblem& problem, double db);

/// Feasibility of (D_b, D_g) for a given superposition power split; any kappa.
bool gaussian_separate_feasible(const GaussianProblem& problem, double nu, double db, double dg);

/// Corner of the feasible set for power split nu: (D_b, D_g) with both
/// rate conditions tight. Any kappa.
std::pair<double, double> gaussian_separate_boundary(const GaussianProblem& problem, double nu);

/// Scheme 3 (reversed decoding order) with the Costa parameter at its optimum.
RateTriple gaussian_scheme3_channel_rates(const GaussianProblem& problem, RoleAssignment assign, double nu);

/// [N_c W_c/(P+W_c), N_c].
Interval gaussian_scheme3_domain(const GaussianProblem& problem, RoleAssignment assign);

double gaussian_scheme3_closed_form(const GaussianProblem& problem, RoleAssignment assign, double dc);

struct LdsSweepOptions {
    std::size_t nu_points = 400;
    std::size_t gamma_points = 400;
    double gamma_lower = -1.0;
    double gamma_upper = 2.0;
    std::size_t threads = 0;
};

/// Every unflagged grid point over (nu, gamma); params carry nu and gamma.
SweepResult gaussian_lds_grid(const GaussianProblem& problem, RoleAssignment assign,
                              const LdsSweepOptions& options = {});

/// Envelope of gaussian_lds_grid.
TradeoffCurve gaussian_lds_sweep(const GaussianProblem& problem, RoleAssignment assign,
                                 const LdsSweepOptions& options = {});

struct GaussianCurveOptions {
    std::size_t samples = 201;
    bool extend_flat = false;
    LdsSweepOptions sweep;
};

/// Curves as emitted by the command-line tool. The layered, separate and
/// Scheme 3 curves use closed forms when kappa == 1 and parameter sweeps
/// otherwise. Each returned curve is in receiver order (D_1, D_2).
TradeoffCurve gaussian_converse_curve(const GaussianProblem& problem);
TradeoffCurve gaussian_lds_curve(const GaussianProblem& problem, const GaussianCurveOptions& options = {});
TradeoffCurve gaussian_separate_curve(const GaussianProblem& problem, const GaussianCurveOptions& options = {});
TradeoffCurve gaussian_scheme3_curve(const GaussianProblem& problem, const GaussianCurveOptions& options = {});

} // namespace wzbc
