#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wzbc/binary.hpp"
#include "wzbc/infotheory.hpp"
#include "wzbc/problem.hpp"

namespace wzbc {

/// Channel-side random variables for the finite-alphabet evaluators.
/// joint ranges over a subset of {T, Uc, Ur, U, S}; the two receivers'
/// outputs Vc and Vr are drawn from U through channel_c and channel_r
/// (row = input symbol). Variables that a scheme does not use may be left
/// out or given cardinality 1.
struct SchemeInputs {
    JointDistribution joint;
    std::vector<std::vector<double>> channel_c;
    std::vector<std::vector<double>> channel_r;
    Rational kappa{1};
};

enum class Receiver {
    common,
    refinement,
};

/// A required Markov chain does not hold: the conditional mutual information
/// that should vanish is value() bits.
class MarkovViolation : public std::runtime_error {
public:
    MarkovViolation(std::string chain, double value);
    const std::string& chain() const { return chain_; }
    double value() const { return value_; }

private:
    std::string chain_;
    double value_;
};

constexpr double markov_tolerance = 1e-9;

/// kappa [I(T;V_k) - I(T;S)], unclamped.
double cds_dpc_rate_bound(const SchemeInputs& inputs, Receiver receiver);

/// Layered scheme: (kappa[I(T;Vc) - I(T;Ur)], kappa[I(T;Vr) - I(T;Ur)], kappa I(Ur; T,Vr)).
RateTriple lds_rate_triple(const SchemeInputs& inputs);

/// Plain superposition: (kappa I(Uc;Vc), kappa I(Uc;Vr), kappa I(U;Vr|Uc)).
RateTriple scheme1_rate_triple(const SchemeInputs& inputs);

/// Refinement layer precoded against the common codeword:
/// (kappa I(Uc;Vc), kappa I(Uc;T,Vr), kappa[I(T;Vr) - I(T;Uc)]).
RateTriple scheme2_rate_triple(const SchemeInputs& inputs);

/// Reversed decoding order:
/// (kappa[I(T;Vc) - I(T;Ur)], kappa I(T;Vr|Ur), kappa I(Ur;Vr)).
RateTriple scheme3_rate_triple(const SchemeInputs& inputs);

/// Binary superposition U = Uc xor Ur with Uc ~ Ber(gamma_c), Ur ~ Ber(gamma_r)
/// independent, S = Ur, T = Uc or Uc xor Ur, and BSC(p_c), BSC(p_r) channels.
SchemeInputs binary_superposition_inputs(double p_c, double p_r, const BinaryChannelParams& ch,
                                         const Rational& kappa = Rational(1));

std::vector<std::vector<double>> bsc_matrix(double crossover);

} // namespace wzbc
