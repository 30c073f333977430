#include "wzbc/dmc_regions.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace wzbc {

namespace {

std::string describe_violation(const std::string& chain, double value)
{
    std::ostringstream os;
    os.precision(6);
    os << "Markov chain " << chain << " violated: conditional mutual information " << value << " bits";
    return os.str();
}

void require_vars(const JointDistribution& joint, const VarNames& names, const char* op)
{
    for (const auto& n : names)
        if (!joint.has(n))
            throw std::invalid_argument(std::string(op) + " needs variable " + n + " in the joint distribution");
}

void require_outputs(const SchemeInputs& in)
{
    if (!in.joint.has("U"))
        throw std::invalid_argument("scheme inputs need the channel input U");
    if (in.channel_c.empty() || in.channel_r.empty())
        throw std::invalid_argument("scheme inputs need both channel matrices");
}

JointDistribution with_outputs(const SchemeInputs& in)
{
    require_outputs(in);
    return in.joint.with_child({"Vc", in.channel_c.front().size()}, "U", in.channel_c)
        .with_child({"Vr", in.channel_r.front().size()}, "U", in.channel_r);
}

using Precise = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
                                              boost::multiprecision::et_off>;

/// Joint of the scheme inputs plus both channel outputs, held in extended
/// precision. Products of the double inputs are exact, so rate expressions
/// that agree as real numbers round to the same double.
class PreciseJoint {
public:
    explicit PreciseJoint(const SchemeInputs& in)
    {
        require_outputs(in);
        const JointDistribution& j = in.joint;
        vars_ = j.variables();
        const std::size_t uidx = j.index_of("U");
        const std::size_t ucard = vars_[uidx].cardinality;
        std::size_t ustride = 1;
        for (std::size_t d = vars_.size(); d-- > uidx + 1;)
            ustride *= vars_[d].cardinality;
        const std::size_t nc = in.channel_c.front().size();
        const std::size_t nr = in.channel_r.front().size();
        vars_.push_back({"Vc", nc});
        vars_.push_back({"Vr", nr});
        const auto pmf = j.pmf();
        pmf_.reserve(pmf.size() * nc * nr);
        for (std::size_t cell = 0; cell < pmf.size(); ++cell) {
            const std::size_t u = (cell / ustride) % ucard;
            const Precise p(pmf[cell]);
            for (std::size_t a = 0; a < nc; ++a) {
                const Precise pa = p * Precise(in.channel_c[u][a]);
                for (std::size_t b = 0; b < nr; ++b)
                    pmf_.push_back(pa * Precise(in.channel_r[u][b]));
            }
        }
        // The double pmf sums to 1 only up to rounding; renormalise so identities between entropies hold.
        Precise total(0);
        for (const Precise& p : pmf_)
            total += p;
        for (Precise& p : pmf_)
            p /= total;
        kappa_ = Precise(in.kappa.num()) / Precise(in.kappa.den());
    }

    Precise entropy(const VarNames& names) const
    {
        if (names.empty())
            return Precise(0);
        const std::size_t dims = vars_.size();
        std::vector<std::size_t> stride(dims, 0);
        std::size_t cells = 1;
        for (auto it = names.rbegin(); it != names.rend(); ++it) {
            const std::size_t idx = index_of(*it);
            stride[idx] = cells;
            cells *= vars_[idx].cardinality;
        }
        std::vector<Precise> marginal(cells, Precise(0));
        std::vector<std::size_t> values(dims, 0);
        std::size_t offset = 0;
        for (const Precise& p : pmf_) {
            marginal[offset] += p;
            for (std::size_t d = dims; d-- > 0;) {
                offset += stride[d];
                if (++values[d] < vars_[d].cardinality)
                    break;
                offset -= stride[d] * values[d];
                values[d] = 0;
            }
        }
        Precise h(0);
        for (const Precise& p : marginal)
            if (p > 0)
                h -= p * log(p);
        return h / log(Precise(2));
    }

    Precise mi(const VarNames& a, const VarNames& b, const VarNames& given = {}) const
    {
        auto join = [](VarNames x, const VarNames& y) {
            x.insert(x.end(), y.begin(), y.end());
            return x;
        };
        const VarNames ac = join(a, given);
        const VarNames bc = join(b, given);
        return entropy(ac) + entropy(bc) - entropy(join(ac, b)) - entropy(given);
    }

    double scaled(const Precise& v) const { return static_cast<double>(kappa_ * v); }

private:
    std::size_t index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name)
                return i;
        throw std::invalid_argument("unknown variable " + name);
    }

    std::vector<Variable> vars_;
    std::vector<Precise> pmf_;
    Precise kappa_;
};

void check_markov(const JointDistribution& j, const VarNames& a, const VarNames& b, const VarNames& given,
                  const char* chain)
{
    const double v = mutual_information(j, a, b, given);
    if (v > markov_tolerance)
        throw MarkovViolation(chain, v);
}

void check_layered_markov(const JointDistribution& j)
{
    check_markov(j, {"T"}, {"Vr", "Vc"}, {"Ur", "Uc"}, "T-(Ur,Uc)-(Vr,Vc)");
    check_markov(j, {"Ur", "Uc"}, {"Vr", "Vc"}, {"U"}, "(Ur,Uc)-U-(Vr,Vc)");
}

} // namespace

MarkovViolation::MarkovViolation(std::string chain, double value)
    : std::runtime_error(describe_violation(chain, value)), chain_(std::move(chain)), value_(value)
{
}

std::vector<std::vector<double>> bsc_matrix(double crossover)
{
    return {{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}};
}

double cds_dpc_rate_bound(const SchemeInputs& inputs, Receiver receiver)
{
    require_vars(inputs.joint, {"T", "U", "S"}, "cds_dpc_rate_bound");
    const PreciseJoint pj(inputs);
    const char* v = receiver == Receiver::common ? "Vc" : "Vr";
    return pj.scaled(pj.mi({"T"}, {v}) - pj.mi({"T"}, {"S"}));
}

RateTriple lds_rate_triple(const SchemeInputs& inputs)
{
    require_vars(inputs.joint, {"T", "Uc", "Ur", "U"}, "lds_rate_triple");
    const JointDistribution j = with_outputs(inputs);
    check_layered_markov(j);
    const PreciseJoint pj(inputs);
    const Precise leak = pj.mi({"T"}, {"Ur"});
    return {pj.scaled(pj.mi({"T"}, {"Vc"}) - leak), pj.scaled(pj.mi({"T"}, {"Vr"}) - leak),
            pj.scaled(pj.mi({"Ur"}, {"T", "Vr"}))};
}

RateTriple scheme1_rate_triple(const SchemeInputs& inputs)
{
    require_vars(inputs.joint, {"Uc", "U"}, "scheme1_rate_triple");
    const JointDistribution j = with_outputs(inputs);
    check_markov(j, {"Uc"}, {"Vc", "Vr"}, {"U"}, "Uc-U-(Vc,Vr)");
    const PreciseJoint pj(inputs);
    return {pj.scaled(pj.mi({"Uc"}, {"Vc"})), pj.scaled(pj.mi({"Uc"}, {"Vr"})),
            pj.scaled(pj.mi({"U"}, {"Vr"}, {"Uc"}))};
}

RateTriple scheme2_rate_triple(const SchemeInputs& inputs)
{
    require_vars(inputs.joint, {"T", "Uc", "Ur", "U"}, "scheme2_rate_triple");
    const JointDistribution j = with_outputs(inputs);
    check_layered_markov(j);
    const PreciseJoint pj(inputs);
    return {pj.scaled(pj.mi({"Uc"}, {"Vc"})), pj.scaled(pj.mi({"Uc"}, {"T", "Vr"})),
            pj.scaled(pj.mi({"T"}, {"Vr"}) - pj.mi({"T"}, {"Uc"}))};
}

RateTriple scheme3_rate_triple(const SchemeInputs& inputs)
{
    require_vars(inputs.joint, {"T", "Uc", "Ur", "U"}, "scheme3_rate_triple");
    const JointDistribution j = with_outputs(inputs);
    check_layered_markov(j);
    const PreciseJoint pj(inputs);
    return {pj.scaled(pj.mi({"T"}, {"Vc"}) - pj.mi({"T"}, {"Ur"})), pj.scaled(pj.mi({"T"}, {"Vr"}, {"Ur"})),
            pj.scaled(pj.mi({"Ur"}, {"Vr"}))};
}

SchemeInputs binary_superposition_inputs(double p_c, double p_r, const BinaryChannelParams& ch,
                                         const Rational& kappa)
{
    const bool xor_t = ch.t_choice == AuxChoice::t_equals_uc_xor_ur;
    const double gc = ch.gamma_c;
    const double gr = ch.gamma_r;
    // Order: T, Uc, Ur, U, S.
    auto joint = JointDistribution::tabulate(
        {{"T", 2}, {"Uc", 2}, {"Ur", 2}, {"U", 2}, {"S", 2}}, [&](std::span<const std::size_t> v) {
            const std::size_t uc = v[1];
            const std::size_t ur = v[2];
            const std::size_t u = uc ^ ur;
            const std::size_t t = xor_t ? u : uc;
            if (v[0] != t || v[3] != u || v[4] != ur)
                return 0.0;
            return (uc ? gc : 1.0 - gc) * (ur ? gr : 1.0 - gr);
        });
    return {std::move(joint), bsc_matrix(p_c), bsc_matrix(p_r), kappa};
}

} // namespace wzbc
