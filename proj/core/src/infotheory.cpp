#include "wzbc/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace wzbc {

namespace {

void check_probability(double p, const char* what)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << what << " must lie in [0,1] (got " << p << ")";
        throw std::domain_error(os.str());
    }
}

double plogp(double p)
{
    return p > 0.0 ? -p * std::log2(p) : 0.0;
}

} // namespace

double binary_entropy(double p)
{
    check_probability(p, "binary_entropy argument");
    return plogp(p) + plogp(1.0 - p);
}

double binary_convolution(double a, double b)
{
    check_probability(a, "binary_convolution argument");
    check_probability(b, "binary_convolution argument");
    return (1.0 - a) * b + a * (1.0 - b);
}

double wz_rate_kernel(double alpha, double beta)
{
    if (!(alpha >= 0.0 && alpha <= 0.5) || !(beta >= 0.0 && beta <= 0.5)) {
        std::ostringstream os;
        os << "wz_rate_kernel arguments must lie in [0,1/2] (alpha = " << alpha << ", beta = " << beta << ")";
        throw std::domain_error(os.str());
    }
    return binary_entropy(binary_convolution(alpha, beta)) - binary_entropy(alpha);
}

std::size_t JointDistribution::checked_cells(const std::vector<Variable>& variables)
{
    if (variables.empty())
        throw std::invalid_argument("joint distribution needs at least one variable");
    std::size_t n = 1;
    std::unordered_set<std::string> seen;
    for (const auto& v : variables) {
        if (v.cardinality == 0)
            throw std::invalid_argument("variable " + v.name + " has an empty alphabet");
        if (!seen.insert(v.name).second)
            throw std::invalid_argument("duplicate variable name " + v.name);
        if (n > max_cells / v.cardinality)
            throw std::length_error("alphabet product exceeds the cap of " + std::to_string(max_cells) + " cells");
        n *= v.cardinality;
    }
    return n;
}

JointDistribution::JointDistribution(std::vector<Variable> variables, std::vector<double> pmf)
    : variables_(std::move(variables)), pmf_(std::move(pmf))
{
    const std::size_t n = checked_cells(variables_);
    if (pmf_.size() != n)
        throw std::invalid_argument("pmf has " + std::to_string(pmf_.size()) + " entries, expected "
                                    + std::to_string(n));
    double total = 0.0;
    for (double p : pmf_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("pmf entries must be finite and nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > sum_tolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "pmf sums to " << total << ", not 1";
        throw std::invalid_argument(os.str());
    }
}

bool JointDistribution::has(std::string_view name) const
{
    return std::any_of(variables_.begin(), variables_.end(), [&](const Variable& v) { return v.name == name; });
}

std::size_t JointDistribution::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name)
            return i;
    throw std::invalid_argument("unknown variable " + std::string(name));
}

double JointDistribution::entropy(const VarNames& names) const
{
    if (names.empty())
        return 0.0;
    const std::size_t dims = variables_.size();
    std::vector<std::size_t> keep;
    for (const auto& name : names) {
        const std::size_t idx = index_of(name);
        if (std::find(keep.begin(), keep.end(), idx) != keep.end())
            throw std::invalid_argument("variable " + name + " listed twice");
        keep.push_back(idx);
    }
    // Mixed-radix stride of each kept variable inside the marginal array.
    std::vector<std::size_t> stride(dims, 0);
    std::size_t marginal_cells = 1;
    for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
        stride[*it] = marginal_cells;
        marginal_cells *= variables_[*it].cardinality;
    }
    std::vector<double> marginal(marginal_cells, 0.0);
    std::vector<std::size_t> values(dims, 0);
    std::size_t offset = 0;
    for (std::size_t cell = 0; cell < pmf_.size(); ++cell) {
        marginal[offset] += pmf_[cell];
        for (std::size_t d = dims; d-- > 0;) {
            offset += stride[d];
            if (++values[d] < variables_[d].cardinality)
                break;
            offset -= stride[d] * values[d];
            values[d] = 0;
        }
    }
    double h = 0.0;
    for (double p : marginal)
        if (p >= zero_threshold)
            h -= p * std::log2(p);
    return h;
}

JointDistribution JointDistribution::with_child(Variable child, std::string_view parent,
                                                const std::vector<std::vector<double>>& channel) const
{
    const std::size_t pidx = index_of(parent);
    const std::size_t pcard = variables_[pidx].cardinality;
    if (channel.size() != pcard)
        throw std::invalid_argument("channel for " + child.name + " needs one row per value of "
                                    + std::string(parent));
    for (const auto& row : channel) {
        if (row.size() != child.cardinality)
            throw std::invalid_argument("channel row width does not match the alphabet of " + child.name);
        double s = 0.0;
        for (double v : row) {
            if (!(v >= 0.0))
                throw std::invalid_argument("channel entries must be nonnegative");
            s += v;
        }
        if (std::abs(s - 1.0) > sum_tolerance)
            throw std::invalid_argument("channel row for " + child.name + " does not sum to 1");
    }
    std::vector<Variable> vars = variables_;
    vars.push_back(child);
    const std::size_t cc = child.cardinality;
    std::vector<double> pmf(pmf_.size() * cc);
    std::size_t pstride = 1;
    for (std::size_t d = variables_.size(); d-- > pidx + 1;)
        pstride *= variables_[d].cardinality;
    for (std::size_t cell = 0; cell < pmf_.size(); ++cell) {
        const std::size_t pv = (cell / pstride) % pcard;
        for (std::size_t j = 0; j < cc; ++j)
            pmf[cell * cc + j] = pmf_[cell] * channel[pv][j];
    }
    return JointDistribution(std::move(vars), std::move(pmf));
}

double mutual_information(const JointDistribution& joint, const VarNames& a, const VarNames& b,
                          const VarNames& given)
{
    std::unordered_set<std::string> seen;
    for (const VarNames* group : {&a, &b, &given}) {
        for (const auto& name : *group) {
            joint.index_of(name);
            if (!seen.insert(name).second)
                throw std::invalid_argument("variable " + name + " appears in more than one group");
        }
    }
    if (a.empty() || b.empty())
        throw std::invalid_argument("mutual information needs two nonempty groups");
    auto join = [](VarNames x, const VarNames& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    const VarNames ac = join(a, given);
    const VarNames bc = join(b, given);
    const VarNames abc = join(ac, b);
    return joint.entropy(ac) + joint.entropy(bc) - joint.entropy(abc) - joint.entropy(given);
}

} // namespace wzbc
