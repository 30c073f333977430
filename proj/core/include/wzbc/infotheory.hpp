#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wzbc {

// All logarithms are base 2.

/// H2(p) = -p log p - (1-p) log(1-p), with 0 log 0 = 0. Throws for p outside [0,1].
double binary_entropy(double p);

/// a * b = (1-a) b + a (1-b): crossover of two cascaded binary flips.
double binary_convolution(double a, double b);

/// r(alpha, beta) = H2(alpha * beta) - H2(alpha). Rate of the erasure/flip
/// Wyner-Ziv test channel per unit of q; both arguments in [0, 1/2].
double wz_rate_kernel(double alpha, double beta);

struct Variable {
    std::string name;
    std::size_t cardinality = 2;
};

using VarNames = std::vector<std::string>;

/// Dense pmf over the product of finite alphabets. Row-major: the last
/// variable varies fastest.
class JointDistribution {
public:
    static constexpr std::size_t max_cells = 10'000'000;
    static constexpr double sum_tolerance = 1e-12;
    /// Entries below this are treated as exact zeros in entropy sums.
    static constexpr double zero_threshold = 1e-15;

    JointDistribution(std::vector<Variable> variables, std::vector<double> pmf);

    /// Builds the pmf by evaluating prob(values) at every cell.
    template <class Fn>
    static JointDistribution tabulate(std::vector<Variable> variables, Fn&& prob);

    const std::vector<Variable>& variables() const { return variables_; }
    std::span<const double> pmf() const { return pmf_; }
    std::size_t cells() const { return pmf_.size(); }

    bool has(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    /// Joint entropy of the named subset (empty subset gives 0).
    double entropy(const VarNames& names) const;

    /// Appends a variable drawn from p(child | parent) with
    /// channel[parent_value][child_value].
    JointDistribution with_child(Variable child, std::string_view parent,
                                 const std::vector<std::vector<double>>& channel) const;

private:
    static std::size_t checked_cells(const std::vector<Variable>& variables);

    std::vector<Variable> variables_;
    std::vector<double> pmf_;
};

/// I(A;B|C) in bits by exact marginalisation. The three groups must be
/// disjoint subsets of the joint's variables.
double mutual_information(const JointDistribution& joint, const VarNames& a, const VarNames& b,
                          const VarNames& given = {});

template <class Fn>
JointDistribution JointDistribution::tabulate(std::vector<Variable> variables, Fn&& prob)
{
    const std::size_t n = checked_cells(variables);
    std::vector<double> pmf(n);
    std::vector<std::size_t> values(variables.size(), 0);
    for (std::size_t cell = 0; cell < n; ++cell) {
        pmf[cell] = prob(std::span<const std::size_t>(values));
        for (std::size_t d = variables.size(); d-- > 0;) {
            if (++values[d] < variables[d].cardinality)
                break;
            values[d] = 0;
        }
    }
    return JointDistribution(std::move(variables), std::move(pmf));
}

} // namespace wzbc
