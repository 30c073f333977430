#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wzbc {

/// Positive-or-zero rational number, always stored in lowest terms with a
/// positive denominator. Used for the bandwidth ratio so that the matched
/// case compares exactly.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "n", "n/d" (surrounding whitespace allowed).
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_one() const { return num_ == den_; }
    bool is_positive() const { return num_ > 0; }

    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 1;
    std::int64_t den_ = 1;
};

} // namespace wzbc
