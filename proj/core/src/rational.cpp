#include "wzbc/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace wzbc {

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("rational denominator is zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g ? num / g : num;
    den_ = g ? den / g : den;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    s = trim(s);
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end)
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text), 1);
    return Rational(parse_int(text.substr(0, slash), text),
                    parse_int(text.substr(slash + 1), text));
}

std::string Rational::to_string() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace wzbc
