#include "zz/rational.hpp"

#include <cctype>

namespace zz {

std::string to_string(const Rational& q)
{
    return q.str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
    {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

}   // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && text.front() == '-')
    {
        negative = true;
        text.remove_prefix(1);
    }
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos)
    {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        return std::nullopt;

    Integer p{std::string(num)};
    Integer q{std::string(den)};
    if (q == 0)
        return std::nullopt;
    Rational r(p, q);
    return negative ? Rational(-r) : r;
}

}   // namespace zz
