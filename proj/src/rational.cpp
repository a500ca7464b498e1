#include "spines/rational.hpp"

#include <cctype>
#include <cmath>

#include "spines/error.hpp"

namespace spines {

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

BigInt parse_integer(const std::string& s, const std::string& whole) {
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "malformed rational '" + whole + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorCode::InvalidArgument, "malformed rational '" + whole + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(ErrorCode::InvalidArgument, "malformed rational '" + whole + "'");
    return BigInt(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), text);
        const BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        const std::string int_part = text.substr(0, dot);
        const std::string frac_part = text.substr(dot + 1);
        const bool negative = !int_part.empty() && int_part[0] == '-';
        const std::string digits = (int_part.empty() || int_part == "-" || int_part == "+" ? int_part + "0" : int_part);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+'))
            throw Error(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
        BigInt whole = parse_integer(digits, text);
        if (whole < 0) whole = -whole;
        Rational value = Rational(whole) + Rational(frac, scale);
        return negative ? Rational(-value) : value;
    }
    return Rational(parse_integer(text, text));
}

bool rational_le_real(const Rational& r, double bound, double slack) {
    if (std::isnan(bound)) return false;
    if (std::isinf(bound)) return bound > 0;
    return r <= Rational(bound + slack);
}

}  // namespace spines
