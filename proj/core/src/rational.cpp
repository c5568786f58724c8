#include "bellpoly/rational.hpp"

#include "bellpoly/error.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace bellpoly {

namespace {

Integer parse_integer(const std::string& text, const std::string& whole) {
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        start = 1;
    }
    if (start == text.size()) {
        throw InputError("malformed rational: '" + whole + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw InputError("malformed rational: '" + whole + "'");
        }
    }
    return Integer(text[0] == '+' ? text.substr(1) : text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_integer(text, text));
    }
    const Integer num = parse_integer(text.substr(0, slash), text);
    const std::string den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw InputError("malformed rational: '" + text + "'");
    }
    const Integer den = parse_integer(den_text, text);
    if (den == 0) {
        throw InputError("zero denominator in '" + text + "'");
    }
    return Rational(num, den);
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
    if (!std::isfinite(value)) {
        throw InputError("non-finite value cannot be made exact");
    }
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an exact integer for every finite double.
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    Rational result(scaled);
    exponent -= 53;
    if (exponent > 0) {
        result *= Rational(Integer(1) << exponent);
    } else if (exponent < 0) {
        result /= Rational(Integer(1) << -exponent);
    }
    return result;
}

std::size_t exact_rank(RationalMatrix rows) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) {
                continue;
            }
            const Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[r][k] -= factor * rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

RationalVector primitive_integer(const RationalVector& v) {
    Integer lcm_den = 1;
    for (const auto& x : v) {
        lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
    }
    Integer gcd_num = 0;
    for (const auto& x : v) {
        const Integer scaled = numerator(x) * (lcm_den / Integer(denominator(x)));
        gcd_num = boost::multiprecision::gcd(gcd_num, abs(scaled));
    }
    if (gcd_num == 0) {
        return v;
    }
    RationalVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.emplace_back(x * Rational(lcm_den) / Rational(gcd_num));
    }
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

}  // namespace bellpoly
