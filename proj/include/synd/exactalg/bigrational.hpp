#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace synd {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Thrown for malformed numbers and domain violations in exact arithmetic.
class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw ArithmeticError("rational with zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const BigRational& r) { return r.get_den() == 1; }

inline BigInt floor_of(const BigRational& r)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline BigInt ceil_of(const BigRational& r)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline bool fits_long(const BigInt& z) { return z.fits_slong_p() != 0; }

inline long to_long(const BigInt& z)
{
    if (!fits_long(z))
        throw ArithmeticError("integer out of machine range: " + z.get_str());
    return z.get_si();
}

inline std::string to_string(const BigRational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Parses "3", "-7/4", "0.1" or "1e-2" into an exact rational.
inline BigRational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return ArithmeticError("malformed rational: '" + s + "'"); };
    if (s.empty())
        throw bad();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw bad();
        return make_rational(num, den);
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '-' || s[pos] == '+') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point)
                ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit)
        throw bad();
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E')
            throw bad();
        try {
            std::size_t used = 0;
            exponent = std::stol(s.substr(pos + 1), &used);
            if (used != s.size() - pos - 1)
                throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    BigInt num(digits, 10);
    if (negative)
        num = -num;
    long net = exponent - scale;
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    if (net >= 0)
        return BigRational(num * ten_pow);
    return make_rational(num, ten_pow);
}

}  // namespace synd
