#include "heis/rational.hpp"

#include "heis/errors.hpp"

#include <cmath>
#include <cctype>

namespace heis {

namespace {

BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

Rational parse_decimal(std::string_view s) {
    if (s.empty()) throw ConfigError("empty number");
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    BigInt mant = 0;
    long exp10 = 0;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (dot) --exp10;
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw ConfigError("malformed number: " + std::string(s));
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw ConfigError("malformed number: " + std::string(s));
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw ConfigError("malformed exponent: " + std::string(s));
        long e = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ConfigError("malformed exponent: " + std::string(s));
            e = e * 10 + (s[i] - '0');
            if (e > 4000) throw ConfigError("exponent out of range: " + std::string(s));
        }
        exp10 += eneg ? -e : e;
    }
    Rational r = exp10 >= 0 ? Rational(mant * pow10(static_cast<unsigned>(exp10)))
                            : Rational(mant, pow10(static_cast<unsigned>(-exp10)));
    return neg ? Rational(-r) : r;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator: " + std::string(text));
    return num / den;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw ConfigError("non-finite value");
    if (x == 0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e); // x = m * 2^e, 0.5 <= |m| < 1
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    BigInt num = mi;
    if (e >= 0) return Rational(num << e);
    BigInt den = 1;
    den <<= -e;
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

HighFloat to_high(const Rational& r) {
    return HighFloat(numerator(r)) / HighFloat(denominator(r));
}

BigInt floor_of(const Rational& r) {
    BigInt q = numerator(r) / denominator(r); // truncates toward zero
    if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
    return q;
}

BigInt ceil_of(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (r > 0 && q * denominator(r) != numerator(r)) q += 1;
    return q;
}

Rational pow_int(const Rational& r, unsigned e) {
    return Rational(boost::multiprecision::pow(numerator(r), e),
                    boost::multiprecision::pow(denominator(r), e));
}

BigInt integer_root_floor(const BigInt& x, unsigned k) {
    if (x < 0) throw ConfigError("integer_root_floor of negative value");
    if (x < 2 || k == 1) return x;
    // Float seed, then exact correction.
    double seed = std::pow(x.convert_to<double>(), 1.0 / k);
    BigInt m = static_cast<long long>(seed);
    while (m > 0 && boost::multiprecision::pow(m, k) > x) --m;
    while (boost::multiprecision::pow(BigInt(m + 1), k) <= x) ++m;
    return m;
}

} // namespace heis
