#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zecap {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Construct-from-integers canonicalises (gcd 1, positive denominator); the
// raw string constructor of mpq_rational does not, so never use it.
inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(std::move(num), std::move(den));
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Error("cannot parse rational '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline int sign(const Rational& q) { return q.sign(); }

// floor(p/q) with q > 0 (canonical form guarantees that)
inline Int floor_rational(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int t = n / d;
    if (n % d != 0 && n < 0) --t;
    return t;
}

inline Int ceil_rational(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int t = n / d;
    if (n % d != 0 && n > 0) ++t;
    return t;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Rational pow_rational(const Rational& base, unsigned exp) {
    Rational r(1), b = base;
    for (unsigned e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// Best rational approximation with denominator <= max_den (continued
// fractions); used only to round float factorisations before exact checks.
inline Rational rationalize(double x, const Int& max_den) {
    if (max_den < 1) throw Error("rationalize: max_den must be positive");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // convergents p/q of the continued fraction of v
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double a_f = std::floor(frac);
        if (a_f > 1e18) break;
        Int a(static_cast<long long>(a_f));
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - a_f;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(0);
    Rational r = make_rational(p1, q1);
    return neg ? Rational(-r) : r;
}

} // namespace zecap
