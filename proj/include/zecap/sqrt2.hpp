#pragma once

#include "zecap/rational.hpp"

#include <cmath>
#include <ostream>

namespace zecap {

// Element a + b*sqrt(2) of the field Q(sqrt 2). Closed under +,-,*,/ and
// exactly ordered, which is all the simplex solver needs. Carries the
// entries of the Tsirelson-point boxes and the channels wired from them.
struct Sqrt2Ext {
    Rational a{0};
    Rational b{0};

    Sqrt2Ext() = default;
    Sqrt2Ext(int v) : a(v) {}                       // NOLINT(google-explicit-constructor)
    Sqrt2Ext(Rational v) : a(std::move(v)) {}       // NOLINT(google-explicit-constructor)
    Sqrt2Ext(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    static Sqrt2Ext sqrt2() { return {Rational(0), Rational(1)}; }

    bool is_rational() const { return b == 0; }

    // sign of a + b*sqrt(2): when a and b disagree in sign, compare a^2
    // against 2 b^2 (sqrt 2 is irrational, so equality forces a = b = 0)
    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational d = a * a - 2 * b * b;
        return sa > 0 ? d.sign() : -d.sign();
    }

    Sqrt2Ext operator-() const { return {-a, -b}; }
    Sqrt2Ext& operator+=(const Sqrt2Ext& o) { a += o.a; b += o.b; return *this; }
    Sqrt2Ext& operator-=(const Sqrt2Ext& o) { a -= o.a; b -= o.b; return *this; }
    Sqrt2Ext& operator*=(const Sqrt2Ext& o) {
        Rational na = a * o.a + 2 * b * o.b;
        Rational nb = a * o.b + b * o.a;
        a = std::move(na);
        b = std::move(nb);
        return *this;
    }
    Sqrt2Ext& operator/=(const Sqrt2Ext& o) {
        Rational n = o.a * o.a - 2 * o.b * o.b;
        if (n == 0) throw Error("division by zero in Q(sqrt2)");
        Sqrt2Ext conj{o.a / n, -o.b / n};
        return *this *= conj;
    }

    friend Sqrt2Ext operator+(Sqrt2Ext l, const Sqrt2Ext& r) { return l += r; }
    friend Sqrt2Ext operator-(Sqrt2Ext l, const Sqrt2Ext& r) { return l -= r; }
    friend Sqrt2Ext operator*(Sqrt2Ext l, const Sqrt2Ext& r) { return l *= r; }
    friend Sqrt2Ext operator/(Sqrt2Ext l, const Sqrt2Ext& r) { return l /= r; }

    friend bool operator==(const Sqrt2Ext& l, const Sqrt2Ext& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator!=(const Sqrt2Ext& l, const Sqrt2Ext& r) { return !(l == r); }
    friend bool operator<(const Sqrt2Ext& l, const Sqrt2Ext& r) { return (l - r).sign() < 0; }
    friend bool operator>(const Sqrt2Ext& l, const Sqrt2Ext& r) { return (l - r).sign() > 0; }
    friend bool operator<=(const Sqrt2Ext& l, const Sqrt2Ext& r) { return (l - r).sign() <= 0; }
    friend bool operator>=(const Sqrt2Ext& l, const Sqrt2Ext& r) { return (l - r).sign() >= 0; }
};

inline int sign(const Sqrt2Ext& v) { return v.sign(); }

inline double to_double(const Sqrt2Ext& v) {
    return to_double(v.a) + to_double(v.b) * std::sqrt(2.0);
}

inline std::string to_string(const Sqrt2Ext& v) {
    if (v.b == 0) return to_string(v.a);
    std::string s = to_string(v.a);
    if (v.b > 0)
        s += "+" + to_string(v.b) + "*sqrt2";
    else
        s += "-" + to_string(Rational(-v.b)) + "*sqrt2";
    return s;
}

// Accepts "p/q", "p/q+r/s*sqrt2" and "p/q-r/s*sqrt2".
inline Sqrt2Ext parse_sqrt2ext(std::string_view text) {
    std::string s(text);
    auto star = s.rfind("*sqrt2");
    if (star == std::string::npos) return Sqrt2Ext(parse_rational(s));
    if (star + 6 != s.size()) throw Error("cannot parse Q(sqrt2) value '" + s + "'");
    std::string head = s.substr(0, star);
    // split at the sign that separates the rational part from the sqrt2 part
    for (size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
            head[i - 1] != '-') {
            Rational a = parse_rational(head.substr(0, i));
            Rational b = parse_rational(head.substr(i + 1));
            if (head[i] == '-') b = -b;
            return {a, b};
        }
    }
    // pure sqrt2 multiple, e.g. "1/2*sqrt2"
    return {Rational(0), parse_rational(head)};
}

inline std::ostream& operator<<(std::ostream& os, const Sqrt2Ext& v) { return os << to_string(v); }

// Scalar-generic helpers shared by the exact containers and the LP solver.
template <class S>
S parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }

template <>
inline Sqrt2Ext parse_scalar<Sqrt2Ext>(std::string_view text) { return parse_sqrt2ext(text); }

} // namespace zecap
