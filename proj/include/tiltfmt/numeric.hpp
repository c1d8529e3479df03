#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tiltfmt {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Integer factorial(int n) {
    if (n < 0) throw error("factorial of a negative integer");
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer b = 1;
    for (int i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;
    }
    return b;
}

inline Rational rat_pow(const Rational& x, int n) {
    if (n < 0) throw error("rat_pow: negative exponent");
    Rational p = 1;
    for (int i = 0; i < n; ++i) p *= x;
    return p;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/*
 * An element a + b*sqrt3 of the real quadratic field Q(sqrt3).  Componentwise
 * equality agrees with equality of real numbers because sqrt3 is irrational.
 * The sign is decided exactly: when a and b agree in sign it is that common
 * sign, and in the mixed cases a^2 is compared against 3b^2 (a^2 = 3b^2 has
 * no rational solution besides a = b = 0).
 */
struct RealQuad {
    Rational a;
    Rational b;

    RealQuad() : a(0), b(0) {}
    RealQuad(int n) : a(n), b(0) {}
    RealQuad(Rational r) : a(std::move(r)), b(0) {}
    RealQuad(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend bool operator==(const RealQuad&, const RealQuad&) = default;
};

inline RealQuad operator+(const RealQuad& x, const RealQuad& y) { return {x.a + y.a, x.b + y.b}; }
inline RealQuad operator-(const RealQuad& x, const RealQuad& y) { return {x.a - y.a, x.b - y.b}; }
inline RealQuad operator-(const RealQuad& x) { return {-x.a, -x.b}; }

inline RealQuad operator*(const RealQuad& x, const RealQuad& y) {
    return {x.a * y.a + 3 * (x.b * y.b), x.a * y.b + x.b * y.a};
}

inline int scalar_sign(const RealQuad& x) {
    const int sa = x.a == 0 ? 0 : (x.a > 0 ? 1 : -1);
    const int sb = x.b == 0 ? 0 : (x.b > 0 ? 1 : -1);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    const Rational aa = x.a * x.a;
    const Rational bb = 3 * (x.b * x.b);
    if (aa == bb) return 0;
    return aa > bb ? sa : sb;
}

inline RealQuad inverse(const RealQuad& x) {
    if (x.is_zero()) throw error("division by zero in Q(sqrt3)");
    const Rational n = x.a * x.a - 3 * (x.b * x.b);
    return {x.a / n, -x.b / n};
}

inline RealQuad operator/(const RealQuad& x, const RealQuad& y) { return x * inverse(y); }

inline bool operator<(const RealQuad& x, const RealQuad& y) { return scalar_sign(x - y) < 0; }
inline bool operator>(const RealQuad& x, const RealQuad& y) { return scalar_sign(x - y) > 0; }
inline bool operator<=(const RealQuad& x, const RealQuad& y) { return scalar_sign(x - y) <= 0; }
inline bool operator>=(const RealQuad& x, const RealQuad& y) { return scalar_sign(x - y) >= 0; }

inline double to_double(const RealQuad& x) {
    static const double sqrt3 = 1.7320508075688772935;
    return to_double(x.a) + sqrt3 * to_double(x.b);
}

/* The complexification Q(sqrt3) + i*Q(sqrt3), closed under field operations. */
struct Scalar {
    RealQuad re;
    RealQuad im;

    Scalar() = default;
    Scalar(int n) : re(n) {}
    Scalar(Rational r) : re(std::move(r)) {}
    Scalar(RealQuad r) : re(std::move(r)) {}
    Scalar(RealQuad r, RealQuad i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_rational() const { return im.is_zero() && re.is_rational(); }

    friend bool operator==(const Scalar&, const Scalar&) = default;
};

inline Scalar operator+(const Scalar& x, const Scalar& y) { return {x.re + y.re, x.im + y.im}; }
inline Scalar operator-(const Scalar& x, const Scalar& y) { return {x.re - y.re, x.im - y.im}; }
inline Scalar operator-(const Scalar& x) { return {-x.re, -x.im}; }

inline Scalar operator*(const Scalar& x, const Scalar& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline Scalar conj(const Scalar& z) { return {z.re, -z.im}; }
inline RealQuad norm_sq(const Scalar& z) { return z.re * z.re + z.im * z.im; }

inline Scalar inverse(const Scalar& z) {
    if (z.is_zero()) throw error("division by zero in Q(sqrt3, i)");
    const RealQuad n = norm_sq(z);
    return {z.re / n, -z.im / n};
}

inline Scalar operator/(const Scalar& x, const Scalar& y) { return x * inverse(y); }

inline Scalar scalar_pow(const Scalar& z, int n) {
    if (n < 0) throw error("scalar_pow: negative exponent");
    Scalar p = 1;
    for (int i = 0; i < n; ++i) p = p * z;
    return p;
}

inline Scalar sqrt3() { return Scalar{RealQuad{Rational(0), Rational(1)}}; }
inline Scalar imaginary_unit() { return Scalar{RealQuad{}, RealQuad{1}}; }

inline std::complex<double> to_complex(const Scalar& z) {
    return {to_double(z.re), to_double(z.im)};
}

/*
 * Exact e^{i k pi / g} for g = 2 and g = 3, where every value lies in
 * Q(sqrt3, i).  Other dimensions have no exact representative in this field
 * and must go through the floating-point fallback.
 */
inline Scalar root_of_unity(int g, int k) {
    const Rational h{1, 2};
    if (g == 3) {
        switch (((k % 6) + 6) % 6) {
            case 0: return Scalar{1};
            case 1: return Scalar{RealQuad{h}, RealQuad{0, h}};
            case 2: return Scalar{RealQuad{-h}, RealQuad{0, h}};
            case 3: return Scalar{-1};
            case 4: return Scalar{RealQuad{-h}, RealQuad{0, -h}};
            default: return Scalar{RealQuad{h}, RealQuad{0, -h}};
        }
    }
    if (g == 2) {
        switch (((k % 4) + 4) % 4) {
            case 0: return Scalar{1};
            case 1: return imaginary_unit();
            case 2: return Scalar{-1};
            default: return -imaginary_unit();
        }
    }
    throw error("inexact root: exact roots of unity cover g in {2, 3} only");
}

/*
 * Textual form of exact scalars.  Rationals print as "p/q" (bare "p" when the
 * denominator is one), elements of Q(sqrt3) as "p/q + r/s*sqrt3", and complex
 * scalars as "re + i*(im)".  parse_scalar accepts the same grammar and the
 * value round trip is exact.
 */
inline std::string render(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

namespace detail {

inline std::string render_sqrt3_part(const Rational& b) {
    if (b == 1) return "sqrt3";
    if (b == -1) return "-sqrt3";
    return render(b) + "*sqrt3";
}

}  // namespace detail

inline std::string render(const RealQuad& x) {
    if (x.b == 0) return render(x.a);
    if (x.a == 0) return detail::render_sqrt3_part(x.b);
    if (x.b > 0) return render(x.a) + " + " + detail::render_sqrt3_part(x.b);
    return render(x.a) + " - " + detail::render_sqrt3_part(-x.b);
}

inline std::string render(const Scalar& z) {
    if (z.im.is_zero()) return render(z.re);
    const std::string ipart = "i*(" + render(z.im) + ")";
    if (z.re.is_zero()) return ipart;
    return render(z.re) + " + " + ipart;
}

namespace detail {

struct ScalarParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit ScalarParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw error("scalar syntax at column " + std::to_string(pos + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool at_word(const char* w) {
        skip_ws();
        std::size_t n = 0;
        while (w[n] != '\0') ++n;
        if (text.compare(pos, n, w) != 0) return false;
        const std::size_t end = pos + n;
        if (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) != 0)) return false;
        pos = end;
        return true;
    }

    Rational number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0) ++pos;
        if (pos == start) fail("expected a number");
        Integer num{text.substr(start, pos - start)};
        if (consume('/')) {
            skip_ws();
            const std::size_t ds = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0) ++pos;
            if (pos == ds) fail("expected a denominator");
            Integer den{text.substr(ds, pos - ds)};
            if (den == 0) fail("zero denominator");
            return Rational{num, den};
        }
        return Rational{num};
    }

    Scalar atom() {
        if (at_word("sqrt3")) return Scalar{RealQuad{Rational(0), Rational(1)}};
        if (at_word("i")) {
            if (consume('*')) {
                if (!consume('(')) fail("expected '(' after i*");
                Scalar inner = sum();
                if (!consume(')')) fail("expected ')'");
                if (!inner.is_real()) fail("imaginary part must be a real expression");
                return Scalar{RealQuad{}, inner.re};
            }
            return imaginary_unit();
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) fail("expected a term");
        Rational q = number();
        if (consume('*')) {
            if (!at_word("sqrt3")) fail("expected sqrt3 after '*'");
            return Scalar{RealQuad{Rational(0), q}};
        }
        return Scalar{q};
    }

    Scalar sum() {
        Scalar total{0};
        int sgn = 1;
        if (consume('-')) sgn = -1;
        else consume('+');
        for (;;) {
            const Scalar a = atom();
            total = sgn < 0 ? total - a : total + a;
            if (consume('+')) { sgn = 1; continue; }
            if (consume('-')) { sgn = -1; continue; }
            break;
        }
        return total;
    }
};

}  // namespace detail

inline Scalar parse_scalar(const std::string& text) {
    detail::ScalarParser p{text};
    Scalar z = p.sum();
    if (p.peek() != '\0') p.fail("trailing input");
    return z;
}

inline Rational parse_rational(const std::string& text) {
    const Scalar z = parse_scalar(text);
    if (!z.is_rational()) throw error("expected a rational value, got " + render(z));
    return z.re.a;
}

}  // namespace tiltfmt
