#pragma once

#include "tiltfmt/numeric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tiltfmt {

/* One abelian variety in the rank-one line model: the dimension g and the
 * degree of the fixed ample class, that is the value of l^g. */
struct Geometry {
    int g;
    Rational degree;

    Geometry(int g_, Rational degree_) : g(g_), degree(std::move(degree_)) {
        if (g < 1) throw error("geometry needs dimension >= 1");
        if (degree <= 0) throw error("geometry needs degree > 0");
    }

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

/*
 * The contracted vector v_i = i! * l^{g-i} * ch_i of a twisted Chern
 * character, together with the twist coefficient it is expressed at: the
 * entries are those of ch^{b*l} for the recorded base b.  Carrying the base
 * inside the value prevents silent mixing of vectors expressed at different
 * twists.
 */
struct ChernVector {
    Geometry geom;
    Scalar base;
    std::vector<Scalar> v;

    ChernVector(Geometry geom_, Scalar base_, std::vector<Scalar> v_)
        : geom(std::move(geom_)), base(std::move(base_)), v(std::move(v_)) {
        if (v.size() != static_cast<std::size_t>(geom.g) + 1)
            throw error("chern vector needs exactly g + 1 components");
    }

    bool is_real() const {
        if (!base.is_real()) return false;
        for (const Scalar& c : v)
            if (!c.is_real()) return false;
        return true;
    }

    bool is_rational() const {
        if (!base.is_rational()) return false;
        for (const Scalar& c : v)
            if (!c.is_rational()) return false;
        return true;
    }

    friend bool operator==(const ChernVector&, const ChernVector&) = default;
};

inline void require_compatible(const ChernVector& x, const ChernVector& y) {
    if (!(x.geom == y.geom) || !(x.base == y.base)) throw error("incompatible vectors");
}

inline ChernVector operator+(const ChernVector& x, const ChernVector& y) {
    require_compatible(x, y);
    std::vector<Scalar> w(x.v.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = x.v[i] + y.v[i];
    return {x.geom, x.base, std::move(w)};
}

inline ChernVector operator*(const Scalar& c, const ChernVector& x) {
    std::vector<Scalar> w(x.v.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = c * x.v[i];
    return {x.geom, x.base, std::move(w)};
}

/* Rebase from b to b + beta.  Multiplying the character by e^{-beta*l} turns
 * into the binomial action v'_i = sum_j C(i,j) (-beta)^{i-j} v_j on the
 * contracted entries. */
inline ChernVector twist(const ChernVector& x, const Scalar& beta) {
    const int g = x.geom.g;
    std::vector<Scalar> w(x.v.size());
    for (int i = 0; i <= g; ++i) {
        Scalar acc{0};
        for (int j = 0; j <= i; ++j)
            acc = acc + Scalar{Rational(binomial(i, j))} * scalar_pow(-beta, i - j) * x.v[j];
        w[i] = acc;
    }
    return {x.geom, x.base + beta, std::move(w)};
}

/* ch = r * e^{d*l} at base 0, so v_i = r * degree * d^i. */
inline ChernVector exp_class(const Geometry& geom, const Rational& r, const Rational& d) {
    std::vector<Scalar> v(static_cast<std::size_t>(geom.g) + 1);
    for (int i = 0; i <= geom.g; ++i) v[i] = Scalar{r * geom.degree * rat_pow(d, i)};
    return {geom, Scalar{0}, std::move(v)};
}

/* n points: ch = (0, ..., 0, n [pt]), so v = (0, ..., 0, g! * n). */
inline ChernVector point_class(const Geometry& geom, const Rational& n) {
    std::vector<Scalar> v(static_cast<std::size_t>(geom.g) + 1, Scalar{0});
    v.back() = Scalar{Rational(factorial(geom.g)) * n};
    return {geom, Scalar{0}, std::move(v)};
}

/* Dual object: ch_i picks up (-1)^i and the base flips sign. */
inline ChernVector dualize(const ChernVector& x) {
    std::vector<Scalar> w(x.v.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (i % 2 == 0) ? x.v[i] : -x.v[i];
    return {x.geom, -x.base, std::move(w)};
}

inline Scalar integral(const ChernVector& x) {
    return x.v.back() / Scalar{Rational(factorial(x.geom.g))};
}

/* <x, y> = -(1/degree) * sum_i (-1)^i x_i y_{g-i} / (i! (g-i)!), the pairing
 * -int x^dual . y written out on contracted entries. */
inline Scalar mukai_pairing(const ChernVector& x, const ChernVector& y) {
    require_compatible(x, y);
    const int g = x.geom.g;
    Scalar acc{0};
    for (int i = 0; i <= g; ++i) {
        const Rational w = Rational(factorial(i) * factorial(g - i));
        Scalar term = x.v[i] * y.v[g - i] / Scalar{w};
        acc = i % 2 == 0 ? acc + term : acc - term;
    }
    return -acc / Scalar{x.geom.degree};
}

/* A slope value or the infinite sentinel, which sorts above every finite
 * slope (the torsion case v_0 = 0). */
struct Slope {
    bool infinite;
    Scalar value;

    static Slope at_infinity() { return {true, Scalar{0}}; }
    static Slope finite(Scalar v) { return {false, std::move(v)}; }

    friend bool operator==(const Slope&, const Slope&) = default;
};

inline int compare(const Slope& x, const Slope& y) {
    if (x.infinite && y.infinite) return 0;
    if (x.infinite) return 1;
    if (y.infinite) return -1;
    const Scalar d = x.value - y.value;
    if (!d.is_real()) throw error("slopes are only ordered over the reals");
    return scalar_sign(d.re);
}

inline bool operator<(const Slope& x, const Slope& y) { return compare(x, y) < 0; }
inline bool operator>(const Slope& x, const Slope& y) { return compare(x, y) > 0; }

inline std::string render(const Slope& s) { return s.infinite ? "inf" : render(s.value); }

inline Slope mu(const ChernVector& x) {
    if (x.v[0].is_zero()) return Slope::at_infinity();
    return Slope::finite(x.v[1] / x.v[0]);
}

inline Scalar disc(const ChernVector& x) {
    if (x.geom.g < 2) throw error("discriminant needs dimension >= 2");
    return x.v[1] * x.v[1] - x.v[0] * x.v[2];
}

}  // namespace tiltfmt
