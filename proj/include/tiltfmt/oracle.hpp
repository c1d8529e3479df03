#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/fmt.hpp"
#include "tiltfmt/numeric.hpp"

#include <utility>
#include <vector>

namespace tiltfmt {

/*
 * Brute-force recomputation layer.  Characters are modeled as honest
 * truncated polynomials sum c_i t^i mod t^{g+1} in the class t = l, with
 * int(c_g t^g) = c_g * degree, and every closed form of the main modules is
 * recomputed here through series products or the pairing route instead of
 * the precomputed matrices.  Agreement of the two paths is what the test
 * suite leans on.
 */
struct TruncPoly {
    Geometry geom;
    std::vector<Scalar> c;

    TruncPoly(Geometry geom_, std::vector<Scalar> c_) : geom(std::move(geom_)), c(std::move(c_)) {
        if (c.size() != static_cast<std::size_t>(geom.g) + 1)
            throw error("truncated polynomial needs exactly g + 1 coefficients");
    }

    friend bool operator==(const TruncPoly&, const TruncPoly&) = default;
};

inline TruncPoly poly_mul(const TruncPoly& p, const TruncPoly& q) {
    if (!(p.geom == q.geom)) throw error("mismatched geometry");
    const int g = p.geom.g;
    std::vector<Scalar> c(static_cast<std::size_t>(g) + 1, Scalar{0});
    for (int i = 0; i <= g; ++i)
        for (int j = 0; i + j <= g; ++j) c[i + j] = c[i + j] + p.c[i] * q.c[j];
    return {p.geom, std::move(c)};
}

/* e^{beta t} truncated: c_i = beta^i / i!. */
inline TruncPoly poly_exp(const Scalar& beta, const Geometry& geom) {
    std::vector<Scalar> c(static_cast<std::size_t>(geom.g) + 1);
    for (int i = 0; i <= geom.g; ++i)
        c[i] = scalar_pow(beta, i) / Scalar{Rational(factorial(i))};
    return {geom, std::move(c)};
}

inline Scalar poly_integral(const TruncPoly& p) { return p.c.back() * Scalar{p.geom.degree}; }

/* Contract the base-b twisted character of p into vector entries
 * v_i = i! * degree * coefficient. */
inline ChernVector to_vector(const TruncPoly& p, const Scalar& base) {
    const TruncPoly tw = poly_mul(p, poly_exp(-base, p.geom));
    std::vector<Scalar> v(tw.c.size());
    for (int i = 0; i <= p.geom.g; ++i)
        v[i] = Scalar{Rational(factorial(i)) * p.geom.degree} * tw.c[i];
    return {p.geom, base, std::move(v)};
}

/* Recover the plain character polynomial from a contracted vector. */
inline TruncPoly from_vector(const ChernVector& x) {
    std::vector<Scalar> c(x.v.size());
    for (int i = 0; i <= x.geom.g; ++i)
        c[i] = x.v[i] / Scalar{Rational(factorial(i)) * x.geom.degree};
    return poly_mul(TruncPoly{x.geom, std::move(c)}, poly_exp(x.base, x.geom));
}

inline ChernVector oracle_twist(const ChernVector& x, const Scalar& beta) {
    return to_vector(from_vector(x), x.base + beta);
}

inline TruncPoly poly_dualize(const TruncPoly& p) {
    std::vector<Scalar> c(p.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (i % 2 == 0) ? p.c[i] : -p.c[i];
    return {p.geom, std::move(c)};
}

/* -int p^dual . q, recomputed as a genuine series product. */
inline Scalar oracle_mukai(const ChernVector& x, const ChernVector& y) {
    require_compatible(x, y);
    return -poly_integral(poly_mul(poly_dualize(from_vector(x)), from_vector(y)));
}

/* -int e^{-w t} ch as a series product. */
inline Scalar oracle_central_charge(const ChernVector& x, const Scalar& omega) {
    return -poly_integral(poly_mul(from_vector(x), poly_exp(-omega, x.geom)));
}

/*
 * The transform recomputed along the pairing route: component i of the image
 * vector at base dY is (-1)^i g! (g-i)! / (r degX) times int(l^i ch^{-dX}),
 * with the integral read off the series.  Input and output are plain
 * characters; no anti-diagonal matrix is involved.
 */
inline TruncPoly oracle_transform(const FmtContext& ctx, const TruncPoly& p) {
    if (!(p.geom == geometry_x(ctx))) throw error("mismatched geometry");
    const int g = ctx.g;
    const TruncPoly twisted = poly_mul(p, poly_exp(Scalar{ctx.dX}, p.geom));
    const Geometry gy = geometry_y(ctx);
    std::vector<Scalar> v(static_cast<std::size_t>(g) + 1);
    for (int i = 0; i <= g; ++i) {
        const Scalar lint = twisted.c[g - i] * Scalar{ctx.degX};
        Scalar coef{Rational(factorial(g) * factorial(g - i)) / (ctx.r * ctx.degX)};
        if (i % 2 == 1) coef = -coef;
        v[i] = coef * lint;
    }
    return from_vector(ChernVector{gy, Scalar{ctx.dY}, std::move(v)});
}

/* The dual transform recomputed through Chern dualization of the input and
 * the image, with the shift [g] closing the sign. */
inline ChernVector oracle_dual_transform(const FmtContext& ctx, const ChernVector& x) {
    const TruncPoly image = oracle_transform(ctx, from_vector(dualize(x)));
    return shift(dualize(to_vector(image, Scalar{ctx.dY})), ctx.g);
}

}  // namespace tiltfmt
