#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/numeric.hpp"
#include "tiltfmt/stability.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace tiltfmt {

/*
 * The pair of derived equivalent varieties a transform runs between, in the
 * line model: dimension g, fiber rank r of the kernel, the twist coefficients
 * dX, dY of the distinguished rational divisor classes, and the two degrees.
 * degY is forced by (degX/g!)(degY/g!) = 1/r^2.
 *
 * Vectors enter a transform at base -dX and leave at base +dY; the dual
 * transform swaps the signs.  The bases are enforced rather than fixed up
 * silently, rebasing is the caller's explicit twist.
 */
struct FmtContext {
    int g;
    Rational r;
    Rational dX;
    Rational dY;
    Rational degX;
    Rational degY;

    friend bool operator==(const FmtContext&, const FmtContext&) = default;
};

inline FmtContext make_context(int g, const Rational& r, const Rational& dX, const Rational& dY,
                               const Rational& degX) {
    if (g < 1) throw error("context needs dimension >= 1");
    if (r <= 0) throw error("context needs kernel rank > 0");
    if (degX <= 0) throw error("context needs degX > 0");
    const Rational gf{factorial(g)};
    return {g, r, dX, dY, degX, gf * gf / (r * r * degX)};
}

inline bool context_invariant_holds(const FmtContext& ctx) {
    const Rational gf{factorial(ctx.g)};
    return (ctx.degX / gf) * (ctx.degY / gf) * (ctx.r * ctx.r) == 1;
}

inline Geometry geometry_x(const FmtContext& ctx) { return {ctx.g, ctx.degX}; }
inline Geometry geometry_y(const FmtContext& ctx) { return {ctx.g, ctx.degY}; }

namespace detail {

/* The anti-diagonal action out_i = scale * (-1)^i * in_{g-i}. */
inline ChernVector antidiagonal(const Geometry& out_geom, const Scalar& out_base,
                                const Rational& scale, const ChernVector& x) {
    const int g = x.geom.g;
    std::vector<Scalar> w(x.v.size());
    for (int i = 0; i <= g; ++i) {
        w[i] = Scalar{scale} * x.v[g - i];
        if (i % 2 == 1) w[i] = -w[i];
    }
    return {out_geom, out_base, std::move(w)};
}

inline void require_vector_at(const ChernVector& x, const Geometry& geom, const Rational& base,
                              const char* what) {
    if (!(x.geom == geom)) throw error(std::string(what) + ": geometry mismatch");
    if (!(x.base == Scalar{base})) throw error(std::string(what) + ": vector not expressed at the required base");
}

}  // namespace detail

/* X -> Y on contracted vectors: v at base dY of the image equals
 * (g!/(r degX)) Adiag(1, -1, ...) applied to v at base -dX. */
inline ChernVector fmt_transform(const FmtContext& ctx, const ChernVector& x) {
    detail::require_vector_at(x, geometry_x(ctx), -ctx.dX, "transform input");
    const Rational scale = Rational{factorial(ctx.g)} / (ctx.r * ctx.degX);
    return detail::antidiagonal(geometry_y(ctx), Scalar{ctx.dY}, scale, x);
}

/* Same matrix with the dualized kernel: in at +dX, out at -dY. */
inline ChernVector fmt_dual_transform(const FmtContext& ctx, const ChernVector& x) {
    detail::require_vector_at(x, geometry_x(ctx), ctx.dX, "dual transform input");
    const Rational scale = Rational{factorial(ctx.g)} / (ctx.r * ctx.degX);
    return detail::antidiagonal(geometry_y(ctx), Scalar{-ctx.dY}, scale, x);
}

/* The reverse direction Y -> X with the dualized kernel: in at +dY, out at
 * -dX, scaled by g!/(r degY).  Composing it with the forward transform gives
 * (-1)^g times the identity before any shift. */
inline ChernVector fmt_reverse_transform(const FmtContext& ctx, const ChernVector& y) {
    detail::require_vector_at(y, geometry_y(ctx), ctx.dY, "reverse transform input");
    const Rational scale = Rational{factorial(ctx.g)} / (ctx.r * ctx.degY);
    return detail::antidiagonal(geometry_x(ctx), Scalar{-ctx.dX}, scale, y);
}

/* Homological shift [n]: every component picks up (-1)^n. */
inline ChernVector shift(const ChernVector& x, int n) {
    if (((n % 2) + 2) % 2 == 0) return x;
    std::vector<Scalar> w(x.v.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = -x.v[i];
    return {x.geom, x.base, std::move(w)};
}

/* Quasi-inverse: the reverse transform followed by the shift [g], an exact
 * two-sided inverse of fmt_transform. */
inline ChernVector fmt_inverse(const FmtContext& ctx, const ChernVector& y) {
    return shift(fmt_reverse_transform(ctx, y), ctx.g);
}

/* zeta = r degX u^g / g!, the factor by which the transform rescales central
 * charges. */
inline Scalar zeta(const FmtContext& ctx, const Scalar& u) {
    if (u.is_zero()) throw error("zeta needs u != 0");
    return Scalar{ctx.r * ctx.degX / Rational{factorial(ctx.g)}} * scalar_pow(u, ctx.g);
}

struct ZetaCheck {
    bool ok;
    Scalar lhs;
    Scalar rhs;
    Scalar residual;
};

/* Checks Z_{-dX + u}(x) = zeta(u) * Z_{dY - 1/u}(transform of x) exactly. */
inline ZetaCheck verify_zeta_identity(const FmtContext& ctx, const Scalar& u, const ChernVector& x) {
    if (scalar_sign(u.im) <= 0) throw error("zeta identity needs Im(u) > 0");
    const Scalar lhs = central_charge(x, ComplexAmple{Scalar{-ctx.dX} + u});
    const ChernVector y = fmt_transform(ctx, x);
    const Scalar rhs =
        zeta(ctx, u) * central_charge(y, ComplexAmple{Scalar{ctx.dY} - inverse(u)});
    return {lhs == rhs, lhs, rhs, lhs - rhs};
}

/*
 * The parameter family Omega = -dX + lambda e^{i k pi / g},
 * Omega' = dY - (1/lambda) e^{-i k pi / g} along which the rescaling factor
 * zeta = r degX lambda^g (-1)^k / g! is real.  Exact for g in {2, 3}; other
 * dimensions fall back to doubles with the pinned tolerance below.
 */
struct EquivalenceParams {
    bool exact;
    Scalar omega_x;
    Scalar omega_y;
    Scalar zeta_value;
    std::complex<double> omega_x_f;
    std::complex<double> omega_y_f;
    std::complex<double> zeta_f;
};

inline constexpr double equivalence_float_tolerance = 1e-12;

inline EquivalenceParams solve_equivalence_params(const FmtContext& ctx, int k,
                                                  const Rational& lambda,
                                                  bool allow_float = false) {
    if (lambda <= 0) throw error("equivalence parameters need lambda > 0");
    if (k < 1 || k > ctx.g - 1) throw error("equivalence parameters need 1 <= k <= g - 1");
    EquivalenceParams out{};
    if (ctx.g == 2 || ctx.g == 3) {
        const Scalar u = Scalar{lambda} * root_of_unity(ctx.g, k);
        out.exact = true;
        out.omega_x = Scalar{-ctx.dX} + u;
        out.omega_y = Scalar{ctx.dY} - Scalar{1 / lambda} * root_of_unity(ctx.g, -k);
        out.zeta_value = zeta(ctx, u);
        if (!out.zeta_value.is_real()) throw error("rescaling factor fails to be real");
        out.omega_x_f = to_complex(out.omega_x);
        out.omega_y_f = to_complex(out.omega_y);
        out.zeta_f = to_complex(out.zeta_value);
        return out;
    }
    if (!allow_float) throw error("inexact root: pass the float mode for g outside {2, 3}");
    const double lam = to_double(lambda);
    const double phase = k * 3.14159265358979323846 / ctx.g;
    const std::complex<double> u = std::polar(lam, phase);
    out.exact = false;
    out.omega_x_f = std::complex<double>{-to_double(ctx.dX), 0.0} + u;
    out.omega_y_f = std::complex<double>{to_double(ctx.dY), 0.0} -
                    std::polar(1.0 / lam, -phase);
    std::complex<double> z = to_double(ctx.r) * to_double(ctx.degX) *
                             std::pow(u, ctx.g) / to_double(Rational{factorial(ctx.g)});
    if (std::abs(z.imag()) > equivalence_float_tolerance * std::max(1.0, std::abs(z)))
        throw error("rescaling factor fails to be real");
    out.zeta_f = z;
    return out;
}

struct Polarization {
    Rational rank;
    Rational slope;
    ChernVector image;
};

/*
 * Image of the line object whose character at base -dX is e^{a*l}.  Its
 * transform is again exponential; the returned slope -1/a being negative is
 * the numerical ampleness of the inverse determinant.
 */
inline Polarization induced_polarization(const FmtContext& ctx, const Rational& a) {
    if (a <= 0) throw error("polarization needs a > 0");
    std::vector<Scalar> v(static_cast<std::size_t>(ctx.g) + 1);
    for (int i = 0; i <= ctx.g; ++i) v[i] = Scalar{ctx.degX * rat_pow(a, i)};
    const ChernVector line{geometry_x(ctx), Scalar{-ctx.dX}, std::move(v)};
    ChernVector out = fmt_transform(ctx, line);
    const Slope s = mu(out);
    if (s.infinite || !s.value.is_rational()) throw error("polarization image has no finite slope");
    const Scalar rank = out.v[0] / Scalar{ctx.degY};
    return {rank.re.a, s.value.re.a, std::move(out)};
}

struct BgChainReport {
    bool imzero;
    Scalar s;
    Scalar defect;
    bool proportional;
};

/*
 * The numerical content of the threefold inequality proof: for x at base -dX
 * with x_2 = lambda x_1 (vanishing imaginary part of the charge at the
 * matched tilt point), the shifted transform w = [1] of the image has
 * s = w_1 + (1/lambda) w_0 equal to g!/(r degX lambda) times
 * (lambda^2 x_1 - x_3), so s >= 0 forces the defect x_3 - lambda^2 x_1 <= 0.
 */
inline BgChainReport bg_via_fmt_chain(const FmtContext& ctx, const ChernVector& x,
                                      const Rational& lambda) {
    if (ctx.g != 3) throw error("the inequality chain is a threefold computation");
    if (lambda <= 0) throw error("the inequality chain needs lambda > 0");
    detail::require_vector_at(x, geometry_x(ctx), -ctx.dX, "chain input");
    BgChainReport rep{};
    rep.imzero = x.v[2] == Scalar{lambda} * x.v[1];
    const ChernVector w = shift(fmt_transform(ctx, x), 1);
    rep.s = w.v[1] + Scalar{1 / lambda} * w.v[0];
    rep.defect = x.v[3] - Scalar{lambda * lambda} * x.v[1];
    if (rep.imzero) {
        const Scalar c{Rational{factorial(3)} / (ctx.r * ctx.degX * lambda)};
        rep.proportional = rep.s == c * (-rep.defect);
    } else {
        rep.proportional = false;
    }
    return rep;
}

}  // namespace tiltfmt
