#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/numeric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tiltfmt {

/* Tilt parameters (B, alpha) = (b*l, alpha) with alpha > 0. */
struct TiltPoint {
    Rational b;
    Rational alpha;

    TiltPoint(Rational b_, Rational alpha_) : b(std::move(b_)), alpha(std::move(alpha_)) {
        if (alpha <= 0) throw error("tilt point needs alpha > 0");
    }
};

/* The coefficient w of a complexified ample class Omega = w * l, Im(w) > 0.
 * The classical tilt parameters embed as w = b + i*sqrt3*alpha. */
struct ComplexAmple {
    Scalar omega;

    explicit ComplexAmple(Scalar w) : omega(std::move(w)) {
        if (scalar_sign(omega.im) <= 0) throw error("not a complexified ample class: Im <= 0");
    }
};

inline ComplexAmple tilt_omega(const TiltPoint& p) {
    return ComplexAmple{Scalar{RealQuad{p.b}, RealQuad{Rational(0), p.alpha}}};
}

/*
 * Z = -int e^{-Omega} ch.  On contracted entries this is -(1/g!) times the
 * top component after twisting all the way to the coefficient of Omega, so
 * the vector may be handed over at any real base.
 */
inline Scalar central_charge(const ChernVector& x, const ComplexAmple& omega) {
    if (!x.base.is_real()) throw error("central charge needs a vector at a real base");
    const ChernVector w = twist(x, omega.omega - x.base);
    return -w.v.back() / Scalar{Rational(factorial(x.geom.g))};
}

/*
 * The k-th truncated charge -i^{g-k} int e^{-Omega} ch_{<= k}.  The tail is
 * cut at the vector's declared base and the remaining complexified twist is
 * applied afterwards, so callers rebase to Re(Omega) first when they want
 * the truncation taken there.  k = g is the full central charge.
 */
inline Scalar weak_charge(const ChernVector& x, int k, const ComplexAmple& omega) {
    const int g = x.geom.g;
    if (k < 1 || k > g) throw error("truncation index out of range");
    if (!x.base.is_real()) throw error("truncated charge needs a vector at a real base");
    ChernVector cut = x;
    for (int i = k + 1; i <= g; ++i) cut.v[i] = Scalar{0};
    const ChernVector w = twist(cut, omega.omega - x.base);
    const Scalar phase = scalar_pow(imaginary_unit(), ((g - k) % 4 + 4) % 4);
    return -phase * w.v.back() / Scalar{Rational(factorial(g))};
}

/* Tilt slope through alpha^2, which is all nu depends on; this is what makes
 * exact sampling on walls with irrational radius possible. */
inline Slope nu_alpha_sq(const ChernVector& x, const Rational& b, const Rational& alpha_sq) {
    if (alpha_sq <= 0) throw error("tilt slope needs alpha^2 > 0");
    const ChernVector w = twist(x, Scalar{b} - x.base);
    if (w.v[1].is_zero()) return Slope::at_infinity();
    return Slope::finite((w.v[2] - Scalar{alpha_sq} * w.v[0]) / (Scalar{2} * w.v[1]));
}

/* nu = (w_2 - alpha^2 w_0) / (2 w_1) at the rebased entries, infinite when
 * w_1 vanishes. */
inline Slope nu(const ChernVector& x, const TiltPoint& p) {
    return nu_alpha_sq(x, p.b, p.alpha * p.alpha);
}

/*
 * Slope -Re/Im of the k = 2 truncated charge at Omega = (b + i*sqrt3*alpha)l.
 * For threefolds it reproduces the tilt slope up to the factor 2/(sqrt3*alpha),
 * which is the identity the test suite pins down.
 */
inline Scalar nu_slope_match(const ChernVector& x, const TiltPoint& p) {
    const ChernVector at_b = twist(x, Scalar{p.b} - x.base);
    const Scalar z = weak_charge(at_b, 2, tilt_omega(p));
    if (z.im.is_zero()) throw error("infinite slope");
    return -z.re / Scalar{z.im};
}

/* Defect w_3 - alpha^2 w_1 of the tilt inequality at (b, alpha); the
 * inequality asks for <= 0 on zero-tilt-slope classes. */
inline Scalar bg_defect(const ChernVector& x, const TiltPoint& p) {
    if (x.geom.g != 3) throw error("tilt defect is a threefold quantity");
    if (!x.is_real()) throw error("tilt defect needs a real vector");
    const ChernVector w = twist(x, Scalar{p.b} - x.base);
    return w.v[3] - Scalar{p.alpha * p.alpha} * w.v[1];
}

struct BgVerdict {
    bool holds;
    Scalar witness;
};

/* The classical discriminant inequality v_1^2 - v_0 v_2 >= 0.  A failing
 * vector is numerically inconsistent with slope-semistable torsion-free
 * sheaves; no claim about actual objects is made either way. */
inline BgVerdict classical_bg(const ChernVector& x) {
    const Scalar d = disc(x);
    if (!d.is_real()) throw error("discriminant verdict needs a real vector");
    return {scalar_sign(d.re) >= 0, d};
}

struct Wall {
    enum class Kind { circle, vertical_line, empty, everywhere };

    Kind kind;
    Rational center_b;
    Rational radius_sq;
    Rational line_b;
};

inline std::string render(Wall::Kind k) {
    switch (k) {
        case Wall::Kind::circle: return "circle";
        case Wall::Kind::vertical_line: return "vertical_line";
        case Wall::Kind::empty: return "empty";
        default: return "everywhere";
    }
}

/* Coefficients of the wall polynomial K0 (b^2 + alpha^2) - K1 b + K2 built
 * from base-0 entries of the two classes. */
struct WallEquation {
    Rational k0;
    Rational k1;
    Rational k2;
};

namespace detail {

inline Rational rational_entry(const Scalar& c) {
    if (!c.is_rational()) throw error("wall geometry needs rational vectors");
    return c.re.a;
}

}  // namespace detail

inline WallEquation wall_equation(const ChernVector& x, const ChernVector& y) {
    if (!(x.geom == y.geom)) throw error("mismatched geometry");
    const ChernVector v = twist(x, -x.base);
    const ChernVector w = twist(y, -y.base);
    const Rational v0 = detail::rational_entry(v.v[0]), v1 = detail::rational_entry(v.v[1]),
                   v2 = detail::rational_entry(v.v[2]);
    const Rational w0 = detail::rational_entry(w.v[0]), w1 = detail::rational_entry(w.v[1]),
                   w2 = detail::rational_entry(w.v[2]);
    return {v0 * w1 - v1 * w0, v0 * w2 - v2 * w0, v1 * w2 - v2 * w1};
}

inline int wall_side(const WallEquation& e, const Rational& b, const Rational& alpha) {
    const Rational val = e.k0 * (b * b + alpha * alpha) - e.k1 * b + e.k2;
    return val == 0 ? 0 : (val > 0 ? 1 : -1);
}

/*
 * The locus nu(x) = nu(y) in the (b, alpha) upper half plane: a semicircle
 * centered on the b axis when K0 is nonzero, a vertical line when only K0
 * vanishes, everything when all three coefficients vanish, and empty
 * otherwise.  A nonpositive squared radius leaves no alpha > 0 point, so it
 * degrades to empty.
 */
inline Wall wall_between(const ChernVector& x, const ChernVector& y) {
    const WallEquation e = wall_equation(x, y);
    if (e.k0 != 0) {
        const Rational c = e.k1 / (2 * e.k0);
        const Rational r2 = c * c - e.k2 / e.k0;
        if (r2 <= 0) return {Wall::Kind::empty, 0, 0, 0};
        return {Wall::Kind::circle, c, r2, 0};
    }
    if (e.k1 != 0) return {Wall::Kind::vertical_line, 0, 0, e.k2 / e.k1};
    if (e.k2 == 0) return {Wall::Kind::everywhere, 0, 0, 0};
    return {Wall::Kind::empty, 0, 0, 0};
}

}  // namespace tiltfmt
