#include "tiltfmt/oracle.hpp"
#include "tiltfmt/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace tiltfmt;

namespace {

ChernVector random_vector(Rng& rng, const Geometry& geom, const Scalar& base) {
    std::vector<Scalar> v(static_cast<std::size_t>(geom.g) + 1);
    for (Scalar& c : v) c = Scalar{rng.rational()};
    return {geom, base, std::move(v)};
}

FmtContext random_context(Rng& rng, int g) {
    return make_context(g, rng.positive_rational(), rng.rational(), rng.rational(),
                        rng.positive_rational());
}

}  // namespace

TEST_CASE("truncated polynomial ring") {
    const Geometry a3{3, 6};
    REQUIRE_THROWS_AS(TruncPoly(a3, {Scalar{1}}), error);

    const TruncPoly one{a3, {Scalar{1}, Scalar{0}, Scalar{0}, Scalar{0}}};
    Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const Scalar beta = rng.scalar();
        REQUIRE(poly_mul(poly_exp(beta, a3), poly_exp(-beta, a3)) == one);
    }

    const TruncPoly t{a3, {Scalar{0}, Scalar{1}, Scalar{0}, Scalar{0}}};
    const TruncPoly t2 = poly_mul(t, t);
    REQUIRE(t2.c == std::vector<Scalar>{Scalar{0}, Scalar{0}, Scalar{1}, Scalar{0}});
    REQUIRE(poly_mul(t2, t2).c == std::vector<Scalar>(4, Scalar{0}));
    REQUIRE(poly_integral(t2) == Scalar{0});
    REQUIRE(poly_integral(poly_mul(t2, t)) == Scalar{6});
}

TEST_CASE("series contraction round trip") {
    Rng rng(32);
    for (int g = 1; g <= 6; ++g) {
        const Geometry geom{g, 5};
        for (int k = 0; k < 80; ++k) {
            const ChernVector x = random_vector(rng, geom, rng.scalar());
            REQUIRE(to_vector(from_vector(x), x.base) == x);
            const Scalar beta = rng.scalar();
            // the series route recomputes the binomial twist
            REQUIRE(oracle_twist(x, beta) == twist(x, beta));
        }
    }
}

TEST_CASE("series recomputation of pairing and charge") {
    Rng rng(33);
    for (int g = 1; g <= 5; ++g) {
        const Geometry geom{g, 7};
        for (int k = 0; k < 80; ++k) {
            const ChernVector x = random_vector(rng, geom, rng.scalar());
            const ChernVector y = random_vector(rng, geom, x.base);
            REQUIRE(oracle_mukai(x, y) == mukai_pairing(x, y));
        }
        for (int k = 0; k < 80; ++k) {
            const ChernVector x = random_vector(rng, geom, Scalar{rng.rational()});
            const Scalar w = rng.upper_half_scalar();
            REQUIRE(oracle_central_charge(x, w) == central_charge(x, ComplexAmple{w}));
        }
    }
}

TEST_CASE("series recomputation of the transform") {
    Rng rng(34);
    for (int g = 1; g <= 6; ++g) {
        for (int k = 0; k < 80; ++k) {
            const FmtContext ctx = random_context(rng, g);
            const ChernVector x = random_vector(rng, geometry_x(ctx), Scalar{-ctx.dX});
            const ChernVector via_series = to_vector(oracle_transform(ctx, from_vector(x)),
                                                     Scalar{ctx.dY});
            REQUIRE(via_series == fmt_transform(ctx, x));
        }
    }
}

TEST_CASE("series recomputation of the dual transform") {
    Rng rng(35);
    for (int g = 1; g <= 6; ++g) {
        for (int k = 0; k < 60; ++k) {
            const FmtContext ctx = random_context(rng, g);
            const ChernVector x = random_vector(rng, geometry_x(ctx), Scalar{ctx.dX});
            REQUIRE(oracle_dual_transform(ctx, x) == fmt_dual_transform(ctx, x));
        }
    }
}
