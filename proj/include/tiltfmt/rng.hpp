#pragma once

#include "tiltfmt/numeric.hpp"

#include <cstdint>

namespace tiltfmt {

/* splitmix64 stream.  Kept local so that fixtures and randomized sweeps
 * produce identical bytes for a given seed on every platform; the standard
 * distributions make no such promise. */
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* Uniform in [lo, hi] by modulus; the tiny bias is irrelevant here. */
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    Rational rational(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        return Rational{Integer(in_range(-max_num, max_num)), Integer(in_range(1, max_den))};
    }

    Rational nonzero_rational(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        for (;;) {
            Rational q = rational(max_num, max_den);
            if (q != 0) return q;
        }
    }

    Rational positive_rational(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        return Rational{Integer(in_range(1, max_num)), Integer(in_range(1, max_den))};
    }

    RealQuad real_quad(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        return {rational(max_num, max_den), rational(max_num, max_den)};
    }

    Scalar scalar(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        return {real_quad(max_num, max_den), real_quad(max_num, max_den)};
    }

    Scalar upper_half_scalar(std::int64_t max_num = 8, std::int64_t max_den = 4) {
        for (;;) {
            Scalar u = scalar(max_num, max_den);
            if (scalar_sign(u.im) > 0) return u;
        }
    }
};

}  // namespace tiltfmt
