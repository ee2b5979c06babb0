#include <doctest.h>

#include <random>

#include "wildmckay/kernels.hpp"

using namespace wmk::kernels;

namespace {

struct OwnedBatch {
    std::vector<std::uint64_t> coeffs;
    std::vector<std::uint32_t> offsets{0};
    std::uint64_t modulus = 1;

    UnivariateBatch view() const { return {coeffs, offsets, modulus}; }
};

// Random polys; a few are built as products of linear factors so roots exist.
OwnedBatch random_batch(std::mt19937_64& rng, std::uint64_t modulus) {
    OwnedBatch b;
    b.modulus = modulus;
    const int npolys = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < npolys; ++i) {
        std::vector<std::uint64_t> poly;
        if (rng() % 2 == 0) {
            poly = {1};
            const int roots = 1 + static_cast<int>(rng() % 3);
            for (int r = 0; r < roots; ++r) {
                // multiply by (t - a)
                const std::uint64_t a = rng() % modulus;
                std::vector<std::uint64_t> next(poly.size() + 1, 0);
                for (std::size_t k = 0; k < poly.size(); ++k) {
                    next[k + 1] = (next[k + 1] + poly[k]) % modulus;
                    next[k] = (next[k] + static_cast<std::uint64_t>(
                                             static_cast<unsigned __int128>(poly[k]) * (modulus - a) % modulus)) %
                              modulus;
                }
                poly = std::move(next);
            }
        } else {
            const int deg = static_cast<int>(rng() % 4);
            for (int k = 0; k <= deg; ++k) poly.push_back(rng() % modulus);
        }
        b.coeffs.insert(b.coeffs.end(), poly.begin(), poly.end());
        b.offsets.push_back(static_cast<std::uint32_t>(b.coeffs.size()));
    }
    return b;
}

} // namespace

TEST_CASE("scalar kernel on hand-checked inputs") {
    // t^2 + 1 mod 5 vanishes at 2 and 3
    OwnedBatch b;
    b.coeffs = {1, 0, 1};
    b.offsets = {0, 3};
    b.modulus = 5;
    CHECK(count_common_roots(b.view(), Isa::scalar) == 2);
    // constant 0 vanishes everywhere, constant 1 nowhere
    b.coeffs = {0};
    b.offsets = {0, 1};
    CHECK(count_common_roots(b.view(), Isa::scalar) == 5);
    b.coeffs = {1};
    CHECK(count_common_roots(b.view(), Isa::scalar) == 0);
    // no polynomials: every residue counts
    b.coeffs.clear();
    b.offsets = {0};
    b.modulus = 25;
    CHECK(count_common_roots(b.view(), Isa::scalar) == 25);
}

TEST_CASE("every available kernel agrees with the scalar reference") {
    std::mt19937_64 rng(424242);
    const std::uint64_t moduli[] = {1, 2, 3, 5, 7, 25, 27, 49, 121, 125, 169, 625, 2197, 3125, 28561, 78125, 1953125};
    for (Isa isa : available_isas()) {
        CAPTURE(isa_name(isa));
        for (std::uint64_t m : moduli) {
            for (int trial = 0; trial < 12; ++trial) {
                OwnedBatch b = random_batch(rng, m);
                CAPTURE(m);
                CHECK(count_common_roots(b.view(), isa) == detail::count_scalar(b.view()));
            }
        }
    }
}

TEST_CASE("vector kernels are exact near the float modulus limit") {
    std::mt19937_64 rng(5);
    const std::uint64_t limit = max_native_modulus(Isa::avx2);
    // 5^11 = 48828125 < 2^26 is the largest power of 5 the float kernel takes natively.
    for (std::uint64_t m : {std::uint64_t{48828125}, limit - 1, limit}) {
        OwnedBatch b;
        b.modulus = m;
        // (t - a)(t - b) with a, b near m
        const std::uint64_t a = m - 1, c = m - 2;
        const auto ac = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * c % m);
        b.coeffs = {ac, (2 * m - a - c) % m, 1};
        b.offsets = {0, 3};
        const std::uint64_t expected = detail::count_scalar(b.view());
        CHECK(expected >= 2);
        for (Isa isa : available_isas()) {
            CAPTURE(isa_name(isa));
            CHECK(count_common_roots(b.view(), isa) == expected);
        }
        (void)rng;
    }
}

TEST_CASE("dispatch reports sensible choices") {
    CHECK(isa_available(Isa::scalar));
    CHECK(isa_available(default_isa()));
    CHECK(parse_isa("avx2") == Isa::avx2);
    CHECK_FALSE(parse_isa("sse9").has_value());
    MESSAGE("default kernel: " << isa_name(default_isa()));
}
