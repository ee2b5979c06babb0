// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.
#include "wildmckay/kernels.hpp"

#include <immintrin.h>

namespace wmk::kernels::detail {

namespace {

// Exact mod for 0 <= x < 2^53 with x = acc * t + c, acc, t, c < M < 2^26.
inline __m256d mod_exact(__m256d x, __m256d m, __m256d inv_m) {
    __m256d quot = _mm256_floor_pd(_mm256_mul_pd(x, inv_m));
    __m256d r = _mm256_fnmadd_pd(quot, m, x);
    // Rounding of x * inv_m can leave r one modulus off in either direction.
    __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
    r = _mm256_add_pd(r, _mm256_and_pd(neg, m));
    __m256d big = _mm256_cmp_pd(r, m, _CMP_GE_OQ);
    return _mm256_sub_pd(r, _mm256_and_pd(big, m));
}

} // namespace

std::uint64_t count_avx2(const UnivariateBatch& batch) {
    const std::uint64_t modulus = batch.modulus;
    const std::size_t npolys = batch.size();
    const __m256d m = _mm256_set1_pd(static_cast<double>(modulus));
    const __m256d inv_m = _mm256_set1_pd(1.0 / static_cast<double>(modulus));
    const __m256d zero = _mm256_setzero_pd();
    const __m256d step = _mm256_set1_pd(4.0);

    std::uint64_t count = 0;
    __m256d t = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    std::uint64_t base = 0;
    for (; base + 4 <= modulus; base += 4, t = _mm256_add_pd(t, step)) {
        int alive = 0xF;
        for (std::size_t i = 0; i < npolys && alive != 0; ++i) {
            const std::uint32_t lo = batch.offsets[i];
            __m256d acc = zero;
            for (std::uint32_t j = batch.offsets[i + 1]; j-- > lo;) {
                const __m256d c = _mm256_set1_pd(static_cast<double>(batch.coeffs[j]));
                acc = mod_exact(_mm256_fmadd_pd(acc, t, c), m, inv_m);
            }
            alive &= _mm256_movemask_pd(_mm256_cmp_pd(acc, zero, _CMP_EQ_OQ));
        }
        count += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(alive)));
    }

    if (base < modulus) {
        // Tail shorter than one vector: reuse the scalar reference on a shifted range.
        for (std::uint64_t s = base; s < modulus; ++s) {
            bool all_zero = true;
            for (std::size_t i = 0; i < npolys && all_zero; ++i) {
                std::uint64_t acc = 0;
                for (std::uint32_t j = batch.offsets[i + 1]; j-- > batch.offsets[i];) {
                    acc = (acc * s + batch.coeffs[j]) % modulus;
                }
                all_zero = acc == 0;
            }
            count += all_zero ? 1 : 0;
        }
    }
    return count;
}

} // namespace wmk::kernels::detail
