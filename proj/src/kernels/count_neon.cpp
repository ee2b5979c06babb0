// AArch64 variant of the AVX2 kernel: two float64 lanes per vector.
#include "wildmckay/kernels.hpp"

#include <arm_neon.h>

namespace wmk::kernels::detail {

namespace {

inline float64x2_t mod_exact(float64x2_t x, float64x2_t m, float64x2_t inv_m) {
    float64x2_t quot = vrndmq_f64(vmulq_f64(x, inv_m));
    float64x2_t r = vfmsq_f64(x, quot, m);
    uint64x2_t neg = vcltzq_f64(r);
    r = vaddq_f64(r, vreinterpretq_f64_u64(vandq_u64(neg, vreinterpretq_u64_f64(m))));
    uint64x2_t big = vcgeq_f64(r, m);
    return vsubq_f64(r, vreinterpretq_f64_u64(vandq_u64(big, vreinterpretq_u64_f64(m))));
}

} // namespace

std::uint64_t count_neon(const UnivariateBatch& batch) {
    const std::uint64_t modulus = batch.modulus;
    const std::size_t npolys = batch.size();
    const float64x2_t m = vdupq_n_f64(static_cast<double>(modulus));
    const float64x2_t inv_m = vdupq_n_f64(1.0 / static_cast<double>(modulus));
    const float64x2_t step = vdupq_n_f64(2.0);
    const double init[2] = {0.0, 1.0};

    std::uint64_t count = 0;
    float64x2_t t = vld1q_f64(init);
    std::uint64_t base = 0;
    for (; base + 2 <= modulus; base += 2, t = vaddq_f64(t, step)) {
        uint64x2_t alive = vdupq_n_u64(~std::uint64_t{0});
        for (std::size_t i = 0; i < npolys; ++i) {
            if ((vgetq_lane_u64(alive, 0) | vgetq_lane_u64(alive, 1)) == 0) break;
            const std::uint32_t lo = batch.offsets[i];
            float64x2_t acc = vdupq_n_f64(0.0);
            for (std::uint32_t j = batch.offsets[i + 1]; j-- > lo;) {
                const float64x2_t c = vdupq_n_f64(static_cast<double>(batch.coeffs[j]));
                acc = mod_exact(vfmaq_f64(c, acc, t), m, inv_m);
            }
            alive = vandq_u64(alive, vceqzq_f64(acc));
        }
        count += (vgetq_lane_u64(alive, 0) & 1) + (vgetq_lane_u64(alive, 1) & 1);
    }

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
    return count;
}

} // namespace wmk::kernels::detail
