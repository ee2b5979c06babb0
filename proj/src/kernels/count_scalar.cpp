#include "wildmckay/kernels.hpp"

namespace wmk::kernels::detail {

namespace {

template <typename Wide>
std::uint64_t count_impl(const UnivariateBatch& batch) {
    const std::uint64_t m = batch.modulus;
    const std::size_t npolys = batch.size();
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < m; ++t) {
        bool all_zero = true;
        for (std::size_t i = 0; i < npolys && all_zero; ++i) {
            const std::uint32_t lo = batch.offsets[i];
            std::uint64_t acc = 0;
            for (std::uint32_t j = batch.offsets[i + 1]; j-- > lo;) {
                acc = static_cast<std::uint64_t>((static_cast<Wide>(acc) * t + batch.coeffs[j]) % m);
            }
            all_zero = acc == 0;
        }
        count += all_zero ? 1 : 0;
    }
    return count;
}

} // namespace

std::uint64_t count_scalar(const UnivariateBatch& batch) {
    if (batch.modulus <= (std::uint64_t{1} << 31)) {
        return count_impl<std::uint64_t>(batch);
    }
    return count_impl<unsigned __int128>(batch);
}

} // namespace wmk::kernels::detail
