#include "wildmckay/kernels.hpp"

#include <cstdlib>

namespace wmk::kernels {

namespace {

// Doubles represent acc * t + c exactly while it stays below 2^53.
constexpr std::uint64_t kFloatKernelLimit = std::uint64_t{1} << 26;

} // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (isa_name(isa) == name) return isa;
    }
    return std::nullopt;
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(WMK_HAVE_AVX2_KERNEL)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::neon:
#if defined(WMK_HAVE_NEON_KERNEL)
        return true;
#else
        return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (isa_available(isa)) out.push_back(isa);
    }
    return out;
}

Isa default_isa() {
    if (const char* forced = std::getenv("WMK_KERNEL")) {
        if (auto isa = parse_isa(forced); isa && isa_available(*isa)) {
            return *isa;
        }
    }
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::uint64_t max_native_modulus(Isa isa) {
    return isa == Isa::scalar ? ~std::uint64_t{0} : kFloatKernelLimit;
}

std::uint64_t count_common_roots(const UnivariateBatch& batch, Isa isa) {
    if (batch.size() == 0) {
        return batch.modulus;
    }
    if (!isa_available(isa) || batch.modulus > max_native_modulus(isa)) {
        isa = Isa::scalar;
    }
    switch (isa) {
#if defined(WMK_HAVE_AVX2_KERNEL)
    case Isa::avx2: return detail::count_avx2(batch);
#endif
#if defined(WMK_HAVE_NEON_KERNEL)
    case Isa::neon: return detail::count_neon(batch);
#endif
    default: return detail::count_scalar(batch);
    }
}

} // namespace wmk::kernels
