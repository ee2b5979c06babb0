#pragma once

// Inner loop of residue-ring point counting: given univariate polynomials
// with coefficients already reduced mod M, count t in [0, M) at which all of
// them vanish mod M. The scalar kernel is the reference; vector kernels must
// agree with it exactly and are picked at runtime.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wmk::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// Concatenated ascending coefficient lists; poly i occupies
// coeffs[offsets[i], offsets[i+1]).
struct UnivariateBatch {
    std::span<const std::uint64_t> coeffs;
    std::span<const std::uint32_t> offsets;
    std::uint64_t modulus = 1;

    std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

// Whether the kernel was compiled in and the running CPU supports it.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

// Best available kernel, unless WMK_KERNEL names another available one.
Isa default_isa();

// Counts over the full range [0, modulus).
std::uint64_t count_common_roots(const UnivariateBatch& batch, Isa isa);

// Largest modulus the given kernel handles natively; larger moduli fall
// back to the scalar kernel inside count_common_roots.
std::uint64_t max_native_modulus(Isa isa);

namespace detail {
std::uint64_t count_scalar(const UnivariateBatch& batch);
#if defined(WMK_HAVE_AVX2_KERNEL)
std::uint64_t count_avx2(const UnivariateBatch& batch);
#endif
#if defined(WMK_HAVE_NEON_KERNEL)
std::uint64_t count_neon(const UnivariateBatch& batch);
#endif
} // namespace detail

} // namespace wmk::kernels
