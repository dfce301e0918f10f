#pragma once

#include <cstddef>
#include <string>

namespace gsmsim::kernels {

// Data-parallel inner loops of the simulator. Each operation has a scalar
// reference implementation and may have SIMD variants; the active backend is
// chosen once at startup from CPU capabilities (override with GSM_SIM_KERNELS).
//
// Contracts are defined so that every backend produces bit-identical output:
//  - dist2_to_point, tx_energy_d2: elementwise, fixed expression order
//    (dx*dx + dy*dy; e_elec_bits + eps_bits*d2[*d2]), no FMA contraction.
//  - sum: four stride-4 accumulators over the length-floor(n/4)*4 prefix,
//    combined as (acc0+acc2) + (acc1+acc3), then the tail added in order.
//  - argmin: index of the first minimum element (ties -> lowest index).
struct Backend {
    const char* name;

    // out[i] = (xs[i]-px)^2 + (ys[i]-py)^2
    void (*dist2_to_point)(const double* xs, const double* ys, std::size_t n,
                           double px, double py, double* out);

    // out[i] = e_elec_bits + (d2[i] <= d0_sq ? fs_bits*d2[i] : mp_bits*d2[i]*d2[i])
    // where the three coefficients are already multiplied by the bit count.
    void (*tx_energy_d2)(const double* d2, std::size_t n, double e_elec_bits,
                         double fs_bits, double mp_bits, double d0_sq, double* out);

    double (*sum)(const double* v, std::size_t n);

    // n must be > 0; NaN inputs are not supported.
    std::size_t (*argmin)(const double* v, std::size_t n);
};

const Backend& scalar_backend();

#if defined(GSMSIM_HAVE_AVX2)
bool avx2_supported();
const Backend& avx2_backend();
#endif

// Backend selected at process start: GSM_SIM_KERNELS=scalar|avx2 if set,
// otherwise the widest supported variant.
const Backend& active_backend();

// Force a backend by name (tests); throws ArgumentError for unknown or
// unsupported names.
void set_active_backend(const std::string& name);

} // namespace gsmsim::kernels
