#include "gsmsim/kernels.hpp"

namespace gsmsim::kernels {

namespace {

void dist2_to_point_scalar(const double* xs, const double* ys, std::size_t n,
                           double px, double py, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

void tx_energy_d2_scalar(const double* d2, std::size_t n, double e_elec_bits,
                         double fs_bits, double mp_bits, double d0_sq, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double fs = fs_bits * d2[i];
        const double mp = mp_bits * (d2[i] * d2[i]);
        out[i] = e_elec_bits + (d2[i] <= d0_sq ? fs : mp);
    }
}

// Mirrors the AVX2 lane layout: four stride-4 accumulators over the aligned
// prefix, fixed combine order, tail in element order.
double sum_scalar(const double* v, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc0 += v[i];
        acc1 += v[i + 1];
        acc2 += v[i + 2];
        acc3 += v[i + 3];
    }
    double total = (acc0 + acc2) + (acc1 + acc3);
    for (std::size_t i = n4; i < n; ++i) total += v[i];
    return total;
}

std::size_t argmin_scalar(const double* v, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (v[i] < v[best]) best = i;
    }
    return best;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend backend{"scalar", dist2_to_point_scalar, tx_energy_d2_scalar,
                                 sum_scalar, argmin_scalar};
    return backend;
}

} // namespace gsmsim::kernels
