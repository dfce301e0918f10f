#if defined(GSMSIM_HAVE_AVX2)

#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "gsmsim/kernels.hpp"

namespace gsmsim::kernels {

namespace {

void dist2_to_point_avx2(const double* xs, const double* ys, std::size_t n,
                         double px, double py, double* out) {
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out + i, d2);
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

void tx_energy_d2_avx2(const double* d2, std::size_t n, double e_elec_bits,
                       double fs_bits, double mp_bits, double d0_sq, double* out) {
    const __m256d ve = _mm256_set1_pd(e_elec_bits);
    const __m256d vfs = _mm256_set1_pd(fs_bits);
    const __m256d vmp = _mm256_set1_pd(mp_bits);
    const __m256d vd0 = _mm256_set1_pd(d0_sq);
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d v = _mm256_loadu_pd(d2 + i);
        const __m256d fs = _mm256_mul_pd(vfs, v);
        const __m256d mp = _mm256_mul_pd(vmp, _mm256_mul_pd(v, v));
        const __m256d le = _mm256_cmp_pd(v, vd0, _CMP_LE_OQ);
        const __m256d amp = _mm256_blendv_pd(mp, fs, le);
        _mm256_storeu_pd(out + i, _mm256_add_pd(ve, amp));
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double fs = fs_bits * d2[i];
        const double mp = mp_bits * (d2[i] * d2[i]);
        out[i] = e_elec_bits + (d2[i] <= d0_sq ? fs : mp);
    }
}

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi); // [a0+a2, a1+a3]
    double total = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
    for (std::size_t i = n4; i < n; ++i) total += v[i];
    return total;
}

std::size_t argmin_avx2(const double* v, std::size_t n) {
    std::size_t best = 0;
    std::size_t start = 0;
    if (n >= 4) {
        __m256d bestval = _mm256_loadu_pd(v);
        __m256i bestidx = _mm256_set_epi64x(3, 2, 1, 0);
        __m256i curidx = bestidx;
        const __m256i step = _mm256_set1_epi64x(4);
        const std::size_t n4 = n / 4 * 4;
        for (std::size_t i = 4; i < n4; i += 4) {
            curidx = _mm256_add_epi64(curidx, step);
            const __m256d cur = _mm256_loadu_pd(v + i);
            const __m256d lt = _mm256_cmp_pd(cur, bestval, _CMP_LT_OQ);
            bestval = _mm256_blendv_pd(bestval, cur, lt);
            bestidx = _mm256_blendv_epi8(bestidx, curidx, _mm256_castpd_si256(lt));
        }
        alignas(32) double vals[4];
        alignas(32) std::int64_t idxs[4];
        _mm256_store_pd(vals, bestval);
        _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), bestidx);
        double bv = vals[0];
        std::int64_t bi = idxs[0];
        for (int k = 1; k < 4; ++k) {
            if (vals[k] < bv || (vals[k] == bv && idxs[k] < bi)) {
                bv = vals[k];
                bi = idxs[k];
            }
        }
        best = static_cast<std::size_t>(bi);
        start = n4;
    }
    for (std::size_t i = start; i < n; ++i) {
        if (v[i] < v[best]) best = i;
    }
    return best;
}

} // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

const Backend& avx2_backend() {
    static const Backend backend{"avx2", dist2_to_point_avx2, tx_energy_d2_avx2,
                                 sum_avx2, argmin_avx2};
    return backend;
}

} // namespace gsmsim::kernels

#endif // x86_64
