#include <cstdlib>
#include <string>

#include "gsmsim/errors.hpp"
#include "gsmsim/kernels.hpp"

namespace gsmsim::kernels {

namespace {

const Backend* lookup(const std::string& name) {
    if (name == "scalar") return &scalar_backend();
#if defined(GSMSIM_HAVE_AVX2)
    if (name == "avx2") {
        if (!avx2_supported()) return nullptr;
        return &avx2_backend();
    }
#endif
    return nullptr;
}

const Backend* detect() {
    if (const char* env = std::getenv("GSM_SIM_KERNELS")) {
        if (const Backend* b = lookup(env)) return b;
        // Unknown or unsupported request: fall through to auto-detection.
    }
#if defined(GSMSIM_HAVE_AVX2)
    if (avx2_supported()) return &avx2_backend();
#endif
    return &scalar_backend();
}

const Backend*& active_slot() {
    static const Backend* active = detect();
    return active;
}

} // namespace

const Backend& active_backend() { return *active_slot(); }

void set_active_backend(const std::string& name) {
    const Backend* b = lookup(name);
    if (b == nullptr) throw ArgumentError("unknown or unsupported kernel backend: " + name);
    active_slot() = b;
}

} // namespace gsmsim::kernels
