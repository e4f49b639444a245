#include <cstdlib>
#include <cstring>

#include "bakerlab/kernels.hpp"

namespace bakerlab::kernels {

std::string_view backend_name(Backend b) noexcept { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) noexcept {
    switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if BAKERLAB_HAVE_AVX2_KERNEL
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Backend default_backend() noexcept {
    if (const char* env = std::getenv("BAKERLAB_KERNEL"); env && std::strcmp(env, "scalar") == 0) {
        return Backend::Scalar;
    }
    return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

void evolve(Backend backend, const Params& params, EvolveBatch batch, std::size_t steps,
            std::size_t count_from) noexcept {
#if BAKERLAB_HAVE_AVX2_KERNEL
    if (backend == Backend::Avx2) {
        evolve_avx2(params, batch, steps, count_from);
        return;
    }
#endif
    evolve_scalar(params, batch, steps, count_from);
}

} // namespace bakerlab::kernels
