#pragma once

// Batch evolution of many points under L.
//
// Each backend advances structure-of-arrays coordinates `steps` times and
// accumulates, per point, the net count #D - #A over the steps with index
// >= count_from. Every backend performs the same IEEE operations in the same
// order as apply_l, so results are bit-identical across backends.

#include <cstdint>
#include <span>
#include <string_view>

#include "bakerlab/map_core.hpp"

namespace bakerlab::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;

/// True when the backend is compiled in and the CPU supports it.
bool backend_available(Backend b) noexcept;

/// Fastest available backend, unless BAKERLAB_KERNEL=scalar forces the
/// reference path.
Backend default_backend() noexcept;

struct EvolveBatch {
    std::span<double> x;
    std::span<double> y;
    std::span<std::int32_t> net_count; // accumulated into, not overwritten
};

void evolve_scalar(const Params& params, EvolveBatch batch, std::size_t steps, std::size_t count_from) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
#define BAKERLAB_HAVE_AVX2_KERNEL 1
void evolve_avx2(const Params& params, EvolveBatch batch, std::size_t steps, std::size_t count_from) noexcept;
#else
#define BAKERLAB_HAVE_AVX2_KERNEL 0
#endif

/// Precondition: backend_available(backend).
void evolve(Backend backend, const Params& params, EvolveBatch batch, std::size_t steps,
            std::size_t count_from) noexcept;

} // namespace bakerlab::kernels
