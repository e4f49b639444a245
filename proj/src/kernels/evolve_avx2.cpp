// Compiled with -mavx2 only; FMA stays off so every lane rounds exactly like
// the scalar reference.

#include "bakerlab/kernels.hpp"

#include <immintrin.h>

namespace bakerlab::kernels {

void evolve_avx2(const Params& params, EvolveBatch batch, std::size_t steps, std::size_t count_from) noexcept {
    const __m256d ell = _mm256_set1_pd(params.ell());
    const __m256d two_ell = _mm256_set1_pd(params.two_ell());
    const __m256d omt = _mm256_set1_pd(params.one_minus_two_ell());
    const __m256d b_offset = _mm256_set1_pd(params.b_offset());
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d three_quarters = _mm256_set1_pd(0.75);
    const __m256d three_halves = _mm256_set1_pd(1.5);

    const std::size_t total = batch.x.size();
    const std::size_t vector_end = total - total % 4;
    for (std::size_t i = 0; i < vector_end; i += 4) {
        __m256d x = _mm256_loadu_pd(batch.x.data() + i);
        __m256d y = _mm256_loadu_pd(batch.y.data() + i);
        __m256i count = _mm256_setzero_si256();

        for (std::size_t k = 0; k < steps; ++k) {
            const __m256d in_a = _mm256_cmp_pd(x, ell, _CMP_LT_OQ);
            const __m256d below_half = _mm256_cmp_pd(x, half, _CMP_LT_OQ);
            const __m256d below_c_end = _mm256_cmp_pd(x, three_quarters, _CMP_LT_OQ);

            if (k >= count_from) {
                // Masks are all-ones (-1) lanes: +1 for D (not below 3/4), -1 for A.
                const __m256i in_d = _mm256_xor_si256(_mm256_castpd_si256(below_c_end), _mm256_set1_epi64x(-1));
                count = _mm256_sub_epi64(count, in_d);
                count = _mm256_add_epi64(count, _mm256_castpd_si256(in_a));
            }

            const __m256d two_x = _mm256_mul_pd(two, x);
            __m256d mx = _mm256_sub_pd(two_x, three_halves);
            __m256d my = _mm256_mul_pd(two_ell, y);

            const __m256d half_y = _mm256_mul_pd(half, y);
            mx = _mm256_blendv_pd(mx, _mm256_sub_pd(two_x, half), below_c_end);
            my = _mm256_blendv_pd(my, half_y, below_c_end);

            mx = _mm256_blendv_pd(mx, _mm256_sub_pd(_mm256_div_pd(x, omt), b_offset), below_half);
            my = _mm256_blendv_pd(my, _mm256_add_pd(_mm256_mul_pd(omt, y), two_ell), below_half);

            mx = _mm256_blendv_pd(mx, _mm256_add_pd(_mm256_div_pd(x, two_ell), half), in_a);
            my = _mm256_blendv_pd(my, _mm256_add_pd(half_y, half), in_a);

            x = _mm256_sub_pd(one, my);
            y = mx;
        }

        _mm256_storeu_pd(batch.x.data() + i, x);
        _mm256_storeu_pd(batch.y.data() + i, y);
        alignas(32) std::int64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
        for (int l = 0; l < 4; ++l) batch.net_count[i + l] += static_cast<std::int32_t>(lanes[l]);
    }

    if (vector_end < total) {
        evolve_scalar(params,
                      {batch.x.subspan(vector_end), batch.y.subspan(vector_end), batch.net_count.subspan(vector_end)},
                      steps, count_from);
    }
}

} // namespace bakerlab::kernels
