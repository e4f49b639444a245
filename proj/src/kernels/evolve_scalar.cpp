#include "bakerlab/kernels.hpp"

namespace bakerlab::kernels {

void evolve_scalar(const Params& params, EvolveBatch batch, std::size_t steps, std::size_t count_from) noexcept {
    for (std::size_t i = 0; i < batch.x.size(); ++i) {
        Point p{batch.x[i], batch.y[i]};
        std::int32_t count = 0;
        for (std::size_t k = 0; k < steps; ++k) {
            const Region r = classify_region(p, params);
            if (k >= count_from) count += net_increment(r);
            p = apply_r(apply_m_branch(p, r, params));
        }
        batch.x[i] = p.x;
        batch.y[i] = p.y;
        batch.net_count[i] += count;
    }
}

} // namespace bakerlab::kernels
