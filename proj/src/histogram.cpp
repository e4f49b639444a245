#include "bakerlab/histogram.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bakerlab {

LambdaHistogram LambdaHistogram::empty(std::size_t n, double phi, HistogramKind kind) {
    LambdaHistogram h;
    h.n = n;
    h.phi = phi;
    h.kind = kind;
    h.mass.assign(2 * n + 1, 0.0);
    if (kind == HistogramKind::Empirical) h.counts.assign(2 * n + 1, 0);
    return h;
}

double LambdaHistogram::mass_at(int k) const noexcept {
    if (k < k_min() || k > k_max()) return 0.0;
    return mass[static_cast<std::size_t>(k + k_max())];
}

std::uint64_t LambdaHistogram::count_at(int k) const noexcept {
    if (counts.empty() || k < k_min() || k > k_max()) return 0;
    return counts[static_cast<std::size_t>(k + k_max())];
}

double LambdaHistogram::total_mass() const noexcept {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

double total_variation(const LambdaHistogram& a, const LambdaHistogram& b) {
    if (a.n != b.n) throw std::invalid_argument("total_variation: histograms differ in n");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.mass.size(); ++i) sum += std::abs(a.mass[i] - b.mass[i]);
    return 0.5 * sum;
}

} // namespace bakerlab
