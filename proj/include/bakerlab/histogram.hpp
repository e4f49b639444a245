#pragma once

#include <cstdint>
#include <vector>

namespace bakerlab {

enum class HistogramKind { Exact, Empirical };

/// Distribution of the n-step average contraction, binned by the integer net
/// count k in [-n, n]; bin k holds the value k * phi / n. At phi = 0 every
/// value is 0 and all mass is kept in bin 0.
struct LambdaHistogram {
    std::size_t n = 0;
    double phi = 0.0;
    HistogramKind kind = HistogramKind::Exact;
    std::vector<double> mass;          // 2n + 1 entries, index k + n
    std::vector<std::uint64_t> counts; // empirical only
    std::uint64_t total = 0;           // empirical only

    static LambdaHistogram empty(std::size_t n, double phi, HistogramKind kind);

    int k_min() const noexcept { return -static_cast<int>(n); }
    int k_max() const noexcept { return static_cast<int>(n); }
    double mass_at(int k) const noexcept;
    std::uint64_t count_at(int k) const noexcept;
    double lambda_at(int k) const noexcept {
        return static_cast<double>(k) * phi / static_cast<double>(n);
    }
    double total_mass() const noexcept;
};

/// Half the L1 distance between two histograms of the same n.
double total_variation(const LambdaHistogram& a, const LambdaHistogram& b);

} // namespace bakerlab
