#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bakerlab/map_core.hpp"

namespace bakerlab {

enum class DistributionKind { Uniform, Power, GaussianClipped };

/// Initial density on the unit square.
///   uniform          : constant
///   power            : proportional to x^a y^b, a, b >= 0
///   gaussian_clipped : isotropic normal around (cx, cy) with deviation s,
///                      redrawn until it lands in the square
struct DistributionSpec {
    DistributionKind kind = DistributionKind::Uniform;
    double a = 0.0;
    double b = 0.0;
    double cx = 0.5;
    double cy = 0.5;
    double s = 0.25;

    static DistributionSpec uniform() { return {}; }
    static DistributionSpec power(double a, double b);
    static DistributionSpec gaussian_clipped(double cx, double cy, double s);

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
    std::string describe() const;
};

/// Counter-based stream: the value for (seed, index, draw) does not depend
/// on how indices are split across workers.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t bits(std::uint64_t index, std::uint64_t draw) const noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t index, std::uint64_t draw) const noexcept {
        return static_cast<double>(bits(index, draw) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
};

/// Point number `index` of the stream.
Point sample_point(const DistributionSpec& dist, const CounterRng& rng, std::uint64_t index);

/// Fills x[i], y[i] with points first_index + i.
void sample_into(const DistributionSpec& dist, const CounterRng& rng, std::uint64_t first_index,
                 std::span<double> x, std::span<double> y);

std::vector<Point> sample_points(const DistributionSpec& dist, std::size_t count, std::uint64_t seed);

} // namespace bakerlab
