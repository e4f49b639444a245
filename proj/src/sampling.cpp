#include "bakerlab/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bakerlab/parallel.hpp"

namespace bakerlab {

namespace {

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr int kMaxGaussianAttempts = 100000;

} // namespace

std::uint64_t CounterRng::bits(std::uint64_t index, std::uint64_t draw) const noexcept {
    return mix64(mix64(seed_ ^ mix64(index)) + draw * 0xd1b54a32d192ed03ULL);
}

DistributionSpec DistributionSpec::power(double a, double b) {
    DistributionSpec d;
    d.kind = DistributionKind::Power;
    d.a = a;
    d.b = b;
    return d;
}

DistributionSpec DistributionSpec::gaussian_clipped(double cx, double cy, double s) {
    DistributionSpec d;
    d.kind = DistributionKind::GaussianClipped;
    d.cx = cx;
    d.cy = cy;
    d.s = s;
    return d;
}

void DistributionSpec::validate() const {
    switch (kind) {
    case DistributionKind::Uniform: return;
    case DistributionKind::Power:
        if (!(a >= 0.0 && b >= 0.0 && std::isfinite(a) && std::isfinite(b))) {
            throw std::invalid_argument("power distribution needs finite exponents a, b >= 0");
        }
        return;
    case DistributionKind::GaussianClipped:
        if (!(s > 0.0 && std::isfinite(s))) throw std::invalid_argument("gaussian_clipped needs s > 0");
        if (!in_unit_square({cx, cy})) {
            throw std::invalid_argument("gaussian_clipped centre must lie in the unit square");
        }
        return;
    }
}

std::string DistributionSpec::describe() const {
    std::ostringstream out;
    switch (kind) {
    case DistributionKind::Uniform: out << "uniform"; break;
    case DistributionKind::Power: out << "power(a=" << a << ",b=" << b << ")"; break;
    case DistributionKind::GaussianClipped:
        out << "gaussian_clipped(cx=" << cx << ",cy=" << cy << ",s=" << s << ")";
        break;
    }
    return out.str();
}

Point sample_point(const DistributionSpec& dist, const CounterRng& rng, std::uint64_t index) {
    switch (dist.kind) {
    case DistributionKind::Uniform:
        return {rng.uniform(index, 0), rng.uniform(index, 1)};
    case DistributionKind::Power:
        // Inverse CDF of (a+1) x^a.
        return {std::pow(rng.uniform(index, 0), 1.0 / (dist.a + 1.0)),
                std::pow(rng.uniform(index, 1), 1.0 / (dist.b + 1.0))};
    case DistributionKind::GaussianClipped:
        break;
    }
    for (int attempt = 0; attempt < kMaxGaussianAttempts; ++attempt) {
        const std::uint64_t draw = 2 * static_cast<std::uint64_t>(attempt);
        // Box-Muller; 1 - u keeps the log argument in (0, 1].
        const double radius = std::sqrt(-2.0 * std::log(1.0 - rng.uniform(index, draw)));
        const double angle = 2.0 * std::numbers::pi * rng.uniform(index, draw + 1);
        const Point p{dist.cx + dist.s * radius * std::cos(angle), dist.cy + dist.s * radius * std::sin(angle)};
        if (in_unit_square(p)) return p;
    }
    throw std::runtime_error("gaussian_clipped: no sample landed in the unit square");
}

void sample_into(const DistributionSpec& dist, const CounterRng& rng, std::uint64_t first_index,
                 std::span<double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Point p = sample_point(dist, rng, first_index + i);
        x[i] = p.x;
        y[i] = p.y;
    }
}

std::vector<Point> sample_points(const DistributionSpec& dist, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_points needs count >= 1");
    dist.validate();
    const CounterRng rng(seed);
    std::vector<Point> out(count);
    parallel_for_blocks(count, 1 << 16, configured_threads(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = sample_point(dist, rng, i);
    });
    return out;
}

} // namespace bakerlab
