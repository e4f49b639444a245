#pragma once

// Exact Lebesgue measure of itinerary cylinders.
//
// Every branch of L is a diagonal affine map followed by a quarter turn, so
// the forward image of an axis-aligned rectangle is again one. A cylinder is
// found by propagating its column forward, intersecting with the next column
// at every step; its initial measure is the final image area divided by the
// accumulated |det DL|.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "bakerlab/attractor.hpp"
#include "bakerlab/histogram.hpp"
#include "bakerlab/itinerary.hpp"
#include "bakerlab/map_core.hpp"
#include "bakerlab/rectangle.hpp"

namespace bakerlab {

struct CylinderSet {
    Itinerary itinerary;
    Rectangle image; // L^n of the cylinder
    double measure = 0.0;
};

struct EnumerationLimits {
    std::size_t n_max = 14;
    std::uint64_t max_cylinders = 50'000'000;
};

inline constexpr double kMinImageSide = 1e-15;
inline constexpr double kMinMeasure = 1e-18;

/// Visits cylinders in lexicographic itinerary order.
/// Throws std::invalid_argument for n outside [1, n_max] and
/// ResourceLimitError when more than max_cylinders would be produced.
void for_each_cylinder(const Params& params, std::size_t n, const EnumerationLimits& limits,
                       const std::function<void(const CylinderSet&)>& visit);

std::vector<CylinderSet> enumerate_cylinders(const Params& params, std::size_t n,
                                             const EnumerationLimits& limits = {});

LambdaHistogram exact_lambda_distribution(const Params& params, std::size_t n,
                                          const EnumerationLimits& limits = {});

/// Column of region r: [a, b] x [0, 1].
Rectangle region_column(Region r, const Params& params) noexcept;

/// Image of a rectangle under branch r of L (the branch is applied as a
/// formula, not selected by position).
Rectangle map_rectangle(const Rectangle& rect, Region r, const Params& params) noexcept;

struct FrRow {
    int k = 0;
    double a = 0.0; // k * phi / n
    double p_plus = 0.0;
    double p_minus = 0.0;
    /// (1/n) ln(p_plus / p_minus); +inf or -inf when one side is empty.
    double lhs = 0.0;
    double deviation = 0.0;

    bool paired() const noexcept { return p_plus > 0.0 && p_minus > 0.0; }
};

/// Rows for every k > 0 with a populated +k or -k bin, ascending in k.
/// Unpaired bins are kept and carry an infinite lhs. Throws
/// std::domain_error at equilibrium (only k = 0 exists).
std::vector<FrRow> fr_curve(const LambdaHistogram& hist);

std::vector<FrRow> exact_fr_curve(const Params& params, std::size_t n, const EnumerationLimits& limits = {});

struct ConjugateWitness {
    bool exists = false;
    Point witness;          // centre of the largest cylinder with net count -k
    Itinerary itinerary;
    double measure = 0.0;
};

ConjugateWitness conjugate_cylinder_exists(const Params& params, std::size_t n, int k,
                                           const EnumerationLimits& limits = {});

/// Centre of the initial rectangle of a cylinder, pulled back from its image.
Point cylinder_origin_center(const CylinderSet& cylinder, const Params& params) noexcept;

/// phi * (mu(P_D basin) + mu(CDCD basin) / 2). Throws std::invalid_argument
/// for negative measures or a total above 1.
double steady_state_mean_contraction(const Params& params, const BasinMeasures& basins);

} // namespace bakerlab
