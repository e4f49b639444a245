#pragma once

// Closed-form invariant objects of L: fixed points, the AB 2-cycle, the
// CDCD lines, the two neutral rectangles, and their Lyapunov exponents.

#include <string_view>
#include <utility>
#include <vector>

#include "bakerlab/map_core.hpp"
#include "bakerlab/rectangle.hpp"

namespace bakerlab {

enum class InvariantSetId { PA, PD, AB, CDCD, BInv, CInv };

std::string_view invariant_set_name(InvariantSetId id) noexcept;
/// Accepts PA, PD, AB, CDCD, BINV, CINV (case-insensitive).
InvariantSetId invariant_set_from_name(std::string_view name);

/// ell below which the AB and CDCD cycles do not exist.
inline constexpr double kCdcdThreshold = 0.125;

inline bool cdcd_exists(const Params& params) noexcept { return params.ell() >= kCdcdThreshold; }

struct LyapunovPair {
    double lambda_x = 0.0;
    double lambda_y = 0.0;
};

struct FixedPoints {
    Point pa;
    Point pd;
};

FixedPoints fixed_points(const Params& params);

struct AbOrbit {
    Point in_a;
    Point in_b;
};

AbOrbit ab_orbit(const Params& params);

struct CdcdAttractor {
    double x_line = 0.0; // vertical line inside C
    double y_line = 0.0; // horizontal line inside D
    Rectangle vertical;   // x = x_line, y in [0, 1/2]
    Rectangle horizontal; // y = y_line, x in [3/4, 1]
};

/// Throws std::domain_error when ell < 1/8.
CdcdAttractor cdcd_attractor(const Params& params);

struct InvariantRectangles {
    Rectangle b_inv;
    Rectangle c_inv;
};

/// B_inv uses the x lower bound (1 - 2 ell) / 2; see README.
InvariantRectangles invariant_rectangles(const Params& params);

/// Throws std::domain_error for AB or CDCD when ell < 1/8. AB and CDCD values
/// refer to orbits started in A and on the vertical line respectively.
LyapunovPair lyapunov_analytic(InvariantSetId set, const Params& params);

/// Axis-wise exponents of the n-step derivative product along the L orbit
/// of p. n must be even and >= 2.
///
/// If p closes a cycle of period <= kMaxClosurePeriod within
/// kClosureTolerance, the orbit is continued as that exact cycle instead of
/// being re-iterated; repelling cycles would otherwise be lost to rounding
/// after a few hundred steps.
LyapunovPair lyapunov_finite_time(Point p, std::size_t n, const Params& params);

inline constexpr std::size_t kMaxClosurePeriod = 8;
inline constexpr double kClosureTolerance = 1e-12;

/// (lambda_x + lambda_y) of AB plus that of CDCD; zero up to rounding.
double conjugacy_defect(const Params& params);

struct SteadyStateRow {
    InvariantSetId set;
    double lambda;
};

/// Six rows for ell >= 1/8, four below.
std::vector<SteadyStateRow> steady_state_lambda_table(const Params& params);

} // namespace bakerlab
