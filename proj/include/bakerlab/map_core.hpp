#pragma once

// Piecewise-affine baker-like map of the unit square.
//
// M acts branch-wise on four vertical columns A, B, C, D; R is the quarter
// turn (x, y) -> (1 - y, x); L = R o M is the map studied everywhere else.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bakerlab {

/// Control parameter ell in (0, 1/4] together with the constants every
/// branch formula needs. All derived values are computed once, here, so the
/// scalar and vector kernels see bit-identical coefficients.
class Params {
public:
    explicit Params(double ell);

    double ell() const noexcept { return ell_; }
    /// phi = -ln(4 ell), the contraction per step in region D.
    double phi() const noexcept { return phi_; }
    bool at_equilibrium() const noexcept { return ell_ == 0.25; }

    double two_ell() const noexcept { return two_ell_; }
    double one_minus_two_ell() const noexcept { return one_minus_two_ell_; }
    /// ell / (1 - 2 ell), the offset of branch B.
    double b_offset() const noexcept { return b_offset_; }

private:
    double ell_;
    double phi_;
    double two_ell_;
    double one_minus_two_ell_;
    double b_offset_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

enum class Region : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

enum class MapKind : std::uint8_t { M, L };

char region_char(Region r) noexcept;
/// Parses one of 'A'..'D'; throws std::invalid_argument otherwise.
Region region_from_char(char c);

inline bool in_unit_square(Point p) noexcept {
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

/// Half-open, left-closed columns; x = 1 belongs to D.
Region classify_region(Point p, const Params& params) noexcept;

Point apply_m(Point p, const Params& params) noexcept;
/// Branch formula of M for region r, applied regardless of where p lies.
Point apply_m_branch(Point p, Region r, const Params& params) noexcept;
/// Inverse of R o (branch r of M).
Point invert_l_branch(Point p, Region r, const Params& params) noexcept;
Point apply_r(Point p) noexcept;
Point apply_l(Point p, const Params& params) noexcept;
Point apply_map(Point p, MapKind kind, const Params& params) noexcept;

/// Constant derivative of L on one branch. Every entry on the diagonal is
/// zero: DL = [[0, -upper], [lower, 0]].
struct Jacobian {
    std::array<std::array<double, 2>, 2> m{};
    double det = 0.0;

    double abs_det() const noexcept { return det < 0.0 ? -det : det; }
};

Jacobian jacobian(Region r, const Params& params) noexcept;

/// Lambda = ln(1/|J|): -phi on A, 0 on B and C, +phi on D.
double local_contraction(Region r, const Params& params) noexcept;

/// +1 for D, -1 for A, 0 otherwise.
inline int net_increment(Region r) noexcept {
    return r == Region::D ? 1 : (r == Region::A ? -1 : 0);
}

struct Orbit {
    std::vector<Point> points;     // n + 1 entries
    std::vector<Region> itinerary; // n entries
    MapKind map_kind = MapKind::L;

    std::size_t steps() const noexcept { return itinerary.size(); }
};

Orbit orbit(Point p, std::size_t n, MapKind kind, const Params& params);

struct LambdaAverage {
    double value = 0.0;
    int net_count = 0;
};

/// Time average of Lambda over steps 0..n-1, built from the integer count
/// (#D - #A) so the result is exactly net_count * phi / n.
LambdaAverage lambda_time_average(Point p, std::size_t n, MapKind kind, const Params& params);

inline double lambda_from_count(int net_count, std::size_t n, double phi) noexcept {
    return static_cast<double>(net_count) * phi / static_cast<double>(n);
}

std::string_view map_kind_name(MapKind kind) noexcept;

} // namespace bakerlab
