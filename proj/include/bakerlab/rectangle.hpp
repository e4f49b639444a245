#pragma once

#include "bakerlab/map_core.hpp"

namespace bakerlab {

/// Closed axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rectangle {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    double width() const noexcept { return x_hi - x_lo; }
    double height() const noexcept { return y_hi - y_lo; }
    double area() const noexcept { return width() * height(); }
    Point center() const noexcept { return {0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)}; }

    bool contains(Point p) const noexcept {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }

    /// Open interior; the edges of the neutral rectangles leak into the
    /// neighbouring columns.
    bool interior_contains(Point p) const noexcept {
        return p.x > x_lo && p.x < x_hi && p.y > y_lo && p.y < y_hi;
    }

    friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

} // namespace bakerlab
