#include "bakerlab/map_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bakerlab {

Params::Params(double ell) : ell_(ell) {
    if (!(ell > 0.0 && ell <= 0.25)) {
        throw std::invalid_argument("ell must lie in (0, 1/4], got " + std::to_string(ell));
    }
    phi_ = -std::log(4.0 * ell_);
    // -ln(1) is -0.0; keep the equilibrium value a clean +0.
    if (phi_ == 0.0) phi_ = 0.0;
    two_ell_ = 2.0 * ell_;
    one_minus_two_ell_ = 1.0 - two_ell_;
    b_offset_ = ell_ / one_minus_two_ell_;
}

char region_char(Region r) noexcept {
    static constexpr char names[] = {'A', 'B', 'C', 'D'};
    return names[static_cast<int>(r)];
}

Region region_from_char(char c) {
    switch (c) {
    case 'A': return Region::A;
    case 'B': return Region::B;
    case 'C': return Region::C;
    case 'D': return Region::D;
    default: throw std::invalid_argument(std::string("unknown region tag '") + c + "'");
    }
}

Region classify_region(Point p, const Params& params) noexcept {
    if (p.x < params.ell()) return Region::A;
    if (p.x < 0.5) return Region::B;
    if (p.x < 0.75) return Region::C;
    return Region::D;
}

// The operation order below is mirrored exactly by the vector kernels in
// src/kernels; change both or neither.
Point apply_m_branch(Point p, Region r, const Params& params) noexcept {
    switch (r) {
    case Region::A:
        return {p.x / params.two_ell() + 0.5, 0.5 * p.y + 0.5};
    case Region::B:
        return {p.x / params.one_minus_two_ell() - params.b_offset(),
                params.one_minus_two_ell() * p.y + params.two_ell()};
    case Region::C:
        return {2.0 * p.x - 0.5, 0.5 * p.y};
    case Region::D:
        break;
    }
    return {2.0 * p.x - 1.5, params.two_ell() * p.y};
}

Point apply_m(Point p, const Params& params) noexcept {
    return apply_m_branch(p, classify_region(p, params), params);
}

Point invert_l_branch(Point p, Region r, const Params& params) noexcept {
    const double mx = p.y;
    const double my = 1.0 - p.x;
    switch (r) {
    case Region::A:
        return {(mx - 0.5) * params.two_ell(), (my - 0.5) * 2.0};
    case Region::B:
        return {(mx + params.b_offset()) * params.one_minus_two_ell(),
                (my - params.two_ell()) / params.one_minus_two_ell()};
    case Region::C:
        return {(mx + 0.5) / 2.0, my * 2.0};
    case Region::D:
        break;
    }
    return {(mx + 1.5) / 2.0, my / params.two_ell()};
}

Point apply_r(Point p) noexcept { return {1.0 - p.y, p.x}; }

Point apply_l(Point p, const Params& params) noexcept { return apply_r(apply_m(p, params)); }

Point apply_map(Point p, MapKind kind, const Params& params) noexcept {
    return kind == MapKind::L ? apply_l(p, params) : apply_m(p, params);
}

Jacobian jacobian(Region r, const Params& params) noexcept {
    double upper = 0.0;
    double lower = 0.0;
    switch (r) {
    case Region::A:
        upper = 0.5;
        lower = 1.0 / params.two_ell();
        break;
    case Region::B:
        upper = params.one_minus_two_ell();
        lower = 1.0 / params.one_minus_two_ell();
        break;
    case Region::C:
        upper = 0.5;
        lower = 2.0;
        break;
    case Region::D:
        upper = params.two_ell();
        lower = 2.0;
        break;
    }
    Jacobian j;
    j.m = {{{0.0, -upper}, {lower, 0.0}}};
    j.det = upper * lower;
    return j;
}

double local_contraction(Region r, const Params& params) noexcept {
    switch (r) {
    case Region::A: return -params.phi();
    case Region::D: return params.phi();
    default: return 0.0;
    }
}

Orbit orbit(Point p, std::size_t n, MapKind kind, const Params& params) {
    Orbit out;
    out.map_kind = kind;
    out.points.reserve(n + 1);
    out.itinerary.reserve(n);
    out.points.push_back(p);
    for (std::size_t k = 0; k < n; ++k) {
        out.itinerary.push_back(classify_region(p, params));
        p = apply_map(p, kind, params);
        out.points.push_back(p);
    }
    return out;
}

LambdaAverage lambda_time_average(Point p, std::size_t n, MapKind kind, const Params& params) {
    if (n == 0) throw std::invalid_argument("lambda_time_average needs n >= 1");
    int count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        count += net_increment(classify_region(p, params));
        p = apply_map(p, kind, params);
    }
    return {lambda_from_count(count, n, params.phi()), count};
}

std::string_view map_kind_name(MapKind kind) noexcept { return kind == MapKind::L ? "L" : "M"; }

} // namespace bakerlab
