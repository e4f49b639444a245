#include "bakerlab/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bakerlab {

namespace {

void require_cdcd(const Params& params, const char* what) {
    if (!cdcd_exists(params)) {
        throw std::domain_error(std::string(what) + " requires ell >= 1/8 (got ell = " +
                                std::to_string(params.ell()) + ")");
    }
}

double sup_distance(Point a, Point b) noexcept {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

// Regions of the cycle through p, or an empty vector when p does not close.
std::vector<Region> closed_cycle(Point p, const Params& params) {
    std::vector<Region> cycle;
    Point q = p;
    for (std::size_t period = 1; period <= kMaxClosurePeriod; ++period) {
        cycle.push_back(classify_region(q, params));
        q = apply_l(q, params);
        if (sup_distance(q, p) <= kClosureTolerance) return cycle;
    }
    return {};
}

// Product of antidiagonal step derivatives, stored as diag(e^s0, e^s1) * core.
class DerivativeProduct {
public:
    void push(const Jacobian& j) noexcept {
        const double upper = j.m[0][1];
        const double lower = j.m[1][0];
        const std::array<double, 2> row0 = core_[0];
        const std::array<double, 2> row1 = core_[1];
        core_[0] = {upper * row1[0], upper * row1[1]};
        core_[1] = {lower * row0[0], lower * row0[1]};
        std::swap(log_scale_[0], log_scale_[1]);
        if (++since_rescale_ == kRescaleEvery || max_abs() > 1e150 || max_abs() < 1e-150) rescale();
    }

    double log_diagonal(int axis) const noexcept {
        return log_scale_[axis] + std::log(std::abs(core_[axis][axis]));
    }

private:
    static constexpr int kRescaleEvery = 64;

    double max_abs() const noexcept {
        double m = 0.0;
        for (const auto& row : core_)
            for (double v : row) m = std::max(m, std::abs(v));
        return m;
    }

    void rescale() noexcept {
        since_rescale_ = 0;
        for (int r = 0; r < 2; ++r) {
            const double m = std::max(std::abs(core_[r][0]), std::abs(core_[r][1]));
            if (m == 0.0) continue;
            core_[r][0] /= m;
            core_[r][1] /= m;
            log_scale_[r] += std::log(m);
        }
    }

    std::array<std::array<double, 2>, 2> core_{{{1.0, 0.0}, {0.0, 1.0}}};
    std::array<double, 2> log_scale_{0.0, 0.0};
    int since_rescale_ = 0;
};

} // namespace

std::string_view invariant_set_name(InvariantSetId id) noexcept {
    switch (id) {
    case InvariantSetId::PA: return "P_A";
    case InvariantSetId::PD: return "P_D";
    case InvariantSetId::AB: return "AB";
    case InvariantSetId::CDCD: return "CDCD";
    case InvariantSetId::BInv: return "B_inv";
    case InvariantSetId::CInv: return "C_inv";
    }
    return "?";
}

InvariantSetId invariant_set_from_name(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (c != '_') key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (key == "PA") return InvariantSetId::PA;
    if (key == "PD") return InvariantSetId::PD;
    if (key == "AB") return InvariantSetId::AB;
    if (key == "CDCD") return InvariantSetId::CDCD;
    if (key == "BINV") return InvariantSetId::BInv;
    if (key == "CINV") return InvariantSetId::CInv;
    throw std::invalid_argument("unknown invariant set '" + std::string(name) + "'");
}

FixedPoints fixed_points(const Params& params) {
    const double l = params.ell();
    const double d = 1.0 + 4.0 * l;
    return {{l / d, (1.0 + 2.0 * l) / d}, {(1.0 + 3.0 * l) / d, 1.0 / (2.0 * d)}};
}

AbOrbit ab_orbit(const Params& params) {
    const double l = params.ell();
    const double d = 3.0 - 4.0 * l;
    return {{l * (1.0 - 2.0 * l), (1.0 - 2.0 * l) / d}, {(1.0 - l) / d, 1.0 - l}};
}

CdcdAttractor cdcd_attractor(const Params& params) {
    require_cdcd(params, "the CDCD cycle");
    const double d = 1.0 + 4.0 * params.ell();
    CdcdAttractor out;
    out.x_line = (1.0 + params.ell()) / d;
    out.y_line = 3.0 / (2.0 * d);
    out.vertical = {out.x_line, out.x_line, 0.0, 0.5};
    out.horizontal = {0.75, 1.0, out.y_line, out.y_line};
    return out;
}

InvariantRectangles invariant_rectangles(const Params& params) {
    const double l = params.ell();
    const double w = 1.0 - 2.0 * l;
    InvariantRectangles out;
    out.b_inv = {w / 2.0, 0.5, (1.0 - 4.0 * l) / (2.0 * w), 0.5};
    out.c_inv = {0.5, 0.75, 0.5, 1.0};
    return out;
}

LyapunovPair lyapunov_analytic(InvariantSetId set, const Params& params) {
    const double l = params.ell();
    switch (set) {
    case InvariantSetId::PA: {
        const double v = 0.5 * params.phi();
        return {v, v};
    }
    case InvariantSetId::PD: {
        const double v = 0.0 - 0.5 * params.phi(); // +0 at equilibrium
        return {v, v};
    }
    case InvariantSetId::AB:
        // Orbit started in A; started in B the two components swap.
        require_cdcd(params, "the AB cycle");
        return {0.5 * std::log((1.0 - 2.0 * l) / (2.0 * l)), 0.5 * std::log(1.0 / (2.0 * (1.0 - 2.0 * l)))};
    case InvariantSetId::CDCD:
        require_cdcd(params, "the CDCD cycle");
        // Point on the vertical line; the horizontal line swaps the axes.
        return {0.5 * std::log(4.0 * l), 0.0};
    case InvariantSetId::BInv:
    case InvariantSetId::CInv:
        break;
    }
    return {0.0, 0.0};
}

LyapunovPair lyapunov_finite_time(Point p, std::size_t n, const Params& params) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("finite-time Lyapunov exponents need an even n >= 2, got " +
                                    std::to_string(n));
    }
    DerivativeProduct product;
    const std::vector<Region> cycle = closed_cycle(p, params);
    if (!cycle.empty()) {
        for (std::size_t k = 0; k < n; ++k) product.push(jacobian(cycle[k % cycle.size()], params));
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            product.push(jacobian(classify_region(p, params), params));
            p = apply_l(p, params);
        }
    }
    const double steps = static_cast<double>(n);
    return {product.log_diagonal(0) / steps, product.log_diagonal(1) / steps};
}

double conjugacy_defect(const Params& params) {
    const LyapunovPair ab = lyapunov_analytic(InvariantSetId::AB, params);
    const LyapunovPair cdcd = lyapunov_analytic(InvariantSetId::CDCD, params);
    return (ab.lambda_x + ab.lambda_y) + (cdcd.lambda_x + cdcd.lambda_y);
}

std::vector<SteadyStateRow> steady_state_lambda_table(const Params& params) {
    const double phi = params.phi();
    if (cdcd_exists(params)) {
        return {{InvariantSetId::PD, phi},         {InvariantSetId::CDCD, phi / 2.0},
                {InvariantSetId::BInv, 0.0},       {InvariantSetId::CInv, 0.0},
                {InvariantSetId::AB, -phi / 2.0},  {InvariantSetId::PA, -phi}};
    }
    return {{InvariantSetId::PD, phi}, {InvariantSetId::BInv, 0.0}, {InvariantSetId::CInv, 0.0},
            {InvariantSetId::PA, -phi}};
}

} // namespace bakerlab
