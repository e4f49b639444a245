#include "bakerlab/measure_exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "bakerlab/errors.hpp"

namespace bakerlab {

namespace {

constexpr Region kRegions[] = {Region::A, Region::B, Region::C, Region::D};

// Rectangle stored as lower corner plus side lengths. Branch maps scale the
// sides multiplicatively, so only a genuine clip against a column boundary
// costs a subtraction; storing both corners loses ~1e-11 relative accuracy on
// contracted images near P_D.
struct Box {
    double x_lo, width, y_lo, height;

    Rectangle rectangle() const noexcept { return {x_lo, x_lo + width, y_lo, y_lo + height}; }
};

// Per-branch slopes of M: mx = sx * x + ..., my = sy * y + ...
struct BranchScale {
    double sx, sy;
};

BranchScale branch_scale(Region r, const Params& params) noexcept {
    switch (r) {
    case Region::A: return {1.0 / params.two_ell(), 0.5};
    case Region::B: return {1.0 / params.one_minus_two_ell(), params.one_minus_two_ell()};
    case Region::C: return {2.0, 0.5};
    case Region::D: break;
    }
    return {2.0, params.two_ell()};
}

Box map_box(const Box& b, Region r, const Params& params) noexcept {
    const BranchScale s = branch_scale(r, params);
    const Point lo = apply_m_branch({b.x_lo, b.y_lo}, r, params);
    const double new_width = s.sy * b.height;
    // R: x' = 1 - my, so the new lower x comes from the top edge.
    return {(1.0 - lo.y) - new_width, new_width, lo.x, s.sx * b.width};
}

std::optional<Box> clip_to_column(const Box& b, const Rectangle& column) noexcept {
    Box out = b;
    const double hi = b.x_lo + b.width;
    if (b.x_lo < column.x_lo || hi > column.x_hi) {
        out.x_lo = std::max(b.x_lo, column.x_lo);
        out.width = std::min(hi, column.x_hi) - out.x_lo;
    }
    if (out.width < kMinImageSide || out.height < kMinImageSide) return std::nullopt;
    return out;
}

class CylinderWalker {
public:
    CylinderWalker(const Params& params, std::size_t n, const EnumerationLimits& limits,
                   const std::function<void(const CylinderSet&)>& visit)
        : params_(params), n_(n), limits_(limits), visit_(visit) {
        for (Region r : kRegions) columns_[static_cast<int>(r)] = region_column(r, params);
    }

    void run() {
        for (Region r : kRegions) {
            Itinerary it;
            it.push_back(r);
            const Rectangle& c = columns_[static_cast<int>(r)];
            descend(Box{c.x_lo, c.width(), c.y_lo, c.height()}, it, 1.0);
        }
    }

private:
    // `piece` lies in the column of the last symbol of `it`; `det_product`
    // covers every symbol before it.
    void descend(const Box& piece, const Itinerary& it, double det_product) {
        const Region last = it[it.size() - 1];
        const Box image = map_box(piece, last, params_);
        const double det = det_product * jacobian(last, params_).abs_det();
        if (it.size() == n_) {
            const double measure = image.width * image.height / det;
            if (measure < kMinMeasure) return;
            if (++emitted_ > limits_.max_cylinders) {
                throw ResourceLimitError("cylinder enumeration exceeded " +
                                         std::to_string(limits_.max_cylinders) + " cylinders at n = " +
                                         std::to_string(n_));
            }
            visit_(CylinderSet{it, image.rectangle(), measure});
            return;
        }
        for (Region r : kRegions) {
            if (auto next = clip_to_column(image, columns_[static_cast<int>(r)])) {
                descend(*next, it.extended(r), det);
            }
        }
    }

    const Params& params_;
    std::size_t n_;
    EnumerationLimits limits_;
    const std::function<void(const CylinderSet&)>& visit_;
    Rectangle columns_[4];
    std::uint64_t emitted_ = 0;
};

} // namespace

Rectangle region_column(Region r, const Params& params) noexcept {
    switch (r) {
    case Region::A: return {0.0, params.ell(), 0.0, 1.0};
    case Region::B: return {params.ell(), 0.5, 0.0, 1.0};
    case Region::C: return {0.5, 0.75, 0.0, 1.0};
    case Region::D: break;
    }
    return {0.75, 1.0, 0.0, 1.0};
}

Rectangle map_rectangle(const Rectangle& rect, Region r, const Params& params) noexcept {
    // Both coordinates of M are increasing; R sends (mx, my) to (1 - my, mx).
    const Point lo = apply_m_branch({rect.x_lo, rect.y_lo}, r, params);
    const Point hi = apply_m_branch({rect.x_hi, rect.y_hi}, r, params);
    return {1.0 - hi.y, 1.0 - lo.y, lo.x, hi.x};
}

void for_each_cylinder(const Params& params, std::size_t n, const EnumerationLimits& limits,
                       const std::function<void(const CylinderSet&)>& visit) {
    const std::size_t cap = limits.n_max;
    if (n < 1 || n > cap) {
        throw std::invalid_argument("cylinder enumeration needs 1 <= n <= " + std::to_string(cap) +
                                    ", got " + std::to_string(n));
    }
    CylinderWalker(params, n, limits, visit).run();
}

std::vector<CylinderSet> enumerate_cylinders(const Params& params, std::size_t n,
                                             const EnumerationLimits& limits) {
    std::vector<CylinderSet> out;
    for_each_cylinder(params, n, limits, [&](const CylinderSet& c) { out.push_back(c); });
    return out;
}

LambdaHistogram exact_lambda_distribution(const Params& params, std::size_t n,
                                          const EnumerationLimits& limits) {
    LambdaHistogram hist = LambdaHistogram::empty(n, params.phi(), HistogramKind::Exact);
    // At phi = 0 every average is 0 whatever the D - A count.
    const bool collapse = params.at_equilibrium();
    for_each_cylinder(params, n, limits, [&](const CylinderSet& c) {
        const int k = collapse ? 0 : c.itinerary.net_count();
        hist.mass[static_cast<std::size_t>(k + static_cast<int>(n))] += c.measure;
    });
    return hist;
}

std::vector<FrRow> fr_curve(const LambdaHistogram& hist) {
    if (!(hist.phi > 0.0)) {
        throw std::domain_error("fluctuation relation is degenerate at equilibrium (phi = 0)");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<FrRow> rows;
    const double steps = static_cast<double>(hist.n);
    for (int k = 1; k <= hist.k_max(); ++k) {
        FrRow row;
        row.k = k;
        row.a = hist.lambda_at(k);
        row.p_plus = hist.mass_at(k);
        row.p_minus = hist.mass_at(-k);
        if (row.p_plus == 0.0 && row.p_minus == 0.0) continue;
        if (row.paired()) {
            row.lhs = std::log(row.p_plus / row.p_minus) / steps;
            row.deviation = row.lhs - row.a;
        } else {
            row.lhs = row.p_plus > 0.0 ? inf : -inf;
            row.deviation = row.lhs;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<FrRow> exact_fr_curve(const Params& params, std::size_t n, const EnumerationLimits& limits) {
    if (params.at_equilibrium()) {
        throw std::domain_error("fluctuation relation is degenerate at equilibrium (phi = 0)");
    }
    return fr_curve(exact_lambda_distribution(params, n, limits));
}

Point cylinder_origin_center(const CylinderSet& cylinder, const Params& params) noexcept {
    Point p = cylinder.image.center();
    for (std::size_t i = cylinder.itinerary.size(); i-- > 0;) {
        p = invert_l_branch(p, cylinder.itinerary[i], params);
    }
    return p;
}

ConjugateWitness conjugate_cylinder_exists(const Params& params, std::size_t n, int k,
                                           const EnumerationLimits& limits) {
    ConjugateWitness best;
    std::optional<CylinderSet> chosen;
    for_each_cylinder(params, n, limits, [&](const CylinderSet& c) {
        if (c.itinerary.net_count() == -k && (!chosen || c.measure > chosen->measure)) chosen = c;
    });
    if (chosen) {
        best.exists = true;
        best.itinerary = chosen->itinerary;
        best.measure = chosen->measure;
        best.witness = cylinder_origin_center(*chosen, params);
    }
    return best;
}

double steady_state_mean_contraction(const Params& params, const BasinMeasures& basins) {
    double total = 0.0;
    for (double f : basins.fraction) {
        if (f < 0.0) throw std::invalid_argument("basin measures must be nonnegative");
        total += f;
    }
    if (total > 1.0 + 1e-12) throw std::invalid_argument("basin measures sum above 1");
    return params.phi() * (basins[AttractorId::PD] + 0.5 * basins[AttractorId::CDCD]);
}

} // namespace bakerlab
