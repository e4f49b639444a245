#include "bakerlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bakerlab/errors.hpp"
#include "bakerlab/measure_exact.hpp"
#include "bakerlab/parallel.hpp"

namespace bakerlab {

namespace {

constexpr std::size_t kSampleBlock = 1 << 14;
constexpr std::size_t kRasterRowsPerBlock = 4;

unsigned resolve_threads(const EnsembleOptions& options) {
    return options.threads != 0 ? options.threads : configured_threads();
}

kernels::Backend resolve_backend(const EnsembleOptions& options) {
    const kernels::Backend b = options.backend.value_or(kernels::default_backend());
    if (!kernels::backend_available(b)) {
        throw std::invalid_argument("kernel backend '" + std::string(kernels::backend_name(b)) +
                                    "' is not available on this machine");
    }
    return b;
}

// Per-block sample, evolve and count. The callback receives the final net
// counts of the block in index order.
template <typename Consume>
void evolve_samples(const DistributionSpec& dist, std::size_t count, std::uint64_t seed, std::size_t steps,
                    std::size_t count_from, const Params& params, const EnsembleOptions& options,
                    Consume&& consume) {
    dist.validate();
    const CounterRng rng(seed);
    const kernels::Backend backend = resolve_backend(options);
    parallel_for_blocks(count, kSampleBlock, resolve_threads(options),
                        [&](std::size_t block, std::size_t begin, std::size_t end) {
                            const std::size_t size = end - begin;
                            std::vector<double> x(size), y(size);
                            std::vector<std::int32_t> net(size, 0);
                            sample_into(dist, rng, begin, x, y);
                            kernels::evolve(backend, params, {x, y, net}, steps, count_from);
                            consume(block, begin, std::span<const std::int32_t>(net));
                        });
}

double sup_distance(Point a, Point b) noexcept {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

double distance_to_interval(double v, double lo, double hi) noexcept {
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return 0.0;
}

double sup_distance(Point p, const Rectangle& r) noexcept {
    return std::max(distance_to_interval(p.x, r.x_lo, r.x_hi), distance_to_interval(p.y, r.y_lo, r.y_hi));
}

} // namespace

LambdaHistogram ensemble_lambda_histogram(const DistributionSpec& dist, std::size_t count, std::uint64_t seed,
                                          std::size_t n, const Params& params, const EnsembleOptions& options) {
    if (n < 1) throw std::invalid_argument("ensemble histogram needs n >= 1");
    if (count < 1) throw std::invalid_argument("ensemble histogram needs count >= 1");
    const std::size_t bins = 2 * n + 1;
    // At phi = 0 every average is 0 whatever the D - A count.
    const int offset = static_cast<int>(n);
    const bool collapse = params.at_equilibrium();
    std::vector<std::vector<std::uint64_t>> per_block(block_count(count, kSampleBlock));
    evolve_samples(dist, count, seed, n, 0, params, options,
                   [&](std::size_t block, std::size_t, std::span<const std::int32_t> net) {
                       std::vector<std::uint64_t> local(bins, 0);
                       for (std::int32_t k : net) ++local[static_cast<std::size_t>(collapse ? offset : k + offset)];
                       per_block[block] = std::move(local);
                   });

    LambdaHistogram hist = LambdaHistogram::empty(n, params.phi(), HistogramKind::Empirical);
    for (const auto& local : per_block)
        for (std::size_t i = 0; i < bins; ++i) hist.counts[i] += local[i];
    hist.total = count;
    for (std::size_t i = 0; i < bins; ++i) {
        hist.mass[i] = static_cast<double>(hist.counts[i]) / static_cast<double>(count);
    }
    return hist;
}

FrFit empirical_fr_fit(const LambdaHistogram& hist, std::uint64_t min_count) {
    if (!(hist.phi > 0.0)) {
        throw std::domain_error("fluctuation relation fit is degenerate at equilibrium (phi = 0)");
    }
    FrFit fit;
    fit.n = hist.n;
    const bool empirical = hist.kind == HistogramKind::Empirical;
    double sum_xy = 0.0;
    double sum_xx = 0.0;
    for (int k = 1; k <= hist.k_max(); ++k) {
        FrFitPoint pt;
        pt.k = k;
        pt.a = hist.lambda_at(k);
        double ratio = 0.0;
        if (empirical) {
            pt.count_plus = hist.count_at(k);
            pt.count_minus = hist.count_at(-k);
            if (pt.count_plus < min_count || pt.count_minus < min_count) continue;
            ratio = static_cast<double>(pt.count_plus) / static_cast<double>(pt.count_minus);
        } else {
            if (!(hist.mass_at(k) > 0.0 && hist.mass_at(-k) > 0.0)) continue;
            ratio = hist.mass_at(k) / hist.mass_at(-k);
        }
        pt.lhs = std::log(ratio) / static_cast<double>(hist.n);
        sum_xy += pt.lhs * pt.a;
        sum_xx += pt.a * pt.a;
        fit.points.push_back(pt);
    }
    fit.slope = fit.points.empty() ? std::numeric_limits<double>::quiet_NaN() : sum_xy / sum_xx;
    fit.underdetermined = fit.points.size() < 2;
    return fit;
}

AttractorClassifier::AttractorClassifier(const Params& params, std::size_t max_iter, double tol)
    : params_(params), max_iter_(max_iter), tol_(tol), rects_(invariant_rectangles(params)),
      pd_(fixed_points(params).pd) {
    if (max_iter < 1) throw std::invalid_argument("classification needs max_iter >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("classification needs tol > 0");
    if (cdcd_exists(params)) cdcd_ = cdcd_attractor(params);
}

std::optional<AttractorId> AttractorClassifier::captured(Point p) const noexcept {
    if (rects_.b_inv.interior_contains(p)) return AttractorId::BInv;
    if (rects_.c_inv.interior_contains(p)) return AttractorId::CInv;
    if (sup_distance(p, pd_) <= tol_) return AttractorId::PD;
    if (cdcd_ && (sup_distance(p, cdcd_->vertical) <= tol_ || sup_distance(p, cdcd_->horizontal) <= tol_)) {
        return AttractorId::CDCD;
    }
    return std::nullopt;
}

AttractorClassifier::Result AttractorClassifier::classify(Point p) const noexcept {
    if (params_.at_equilibrium()) return {AttractorId::Nonconvergent, max_iter_};
    for (std::size_t step = 0; step < max_iter_; ++step) {
        if (auto id = captured(p)) return {*id, step};
        p = apply_l(p, params_);
    }
    return {AttractorId::Nonconvergent, max_iter_};
}

AttractorClassifier::Result classify_attractor(Point p, const Params& params, std::size_t max_iter, double tol) {
    return AttractorClassifier(params, max_iter, tol).classify(p);
}

Point BasinRaster::cell_center(std::size_t row, std::size_t col, std::size_t resolution) noexcept {
    const double res = static_cast<double>(resolution);
    return {(static_cast<double>(col) + 0.5) / res, 1.0 - (static_cast<double>(row) + 0.5) / res};
}

BasinRaster basin_raster(const Params& params, std::size_t resolution, std::size_t max_iter, double tol,
                         const EnsembleOptions& options) {
    if (resolution < 2) throw std::invalid_argument("basin raster needs resolution >= 2");
    const AttractorClassifier classifier(params, max_iter, tol);
    BasinRaster raster;
    raster.resolution = resolution;
    raster.cells.resize(resolution * resolution);
    raster.capture_steps.resize(resolution * resolution);
    parallel_for_blocks(resolution, kRasterRowsPerBlock, resolve_threads(options),
                        [&](std::size_t, std::size_t row_begin, std::size_t row_end) {
                            for (std::size_t row = row_begin; row < row_end; ++row) {
                                for (std::size_t col = 0; col < resolution; ++col) {
                                    const auto r = classifier.classify(BasinRaster::cell_center(row, col, resolution));
                                    raster.cells[row * resolution + col] = r.id;
                                    raster.capture_steps[row * resolution + col] = static_cast<std::uint32_t>(
                                        std::min<std::size_t>(r.steps, std::numeric_limits<std::uint32_t>::max()));
                                }
                            }
                        });
    return raster;
}

BasinMeasures basin_measures(std::span<const AttractorId> classifications) {
    if (classifications.empty()) throw std::invalid_argument("basin_measures needs at least one point");
    std::array<std::uint64_t, 5> counts{};
    for (AttractorId id : classifications) ++counts[static_cast<std::size_t>(id)];
    BasinMeasures out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out.fraction[i] = static_cast<double>(counts[i]) / static_cast<double>(classifications.size());
    }
    return out;
}

SteadyStateResult steady_state_consistency(const Params& params, std::size_t count, std::uint64_t seed,
                                           std::size_t n_long, const DistributionSpec& dist, std::size_t max_iter,
                                           const EnsembleOptions& options) {
    if (count < 1) throw std::invalid_argument("steady-state check needs count >= 1");
    if (n_long < 2) throw std::invalid_argument("steady-state check needs n_long >= 2");
    SteadyStateResult out;
    if (params.at_equilibrium()) {
        // phi = 0: both sides vanish identically and nothing converges.
        out.basins[AttractorId::Nonconvergent] = 1.0;
        out.nonconvergent_fraction = 1.0;
        return out;
    }

    const std::size_t window_start = n_long / 2;
    const std::size_t window = n_long - window_start;
    const AttractorClassifier classifier(params, max_iter);
    std::vector<std::int64_t> block_sums(block_count(count, kSampleBlock), 0);
    std::vector<AttractorId> classes(count);
    evolve_samples(dist, count, seed, n_long, window_start, params, options,
                   [&](std::size_t block, std::size_t begin, std::span<const std::int32_t> net) {
                       std::int64_t sum = 0;
                       for (std::int32_t k : net) sum += k;
                       block_sums[block] = sum;
                       const CounterRng rng(seed);
                       for (std::size_t i = 0; i < net.size(); ++i) {
                           classes[begin + i] = classifier.classify(sample_point(dist, rng, begin + i)).id;
                       }
                   });

    std::int64_t total_net = 0;
    for (std::int64_t s : block_sums) total_net += s;
    out.lhs = params.phi() * static_cast<double>(total_net) /
              (static_cast<double>(window) * static_cast<double>(count));
    out.basins = basin_measures(classes);
    out.nonconvergent_fraction = out.basins[AttractorId::Nonconvergent];
    if (out.nonconvergent_fraction > kMaxNonconvergentFraction) {
        throw ConvergenceError("steady-state check: " + std::to_string(out.nonconvergent_fraction * 100.0) +
                               "% of samples did not converge within " + std::to_string(max_iter) + " steps");
    }
    out.rhs = steady_state_mean_contraction(params, out.basins);
    out.rel_error = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-12);
    return out;
}

} // namespace bakerlab
