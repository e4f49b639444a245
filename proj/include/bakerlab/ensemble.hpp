#pragma once

// Monte Carlo ensembles: empirical contraction histograms, fluctuation
// relation fits, attractor classification and basin rasters.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bakerlab/analysis.hpp"
#include "bakerlab/attractor.hpp"
#include "bakerlab/histogram.hpp"
#include "bakerlab/kernels.hpp"
#include "bakerlab/map_core.hpp"
#include "bakerlab/sampling.hpp"

namespace bakerlab {

struct EnsembleOptions {
    unsigned threads = 0; // 0: BAKERLAB_THREADS or hardware concurrency
    std::optional<kernels::Backend> backend; // default: kernels::default_backend()
};

/// Evolves `count` samples n steps under L and bins their net counts.
LambdaHistogram ensemble_lambda_histogram(const DistributionSpec& dist, std::size_t count, std::uint64_t seed,
                                          std::size_t n, const Params& params, const EnsembleOptions& options = {});

struct FrFitPoint {
    int k = 0;
    double a = 0.0;
    double lhs = 0.0;
    std::uint64_t count_plus = 0;
    std::uint64_t count_minus = 0;
};

struct FrFit {
    std::vector<FrFitPoint> points;
    double slope = 0.0; // least squares through the origin; NaN without points
    std::size_t n = 0;
    /// Fewer than two qualifying bins; slope, if any, rests on one point.
    bool underdetermined = true;
};

inline constexpr std::uint64_t kDefaultMinCount = 10;

/// Uses bins k > 0 whose +k and -k sides both reach min_count (empirical)
/// or are both positive (exact). Throws std::domain_error when phi = 0.
FrFit empirical_fr_fit(const LambdaHistogram& hist, std::uint64_t min_count = kDefaultMinCount);

inline constexpr double kDefaultClassifyTol = 1e-9;
inline constexpr std::size_t kDefaultMaxIter = 100000;

/// Precomputed targets for classify_attractor at one ell.
class AttractorClassifier {
public:
    AttractorClassifier(const Params& params, std::size_t max_iter = kDefaultMaxIter,
                        double tol = kDefaultClassifyTol);

    struct Result {
        AttractorId id = AttractorId::Nonconvergent;
        std::size_t steps = 0; // iterations before capture; max_iter when nonconvergent
    };

    Result classify(Point p) const noexcept;
    const Params& params() const noexcept { return params_; }

private:
    std::optional<AttractorId> captured(Point p) const noexcept;

    Params params_;
    std::size_t max_iter_;
    double tol_;
    InvariantRectangles rects_;
    Point pd_;
    std::optional<CdcdAttractor> cdcd_;
};

/// Capture tests use the open interiors of B_inv and C_inv. At equilibrium
/// every point is reported nonconvergent.
AttractorClassifier::Result classify_attractor(Point p, const Params& params, std::size_t max_iter = kDefaultMaxIter,
                                               double tol = kDefaultClassifyTol);

/// Classification of the cell centres of a resolution x resolution grid.
/// Row 0 is the top (y near 1): cell (row, col) has centre
/// ((col + 1/2) / res, 1 - (row + 1/2) / res).
struct BasinRaster {
    std::size_t resolution = 0;
    std::vector<AttractorId> cells;
    std::vector<std::uint32_t> capture_steps;

    AttractorId at(std::size_t row, std::size_t col) const noexcept { return cells[row * resolution + col]; }
    static Point cell_center(std::size_t row, std::size_t col, std::size_t resolution) noexcept;
};

BasinRaster basin_raster(const Params& params, std::size_t resolution, std::size_t max_iter = kDefaultMaxIter,
                         double tol = kDefaultClassifyTol, const EnsembleOptions& options = {});

/// Throws std::invalid_argument for an empty input.
BasinMeasures basin_measures(std::span<const AttractorId> classifications);

struct SteadyStateResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
    BasinMeasures basins;
    double nonconvergent_fraction = 0.0;
};

inline constexpr double kMaxNonconvergentFraction = 1e-3;

/// Compares the ensemble average of Lambda over the last n_long / 2 steps
/// with phi * (mu(P_D) + mu(CDCD) / 2), the basin measures being estimated
/// from the same samples. Throws ConvergenceError when more than 0.1% of
/// the samples fail to converge.
SteadyStateResult steady_state_consistency(const Params& params, std::size_t count, std::uint64_t seed,
                                           std::size_t n_long, const DistributionSpec& dist = {},
                                           std::size_t max_iter = kDefaultMaxIter,
                                           const EnsembleOptions& options = {});

} // namespace bakerlab
