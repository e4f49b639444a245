#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bakerlab/map_core.hpp"
#include "bakerlab/sampling.hpp"

namespace bakerlab::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kResource = 3 };

/// Every knob any subcommand reads. Unused fields are ignored.
struct RunConfig {
    std::string subcommand;
    double ell = 0.2;
    std::size_t steps = 10;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    DistributionSpec dist;
    std::size_t resolution = 512;
    std::size_t max_iter = 100'000;
    double tol = 1e-9;
    std::size_t n_max = 14;
    std::uint64_t min_count = 10;
    double x0 = 0.0;
    double y0 = 0.0;
    MapKind map = MapKind::L;
    std::string set = "PD";
    bool numeric = false;
    std::string out;     // empty or "-" means stdout
    std::string summary; // secondary JSON output
    std::string format = "csv";
};

/// Throws std::invalid_argument naming the first bad field.
void validate(const RunConfig& config);

/// Executes a validated config. Results go to config.out / config.summary,
/// or to `out` when no path is given. Throws on failure.
void run(const RunConfig& config, std::ostream& out);

/// Parses argv, validates, runs, and maps failures to exit codes with a
/// single-line diagnostic on `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.17g, with inf / -inf / nan spelled out.
std::string format_real(double v);

/// Writes `bytes` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& bytes);

} // namespace bakerlab::cli
