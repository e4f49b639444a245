#include "bakerlab/cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bakerlab/analysis.hpp"
#include "bakerlab/ensemble.hpp"
#include "bakerlab/errors.hpp"
#include "bakerlab/measure_exact.hpp"

namespace bakerlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSubcommands[] = {"orbit",    "invariants", "lyapunov",    "fr-exact",
                                        "cylinders", "fr-mc",     "basins",      "steady-state"};

// Gray levels of the basin raster.
unsigned char gray_level(AttractorId id) noexcept {
    switch (id) {
    case AttractorId::Nonconvergent: return 0;
    case AttractorId::PD: return 64;
    case AttractorId::CDCD: return 128;
    case AttractorId::BInv: return 192;
    case AttractorId::CInv: return 255;
    }
    return 0;
}

[[noreturn]] void invalid(const std::string& message) { throw std::invalid_argument(message); }

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

void emit(const std::string& path, const std::string& bytes, std::ostream& out) {
    if (is_stdout(path)) {
        out << bytes;
        out.flush();
        if (!out) throw IoError("failed writing to standard output");
    } else {
        write_file_atomic(path, bytes);
    }
}

Json point_json(Point p) { return Json{{"x", p.x}, {"y", p.y}}; }

Json rect_json(const Rectangle& r) {
    return Json{{"x_lo", r.x_lo}, {"x_hi", r.x_hi}, {"y_lo", r.y_lo}, {"y_hi", r.y_hi}};
}

Json pair_json(const LyapunovPair& p) { return Json{{"lambda_x", p.lambda_x}, {"lambda_y", p.lambda_y}}; }

// Non-finite values become strings; JSON has no literal for them.
Json real_json(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

Json basins_json(const BasinMeasures& m) {
    Json j = Json::object();
    for (AttractorId id : kAllAttractors) j[std::string(attractor_name(id))] = m[id];
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// A table rendered as CSV (header + rows) or as a JSON array of objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    struct Cell {
        std::string text;
        Json value;
    };

    static Cell real(double v) { return {format_real(v), real_json(v)}; }
    static Cell integer(long long v) { return {std::to_string(v), v}; }
    static Cell text(const std::string& s) { return {s, s}; }

    void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            Json arr = Json::array();
            for (const auto& row : rows_) {
                Json obj = Json::object();
                for (std::size_t c = 0; c < columns_.size(); ++c) obj[columns_[c]] = row[c].value;
                arr.push_back(std::move(obj));
            }
            return dump(arr);
        }
        std::string s;
        for (std::size_t c = 0; c < columns_.size(); ++c) s += (c ? "," : "") + columns_[c];
        s += "\n";
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + row[c].text;
            s += "\n";
        }
        return s;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

void run_orbit(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const Orbit o = orbit({cfg.x0, cfg.y0}, cfg.steps, cfg.map, params);
    Table table({"step", "x", "y", "region", "lambda_cumavg"});
    int net = 0;
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        const Region r = classify_region(o.points[k], params);
        net += net_increment(r);
        table.add({Table::integer(static_cast<long long>(k)), Table::real(o.points[k].x), Table::real(o.points[k].y),
                   Table::text(std::string(1, region_char(r))),
                   Table::real(lambda_from_count(net, k + 1, params.phi()))});
    }
    emit(cfg.out, table.render(cfg.format), out);
}

void run_invariants(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const FixedPoints fp = fixed_points(params);
    const InvariantRectangles rects = invariant_rectangles(params);
    const auto table = steady_state_lambda_table(params);
    Json j;
    j["ell"] = params.ell();
    j["phi"] = params.phi();
    j["N_ell"] = table.size();
    j["fixed_points"] = Json{{"P_A", point_json(fp.pa)}, {"P_D", point_json(fp.pd)}};
    if (cdcd_exists(params)) {
        const AbOrbit ab = ab_orbit(params);
        const CdcdAttractor cd = cdcd_attractor(params);
        j["ab_orbit"] = Json{{"in_A", point_json(ab.in_a)}, {"in_B", point_json(ab.in_b)}};
        j["cdcd"] = Json{{"x_line", cd.x_line},
                         {"y_line", cd.y_line},
                         {"vertical", rect_json(cd.vertical)},
                         {"horizontal", rect_json(cd.horizontal)}};
    } else {
        j["ab_orbit"] = nullptr;
        j["cdcd"] = nullptr;
    }
    j["B_inv"] = rect_json(rects.b_inv);
    j["C_inv"] = rect_json(rects.c_inv);
    Json rows = Json::array();
    for (const auto& row : table) rows.push_back(Json{{"set", invariant_set_name(row.set)}, {"lambda", row.lambda}});
    j["steady_state_lambda"] = rows;
    emit(cfg.out, dump(j), out);
}

Point representative_point(InvariantSetId set, const Params& params) {
    switch (set) {
    case InvariantSetId::PA: return fixed_points(params).pa;
    case InvariantSetId::PD: return fixed_points(params).pd;
    case InvariantSetId::AB: return ab_orbit(params).in_a;
    case InvariantSetId::CDCD: return {cdcd_attractor(params).x_line, 0.25};
    case InvariantSetId::BInv: return invariant_rectangles(params).b_inv.center();
    case InvariantSetId::CInv: break;
    }
    return invariant_rectangles(params).c_inv.center();
}

void run_lyapunov(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const InvariantSetId set = invariant_set_from_name(cfg.set);
    Json j;
    j["ell"] = params.ell();
    j["set"] = invariant_set_name(set);
    j["analytic"] = pair_json(lyapunov_analytic(set, params));
    if (cfg.numeric) {
        const Point p = representative_point(set, params);
        Json num = pair_json(lyapunov_finite_time(p, cfg.steps, params));
        num["steps"] = cfg.steps;
        num["point"] = point_json(p);
        j["numeric"] = num;
    }
    emit(cfg.out, dump(j), out);
}

void run_fr_exact(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    EnumerationLimits limits;
    limits.n_max = cfg.n_max;
    Table table({"k", "A", "P_plus", "P_minus", "lhs", "deviation"});
    for (const FrRow& r : exact_fr_curve(params, cfg.steps, limits)) {
        table.add({Table::integer(r.k), Table::real(r.a), Table::real(r.p_plus), Table::real(r.p_minus),
                   Table::real(r.lhs), Table::real(r.deviation)});
    }
    emit(cfg.out, table.render(cfg.format), out);
}

void run_cylinders(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    EnumerationLimits limits;
    limits.n_max = cfg.n_max;
    Table table({"itinerary", "measure", "x_lo", "x_hi", "y_lo", "y_hi"});
    for_each_cylinder(params, cfg.steps, limits, [&](const CylinderSet& c) {
        table.add({Table::text(c.itinerary.to_string()), Table::real(c.measure), Table::real(c.image.x_lo),
                   Table::real(c.image.x_hi), Table::real(c.image.y_lo), Table::real(c.image.y_hi)});
    });
    emit(cfg.out, table.render(cfg.format), out);
}

std::string summary_path(const RunConfig& cfg) {
    if (!cfg.summary.empty()) return cfg.summary;
    if (!is_stdout(cfg.out)) return cfg.out + ".json";
    return {};
}

void run_fr_mc(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const LambdaHistogram hist = ensemble_lambda_histogram(cfg.dist, cfg.samples, cfg.seed, cfg.steps, params);
    const FrFit fit = empirical_fr_fit(hist, cfg.min_count);

    Table table({"k", "A", "count_plus", "count_minus", "lhs"});
    for (int k = 1; k <= hist.k_max(); ++k) {
        const auto plus = hist.count_at(k);
        const auto minus = hist.count_at(-k);
        if (plus == 0 && minus == 0) continue;
        double lhs = std::numeric_limits<double>::quiet_NaN();
        if (plus > 0 && minus > 0) {
            lhs = std::log(static_cast<double>(plus) / static_cast<double>(minus)) / static_cast<double>(hist.n);
        } else {
            lhs = plus > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        }
        table.add({Table::integer(k), Table::real(hist.lambda_at(k)), Table::integer(static_cast<long long>(plus)),
                   Table::integer(static_cast<long long>(minus)), Table::real(lhs)});
    }

    Json s;
    s["ell"] = params.ell();
    s["steps"] = cfg.steps;
    s["samples"] = cfg.samples;
    s["seed"] = cfg.seed;
    s["distribution"] = cfg.dist.describe();
    s["min_count"] = cfg.min_count;
    s["slope"] = real_json(fit.slope);
    s["qualifying_bins"] = fit.points.size();
    s["underdetermined"] = fit.underdetermined;

    const std::string summary = summary_path(cfg);
    emit(cfg.out, table.render(cfg.format), out);
    if (summary.empty()) {
        std::cerr << dump(s);
    } else {
        write_file_atomic(summary, dump(s));
    }
}

void run_basins(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const BasinRaster raster = basin_raster(params, cfg.resolution, cfg.max_iter, cfg.tol);
    std::string pgm = "P5\n" + std::to_string(raster.resolution) + " " + std::to_string(raster.resolution) + "\n255\n";
    pgm.reserve(pgm.size() + raster.cells.size());
    for (AttractorId id : raster.cells) pgm.push_back(static_cast<char>(gray_level(id)));
    const std::string summary = summary_path(cfg);
    emit(cfg.out, pgm, out);

    Json s;
    s["ell"] = params.ell();
    s["resolution"] = cfg.resolution;
    s["max_iter"] = cfg.max_iter;
    s["tol"] = cfg.tol;
    s["basin_measures"] = basins_json(basin_measures(raster.cells));
    if (summary.empty()) {
        std::cerr << dump(s);
    } else {
        write_file_atomic(summary, dump(s));
    }
}

void run_steady_state(const RunConfig& cfg, std::ostream& out) {
    const Params params(cfg.ell);
    const SteadyStateResult r = steady_state_consistency(params, cfg.samples, cfg.seed, cfg.steps, cfg.dist, cfg.max_iter);
    Json j;
    j["ell"] = params.ell();
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["steps"] = cfg.steps;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["rel_error"] = r.rel_error;
    j["nonconvergent_fraction"] = r.nonconvergent_fraction;
    j["basin_measures"] = basins_json(r.basins);
    emit(cfg.out, dump(j), out);
}

DistributionSpec parse_distribution(const std::string& name, double a, double b, double cx, double cy, double s) {
    if (name == "uniform") return DistributionSpec::uniform();
    if (name == "power") return DistributionSpec::power(a, b);
    if (name == "gaussian" || name == "gaussian_clipped") return DistributionSpec::gaussian_clipped(cx, cy, s);
    invalid("--dist must be uniform, power or gaussian_clipped, got '" + name + "'");
}

} // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    if (path.empty()) throw IoError("no output path given");
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp + "' for writing");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        f.close();
        if (!f) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

void validate(const RunConfig& c) {
    const auto& names = kSubcommands;
    if (std::find(std::begin(names), std::end(names), c.subcommand) == std::end(names)) {
        invalid("unknown subcommand '" + c.subcommand + "'");
    }
    if (!(c.ell > 0.0 && c.ell <= 0.25)) invalid("--ell must lie in (0, 0.25]");
    if (c.format != "csv" && c.format != "json") invalid("--format must be csv or json");
    const std::string& s = c.subcommand;
    if (s == "orbit") {
        if (!in_unit_square({c.x0, c.y0})) invalid("--x0 and --y0 must lie in [0, 1]");
    }
    if (s == "lyapunov") {
        invariant_set_from_name(c.set);
        if (c.numeric && (c.steps < 2 || c.steps % 2 != 0)) invalid("--steps must be even and >= 2 for --numeric");
    }
    if (s == "fr-exact" || s == "cylinders") {
        if (c.steps < 1 || c.steps > c.n_max) {
            invalid("--steps must lie in [1, " + std::to_string(c.n_max) + "]; raise --n-max to go further");
        }
    }
    if (s == "fr-exact" || s == "fr-mc") {
        if (c.ell == 0.25) invalid("fluctuation relation needs ell < 0.25 (phi = 0 at equilibrium)");
    }
    if (s == "fr-mc" || s == "steady-state") {
        if (c.samples < 1) invalid("--samples must be >= 1");
        if (c.steps < 1) invalid("--steps must be >= 1");
        c.dist.validate();
    }
    if (s == "steady-state" && c.steps < 2) invalid("--steps must be >= 2");
    if (s == "basins" || s == "steady-state") {
        if (c.max_iter < 1) invalid("--max-iter must be >= 1");
        if (!(c.tol > 0.0)) invalid("--tol must be > 0");
    }
    if (s == "basins") {
        if (c.resolution < 2) invalid("--resolution must be >= 2");
    }
}

void run(const RunConfig& config, std::ostream& out) {
    const std::string& s = config.subcommand;
    if (s == "orbit") return run_orbit(config, out);
    if (s == "invariants") return run_invariants(config, out);
    if (s == "lyapunov") return run_lyapunov(config, out);
    if (s == "fr-exact") return run_fr_exact(config, out);
    if (s == "cylinders") return run_cylinders(config, out);
    if (s == "fr-mc") return run_fr_mc(config, out);
    if (s == "basins") return run_basins(config, out);
    if (s == "steady-state") return run_steady_state(config, out);
    invalid("unknown subcommand '" + s + "'");
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string map_name = "L";
    std::string dist_name = "uniform";
    double a = 1.0, b = 0.0, cx = 0.5, cy = 0.5, sd = 0.25;

    CLI::App app{"Simulation and exact-measure laboratory for a dissipative baker-like map"};
    app.require_subcommand(1);

    auto add_ell = [&](CLI::App* sub) { sub->add_option("--ell", cfg.ell, "map parameter in (0, 0.25]")->required(); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("-o,--out", cfg.out, "output path (default stdout)"); };
    auto add_format = [&](CLI::App* sub) { sub->add_option("--format", cfg.format, "csv or json"); };
    auto add_dist = [&](CLI::App* sub) {
        sub->add_option("--dist", dist_name, "uniform, power or gaussian_clipped");
        sub->add_option("--a", a, "power: exponent of x");
        sub->add_option("--b", b, "power: exponent of y");
        sub->add_option("--cx", cx, "gaussian_clipped: centre x");
        sub->add_option("--cy", cy, "gaussian_clipped: centre y");
        sub->add_option("--s", sd, "gaussian_clipped: standard deviation");
    };

    auto* orbit_cmd = app.add_subcommand("orbit", "iterate one point, CSV per step");
    add_ell(orbit_cmd);
    orbit_cmd->add_option("--x0", cfg.x0)->required();
    orbit_cmd->add_option("--y0", cfg.y0)->required();
    orbit_cmd->add_option("--steps", cfg.steps)->required();
    orbit_cmd->add_option("--map", map_name, "M or L");
    add_out(orbit_cmd);
    add_format(orbit_cmd);

    auto* inv_cmd = app.add_subcommand("invariants", "closed-form invariant sets, JSON");
    add_ell(inv_cmd);
    add_out(inv_cmd);

    auto* lyap_cmd = app.add_subcommand("lyapunov", "Lyapunov exponents of an invariant set, JSON");
    add_ell(lyap_cmd);
    lyap_cmd->add_option("--set", cfg.set, "PA, PD, AB, CDCD, BINV or CINV")->required();
    lyap_cmd->add_flag("--numeric", cfg.numeric, "also compute finite-time exponents");
    lyap_cmd->add_option("--steps", cfg.steps, "even step count for --numeric");
    add_out(lyap_cmd);

    auto* fr_exact_cmd = app.add_subcommand("fr-exact", "exact fluctuation-relation curve, CSV");
    add_ell(fr_exact_cmd);
    fr_exact_cmd->add_option("--steps", cfg.steps)->required();
    fr_exact_cmd->add_option("--n-max", cfg.n_max, "enumeration depth guard (default 14)");
    add_out(fr_exact_cmd);
    add_format(fr_exact_cmd);

    auto* cyl_cmd = app.add_subcommand("cylinders", "itinerary cylinders with exact measures, CSV");
    add_ell(cyl_cmd);
    cyl_cmd->add_option("--steps", cfg.steps)->required();
    cyl_cmd->add_option("--n-max", cfg.n_max, "enumeration depth guard (default 14)");
    add_out(cyl_cmd);
    add_format(cyl_cmd);

    auto* fr_mc_cmd = app.add_subcommand("fr-mc", "Monte Carlo fluctuation-relation bins, CSV + JSON summary");
    add_ell(fr_mc_cmd);
    fr_mc_cmd->add_option("--steps", cfg.steps)->required();
    fr_mc_cmd->add_option("--samples", cfg.samples);
    fr_mc_cmd->add_option("--seed", cfg.seed);
    fr_mc_cmd->add_option("--min-count", cfg.min_count);
    fr_mc_cmd->add_option("--summary", cfg.summary, "JSON summary path (default <out>.json, else stderr)");
    add_dist(fr_mc_cmd);
    add_out(fr_mc_cmd);
    add_format(fr_mc_cmd);

    auto* basins_cmd = app.add_subcommand("basins", "basin raster (PGM) + basin measures (JSON)");
    add_ell(basins_cmd);
    basins_cmd->add_option("--resolution", cfg.resolution);
    basins_cmd->add_option("--max-iter", cfg.max_iter);
    basins_cmd->add_option("--tol", cfg.tol);
    basins_cmd->add_option("--summary", cfg.summary, "JSON summary path (default <out>.json, else stderr)");
    add_out(basins_cmd);

    auto* ss_cmd = app.add_subcommand("steady-state", "ensemble vs basin-formula mean contraction, JSON");
    add_ell(ss_cmd);
    ss_cmd->add_option("--samples", cfg.samples);
    ss_cmd->add_option("--seed", cfg.seed);
    ss_cmd->add_option("--steps", cfg.steps)->required();
    ss_cmd->add_option("--max-iter", cfg.max_iter);
    add_dist(ss_cmd);
    add_out(ss_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (map_name == "L") {
            cfg.map = MapKind::L;
        } else if (map_name == "M") {
            cfg.map = MapKind::M;
        } else {
            invalid("--map must be M or L");
        }
        cfg.dist = parse_distribution(dist_name, a, b, cx, cy, sd);
        validate(cfg);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        run(cfg, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}

} // namespace bakerlab::cli
