#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>
#include <set>

#include "bakerlab/errors.hpp"
#include "bakerlab/measure_exact.hpp"

using namespace bakerlab;

namespace {

constexpr Region kAll[] = {Region::A, Region::B, Region::C, Region::D};

double column_lo(Region r, double ell) {
    const double lo[] = {0.0, ell, 0.5, 0.75};
    return lo[static_cast<int>(r)];
}
double column_hi(Region r, double ell) {
    const double hi[] = {ell, 0.5, 0.75, 1.0};
    return hi[static_cast<int>(r)];
}

// Two-step cylinder area from scratch: after one step x' = 1 - (sy * y + c)
// depends on y only, so the area is width(X) times the length of the y set
// landing in column Y.
double two_step_area(Region x, Region y, double ell) {
    double sy = 0, c = 0;
    switch (x) {
    case Region::A: sy = 0.5, c = 0.5; break;
    case Region::B: sy = 1 - 2 * ell, c = 2 * ell; break;
    case Region::C: sy = 0.5, c = 0.0; break;
    case Region::D: sy = 2 * ell, c = 0.0; break;
    }
    const double y_lo = std::max(0.0, (1 - c - column_hi(y, ell)) / sy);
    const double y_hi = std::min(1.0, (1 - c - column_lo(y, ell)) / sy);
    return (column_hi(x, ell) - column_lo(x, ell)) * std::max(0.0, y_hi - y_lo);
}

std::map<std::string, double> by_itinerary(const std::vector<CylinderSet>& cyl) {
    std::map<std::string, double> m;
    for (const auto& c : cyl) m[c.itinerary.to_string()] += c.measure;
    return m;
}

double total(const std::vector<CylinderSet>& cyl) {
    double s = 0;
    for (const auto& c : cyl) s += c.measure;
    return s;
}

} // namespace

TEST_CASE("one-step cylinders are the columns") {
    const auto cyl = enumerate_cylinders(Params(0.2), 1);
    REQUIRE(cyl.size() == 4);
    const double expected[] = {0.2, 0.3, 0.25, 0.25};
    for (int i = 0; i < 4; ++i) {
        CHECK(cyl[i].itinerary.to_string() == std::string(1, region_char(kAll[i])));
        CHECK(cyl[i].measure == doctest::Approx(expected[i]).epsilon(1e-15));
    }
    const LambdaHistogram h = exact_lambda_distribution(Params(0.2), 1);
    CHECK(h.mass_at(-1) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(h.mass_at(0) == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(h.mass_at(1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("two-step cylinders match independent interval areas") {
    for (double ell : {0.05, 0.1, 0.125, 0.2, 0.24}) {
        const auto m = by_itinerary(enumerate_cylinders(Params(ell), 2));
        for (Region x : kAll) {
            for (Region y : kAll) {
                const std::string key{region_char(x), region_char(y)};
                const double oracle = two_step_area(x, y, ell);
                const double got = m.count(key) ? m.at(key) : 0.0;
                CAPTURE(ell);
                CAPTURE(key);
                CHECK(std::abs(got - oracle) <= 1e-15);
            }
        }
    }
    const auto m = by_itinerary(enumerate_cylinders(Params(0.2), 2));
    CHECK(m.at("DD") == doctest::Approx(0.15625).epsilon(1e-14));
    CHECK(m.at("AA") == doctest::Approx(0.08).epsilon(1e-14));
    CHECK(by_itinerary(enumerate_cylinders(Params(0.1), 2)).at("DD") == doctest::Approx(0.25).epsilon(1e-14));

    const LambdaHistogram h = exact_lambda_distribution(Params(0.2), 2);
    CHECK(std::abs(h.mass_at(2) - 0.15625) <= 1e-15);
    CHECK(std::abs(h.mass_at(-2) - 0.08) <= 1e-15);
}

TEST_CASE("three-step cylinders agree with a grid count") {
    const double ell = 0.2;
    const Params p(ell);
    const auto exact = by_itinerary(enumerate_cylinders(p, 3));
    constexpr int N = 1000;
    std::map<std::string, double> grid;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            Point q{(i + 0.5) / N, (j + 0.5) / N};
            std::string key;
            for (int s = 0; s < 3; ++s) {
                key += region_char(classify_region(q, p));
                q = apply_l(q, p);
            }
            grid[key] += 1.0 / (N * N);
        }
    }
    std::set<std::string> keys;
    for (const auto& [k, v] : exact) keys.insert(k);
    for (const auto& [k, v] : grid) keys.insert(k);
    for (const auto& k : keys) {
        CAPTURE(k);
        const double a = exact.count(k) ? exact.at(k) : 0.0;
        const double b = grid.count(k) ? grid.at(k) : 0.0;
        CHECK(std::abs(a - b) <= 4e-3);
    }
}

TEST_CASE("partition of unity") {
    for (double ell : {0.05, 0.1, 0.2, 0.24}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            CAPTURE(ell);
            CAPTURE(n);
            CHECK(std::abs(total(enumerate_cylinders(Params(ell), n)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("refinement consistency and lexicographic order") {
    for (double ell : {0.05, 0.2, 0.24}) {
        const Params p(ell);
        for (std::size_t n = 1; n <= 10; ++n) {
            const auto coarse = enumerate_cylinders(p, n);
            const auto fine = enumerate_cylinders(p, n + 1);
            std::map<std::string, double> marginal;
            for (const auto& c : fine) marginal[c.itinerary.to_string().substr(0, n)] += c.measure;
            for (const auto& c : coarse) {
                CHECK(std::abs(marginal[c.itinerary.to_string()] - c.measure) <= 1e-12);
            }
            for (std::size_t i = 1; i < fine.size(); ++i) CHECK(fine[i - 1].itinerary < fine[i].itinerary);
        }
    }
}

TEST_CASE("transition feasibility") {
    for (double ell : {0.01, 0.05, 0.1, 0.12, 0.125, 0.13, 0.2, 0.24}) {
        std::set<std::string> pairs;
        for (const auto& c : enumerate_cylinders(Params(ell), 2)) {
            if (c.measure > 1e-14) pairs.insert(c.itinerary.to_string());
        }
        CAPTURE(ell);
        CHECK(pairs.count("AA"));
        CHECK(pairs.count("AB"));
        CHECK_FALSE(pairs.count("AC"));
        CHECK_FALSE(pairs.count("AD"));
        CHECK_FALSE(pairs.count("CA"));
        CHECK_FALSE(pairs.count("CB"));
        CHECK(pairs.count("CC"));
        CHECK(pairs.count("CD"));
        CHECK_FALSE(pairs.count("DA"));
        CHECK_FALSE(pairs.count("DB"));
        CHECK(pairs.count("DC") == (ell > 0.125 ? 1u : 0u));
        CHECK(pairs.count("DD"));
        CHECK(pairs.count("BA"));
        CHECK(pairs.count("BB"));
        CHECK(pairs.count("BC"));
        // B reaches D exactly when 1 - 2 ell > 3/4.
        CHECK(pairs.count("BD") == (ell < 0.125 ? 1u : 0u));
    }
}

TEST_CASE("fluctuation relation at n = 1 and n = 2") {
    for (double ell : {0.01, 0.05, 0.1, 0.2, 0.24, 0.249}) {
        const auto rows = exact_fr_curve(Params(ell), 1);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].k == 1);
        CHECK(std::abs(rows[0].deviation) <= 1e-14);
    }
    const Params p(0.2);
    const auto rows = exact_fr_curve(p, 2);
    REQUIRE(rows.size() == 2);
    const double lhs = 0.5 * std::log(0.15625 / 0.08);
    CHECK(std::abs(rows[1].lhs - lhs) <= 1e-9);
    CHECK(std::abs(rows[1].a - p.phi()) <= 1e-15);
    CHECK(std::abs(rows[1].deviation - (lhs - p.phi())) <= 1e-9);
    CHECK(rows[1].deviation > 0.1);
    CHECK_THROWS_AS(exact_fr_curve(Params(0.25), 2), std::domain_error);
}

TEST_CASE("conjugate pairing and witnesses") {
    const Params p(0.2);
    for (std::size_t n = 1; n <= 12; ++n) {
        const LambdaHistogram h = exact_lambda_distribution(p, n);
        for (int k = h.k_min(); k <= h.k_max(); ++k) {
            if (h.mass_at(k) > 0.0) {
                CAPTURE(n);
                CAPTURE(k);
                REQUIRE(h.mass_at(-k) > 0.0);
                const ConjugateWitness w = conjugate_cylinder_exists(p, n, k);
                REQUIRE(w.exists);
                const LambdaAverage avg = lambda_time_average(w.witness, n, MapKind::L, p);
                CHECK(avg.net_count == -k);
                CHECK(avg.value == lambda_from_count(-k, n, p.phi()));
            }
        }
    }
    const ConjugateWitness aa = conjugate_cylinder_exists(p, 2, 2);
    REQUIRE(aa.exists);
    CHECK(aa.itinerary.to_string() == "AA");
    CHECK(aa.witness.x < 0.2);
    CHECK(aa.witness.y > 0.6);
    CHECK(conjugate_cylinder_exists(p, 1, 0).exists);
    CHECK_FALSE(conjugate_cylinder_exists(p, 2, 3).exists);
}

TEST_CASE("equilibrium histogram has a single value") {
    for (std::size_t n : {1u, 4u, 9u}) {
        const LambdaHistogram h = exact_lambda_distribution(Params(0.25), n);
        CHECK(std::abs(h.mass_at(0) - 1.0) <= 1e-12);
        CHECK(std::abs(h.total_mass() - 1.0) <= 1e-12);
    }
    // The cylinders themselves still carry their D - A counts.
    int nonzero = 0;
    for (const auto& c : enumerate_cylinders(Params(0.25), 3)) nonzero += c.itinerary.net_count() != 0;
    CHECK(nonzero > 0);
}

TEST_CASE("enumeration guards") {
    const Params p(0.2);
    CHECK_THROWS_AS(enumerate_cylinders(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_cylinders(p, 15), std::invalid_argument);
    EnumerationLimits deep;
    deep.n_max = 40;
    CHECK(std::abs(total(enumerate_cylinders(p, 40, deep)) - 1.0) <= 1e-12);
    EnumerationLimits tight;
    tight.max_cylinders = 10;
    CHECK_THROWS_AS(enumerate_cylinders(p, 4, tight), ResourceLimitError);
}

TEST_CASE("steady-state mean contraction formula") {
    BasinMeasures m;
    m[AttractorId::PD] = 0.8;
    CHECK(steady_state_mean_contraction(Params(0.1), m) == doctest::Approx(0.8 * -std::log(0.4)).epsilon(1e-15));
    m[AttractorId::PD] = 0.5;
    m[AttractorId::CDCD] = 0.3;
    CHECK(steady_state_mean_contraction(Params(0.2), m) == doctest::Approx(0.65 * -std::log(0.8)).epsilon(1e-15));
    CHECK(steady_state_mean_contraction(Params(0.25), m) == 0.0);
    m[AttractorId::CInv] = 0.5;
    CHECK_THROWS_AS(steady_state_mean_contraction(Params(0.2), m), std::invalid_argument);
    BasinMeasures neg;
    neg[AttractorId::PD] = -0.1;
    CHECK_THROWS_AS(steady_state_mean_contraction(Params(0.2), neg), std::invalid_argument);
}

TEST_CASE("itinerary packing") {
    Itinerary it("ABCDDCBAABCDDCBAABCDDCBAABCDDCBAABC");
    CHECK(it.size() == 35);
    CHECK(it.to_string() == "ABCDDCBAABCDDCBAABCDDCBAABCDDCBAABC");
    CHECK(it.net_count() == -1);
    CHECK(Itinerary("AB") < Itinerary("AC"));
    CHECK(Itinerary("A") < Itinerary("AA"));
    CHECK(Itinerary("DDA").net_count() == 1);
    CHECK_THROWS_AS(Itinerary("AX"), std::invalid_argument);
}
