#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "bakerlab/analysis.hpp"

using namespace bakerlab;

namespace {

double sup_dist(Point a, Point b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

Point iterate(Point p, int steps, const Params& params) {
    for (int i = 0; i < steps; ++i) p = apply_l(p, params);
    return p;
}

} // namespace

TEST_CASE("fixed points") {
    const FixedPoints f = fixed_points(Params(0.2));
    CHECK(sup_dist(f.pa, {1.0 / 9, 7.0 / 9}) <= 1e-15);
    CHECK(sup_dist(f.pd, {8.0 / 9, 5.0 / 18}) <= 1e-15);
    CHECK(sup_dist(fixed_points(Params(0.25)).pa, {0.125, 0.75}) <= 1e-15);
    for (int i = 1; i <= 50; ++i) {
        const Params p(0.25 * i / 50.0);
        const FixedPoints fp = fixed_points(p);
        CHECK(sup_dist(apply_l(fp.pa, p), fp.pa) < 1e-14);
        CHECK(sup_dist(apply_l(fp.pd, p), fp.pd) < 1e-14);
    }
}

TEST_CASE("AB 2-cycle and CDCD lines close") {
    const Params p(0.2);
    const AbOrbit ab = ab_orbit(p);
    CHECK(sup_dist(ab.in_a, {0.12, 0.6 / 2.2}) <= 1e-15);
    CHECK(sup_dist(ab.in_b, {0.8 / 2.2, 0.8}) <= 1e-15);
    CHECK(sup_dist(apply_l(ab.in_a, p), ab.in_b) <= 1e-12);

    const CdcdAttractor cd = cdcd_attractor(p);
    CHECK(cd.x_line == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(cd.y_line == doctest::Approx(5.0 / 6).epsilon(1e-15));
    const Point start{2.0 / 3, 0.3};
    const Point visits[] = {{0.85, 5.0 / 6}, {2.0 / 3, 0.2}, {0.9, 5.0 / 6}, start};
    Point z = start;
    for (Point v : visits) {
        z = apply_l(z, p);
        CHECK(sup_dist(z, v) <= 1e-12);
    }
    CHECK(cdcd_attractor(Params(0.125)).x_line == doctest::Approx(0.75).epsilon(1e-15));

    for (double ell : {0.13, 0.2, 0.24}) {
        const Params q(ell);
        const AbOrbit o = ab_orbit(q);
        CHECK(sup_dist(iterate(o.in_a, 2, q), o.in_a) <= 1e-12);
        const CdcdAttractor c = cdcd_attractor(q);
        for (int i = 0; i < 20; ++i) {
            const Point s{c.x_line, 0.5 * (i + 0.5) / 20.0};
            CHECK(sup_dist(iterate(s, 4, q), s) <= 1e-12);
        }
    }
}

TEST_CASE("CDCD threshold") {
    for (double ell : {0.01, 0.05, 0.1, 0.12}) {
        const Params p(ell);
        const double x_bar = (1 + ell) / (1 + 4 * ell);
        CHECK(x_bar >= 0.75);
        CHECK(x_bar <= 1.0);
        CHECK_FALSE(cdcd_exists(p));
        CHECK_THROWS_AS(cdcd_attractor(p), std::domain_error);
        CHECK_THROWS_AS(lyapunov_analytic(InvariantSetId::AB, p), std::domain_error);
        CHECK(steady_state_lambda_table(p).size() == 4);
    }
    CHECK(cdcd_exists(Params(0.125)));
}

TEST_CASE("invariant rectangles") {
    const InvariantRectangles r = invariant_rectangles(Params(0.2));
    CHECK(r.b_inv.x_lo == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.b_inv.x_hi == 0.5);
    CHECK(r.b_inv.y_lo == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(r.b_inv.y_hi == 0.5);
    CHECK(r.c_inv.x_lo == 0.5);
    CHECK(r.c_inv.x_hi == 0.75);
    CHECK(r.c_inv.y_lo == 0.5);
    CHECK(r.c_inv.y_hi == 1.0);

    const InvariantRectangles eq = invariant_rectangles(Params(0.25));
    CHECK(eq.b_inv.area() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(eq.c_inv.area() == 0.125);

    const Params p(0.2);
    const Point b_path[] = {{0.42, 5.0 / 12}, {0.35, 11.0 / 30}, {0.38, 0.25}, {0.45, 0.3}};
    Point z{0.45, 0.3};
    for (Point v : b_path) {
        z = apply_l(z, p);
        CHECK(sup_dist(z, v) <= 1e-12);
    }

    for (double ell : {0.01, 0.1, 0.2, 0.24}) {
        const Params q(ell);
        const InvariantRectangles rects = invariant_rectangles(q);
        CHECK(rects.b_inv.area() == doctest::Approx(ell * ell / (1 - 2 * ell)).epsilon(1e-12));
        for (const Rectangle& rect : {rects.b_inv, rects.c_inv}) {
            for (int i = 0; i < 50; ++i) {
                for (int j = 0; j < 50; ++j) {
                    const Point s{rect.x_lo + rect.width() * (i + 0.5) / 50,
                                  rect.y_lo + rect.height() * (j + 0.5) / 50};
                    Point w = s;
                    for (int k = 0; k < 4; ++k) {
                        w = apply_l(w, q);
                        REQUIRE(rect.contains(w));
                    }
                    REQUIRE(sup_dist(w, s) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("analytic Lyapunov exponents") {
    const Params p(0.2);
    const LyapunovPair pa = lyapunov_analytic(InvariantSetId::PA, p);
    CHECK(pa.lambda_x == doctest::Approx(0.5 * std::log(1.25)).epsilon(1e-15));
    CHECK(pa.lambda_y == pa.lambda_x);
    const LyapunovPair ab = lyapunov_analytic(InvariantSetId::AB, p);
    CHECK(ab.lambda_x == doctest::Approx(0.5 * std::log(1.5)).epsilon(1e-14));
    CHECK(ab.lambda_y == doctest::Approx(0.5 * std::log(1 / 1.2)).epsilon(1e-14));
    for (InvariantSetId id : {InvariantSetId::PA, InvariantSetId::PD, InvariantSetId::AB, InvariantSetId::CDCD,
                              InvariantSetId::BInv, InvariantSetId::CInv}) {
        const LyapunovPair z = lyapunov_analytic(id, Params(0.25));
        CHECK(z.lambda_x == 0.0);
        CHECK(z.lambda_y == 0.0);
    }
    for (int i = 1; i < 50; ++i) {
        const Params q(0.25 * i / 50.0);
        const LyapunovPair a = lyapunov_analytic(InvariantSetId::PA, q);
        const LyapunovPair d = lyapunov_analytic(InvariantSetId::PD, q);
        CHECK(a.lambda_x > 0.0);
        CHECK(a.lambda_y > 0.0);
        CHECK(d.lambda_x < 0.0);
        CHECK(d.lambda_y < 0.0);
        CHECK(a.lambda_x == -d.lambda_x);
        CHECK(a.lambda_y == -d.lambda_y);
    }
}

TEST_CASE("finite-time Lyapunov exponents match closed forms") {
    for (double ell : {0.13, 0.2, 0.24}) {
        const Params p(ell);
        const FixedPoints fp = fixed_points(p);
        const InvariantRectangles rects = invariant_rectangles(p);
        const struct {
            InvariantSetId id;
            Point at;
        } cases[] = {{InvariantSetId::PA, fp.pa},
                     {InvariantSetId::PD, fp.pd},
                     {InvariantSetId::AB, ab_orbit(p).in_a},
                     {InvariantSetId::CDCD, {cdcd_attractor(p).x_line, 0.3}},
                     {InvariantSetId::BInv, rects.b_inv.center()},
                     {InvariantSetId::CInv, {0.6, 0.7}}};
        for (const auto& c : cases) {
            CAPTURE(ell);
            CAPTURE(invariant_set_name(c.id));
            const LyapunovPair num = lyapunov_finite_time(c.at, 1000, p);
            const LyapunovPair ana = lyapunov_analytic(c.id, p);
            CHECK(std::abs(num.lambda_x - ana.lambda_x) <= 1e-9);
            CHECK(std::abs(num.lambda_y - ana.lambda_y) <= 1e-9);
        }
    }
    const Params p(0.2);
    const LyapunovPair ab = lyapunov_analytic(InvariantSetId::AB, p);
    const LyapunovPair from_b = lyapunov_finite_time(ab_orbit(p).in_b, 1000, p);
    CHECK(std::abs(from_b.lambda_x - ab.lambda_y) <= 1e-9);
    CHECK(std::abs(from_b.lambda_y - ab.lambda_x) <= 1e-9);
    const LyapunovPair pd = lyapunov_finite_time(fixed_points(p).pd, 1000, p);
    CHECK(std::abs(pd.lambda_x - 0.5 * std::log(0.8)) <= 1e-12);
    CHECK(std::abs(pd.lambda_y - 0.5 * std::log(0.8)) <= 1e-12);
    const LyapunovPair cd = lyapunov_finite_time({2.0 / 3, 0.3}, 1000, p);
    CHECK(std::abs(cd.lambda_x - 0.5 * std::log(0.8)) <= 1e-12);
    CHECK(std::abs(cd.lambda_y) <= 1e-12);
    CHECK_THROWS_AS(lyapunov_finite_time({0.5, 0.5}, 3, p), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_finite_time({0.5, 0.5}, 0, p), std::invalid_argument);
}

TEST_CASE("conjugacy defect vanishes") {
    for (double ell : {0.13, 0.2, 0.24, 0.25}) CHECK(std::abs(conjugacy_defect(Params(ell))) <= 1e-14);
}

TEST_CASE("steady-state Lambda table") {
    const Params p(0.2);
    const auto six = steady_state_lambda_table(p);
    REQUIRE(six.size() == 6);
    const double phi = p.phi();
    const double expected[] = {phi, phi / 2, 0, 0, -phi / 2, -phi};
    for (int i = 0; i < 6; ++i) CHECK(six[i].lambda == doctest::Approx(expected[i]).epsilon(1e-15));

    const auto four = steady_state_lambda_table(Params(0.1));
    REQUIRE(four.size() == 4);
    CHECK(four[0].lambda == doctest::Approx(0.9162907318741551).epsilon(1e-14));
    CHECK(four[1].lambda == 0.0);
    CHECK(four[3].lambda == -four[0].lambda);
    for (const auto& row : steady_state_lambda_table(Params(0.25))) CHECK(row.lambda == 0.0);
}

TEST_CASE("invariant set names") {
    CHECK(invariant_set_from_name("binv") == InvariantSetId::BInv);
    CHECK(invariant_set_from_name("C_INV") == InvariantSetId::CInv);
    CHECK(invariant_set_from_name("cdcd") == InvariantSetId::CDCD);
    CHECK_THROWS_AS(invariant_set_from_name("XY"), std::invalid_argument);
}
