#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "insulair/bounds.hpp"
#include "insulair/radial.hpp"

using namespace insulair;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon unit_square() {
    return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace

TEST_CASE("adaptive quadrature on closed forms") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // A sharp peak forces the adaptive refinement path.
    const double peak = integrate(
        [](double x) { return 1.0 / (1e-4 + (x - 0.3) * (x - 0.3)); }, 0.0, 1.0, 1e-10);
    const double exact =
        (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2)) / 1e-2;
    CHECK(peak == doctest::Approx(exact).epsilon(1e-9));
    CHECK(integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("web bound is exact for planar convex bodies") {
    // In the plane the layer perimeter formula is an identity for convex
    // sets, so the web-function energy reproduces the equivalent-disk value.
    for (double beta : {0.5, 1.0, 4.0}) {
        for (double delta : {0.2, 1.0}) {
            WebBoundReport rep = web_bound_2d(unit_square(), beta, delta, false);
            CHECK(rep.equivalent_radius == doctest::Approx(2.0 / kPi).epsilon(1e-14));
            CHECK(rep.bound == doctest::Approx(rep.I_star).epsilon(1e-9));
        }
    }
}

TEST_CASE("web bound sandwiches the FEM value") {
    WebBoundReport rep = web_bound_2d(unit_square(), 1.0, 0.5, true, {128, 32});
    REQUIRE(rep.fem_value.has_value());
    CHECK(*rep.fem_value > 0.0);
    CHECK(*rep.fem_value <= rep.bound + 1e-6);
    CHECK(rep.bound <= rep.I_star + 1e-6);
}

TEST_CASE("web bound for the unit cube beats the equivalent ball") {
    // In three dimensions the layer perimeter of a non-ball grows strictly
    // slower than the equal-quermass ball's, so the bound is strictly below.
    WebBoundReport rep = web_bound_nd(quermass_box({1.0, 1.0, 1.0}), 1.0, 1.0);
    CHECK(rep.equivalent_radius == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(rep.bound < rep.I_star - 1e-3);
    // The ball itself achieves equality.
    WebBoundReport ball = web_bound_nd(quermass_ball(3, 0.75), 1.0, 1.0);
    CHECK(ball.bound == doctest::Approx(ball.I_star).epsilon(1e-9));
}

TEST_CASE("perimeter-volume constant: frozen value and limits") {
    // n = 2, R = 1, delta0 = pi: C = 2(sqrt(2) - 1).
    CHECK(lemma_constant(2, 1.0, kPi) ==
          doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
    // Small-excess limit (n-1)/R.
    CHECK(lemma_constant(2, 1.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lemma_constant(3, 2.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(lemma_constant(4, 0.5, 1e-10) == doctest::Approx(6.0).epsilon(1e-5));
    // Strictly decreasing in the excess budget.
    CHECK(lemma_constant(2, 1.0, 0.5) > lemma_constant(2, 1.0, 1.0));
    CHECK_THROWS_AS(lemma_constant(2, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma_constant(1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("perimeter-volume inequality on random convex outers") {
    LemmaCheckResult res = lemma_check(1.0, 0.5, 100, 7);
    CHECK(res.pass);
    CHECK(res.samples == 100);
    CHECK(res.min_slack > 0.0);
    CHECK_FALSE(res.counterexample_h.has_value());
}

TEST_CASE("negative control: an inflated constant fails") {
    // Scaling the constant far beyond the sharp value must produce
    // counterexamples, demonstrating the check has teeth.
    LemmaCheckResult res = lemma_check(1.0, 0.5, 100, 7, 40.0);
    CHECK_FALSE(res.pass);
    CHECK(res.min_slack < 0.0);
    CHECK(res.counterexample_h.has_value());
}

TEST_CASE("threshold excess inverts the constant") {
    // lemma_constant(2, 1, pi) = 2(sqrt 2 - 1), so the threshold at that beta
    // recovers delta0 = pi.
    const double beta = 2.0 * (std::sqrt(2.0) - 1.0);
    CHECK(paradox_threshold(2, beta, 1.0) == doctest::Approx(kPi).epsilon(1e-8));
    // Round trip at other points.
    for (double d0 : {0.1, 1.0, 10.0}) {
        const double b = lemma_constant(2, 1.0, d0);
        CHECK(paradox_threshold(2, b, 1.0) == doctest::Approx(d0).epsilon(1e-8));
    }
    // Outside the regime beta < (n-1)/R there is no threshold.
    CHECK_THROWS_AS(paradox_threshold(2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(paradox_threshold(2, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("thin asymmetric layers increase dispersion below the threshold") {
    ParadoxReport rep = paradox_check(1.0, 0.5, 6, {96, 24}, 11);
    CHECK(rep.pass);
    CHECK(rep.delta0 > 0.0);
    REQUIRE(rep.samples.size() == 6);
    for (const auto& s : rep.samples) {
        CHECK(s.volume_excess > 0.0);
        CHECK(s.volume_excess < rep.delta0);
        CHECK(s.paradox);
        CHECK(s.dispersion > s.no_insulation);
        CHECK(s.no_insulation == doctest::Approx(kPi).epsilon(1e-13));
    }
    CHECK_THROWS_AS(paradox_check(1.0, 2.0, 4, {96, 24}), std::invalid_argument);
}

TEST_CASE("shrinking squares: dispersion collapses with the conductor") {
    const auto rows = shrinking_square_experiment({1, 2, 4}, 1.0, 0.005, {128, 32});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].dispersion > rows[1].dispersion);
    CHECK(rows[1].dispersion > rows[2].dispersion);
    for (const auto& r : rows) {
        CHECK(r.side == doctest::Approx(1.0 / r.k).epsilon(1e-14));
        // The constant competitor caps the dispersion by beta * P(Q_k + dB).
        CHECK(r.dispersion <= r.beta_perimeter_bound);
        CHECK(r.dispersion > 0.0);
    }
}

TEST_CASE("a-priori bounds hold for disk and square") {
    const Resolution res{96, 24};
    for (int variant = 0; variant < 2; ++variant) {
        const Shape D = variant == 0
                            ? Shape::disk(1.0)
                            : Shape::polygon(unit_square());
        const double I = dispersion_of(D, 1.0, 0.5, res);
        AprioriResult r = apriori_bounds(D, 1.0, 0.5, I, res);
        CHECK(r.pass);
        CHECK(r.beta_perimeter_margin > 0.0);
        CHECK(r.capacity_margin > 0.0);
    }
    // Dirichlet mode: the capacity margin degenerates to zero.
    const double Id = dispersion_of(Shape::disk(1.0), kDirichletBeta, 0.5, res);
    AprioriResult rd = apriori_bounds(Shape::disk(1.0), kDirichletBeta, 0.5, Id, res);
    CHECK(rd.pass);
    CHECK(std::abs(rd.capacity_margin) < 1e-9 * Id);
}
