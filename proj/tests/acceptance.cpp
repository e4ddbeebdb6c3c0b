// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, next to the check it guards.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "insulair/bounds.hpp"
#include "insulair/fem.hpp"
#include "insulair/geometry.hpp"
#include "insulair/radial.hpp"
#include "insulair/search.hpp"

using namespace insulair;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

class Criterion {
  public:
    explicit Criterion(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool ok, const std::string& detail) {
        if (!ok && detail_.empty()) detail_ = detail;
        ok_ = ok_ && ok;
    }

    ~Criterion() {
        const auto elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        std::printf("%s %-22s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", name_.c_str(), elapsed,
                    detail_.empty() ? "" : "  -- ", detail_.c_str());
        std::fflush(stdout);
        if (!ok_) ++g_failures;
    }

  private:
    std::string name_;
    std::string detail_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Independent radial oracle: RK4 shooting for the annulus ODE plus Simpson
// quadrature of the energy. Mirrors nothing from src/ beyond the problem
// statement itself.
double shooting_dispersion(const RadialConfig& cfg, int steps = 40000) {
    const double a = cfg.R, b = cfg.R + cfg.delta;
    const double h = (b - a) / steps;
    std::vector<double> ws(steps + 1), ps(steps + 1);
    double w = 0.0, p = 1.0;
    ws[0] = w;
    ps[0] = p;
    auto slope = [&](double r, double pv) { return -(cfg.n - 1) / r * pv; };
    for (int i = 0; i < steps; ++i) {
        const double r = a + i * h;
        const double k1w = p, k1p = slope(r, p);
        const double k2w = p + h / 2 * k1p, k2p = slope(r + h / 2, p + h / 2 * k1p);
        const double k3w = p + h / 2 * k2p, k3p = slope(r + h / 2, p + h / 2 * k2p);
        const double k4w = p + h * k3p, k4p = slope(r + h, p + h * k3p);
        w += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
        p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        ws[i + 1] = w;
        ps[i + 1] = p;
    }
    const double c = is_dirichlet(cfg.beta) ? -1.0 / w : -cfg.beta / (p + cfg.beta * w);
    const double surf = cfg.n * unit_ball_volume(cfg.n);
    auto integrand = [&](int i) {
        const double r = a + i * h;
        const double vp = c * ps[i];
        return vp * vp * std::pow(r, cfg.n - 1);
    };
    double quad = 0.0;
    for (int i = 0; i + 2 <= steps; i += 2)
        quad += h / 3 * (integrand(i) + 4 * integrand(i + 1) + integrand(i + 2));
    double energy = surf * quad;
    if (!is_dirichlet(cfg.beta)) {
        const double vb = 1.0 + c * w;
        energy += cfg.beta * vb * vb * surf * std::pow(b, cfg.n - 1);
    }
    return energy;
}

void criterion_1_radial_oracle() {
    Criterion c("radial-oracle");
    const double exact_c2 = 1.0 / (0.5 + std::log(2.0));
    c.require(std::abs(c2(1.0, 1.0, 1.0) - exact_c2) < 1e-12,
              "c2(1,1,1) != 1/(1/2 + ln 2) at 1e-12");
    const double I = dispersion_ball({2, 1.0, 1.0, 1.0});
    c.require(std::abs(I - 2.0 * kPi * exact_c2) < 1e-12, "I != 2*pi*c2 at 1e-12");
    c.require(std::abs(I - 5.26606055778540) < 1e-8, "I != 5.26606056 at 1e-8");
    const double oracle = shooting_dispersion({2, 1.0, 1.0, 1.0});
    c.require(std::abs(I - oracle) < 1e-8 * oracle,
              fmt("quadrature oracle deviates: %.3g vs %.3g", I, oracle));
}

void criterion_2_dirichlet_fem() {
    Criterion c("dirichlet-fem");
    const double exact = 2.0 * kPi / std::log(2.0);
    const Shape disk = Shape::disk(1.0);
    const std::vector<Resolution> levels{{64, 16}, {128, 32}, {256, 64}};
    std::vector<double> errs;
    for (const Resolution& res : levels)
        errs.push_back(std::abs(dispersion_of(disk, kDirichletBeta, 1.0, res) - exact));
    c.require(errs.back() < 0.01 * exact,
              fmt("(256,64) error %.3g above 1%% of %.5f", errs.back(), exact));
    for (std::size_t i = 1; i < errs.size(); ++i)
        c.require(errs[i - 1] / errs[i] >= 3.0,
                  fmt("error ratio %.2f below 3 (level %.0f)", errs[i - 1] / errs[i],
                      double(i)));
}

void criterion_3_fem_convergence() {
    Criterion c("fem-vs-oracle");
    std::mt19937_64 rng(20260826);
    std::uniform_real_distribution<double> uR(0.3, 3.0), ub(0.1, 6.0), ud(0.1, 2.5);
    const Resolution res{256, 64};
    for (int t = 0; t < 50; ++t) {
        const RadialConfig cfg{2, uR(rng), ub(rng), ud(rng)};
        const double exact = dispersion_ball(cfg);
        const AnnularMesh mesh = build_mesh(annulus_for(Shape::disk(cfg.R), cfg.delta), res);
        const FemSolution sol = solve(mesh, cfg.beta);
        c.require(std::abs(sol.dispersion - exact) < 0.01 * exact,
                  fmt("config %.0f: FEM error above 1%% (exact %.5g)", double(t), exact));
        c.require(std::abs(sol.energy - cfg.beta * sol.boundary_integral) < 1e-10 * sol.energy,
                  fmt("config %.0f: identity residual above 1e-10 (%.3g)", double(t),
                      std::abs(sol.energy - cfg.beta * sol.boundary_integral)));
    }
}

void criterion_4_maximality() {
    Criterion c("disk-maximality");
    const struct {
        double beta, delta;
    } settings[] = {{1.0, 1.0}, {0.5, 0.5}, {5.0, 0.25}};
    for (const auto& s : settings) {
        const MaximalityReport rep =
            maximality_test(200, 16, 2.0 * kPi, s.beta, s.delta, {128, 32}, 31415);
        c.require(rep.pass && rep.violations == 0,
                  fmt("violations at beta=%.2f delta=%.2f", s.beta, s.delta));
    }
}

void criterion_5_threshold() {
    Criterion c("monotonicity-threshold");
    std::mt19937_64 rng(64128);
    std::uniform_real_distribution<double> uR(0.5, 2.0), uf(0.05, 0.9);
    for (int n : {2, 3}) {
        for (int t = 0; t < 20; ++t) {
            const double R = uR(rng);
            const double beta = uf(rng) * (n - 1) / R;  // stays below (n-1)/R
            const double dstar = monotonicity_threshold(n, beta, R);
            const double dmax = 2.0 * dstar + 0.5;
            const int grid = 200;
            const double step = dmax / grid;
            double flip = -1.0;
            double prev = dispersion_ball({n, R, beta, 0.0});
            for (int i = 1; i <= grid; ++i) {
                const double I = dispersion_ball({n, R, beta, i * step});
                if (I < prev) {
                    flip = (i - 1) * step;  // last grid point before decrease
                    break;
                }
                prev = I;
            }
            c.require(flip >= 0.0 && std::abs(flip - dstar) <= step,
                      fmt("flip at %.4f vs threshold %.4f beyond one step", flip, dstar));
        }
    }
}

void criterion_6_lemma_paradox() {
    Criterion c("lemma-and-paradox");
    // Small-budget limit of the perimeter-volume constant: (n-1)/R.
    c.require(std::abs(lemma_constant(2, 1.0, 1e-8) - 1.0) < 1e-6, "n=2 limit misses 1");
    c.require(std::abs(lemma_constant(3, 1.0, 1e-8) - 2.0) < 1e-6, "n=3 limit misses 2");
    c.require(std::abs(lemma_constant(3, 2.0, 1e-8) - 1.0) < 1e-6, "n=3 R=2 limit misses 1");

    const LemmaCheckResult lemma = lemma_check(1.0, 0.5, 500, 7);
    c.require(lemma.pass, fmt("perimeter-volume inequality violated (min slack %.3g)",
                              lemma.min_slack, 0.0));

    const ParadoxReport par = paradox_check(1.0, 0.5, 20, {128, 32}, 11);
    c.require(par.pass, "a sample failed to beat the uninsulated dispersion");
    for (const ParadoxSample& s : par.samples) {
        c.require(s.volume_excess < par.delta0, "sample excess above the threshold");
        c.require(s.dispersion > s.no_insulation, "dispersion did not increase");
    }
}

void criterion_7_shrinking_squares() {
    Criterion c("shrinking-squares");
    const auto rows = shrinking_square_experiment({1, 2, 4, 8, 16, 32}, 1.0, 0.005, {256, 64});
    for (std::size_t i = 1; i < rows.size(); ++i)
        c.require(rows[i].dispersion < rows[i - 1].dispersion,
                  fmt("not strictly decreasing at k=%.0f (I=%.5g)", double(rows[i].k),
                      rows[i].dispersion));
    const double ratio = rows.back().dispersion / rows.front().dispersion;
    c.require(ratio < 0.05, fmt("I(Q_32)/I(Q_1) = %.4f not below 0.05", ratio, 0.0));
}

void criterion_8_steiner_suite() {
    Criterion c("steiner-and-margins");
    // Steiner identities on random convex polygons, against the exact offset
    // boundary geometry.
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> uP(2.0, 12.0), udel(0.05, 1.5);
    for (int t = 0; t < 100; ++t) {
        const SupportVector sv = random_convex(12, uP(rng), 1000 + t);
        const ConvexPolygon poly = support_to_polygon(sv);
        const double delta = udel(rng);
        const OffsetBoundary off(poly, delta);
        const QuermassVector q = quermass_2d(poly);
        c.require(std::abs(off.enclosed_area() - steiner_volume(q, delta)) < 1e-10,
                  "offset area deviates from the Steiner polynomial");
        c.require(std::abs(off.length() - steiner_perimeter(q, delta)) < 1e-10,
                  "offset length deviates from the Steiner polynomial");
    }
    // Margins: zero exactly on balls, positive on boxes.
    for (int n : {2, 3, 4})
        for (double m : af_margins(quermass_ball(n, 1.7)))
            c.require(std::abs(m) < 1e-12, "ball margin not zero");
    for (const auto& sides :
         std::vector<std::vector<double>>{{1.0, 2.0}, {1.0, 1.0, 1.0}, {0.5, 1.0, 2.0, 4.0}})
        for (double m : af_margins(quermass_box(sides)))
            c.require(m > 0.0, "box margin not positive");

    // Unit-cube offset volume at delta = 1 against 10^7 Monte Carlo samples.
    const double exact = steiner_volume(quermass_box({1.0, 1.0, 1.0}), 1.0);
    std::mt19937_64 mc(424242);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    const int N = 10'000'000;
    long hits = 0;
    for (int i = 0; i < N; ++i) {
        double d2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double x = u(mc);
            const double g = x < 0.0 ? -x : (x > 1.0 ? x - 1.0 : 0.0);
            d2 += g * g;
        }
        if (d2 <= 1.0) ++hits;
    }
    const double frac = double(hits) / N;
    const double est = frac * 27.0;
    const double sigma = 27.0 * std::sqrt(frac * (1.0 - frac) / N);
    c.require(std::abs(est - exact) < 3.0 * sigma,
              fmt("Monte Carlo %.6f vs exact %.6f beyond 3 sigma", est, exact));
}

void criterion_9_web_sandwich() {
    Criterion c("web-sandwich");
    const std::vector<std::pair<std::string, ConvexPolygon>> shapes = {
        {"unit_square", ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})},
        {"rectangle_2x05", ConvexPolygon({{0, 0}, {2, 0}, {2, 0.5}, {0, 0.5}})},
        {"triangle_345", ConvexPolygon({{0, 0}, {3, 0}, {0, 4}})},
        {"ngon_256", support_to_polygon(SupportVector{256, std::vector<double>(256, 1.0)})},
    };
    for (const auto& [name, poly] : shapes) {
        for (double delta : {0.25, 1.0}) {
            const WebBoundReport rep = web_bound_2d(poly, 1.0, delta, true, {256, 64});
            c.require(*rep.fem_value <= rep.bound + 1e-6,
                      name + fmt(": FEM %.6f above bound %.6f", *rep.fem_value, rep.bound));
            c.require(rep.bound <= rep.I_star + 1e-6,
                      name + fmt(": bound %.6f above disk value %.6f", rep.bound, rep.I_star));
        }
    }
    // Unit cube, analytic path: strictly below the equivalent-ball value.
    const WebBoundReport cube = web_bound_nd(quermass_box({1.0, 1.0, 1.0}), 1.0, 1.0);
    c.require(cube.bound < cube.I_star,
              fmt("cube bound %.6f not below ball value %.6f", cube.bound, cube.I_star));
}

}  // namespace

int main() {
    criterion_1_radial_oracle();
    criterion_2_dirichlet_fem();
    criterion_3_fem_convergence();
    criterion_4_maximality();
    criterion_5_threshold();
    criterion_6_lemma_paradox();
    criterion_7_shrinking_squares();
    criterion_8_steiner_suite();
    criterion_9_web_sandwich();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
