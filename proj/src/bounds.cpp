#include "insulair/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "insulair/parallel.hpp"
#include "insulair/radial.hpp"
#include "insulair/search.hpp"

namespace insulair {

namespace {

constexpr double kPi = std::numbers::pi;

// 7-point Gauss-Legendre on [a, b].
double gauss7(const std::function<double(double)>& f, double a, double b) {
    static const double xs[] = {0.0, 0.4058451513773972, 0.7415311855993944, 0.9491079123427585};
    static const double ws[] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                                0.1294849661688697};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = ws[0] * f(mid);
    for (int i = 1; i < 4; ++i)
        s += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
    return s * half;
}

double adaptive(const std::function<double(double)>& f, double a, double b, double whole,
                double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss7(f, a, mid), right = gauss7(f, mid, b);
    if (depth > 40 || std::abs(left + right - whole) <= tol) return left + right;
    return adaptive(f, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

WebBoundReport web_bound(const QuermassVector& q, double beta, double delta,
                         const std::string& shape_id) {
    if (!(delta > 0.0)) throw std::invalid_argument("web_bound: delta <= 0");
    WebBoundReport rep;
    rep.shape_id = shape_id;
    const double R = equivalent_ball_radius(q);
    rep.equivalent_radius = R;
    const RadialConfig cfg{q.n, R, beta, delta};
    rep.I_star = dispersion_ball(cfg);
    const RadialProfile v(cfg);
    rep.bound = integrate(
        [&](double rho) {
            const double vp = v.derivative(R + rho);
            return vp * vp * steiner_perimeter(q, rho);
        },
        0.0, delta);
    if (!is_dirichlet(beta)) {
        const double vm = v.value(R + delta);
        rep.bound += beta * vm * vm * steiner_perimeter(q, delta);
    }
    return rep;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    return adaptive(f, a, b, gauss7(f, a, b), tol, 0);
}

WebBoundReport web_bound_2d(const ConvexPolygon& D, double beta, double delta, bool with_fem,
                            Resolution res) {
    WebBoundReport rep = web_bound(quermass_2d(D), beta, delta, "polygon");
    if (with_fem)
        rep.fem_value = dispersion_of(Shape::polygon(D), beta, delta, res);
    return rep;
}

WebBoundReport web_bound_nd(const QuermassVector& q, double beta, double delta) {
    return web_bound(q, beta, delta, "analytic");
}

double lemma_constant(int n, double R, double delta0) {
    if (n < 2 || !(R > 0.0) || !(delta0 > 0.0))
        throw std::invalid_argument("lemma_constant: invalid arguments");
    const double wn = unit_ball_volume(n);
    return n * wn * std::pow(R, n - 1) / delta0 *
           (std::pow(1.0 + delta0 / (wn * std::pow(R, n)), 1.0 - 1.0 / double(n)) - 1.0);
}

LemmaCheckResult lemma_check(double R, double delta0, int samples, std::uint64_t seed,
                             double constant_scale) {
    if (!(delta0 > 0.0)) throw std::invalid_argument("lemma_check: delta0 <= 0");
    const double C = constant_scale * lemma_constant(2, R, delta0);
    const int m = 64;
    const double ball_area = kPi * R * R;
    // Volume excess of the circumscribed regular m-gon: the blend floor.
    const double min_excess = R * R * (m * std::tan(kPi / m) - kPi);

    LemmaCheckResult result;
    result.samples = samples;
    result.min_slack = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        SupportVector sv = random_outer(m, R, seed + 1000 + s, 0.3, 1.0);
        const double max_excess = support_to_polygon(sv).area() - ball_area;
        const double hi = std::min(delta0, max_excess);
        const double target = min_excess + uni(rng) * std::max(0.0, hi - min_excess);
        // Monotone in the blend parameter: bisect.
        double lo_l = 0.0, hi_l = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo_l + hi_l);
            SupportVector blend = sv;
            for (double& h : blend.h) h = R + mid * (h - R);
            (support_to_polygon(blend).area() - ball_area > target ? hi_l : lo_l) = mid;
        }
        SupportVector blend = sv;
        for (double& h : blend.h) h = R + lo_l * (h - R);
        const ConvexPolygon omega = support_to_polygon(blend);
        const double dv = omega.area() - ball_area;
        const double dp = omega.perimeter() - 2.0 * kPi * R;
        const double slack = dp - C * dv;
        if (slack < result.min_slack) result.min_slack = slack;
        if (slack < 0.0) {
            result.pass = false;
            if (!result.counterexample_h) result.counterexample_h = blend.h;
        }
    }
    return result;
}

double paradox_threshold(int n, double beta, double R) {
    if (!(beta > 0.0) || !(R > 0.0) || n < 2)
        throw std::invalid_argument("paradox_threshold: invalid arguments");
    if (!(beta < (n - 1) / R))
        throw std::invalid_argument("paradox regime requires beta < (n-1)/R");
    // lemma_constant is strictly decreasing in delta0 from (n-1)/R to 0.
    double lo = 1e-12, hi = 1.0;
    while (lemma_constant(n, R, hi) >= beta) hi *= 2.0;
    while ((hi - lo) > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (lemma_constant(n, R, mid) >= beta ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ParadoxReport paradox_check(double R, double beta, int trials, Resolution res,
                            std::uint64_t seed) {
    if (!(beta < 1.0 / R))
        throw std::invalid_argument("paradox regime requires beta < (n-1)/R");
    ParadoxReport report;
    report.n = 2;
    report.R = R;
    report.beta = beta;
    report.delta0 = paradox_threshold(2, beta, R);
    report.samples.resize(trials);
    const double no_insulation = beta * 2.0 * kPi * R;
    const int m = 64;
    const double ball_area = kPi * R * R;

    parallel_for(trials, [&](int s) {
        // Spread the volume excess across (0, delta0), capped by what the
        // sampled support vector can reach.
        SupportVector sv = random_outer(m, R, seed + 10 * s, 0.35, 1.0);
        const double max_excess = support_to_polygon(sv).area() - ball_area;
        const double frac = 0.2 + 0.8 * double(s) / std::max(1, trials - 1);
        const double target = std::min(frac * max_excess, 0.9 * report.delta0);
        double lo_l = 0.0, hi_l = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo_l + hi_l);
            SupportVector blend = sv;
            for (double& h : blend.h) h = R + mid * (h - R);
            (support_to_polygon(blend).area() - ball_area > target ? hi_l : lo_l) = mid;
        }
        for (double& h : sv.h) h = R + lo_l * (h - R);
        const ConvexPolygon omega = support_to_polygon(sv);

        ParadoxSample& ps = report.samples[s];
        ps.volume_excess = omega.area() - ball_area;
        ps.no_insulation = no_insulation;
        ps.dispersion = dispersion_general(R, omega, {0.0, 0.0}, beta, res);
        ps.paradox = ps.dispersion > no_insulation;
    });
    report.pass = true;
    for (const ParadoxSample& ps : report.samples)
        if (!ps.paradox) report.pass = false;
    return report;
}

std::vector<ShrinkingSquareRow> shrinking_square_experiment(const std::vector<int>& k_values,
                                                            double beta, double delta,
                                                            Resolution res) {
    std::vector<ShrinkingSquareRow> rows(k_values.size());
    parallel_for(static_cast<int>(k_values.size()), [&](int i) {
        const int k = k_values[i];
        if (k < 1) throw std::invalid_argument("shrinking_square_experiment: k < 1");
        const double s = 1.0 / k;
        const ConvexPolygon square({{0, 0}, {s, 0}, {s, s}, {0, s}});
        rows[i] = {k, s, dispersion_of(Shape::polygon(square), beta, delta, res),
                   beta * (4.0 * s + 2.0 * kPi * delta)};
    });
    return rows;
}

AprioriResult apriori_bounds(const Shape& D, double beta, double delta, double I_fem,
                             Resolution res) {
    AprioriResult result;
    const double I_dir = dispersion_of(D, kDirichletBeta, delta, res);
    result.capacity_margin = I_dir - I_fem;
    if (is_dirichlet(beta)) {
        result.beta_perimeter_margin = std::numeric_limits<double>::infinity();
        result.pass = std::abs(result.capacity_margin) <= 1e-9 * I_dir;
        return result;
    }
    const double perim_omega = D.perimeter() + 2.0 * kPi * delta;
    result.beta_perimeter_margin = beta * perim_omega - I_fem;
    result.pass = result.beta_perimeter_margin >= -1e-8 * std::abs(I_fem) &&
                  result.capacity_margin >= -1e-6 * std::abs(I_dir);
    return result;
}

}  // namespace insulair
