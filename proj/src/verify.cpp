#include "insulair/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "insulair/bounds.hpp"
#include "insulair/fem.hpp"
#include "insulair/geometry.hpp"
#include "insulair/parallel.hpp"
#include "insulair/radial.hpp"
#include "insulair/search.hpp"

namespace insulair::verify {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
    if (cfg.contains(key)) return cfg[key].get<T>();
    return fallback;
}

Resolution res_from(const json& cfg, Resolution fallback) {
    return {get_or(cfg, "n_theta", fallback.n_theta), get_or(cfg, "n_s", fallback.n_s)};
}

// Steiner offset identities on random convex polygons.
json suite_steiner(const json& cfg) {
    const int samples = get_or(cfg, "samples", 100);
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 1);
    const double tol = 1e-10;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const SupportVector sv = random_convex(16, 2.0 + 4.0 * (s % 7) / 7.0, seed + s);
        const ConvexPolygon D = support_to_polygon(sv);
        for (double delta : {0.1, 0.5, 1.0, 2.0}) {
            const OffsetBoundary off(D, delta);
            const double len_err =
                std::abs(off.length() - (D.perimeter() + 2.0 * kPi * delta)) / off.length();
            const double area_err =
                std::abs(off.enclosed_area() -
                         (D.area() + D.perimeter() * delta + kPi * delta * delta)) /
                off.enclosed_area();
            worst = std::max({worst, len_err, area_err});
            // Perimeter polynomial equals the delta-derivative of the volume
            // polynomial.
            const QuermassVector q = quermass_2d(D);
            const double dv = 2.0 * q.W[1] + 2.0 * q.W[2] * delta;  // d/ddelta of Steiner area
            worst = std::max(worst, std::abs(steiner_perimeter(q, delta) - dv) / dv);
        }
    }
    return {{"suite", "steiner"}, {"pass", worst <= tol}, {"samples", samples},
            {"seed", seed},       {"max_rel_error", worst}, {"tolerance", tol}};
}

json suite_af(const json& cfg) {
    (void)cfg;
    bool pass = true;
    double ball_worst = 0.0;
    for (int n : {2, 3, 4})
        for (double R : {0.5, 1.0, 2.0})
            for (double m : af_margins(quermass_ball(n, R)))
                ball_worst = std::max(ball_worst, std::abs(m));
    if (ball_worst > 1e-12) pass = false;

    double box_min = std::numeric_limits<double>::infinity();
    for (const auto& sides : std::vector<std::vector<double>>{
             {1.0, 1.0}, {2.0, 0.5}, {1.0, 1.0, 1.0}, {2.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}})
        for (double m : af_margins(quermass_box(sides))) box_min = std::min(box_min, m);
    if (!(box_min > 0.0)) pass = false;

    return {{"suite", "af"},
            {"pass", pass},
            {"ball_max_abs_margin", ball_worst},
            {"box_min_margin", box_min}};
}

json suite_radial_monotonicity(const json& cfg) {
    const int trials = get_or(cfg, "samples", 100);
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    bool pass = true;
    json failures = json::array();
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + static_cast<int>(uni(rng) * 3.0);
        const double R = std::exp(std::log(0.2) + uni(rng) * std::log(5.0 / 0.2));
        // Force the paradox regime so the threshold is interior.
        const double beta = (n - 1) / R * (0.1 + 0.8 * uni(rng));
        const double thr = monotonicity_threshold(n, beta, R);
        const int grid = 200;
        const double span = 4.0 * thr + 1.0;
        double prev = dispersion_ball({n, R, beta, 1e-9});
        bool ok = true;
        for (int i = 1; i <= grid; ++i) {
            const double delta = span * i / grid;
            const double cur = dispersion_ball({n, R, beta, delta});
            if (delta <= thr && cur < prev - 1e-12 * std::abs(prev)) ok = false;
            if (delta - span / grid >= thr && cur > prev + 1e-12 * std::abs(prev)) ok = false;
            prev = cur;
        }
        if (!ok) {
            pass = false;
            failures.push_back({{"n", n}, {"R", R}, {"beta", beta}});
        }
    }
    return {{"suite", "radial_monotonicity"}, {"pass", pass}, {"samples", trials},
            {"seed", seed},                   {"failures", failures}};
}

json suite_maximality(const json& cfg) {
    const int samples = get_or(cfg, "samples", 50);
    const double P = get_or(cfg, "perimeter", 2.0 * kPi);
    const Resolution res = res_from(cfg, {128, 32});
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 3);
    json settings = json::array();
    bool pass = true;
    const std::vector<std::pair<double, double>> beta_delta = {
        {1.0, 1.0}, {0.5, 0.5}, {5.0, 0.25}};
    for (const auto& [beta, delta] : beta_delta) {
        const MaximalityReport rep =
            maximality_test(samples, 16, P, beta, delta, res, seed);
        double min_margin = std::numeric_limits<double>::infinity();
        for (double m : rep.margins) min_margin = std::min(min_margin, m);
        settings.push_back({{"beta", beta},
                            {"delta", delta},
                            {"disk_value", rep.disk_value},
                            {"tolerance", rep.tolerance},
                            {"min_margin", min_margin},
                            {"violations", rep.violations}});
        pass = pass && rep.pass;
    }
    return {{"suite", "maximality"}, {"pass", pass},          {"samples", samples},
            {"seed", seed},          {"settings", settings},  {"perimeter", P},
            {"n_theta", res.n_theta}, {"n_s", res.n_s}};
}

json suite_web(const json& cfg) {
    const Resolution res = res_from(cfg, {256, 64});
    const double beta = get_or(cfg, "beta", 1.0);
    const double delta = get_or(cfg, "delta", 1.0);
    bool pass = true;
    json checks = json::array();

    auto check_2d = [&](const ConvexPolygon& D, const std::string& id) {
        const WebBoundReport rep = web_bound_2d(D, beta, delta, true, res);
        const bool sandwich = *rep.fem_value <= rep.bound + 1e-9 &&
                              rep.bound <= rep.I_star + 1e-6 &&
                              std::abs(rep.bound - rep.I_star) <= 1e-6;
        pass = pass && sandwich;
        checks.push_back({{"shape", id},
                          {"fem", *rep.fem_value},
                          {"bound", rep.bound},
                          {"I_star", rep.I_star},
                          {"pass", sandwich}});
    };
    check_2d(ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), "unit_square");
    check_2d(ConvexPolygon({{0, 0}, {2, 0}, {2, 0.5}, {0, 0.5}}), "rectangle_2x05");
    check_2d(ConvexPolygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}), "triangle");

    // 256-gon: near-disk equality case.
    {
        std::vector<Point> verts(256);
        for (int i = 0; i < 256; ++i)
            verts[i] = {std::cos(2.0 * kPi * i / 256), std::sin(2.0 * kPi * i / 256)};
        const WebBoundReport rep = web_bound_2d(ConvexPolygon(verts), beta, delta, false);
        const bool ok = std::abs(rep.bound - rep.I_star) <= 1e-6 * rep.I_star;
        pass = pass && ok;
        checks.push_back(
            {{"shape", "256gon"}, {"bound", rep.bound}, {"I_star", rep.I_star}, {"pass", ok}});
    }

    // Analytic n=3 path: the cube bound sits strictly below the equivalent
    // ball dispersion.
    {
        const WebBoundReport rep = web_bound_nd(quermass_box({1.0, 1.0, 1.0}), beta, delta);
        const bool ok = rep.bound <= rep.I_star + 1e-8;
        pass = pass && ok;
        checks.push_back({{"shape", "unit_cube"},
                          {"bound", rep.bound},
                          {"I_star", rep.I_star},
                          {"gap", rep.I_star - rep.bound},
                          {"pass", ok}});
    }
    return {{"suite", "web"}, {"pass", pass}, {"beta", beta}, {"delta", delta},
            {"checks", checks}};
}

json suite_lemma(const json& cfg) {
    const int samples = get_or(cfg, "samples", 500);
    const double R = get_or(cfg, "R", 1.0);
    const double delta0 = get_or(cfg, "delta0", 0.5);
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 5);
    bool pass = true;

    // Small-delta0 limit of the constant is (n-1)/R.
    double limit_err = 0.0;
    for (int n : {2, 3})
        limit_err = std::max(limit_err,
                             std::abs(lemma_constant(n, R, 1e-9) - (n - 1) / R) * R / (n - 1));
    pass = pass && limit_err <= 1e-6;

    const LemmaCheckResult main = lemma_check(R, delta0, samples, seed, 1.0);
    pass = pass && main.pass;
    // Negative control: inflating the constant must produce violations.
    const LemmaCheckResult control = lemma_check(R, delta0, samples, seed, 1.5);
    pass = pass && !control.pass;

    return {{"suite", "lemma"},         {"pass", pass},
            {"samples", samples},       {"seed", seed},
            {"R", R},                   {"delta0", delta0},
            {"limit_error", limit_err}, {"min_slack", main.min_slack},
            {"negative_control_detected", !control.pass}};
}

json suite_paradox(const json& cfg) {
    const double R = get_or(cfg, "R", 1.0);
    const double beta = get_or(cfg, "beta", 0.5);
    const int trials = get_or(cfg, "trials", 20);
    const Resolution res = res_from(cfg, {128, 32});
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 6);
    const ParadoxReport rep = paradox_check(R, beta, trials, res, seed);
    json samples = json::array();
    for (const ParadoxSample& s : rep.samples)
        samples.push_back({{"volume_excess", s.volume_excess},
                           {"dispersion", s.dispersion},
                           {"no_insulation", s.no_insulation},
                           {"paradox", s.paradox}});
    return {{"suite", "paradox"}, {"pass", rep.pass}, {"R", R},
            {"beta", beta},       {"trials", trials}, {"seed", seed},
            {"delta0", rep.delta0}, {"samples", samples}};
}

json suite_squares(const json& cfg) {
    const double beta = get_or(cfg, "beta", 1.0);
    const double delta = get_or(cfg, "delta", 0.005);
    const Resolution res = res_from(cfg, {256, 64});
    const std::vector<int> ks = {1, 2, 4, 8, 16, 32};
    const auto rows = shrinking_square_experiment(ks, beta, delta, res);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].dispersion < rows[i - 1].dispersion)) decreasing = false;
    const double ratio = rows.back().dispersion / rows.front().dispersion;
    const bool pass = decreasing && ratio < 0.05;
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"k", r.k},
                         {"side", r.side},
                         {"I", r.dispersion},
                         {"beta_P_bound", r.beta_perimeter_bound}});
    return {{"suite", "squares"}, {"pass", pass},     {"beta", beta}, {"delta", delta},
            {"decreasing", decreasing}, {"ratio", ratio}, {"table", table}};
}

json suite_apriori(const json& cfg) {
    const Resolution res = res_from(cfg, {128, 32});
    bool pass = true;
    json checks = json::array();
    const std::vector<Shape> corpus = {
        Shape::disk(1.0), Shape::disk(0.5),
        Shape::polygon(ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})),
        Shape::polygon(ConvexPolygon({{0, 0}, {2, 0}, {2, 0.5}, {0, 0.5}}))};
    for (const Shape& D : corpus) {
        for (double beta : {0.01, 1.0, 10.0}) {
            const double delta = 0.5;
            const double I = dispersion_of(D, beta, delta, res);
            const AprioriResult r = apriori_bounds(D, beta, delta, I, res);
            pass = pass && r.pass;
            checks.push_back({{"beta", beta},
                              {"I", I},
                              {"beta_perimeter_margin", r.beta_perimeter_margin},
                              {"capacity_margin", r.capacity_margin},
                              {"pass", r.pass}});
        }
    }
    return {{"suite", "apriori"}, {"pass", pass}, {"checks", checks}};
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"steiner", "af",    "radial_monotonicity", "maximality", "web",
            "lemma",   "paradox", "squares",           "apriori"};
}

json run_suite(const std::string& name, const json& config) {
    if (name == "steiner") return suite_steiner(config);
    if (name == "af") return suite_af(config);
    if (name == "radial_monotonicity") return suite_radial_monotonicity(config);
    if (name == "maximality") return suite_maximality(config);
    if (name == "web") return suite_web(config);
    if (name == "lemma") return suite_lemma(config);
    if (name == "paradox") return suite_paradox(config);
    if (name == "squares") return suite_squares(config);
    if (name == "apriori") return suite_apriori(config);
    if (name == "all") {
        json suites = json::array();
        bool pass = true;
        for (const std::string& s : suite_names()) {
            json rep = run_suite(s, config);
            pass = pass && rep["pass"].get<bool>();
            suites.push_back(std::move(rep));
        }
        return {{"suite", "all"}, {"pass", pass}, {"suites", suites}};
    }
    throw std::invalid_argument("unknown verification suite \"" + name + "\"");
}

}  // namespace insulair::verify
