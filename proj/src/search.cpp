#include "insulair/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "insulair/parallel.hpp"
#include "insulair/radial.hpp"

namespace insulair {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed ^ stream
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

bool SupportVector::is_convex(double tol) const {
    const double c = std::cos(2.0 * kPi / m);
    for (int i = 0; i < m; ++i) {
        const double lhs = h[(i + m - 1) % m] - 2.0 * h[i] * c + h[(i + 1) % m];
        if (lhs < -tol) return false;
    }
    return true;
}

double SupportVector::convexity_violation() const {
    const double c = std::cos(2.0 * kPi / m);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double lhs = h[(i + m - 1) % m] - 2.0 * h[i] * c + h[(i + 1) % m];
        if (lhs < 0.0) total -= lhs;
    }
    return total;
}

ConvexPolygon support_to_polygon(const SupportVector& sv) {
    if (sv.m < 4 || static_cast<int>(sv.h.size()) != sv.m)
        throw std::invalid_argument("support_to_polygon: bad support vector");
    for (double hi : sv.h)
        if (!(hi > 0.0)) throw std::invalid_argument("support_to_polygon: nonpositive support value");
    if (!sv.is_convex(1e-12))
        throw std::invalid_argument("support_to_polygon: convexity violated");

    std::vector<Point> verts(sv.m);
    for (int i = 0; i < sv.m; ++i) {
        // Intersection of x.u_i = h_i and x.u_{i+1} = h_{i+1}.
        const double t0 = 2.0 * kPi * i / sv.m;
        const double t1 = 2.0 * kPi * (i + 1) / sv.m;
        const double c0 = std::cos(t0), s0 = std::sin(t0);
        const double c1 = std::cos(t1), s1 = std::sin(t1);
        const double det = c0 * s1 - s0 * c1;
        verts[i] = {(sv.h[i] * s1 - sv.h[(i + 1) % sv.m] * s0) / det,
                    (sv.h[(i + 1) % sv.m] * c0 - sv.h[i] * c1) / det};
    }
    return ConvexPolygon(std::move(verts));
}

SupportVector repair_convexity(SupportVector sv, int max_rounds) {
    const double c = std::cos(2.0 * kPi / sv.m);
    for (int round = 0; round < max_rounds; ++round) {
        if (sv.is_convex(0.0)) return sv;
        for (int i = 0; i < sv.m; ++i) {
            const double bound =
                (sv.h[(i + sv.m - 1) % sv.m] + sv.h[(i + 1) % sv.m]) / (2.0 * c);
            if (sv.h[i] > bound) sv.h[i] = bound;
        }
    }
    // The cyclic clamp converges only linearly; finish by blending toward the
    // mean vector, which is strictly feasible (constant vectors have slack
    // 2(1 - cos(2pi/m)) h_bar per constraint), so a small exact blend removes
    // any residual violation. The constraints are linear, hence the blend
    // factor follows from the worst constraint value.
    double h_bar = 0.0;
    for (double hi : sv.h) h_bar += hi / sv.m;
    const double slack0 = 2.0 * (1.0 - c) * h_bar;
    for (int round = 0; round < 8 && !sv.is_convex(0.0); ++round) {
        double worst = 0.0;
        for (int i = 0; i < sv.m; ++i) {
            const double lhs = sv.h[(i + sv.m - 1) % sv.m] - 2.0 * sv.h[i] * c +
                               sv.h[(i + 1) % sv.m];
            worst = std::min(worst, lhs);
        }
        // Pad the correction by 10% so rounding cannot leave the cone; the
        // factor tends to 1 as the residual vanishes.
        const double t = slack0 / (slack0 - 1.1 * worst);
        for (double& hi : sv.h) hi = h_bar + t * (hi - h_bar);
    }
    return sv;
}

SupportVector random_convex(int m, double P_target, std::uint64_t seed, double amplitude) {
    if (m < 4) throw std::invalid_argument("random_convex: m < 4");
    if (!(P_target > 0.0)) throw std::invalid_argument("random_convex: P_target <= 0");
    std::mt19937_64 rng(mix_seed(seed, 0));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SupportVector sv{m, std::vector<double>(m)};
    for (int i = 0; i < m; ++i) sv.h[i] = 1.0 + amplitude * uni(rng);
    sv = repair_convexity(std::move(sv));
    const double P = support_to_polygon(sv).perimeter();
    for (double& hi : sv.h) hi *= P_target / P;  // perimeter is 1-homogeneous in h
    return sv;
}

SupportVector random_outer(int m, double R, std::uint64_t seed, double amplitude, double lam) {
    if (!(R > 0.0)) throw std::invalid_argument("random_outer: R <= 0");
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SupportVector sv{m, std::vector<double>(m)};
    for (int i = 0; i < m; ++i) sv.h[i] = R * (1.0 + amplitude * uni(rng));
    sv = repair_convexity(std::move(sv));
    // Blend toward the circumscribed regular m-gon; the convexity cone is
    // closed under convex combinations with the constant vector.
    for (double& hi : sv.h) hi = R + lam * (hi - R);
    return sv;
}

double objective(const std::vector<double>& h, const SearchConfig& config) {
    SupportVector sv{config.m, h};
    if (static_cast<int>(h.size()) != config.m)
        throw std::invalid_argument("objective: wrong dimension");
    double penalty = 0.0;
    for (double hi : sv.h)
        if (!(hi > 0.0)) return 1e9;  // infeasible beyond repair
    if (!sv.is_convex(0.0)) {
        sv = repair_convexity(sv);
        penalty = 1e3 * sv.convexity_violation();
    }
    ConvexPolygon poly = support_to_polygon(sv);
    double lambda = 1.0;
    if (config.constraint == Constraint::Perimeter)
        lambda = config.constraint_value / poly.perimeter();
    else
        lambda = std::sqrt(config.constraint_value / poly.area());
    poly = poly.scaled(lambda);
    return dispersion_of(Shape::polygon(std::move(poly)), config.beta, config.delta,
                         config.search_res) +
           penalty;
}

namespace {

struct NmResult {
    std::vector<double> best;
    double best_value = 0.0;
    std::vector<SearchIteration> accepted;
};

NmResult nelder_mead(const std::vector<double>& start, const SearchConfig& config) {
    const int dim = config.m;
    const double step = 0.1;
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (int i = 0; i < dim; ++i) simplex[i + 1][i] += step;
    std::vector<double> f(dim + 1);
    for (int i = 0; i <= dim; ++i) f[i] = objective(simplex[i], config);

    NmResult res;
    auto record_best = [&]() {
        const auto it = std::min_element(f.begin(), f.end());
        const int k = static_cast<int>(it - f.begin());
        if (res.accepted.empty() || *it < res.accepted.back().objective) {
            res.accepted.push_back({simplex[k], *it});
        }
    };
    record_best();

    for (int iter = 0; iter < config.max_iters; ++iter) {
        // Order simplex.
        std::vector<int> order(dim + 1);
        for (int i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
        const int lo = order[0], hi = order[dim], nh = order[dim - 1];

        std::vector<double> centroid(dim, 0.0);
        for (int i = 0; i <= dim; ++i) {
            if (i == hi) continue;
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / dim;
        }
        auto lerp = [&](double t) {
            std::vector<double> p(dim);
            for (int d = 0; d < dim; ++d)
                p[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
            return p;
        };

        const std::vector<double> refl = lerp(-1.0);
        const double f_refl = objective(refl, config);
        if (f_refl < f[lo]) {
            const std::vector<double> exp_p = lerp(-2.0);
            const double f_exp = objective(exp_p, config);
            if (f_exp < f_refl) {
                simplex[hi] = exp_p;
                f[hi] = f_exp;
            } else {
                simplex[hi] = refl;
                f[hi] = f_refl;
            }
        } else if (f_refl < f[nh]) {
            simplex[hi] = refl;
            f[hi] = f_refl;
        } else {
            const std::vector<double> con = lerp(f_refl < f[hi] ? -0.5 : 0.5);
            const double f_con = objective(con, config);
            if (f_con < std::min(f_refl, f[hi])) {
                simplex[hi] = con;
                f[hi] = f_con;
            } else {
                // Shrink toward the best vertex.
                for (int i = 0; i <= dim; ++i) {
                    if (i == lo) continue;
                    for (int d = 0; d < dim; ++d)
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[lo][d]);
                    f[i] = objective(simplex[i], config);
                }
            }
        }
        record_best();
    }
    const auto it = std::min_element(f.begin(), f.end());
    res.best = simplex[it - f.begin()];
    res.best_value = *it;
    return res;
}

}  // namespace

SearchTrace minimize_dispersion(const SearchConfig& config) {
    if (config.restarts < 1) throw std::invalid_argument("minimize_dispersion: restarts < 1");

    std::vector<NmResult> results(config.restarts);
    parallel_for(config.restarts, [&](int r) {
        const SupportVector start = random_convex(
            config.m, config.constraint == Constraint::Perimeter ? config.constraint_value
                                                                 : 2.0 * kPi,
            mix_seed(config.seed, 100 + r), r == 0 ? 0.0 : config.amplitude);
        results[r] = nelder_mead(start.h, config);
    });

    int best_r = 0;
    for (int r = 1; r < config.restarts; ++r)
        if (results[r].best_value < results[best_r].best_value) best_r = r;

    SearchTrace trace;
    trace.config = config;
    trace.iterations = results[best_r].accepted;
    trace.best_value = results[best_r].best_value;
    SupportVector best{config.m, results[best_r].best};
    best = repair_convexity(std::move(best));
    trace.best_shape = best;

    // Re-evaluate the incumbent at the final resolution.
    SearchConfig fine = config;
    fine.search_res = config.final_res;
    trace.final_value = objective(best.h, fine);
    return trace;
}

MaximalityReport maximality_test(int samples, int m, double P, double beta, double delta,
                                 Resolution res, std::uint64_t seed) {
    MaximalityReport report;
    const double R = P / (2.0 * kPi);
    report.disk_value = dispersion_ball({2, R, beta, delta});
    const double fem_disk = dispersion_of(Shape::disk(R), beta, delta, res);
    report.fem_error_est = std::abs(fem_disk - report.disk_value);
    report.tolerance = 2.0 * report.fem_error_est;
    report.margins.resize(samples);

    parallel_for(samples, [&](int s) {
        const SupportVector sv = random_convex(m, P, mix_seed(seed, s));
        const double I = dispersion_of(Shape::polygon(support_to_polygon(sv)), beta, delta, res);
        report.margins[s] = report.disk_value - I;
    });
    for (double margin : report.margins)
        if (margin < -report.tolerance) ++report.violations;
    report.pass = report.violations == 0;
    return report;
}

}  // namespace insulair
