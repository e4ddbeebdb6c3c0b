#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "insulair/fem.hpp"
#include "insulair/geometry.hpp"

namespace insulair {

/// Convex polygon described by support values h_i >= 0 at m uniform angles.
/// Convexity is the cyclic condition h_{i-1} - 2 h_i cos(2pi/m) + h_{i+1} >= 0.
struct SupportVector {
    int m = 16;
    std::vector<double> h;

    bool is_convex(double tol = 0.0) const;
    /// Total violation of the convexity constraints (0 when feasible).
    double convexity_violation() const;
};

/// Intersection of the supporting half-planes. Throws when the support vector
/// violates the convexity condition.
ConvexPolygon support_to_polygon(const SupportVector& sv);

/// Cyclic smoothing projection toward the convexity cone; feasible inputs are
/// returned unchanged.
SupportVector repair_convexity(SupportVector sv, int max_rounds = 200);

/// Seeded perturbation of the constant support vector, convexity-repaired and
/// rescaled to perimeter P_target exactly.
SupportVector random_convex(int m, double P_target, std::uint64_t seed,
                            double amplitude = 0.15);

/// Seeded convex polygon containing the disk B_R about the origin: support
/// values >= R at all angles. lam in [0,1] blends toward the circumscribed
/// regular m-gon (lam = 0).
SupportVector random_outer(int m, double R, std::uint64_t seed, double amplitude = 0.3,
                           double lam = 1.0);

enum class Constraint { Perimeter, Area };

struct SearchConfig {
    int m = 16;
    double beta = 1.0;
    double delta = 0.5;
    Constraint constraint = Constraint::Perimeter;
    double constraint_value = 2.0 * 3.14159265358979323846;
    std::uint64_t seed = 1;
    int restarts = 10;
    int max_iters = 200;
    Resolution search_res{64, 16};
    Resolution final_res{256, 64};
    double amplitude = 0.15;
};

struct SearchIteration {
    std::vector<double> h;
    double objective = 0.0;
};

struct SearchTrace {
    SearchConfig config;
    std::vector<SearchIteration> iterations;  // accepted best-so-far steps
    SupportVector best_shape;
    double best_value = 0.0;        // at search resolution
    double final_value = 0.0;       // incumbent re-evaluated at final_res
};

/// Constraint-normalized FEM dispersion of the shape described by h, with a
/// repair-then-penalize treatment of convexity violations.
double objective(const std::vector<double>& h, const SearchConfig& config);

/// Derivative-free Nelder-Mead minimization over support space with seeded
/// restarts; deterministic for a fixed config.
SearchTrace minimize_dispersion(const SearchConfig& config);

struct MaximalityReport {
    double disk_value = 0.0;      // oracle I of the equal-perimeter disk
    double fem_error_est = 0.0;   // |FEM - oracle| on the disk at this resolution
    double tolerance = 0.0;       // 2 * fem_error_est
    std::vector<double> margins;  // disk_value - fem value, per sample
    int violations = 0;
    bool pass = false;
};

/// Randomized check of the planar maximality theorem: no convex shape of
/// perimeter P may beat the equal-perimeter disk beyond FEM tolerance.
MaximalityReport maximality_test(int samples, int m, double P, double beta, double delta,
                                 Resolution res, std::uint64_t seed = 12345);

}  // namespace insulair
