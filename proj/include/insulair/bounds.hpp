#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "insulair/fem.hpp"
#include "insulair/geometry.hpp"

namespace insulair {

/// Adaptive Gauss quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

/// Web-function comparison: the energy of w(x) = v(R* + d(x, D)) upper-bounds
/// the dispersion of D, and coincides with the dispersion of the equivalent
/// ball D* when the Steiner perimeter expansion is an equality.
struct WebBoundReport {
    std::string shape_id;
    double equivalent_radius = 0.0;  // R*
    double I_star = 0.0;             // oracle dispersion of D*
    double bound = 0.0;              // web-function energy
    std::optional<double> fem_value;
};

WebBoundReport web_bound_2d(const ConvexPolygon& D, double beta, double delta,
                            bool with_fem = true, Resolution res = {256, 64});
WebBoundReport web_bound_nd(const QuermassVector& q, double beta, double delta);

/// Perimeter-volume constant: for B_R inside Omega with |Omega| - |B_R| <= delta0,
/// Delta P >= C * Delta V with
/// C = (n omega_n R^{n-1} / delta0) [ (1 + delta0/(omega_n R^n))^{1-1/n} - 1 ].
/// Decreasing in delta0, with limit (n-1)/R as delta0 -> 0+.
double lemma_constant(int n, double R, double delta0);

struct LemmaCheckResult {
    bool pass = true;
    int samples = 0;
    double min_slack = 0.0;  // min over samples of DeltaP - C*DeltaV
    std::optional<std::vector<double>> counterexample_h;
};

/// Samples random convex polygons containing B_R with volume excess <= delta0
/// and verifies the perimeter-volume inequality with the given constant scale
/// (scale = 1 is the lemma; scale > 1 is a negative control).
LemmaCheckResult lemma_check(double R, double delta0, int samples, std::uint64_t seed = 7,
                             double constant_scale = 1.0);

/// Largest delta0 with lemma_constant(n, R, delta0) >= beta; requires
/// beta < (n-1)/R.
double paradox_threshold(int n, double beta, double R);

struct ParadoxSample {
    double volume_excess = 0.0;
    double dispersion = 0.0;
    double no_insulation = 0.0;  // beta * P(B_R)
    bool paradox = false;        // dispersion > no_insulation
};

struct ParadoxReport {
    int n = 2;
    double R = 0.0, beta = 0.0;
    double delta0 = 0.0;
    std::vector<ParadoxSample> samples;
    bool pass = false;
};

/// Insulation paradox at work: thin layers around B_R with small volume excess
/// strictly increase the dispersion when beta < 1/R.
ParadoxReport paradox_check(double R, double beta, int trials, Resolution res,
                            std::uint64_t seed = 11);

struct ShrinkingSquareRow {
    int k = 0;
    double side = 0.0;
    double dispersion = 0.0;
    double beta_perimeter_bound = 0.0;  // beta * P(Q_k + delta B)
};

/// Dispersion of the shrinking squares Q_k = (0, 1/k)^2: strictly decreasing
/// in k with limit 0, while a fixed-perimeter companion family exists.
std::vector<ShrinkingSquareRow> shrinking_square_experiment(const std::vector<int>& k_values,
                                                            double beta, double delta,
                                                            Resolution res);

struct AprioriResult {
    bool pass = false;
    double beta_perimeter_margin = 0.0;  // beta*P(Omega) - I
    double capacity_margin = 0.0;        // I_dirichlet - I
};

/// A-priori bounds I <= beta*P(Omega) and I <= capacity-mode dispersion.
AprioriResult apriori_bounds(const Shape& D, double beta, double delta, double I_fem,
                             Resolution res = {256, 64});

}  // namespace insulair
