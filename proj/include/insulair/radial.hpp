#pragma once

#include <limits>

namespace insulair {

/// Sentinel for the Dirichlet (beta -> infinity) outer condition. All radial
/// formulas branch on it explicitly rather than evaluating large-beta limits.
inline constexpr double kDirichletBeta = std::numeric_limits<double>::infinity();

inline bool is_dirichlet(double beta) { return beta == kDirichletBeta; }

/// Concentric-ball configuration: conductor B_R insulated by the annulus
/// B_{R+delta} \ B_R under Robin coefficient beta (or the Dirichlet sentinel).
struct RadialConfig {
    int n = 2;           // dimension >= 2
    double R = 1.0;      // inner radius > 0
    double beta = 1.0;   // > 0, or kDirichletBeta
    double delta = 1.0;  // layer thickness >= 0

    void validate() const;
};

/// Normalization constant of the planar annulus profile
/// v(r) = 1 - c2 * log(r/R).
double c2(double R, double beta, double delta);

/// Normalization constant for n >= 3: v(r) = 1 - cn * (1 - (R/r)^{n-2}).
double cn(int n, double R, double beta, double delta);

/// Exact harmonic profile on [R, R+delta] with v(R) = 1 and the Robin (or
/// Dirichlet) condition at R+delta.
class RadialProfile {
  public:
    explicit RadialProfile(RadialConfig config);

    const RadialConfig& config() const { return cfg_; }
    double constant() const { return c_; }

    double value(double r) const;
    double derivative(double r) const;

  private:
    void check_range(double r) const;

    RadialConfig cfg_;
    double c_;
};

/// Heat dispersion of the concentric-ball configuration:
/// 2*pi*c2 in the plane, n*omega_n*(n-2)*R^{n-2}*cn for n >= 3.
/// delta = 0 returns beta*P(B_R); beta = 0 returns 0.
double dispersion_ball(const RadialConfig& config);

/// Dirichlet-mode (beta -> infinity) dispersion value.
double dispersion_limit_dirichlet(int n, double R, double delta);

/// Largest delta up to which the ball dispersion is nondecreasing:
/// max(0, (n-1)/beta - R).
double monotonicity_threshold(int n, double beta, double R);

/// Sign (-1, 0, +1) of d/d_delta of dispersion_ball, from the closed form:
/// positive iff beta*(R+delta) < n-1.
int dispersion_derivative_sign(const RadialConfig& config);

}  // namespace insulair
