#include "insulair/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "insulair/geometry.hpp"

namespace insulair {

namespace {
constexpr double kPi = std::numbers::pi;
}

void RadialConfig::validate() const {
    if (n < 2) throw std::invalid_argument("RadialConfig: n < 2");
    if (!(R > 0.0)) throw std::invalid_argument("RadialConfig: R <= 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("RadialConfig: delta < 0");
    if (!is_dirichlet(beta) && !(beta >= 0.0))
        throw std::invalid_argument("RadialConfig: beta < 0");
}

double c2(double R, double beta, double delta) {
    const double ratio = (R + delta) / R;
    if (is_dirichlet(beta)) {
        if (delta == 0.0) throw std::invalid_argument("c2: Dirichlet with delta = 0");
        return 1.0 / std::log(ratio);
    }
    return beta / (1.0 / (R + delta) + beta * std::log(ratio));
}

double cn(int n, double R, double beta, double delta) {
    if (n < 3) throw std::invalid_argument("cn: requires n >= 3");
    const double shell = 1.0 - std::pow(R / (R + delta), n - 2);
    if (is_dirichlet(beta)) {
        if (delta == 0.0) throw std::invalid_argument("cn: Dirichlet with delta = 0");
        return 1.0 / shell;
    }
    const double flux = (n - 2) * std::pow(R, n - 2) / std::pow(R + delta, n - 1);
    return beta / (flux + beta * shell);
}

RadialProfile::RadialProfile(RadialConfig config) : cfg_(config) {
    cfg_.validate();
    if (cfg_.beta == 0.0)
        c_ = 0.0;  // Neumann: v constant 1
    else
        c_ = cfg_.n == 2 ? c2(cfg_.R, cfg_.beta, cfg_.delta)
                         : cn(cfg_.n, cfg_.R, cfg_.beta, cfg_.delta);
}

void RadialProfile::check_range(double r) const {
    if (r < cfg_.R * (1.0 - 1e-12) || r > (cfg_.R + cfg_.delta) * (1.0 + 1e-12))
        throw std::out_of_range("RadialProfile: r outside [R, R+delta]");
}

double RadialProfile::value(double r) const {
    check_range(r);
    if (cfg_.n == 2) return 1.0 - c_ * std::log(r / cfg_.R);
    return 1.0 - c_ * (1.0 - std::pow(cfg_.R / r, cfg_.n - 2));
}

double RadialProfile::derivative(double r) const {
    check_range(r);
    if (cfg_.n == 2) return -c_ / r;
    return -c_ * (cfg_.n - 2) * std::pow(cfg_.R, cfg_.n - 2) / std::pow(r, cfg_.n - 1);
}

double dispersion_ball(const RadialConfig& config) {
    config.validate();
    const int n = config.n;
    const double surface_R = n * unit_ball_volume(n) * std::pow(config.R, n - 1);
    if (!is_dirichlet(config.beta) && config.beta == 0.0) return 0.0;
    if (config.delta == 0.0) {
        if (is_dirichlet(config.beta))
            throw std::invalid_argument("dispersion_ball: Dirichlet with delta = 0 diverges");
        return config.beta * surface_R;  // no insulation: I = beta * P(B_R)
    }
    if (is_dirichlet(config.beta))
        return dispersion_limit_dirichlet(n, config.R, config.delta);
    if (n == 2) return 2.0 * kPi * c2(config.R, config.beta, config.delta);
    return n * unit_ball_volume(n) * (n - 2) * std::pow(config.R, n - 2) *
           cn(n, config.R, config.beta, config.delta);
}

double dispersion_limit_dirichlet(int n, double R, double delta) {
    if (n < 2) throw std::invalid_argument("dispersion_limit_dirichlet: n < 2");
    if (!(R > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("dispersion_limit_dirichlet: requires R > 0, delta > 0");
    if (n == 2) return 2.0 * kPi / std::log1p(delta / R);
    return n * (n - 2) * unit_ball_volume(n) /
           (std::pow(R, 2 - n) - std::pow(R + delta, 2 - n));
}

double monotonicity_threshold(int n, double beta, double R) {
    if (n < 2 || !(beta > 0.0) || !(R > 0.0))
        throw std::invalid_argument("monotonicity_threshold: invalid arguments");
    return std::max(0.0, (n - 1) / beta - R);
}

int dispersion_derivative_sign(const RadialConfig& config) {
    config.validate();
    if (is_dirichlet(config.beta) || config.beta == 0.0)
        throw std::invalid_argument("dispersion_derivative_sign: requires finite beta > 0");
    const double lhs = config.beta * (config.R + config.delta);
    const double rhs = static_cast<double>(config.n - 1);
    if (std::abs(lhs - rhs) <= 1e-12 * rhs) return 0;
    return lhs < rhs ? 1 : -1;
}

}  // namespace insulair
