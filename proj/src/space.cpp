#include "hypwave/space.hpp"

#include <cmath>

#include "hypwave/quadrature.hpp"

namespace hypwave {

SpaceParams SpaceParams::make(int m1, int m2) {
    if (m1 < 1) throw std::invalid_argument("SpaceParams: m1 must be >= 1");
    if (m2 < 0) throw std::invalid_argument("SpaceParams: m2 must be >= 0");
    SpaceParams p;
    p.m1 = m1;
    p.m2 = m2;
    p.n = m1 + m2 + 1;
    p.rho = 0.5 * (m1 + 2 * m2);
    p.d = 0.5 * (p.n - 1);
    p.rho_prime = p.rho + 0.1;
    p.jacobi_alpha = 0.5 * (m1 + m2 - 1);
    p.jacobi_beta = 0.5 * (m2 - 1);
    return p;
}

double SpaceParams::omega() const {
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

Annulus::Annulus(double R_, double r_) : R(R_), r(r_) {
    if (r <= 0.0) throw std::invalid_argument("Annulus: r must be positive");
    if (R < 0.0) throw std::invalid_argument("Annulus: R must be nonnegative");
}

double density(const SpaceParams& p, double s) {
    if (s < 0.0) throw std::domain_error("density: s must be nonnegative");
    if (s == 0.0) return 0.0;
    // (sinh s)^{m1} (sinh 2s / 2)^{m2} = (sinh s)^{m1+m2} (cosh s)^{m2}
    return p.omega() * std::pow(std::sinh(s), p.m1 + p.m2) * std::pow(std::cosh(s), p.m2);
}

double density_log_deriv(const SpaceParams& p, double s) {
    return (p.m1 + p.m2) / std::tanh(s) + p.m2 * std::tanh(s);
}

double density_log_deriv_excess(const SpaceParams& p, double s) {
    // coth s - 1 = 2/(e^{2s}-1), tanh s - 1 = -2/(e^{2s}+1)
    const double e2 = std::expm1(2.0 * s);
    return (p.m1 + p.m2) * 2.0 / e2 - p.m2 * 2.0 / (e2 + 2.0);
}

double ball_measure(const SpaceParams& p, double r) {
    if (r <= 0.0) throw std::domain_error("ball_measure: r must be positive");
    auto q = integrate([&](double s) { return density(p, s); }, 0.0, r, 1e-10, 1e-8);
    return q.value;
}

double annulus_measure(const SpaceParams& p, const Annulus& a) {
    auto q = integrate([&](double s) { return density(p, s); }, a.lower(), a.upper(),
                       1e-10, 1e-8);
    return q.value;
}

}  // namespace hypwave
