#pragma once

#include <stdexcept>

namespace hypwave {

// Rank-one noncompact symmetric space, identified by the root multiplicities
// (m1, m2).  All derived constants are fixed at construction.
struct SpaceParams {
    int m1 = 2;           // multiplicity of alpha
    int m2 = 0;           // multiplicity of 2*alpha
    int n = 3;            // dimension, m1 + m2 + 1
    double rho = 1.0;     // (m1 + 2*m2)/2
    double d = 1.0;       // (n-1)/2
    double rho_prime = 1.1;  // rho + 1/10

    // Jacobi parameters of the radial part.
    double jacobi_alpha = 0.5;  // (m1 + m2 - 1)/2
    double jacobi_beta = -0.5;  // (m2 - 1)/2

    static SpaceParams make(int m1, int m2);

    bool real_hyperbolic() const { return m2 == 0; }

    // Surface measure of the unit sphere S^{n-1}, 2 pi^{n/2} / Gamma(n/2).
    double omega() const;
};

inline SpaceParams hyperbolic2() { return SpaceParams::make(1, 0); }
inline SpaceParams hyperbolic3() { return SpaceParams::make(2, 0); }

// Radial annulus A_{R-r}^{R+r}; lower edge clamps at 0, in which case the
// region is the ball of radius R + r.
struct Annulus {
    double R = 0.0;  // center radius
    double r = 1.0;  // half width
    Annulus() = default;
    Annulus(double R_, double r_);
    double lower() const { return R > r ? R - r : 0.0; }
    double upper() const { return R + r; }
    bool is_ball() const { return R <= r; }
};

// delta(s) = omega_{n-1} (sinh s)^{m1} (sinh(2s)/2)^{m2}; normalized so that
// delta(s) ~ omega_{n-1} s^{n-1} as s -> 0.
double density(const SpaceParams& p, double s);

// d/ds log delta(s) = m1 coth s + 2 m2 coth 2s  (s > 0).
double density_log_deriv(const SpaceParams& p, double s);

// density_log_deriv(s) - 2 rho, computed without cancellation; decays like
// e^{-2s} as s grows.
double density_log_deriv_excess(const SpaceParams& p, double s);

// mu(B(o, r)) by adaptive quadrature.
double ball_measure(const SpaceParams& p, double r);

// Measure of the annulus (ball if degenerate).
double annulus_measure(const SpaceParams& p, const Annulus& a);

}  // namespace hypwave
