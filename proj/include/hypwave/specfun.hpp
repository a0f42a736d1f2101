#pragma once

#include <complex>
#include <vector>

#include "hypwave/space.hpp"

namespace hypwave {

using Complex = std::complex<double>;

enum class SphericalMethod { series, ode, closed_form };

struct SphericalValue {
    Complex value{};
    Complex s_derivative{};
    SphericalMethod method = SphericalMethod::series;
};

// Harish-Chandra c-function in the Jacobi normalization
//   c(lam) = 2^{rho - i lam} Gamma(alpha+1) Gamma(i lam)
//            / [ Gamma((i lam + rho)/2) Gamma((i lam + alpha - beta + 1)/2) ],
// which pairs with phi_lam(0) = 1 so that
// phi_lam(s) e^{rho s} -> 2 Re(c(lam) e^{i lam s}) for lam real.
Complex harish_chandra_c(const SpaceParams& p, Complex lam);

// 1 / c(-lam); analytic for Im lam >= 0.
Complex c_inv_neg(const SpaceParams& p, Complex lam);

// 1 / c(lam).
Complex c_inv(const SpaceParams& p, Complex lam);

// |c(lam)|^{-2} for real lam, with the removable zero at lam = 0 handled.
double plancherel_density(const SpaceParams& p, double lam);

// phi_lam(s) and d/ds phi_lam(s).  2F1 power series up to the switch radius,
// then either the radial ODE (moderate |lam|) or the far-field amplitude
// representation (large |lam|).  Requires |Im lam| <= rho'.
SphericalValue spherical_fn(const SpaceParams& p, Complex lam, double s, int deriv = 0);

// phi_lam and its s-derivative along a whole grid (one ODE sweep per lam).
// s_grid must be nondecreasing.
struct SphericalRow {
    std::vector<Complex> phi;
    std::vector<Complex> dphi;
    SphericalMethod method = SphericalMethod::ode;
};
SphericalRow spherical_profile(const SpaceParams& p, Complex lam,
                               const std::vector<double>& s_grid);

// Far-field amplitude a2(lam, s) with y -> 1 as s -> inf, together with y',
// from a backward sweep of the amplitude ODE.  Valid for 0 <= Im lam <= rho'.
// s_points must be nonincreasing.
struct JostRow {
    std::vector<Complex> y;
    std::vector<Complex> dy;
};
JostRow jost_amplitude(const SpaceParams& p, Complex lam,
                       const std::vector<double>& s_points);

// | phi_lam(s) e^{rho s} - 2 Re(c(lam) e^{i lam s}) |, the deviation from the
// leading far-field expansion.  lam real and nonzero, s >= 1/10.
double asymptotic_residual(const SpaceParams& p, double lam, double s);

// series switch radius and the u-ODE/far-field switch frequency
inline constexpr double kSeriesRadius = 0.5;
inline constexpr double kOscillatorySwitch = 24.0;

}  // namespace hypwave
