#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hypwave/space.hpp"

namespace hypwave {

// Sampled radial function F(s) on a grid starting at 0; f(x) = F(|x|),
// treated as 0 beyond the last grid point.
struct RadialProfile {
    std::vector<double> s;
    std::vector<std::complex<double>> values;

    RadialProfile() = default;
    RadialProfile(std::vector<double> grid, std::vector<std::complex<double>> vals);

    double s_max() const { return s.empty() ? 0.0 : s.back(); }
    size_t size() const { return s.size(); }

    // linear interpolation, 0 outside [0, s_max]
    std::complex<double> operator()(double x) const;

    static RadialProfile sample(std::vector<double> grid,
                                const std::function<double(double)>& f);
    static RadialProfile sample_complex(std::vector<double> grid,
                                        const std::function<std::complex<double>(double)>& f);
};

// Sampled even spectrum g(lambda) on a nonnegative grid.
struct Spectrum {
    std::vector<double> lam;
    std::vector<std::complex<double>> values;

    Spectrum() = default;
    Spectrum(std::vector<double> grid, std::vector<std::complex<double>> vals);

    double lam_max() const { return lam.empty() ? 0.0 : lam.back(); }
    size_t size() const { return lam.size(); }
    std::complex<double> operator()(double x) const;  // even extension
};

std::vector<double> uniform_grid(double lo, double hi, int n);

// (int |F|^q delta ds)^{1/q}; q = inf handled as the sup over the grid.
double lp_norm(const SpaceParams& p, const RadialProfile& f, double q);
double sup_norm(const RadialProfile& f);

// int F delta ds (signed, real part and imaginary part integrated separately)
std::complex<double> radial_integral(const SpaceParams& p, const RadialProfile& f);

// d/ds of the sampled profile by centered differences.
RadialProfile derivative(const RadialProfile& f);

// pointwise combination helpers
RadialProfile multiply(const RadialProfile& f, const std::function<double(double)>& w);
RadialProfile lin_comb(double a, const RadialProfile& f, double b, const RadialProfile& g);

// Smooth reference bump exp(-1/(1-(s/R)^2)) on [0, R), 0 outside.
double bump(double s, double R);

// Evenized Gaussian bump e^{-((s-c)/w)^2} + e^{-((s+c)/w)^2} cut to [0, R];
// smooth as a radial function, and with R - c >= 4.8 w the edge value is
// negligible, so the spectral tail decays like a Gaussian.
double gauss_bump(double s, double c, double w, double R);

}  // namespace hypwave
