#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace hypwave {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-8,
                     int max_intervals = 4000);

QuadResult integrate_complex_re_im(const std::function<std::complex<double>(double)>& f,
                                   double a, double b, double abs_tol, double rel_tol,
                                   std::complex<double>& out);

// Composite Simpson over tabulated values on a uniform or arbitrary grid
// (trapezoid fallback on the last interval when the count is even).
double simpson(const std::vector<double>& x, const std::vector<double>& y);
std::complex<double> simpson(const std::vector<double>& x,
                             const std::vector<std::complex<double>>& y);

// Gauss-Legendre nodes/weights on [-1, 1], generated by Newton iteration.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    explicit GaussLegendre(int n);
};

// j_n(x) for n = 0..nmax, stable for all real x (series for small x,
// downward Miller recurrence otherwise).
std::vector<double> spherical_bessel_jn(int nmax, double x);

// int_{-1}^{1} P_n(t) e^{i w t} dt = 2 i^n j_n(w) for n = 0..nmax.
std::vector<std::complex<double>> legendre_oscillatory_moments(int nmax, double w);

}  // namespace hypwave
