#include "hypwave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypwave/gammafn.hpp"
#include "hypwave/ode.hpp"

namespace hypwave {

namespace {

constexpr double kPoleGuard = 1e-8;

std::complex<double> log_c(const SpaceParams& p, Complex lam) {
    const Complex ilam = Complex(0.0, 1.0) * lam;
    return (p.rho - ilam) * std::log(2.0) + log_gamma(Complex(p.jacobi_alpha + 1.0, 0.0)) +
           log_gamma(ilam) - log_gamma(0.5 * (ilam + p.rho)) -
           log_gamma(0.5 * (ilam + p.jacobi_alpha - p.jacobi_beta + 1.0));
}

void check_pole(Complex lam) {
    // Gamma(i lam) poles sit at lam = i k, k = 0, 1, 2, ...
    for (int k = 0; k < 40; ++k) {
        if (std::abs(lam - Complex(0.0, (double)k)) < kPoleGuard)
            throw std::domain_error("harish_chandra_c: lam too close to a pole");
    }
}

}  // namespace

Complex harish_chandra_c(const SpaceParams& p, Complex lam) {
    check_pole(lam);
    return std::exp(log_c(p, lam));
}

Complex c_inv(const SpaceParams& p, Complex lam) { return std::exp(-log_c(p, lam)); }

Complex c_inv_neg(const SpaceParams& p, Complex lam) { return std::exp(-log_c(p, -lam)); }

double plancherel_density(const SpaceParams& p, double lam) {
    if (lam == 0.0) return 0.0;
    const Complex v = c_inv(p, Complex(lam, 0.0)) * c_inv(p, Complex(-lam, 0.0));
    return v.real();
}

namespace {

using CL = std::complex<long double>;

// 2F1((rho+i lam)/2, (rho-i lam)/2; alpha+1; -sinh^2 s) and its s-derivative,
// accumulated in extended precision (the terms grow before they decay when
// s |lam| is large).
void series_phi(const SpaceParams& p, Complex lam, double s, Complex& phi, Complex& dphi) {
    const CL b = CL(0.5L * p.rho, 0.0L) - CL(0.0L, 0.5L) * CL(lam.real(), lam.imag());
    const CL a2 = CL(0.5L * p.rho) + CL(0.0L, 0.5L) * CL(lam.real(), lam.imag());
    const long double c0 = (long double)p.jacobi_alpha + 1.0L;
    const long double sh = sinhl((long double)s);
    const long double z = -sh * sh;
    CL term(1.0L, 0.0L), sum(1.0L, 0.0L);
    CL termd(1.0L, 0.0L), sumd(1.0L, 0.0L);  // 2F1(a+1, b+1; c+1; z)
    const CL ab = a2 * b;
    int settled = 0;
    for (int k = 0; k < 4000; ++k) {
        const long double kk = (long double)k;
        term *= (a2 + kk) * (b + kk) / ((c0 + kk) * (kk + 1.0L)) * z;
        termd *= (a2 + kk + 1.0L) * (b + kk + 1.0L) / ((c0 + kk + 1.0L) * (kk + 1.0L)) * z;
        sum += term;
        sumd += termd;
        const long double mag = std::abs(term) + std::abs(termd);
        if (mag < 1e-19L * (std::abs(sum) + std::abs(sumd)) + 1e-300L) {
            if (++settled >= 3) break;
        } else {
            settled = 0;
        }
    }
    phi = Complex((double)sum.real(), (double)sum.imag());
    const long double dz = -2.0L * sh * coshl((long double)s);
    const CL dval = ab / CL(c0) * sumd * CL(dz);
    dphi = Complex((double)dval.real(), (double)dval.imag());
}

void radial_rhs(const SpaceParams& p, Complex lam, double s, const Rkdp2c::State& y,
                Rkdp2c::State& dy) {
    const double g = density_log_deriv(p, s);
    dy[0] = y[1];
    dy[1] = -g * y[1] - (lam * lam + p.rho * p.rho) * y[0];
}

// amplitude equation for y(s) = a2(lam, s):
//   y'' + [2(i lam - rho) + g(s)] y' + (i lam - rho)(g(s) - 2 rho) y = 0
void jost_rhs(const SpaceParams& p, Complex lam, double s, const Rkdp2c::State& y,
              Rkdp2c::State& dy) {
    const Complex mu = Complex(0.0, 1.0) * lam - p.rho;
    const double g = density_log_deriv(p, s);
    const double gex = density_log_deriv_excess(p, s);
    dy[0] = y[1];
    dy[1] = -(2.0 * mu + g) * y[1] - mu * gex * y[0];
}

double jost_start(const SpaceParams& p, double s_top) {
    (void)p;
    return std::max(18.0, s_top + 1.0);
}

}  // namespace

JostRow jost_amplitude(const SpaceParams& p, Complex lam,
                       const std::vector<double>& s_points) {
    if (lam.imag() < -1e-12 || lam.imag() > p.rho_prime + 1e-12)
        throw std::domain_error("jost_amplitude: need 0 <= Im lam <= rho'");
    JostRow row;
    row.y.resize(s_points.size());
    row.dy.resize(s_points.size());
    if (s_points.empty()) return row;
    for (size_t i = 1; i < s_points.size(); ++i)
        if (s_points[i] > s_points[i - 1] + 1e-14)
            throw std::invalid_argument("jost_amplitude: s_points must be nonincreasing");
    Rkdp2c ode([&](double s, const Rkdp2c::State& y, Rkdp2c::State& dy) {
        jost_rhs(p, lam, s, y, dy);
    });
    ode.set_h_max(std::min(0.25, 1.2 / (1.0 + std::abs(lam))));
    Rkdp2c::State y = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    double s_cur = jost_start(p, s_points.front());
    for (size_t i = 0; i < s_points.size(); ++i) {
        ode.integrate_to(s_cur, s_points[i], y);
        s_cur = s_points[i];
        row.y[i] = y[0];
        row.dy[i] = y[1];
    }
    return row;
}

SphericalRow spherical_profile(const SpaceParams& p, Complex lam,
                               const std::vector<double>& s_grid) {
    if (std::abs(lam.imag()) > p.rho_prime + 1e-12)
        throw std::domain_error("spherical_fn: |Im lam| exceeds the tube half-width rho'");
    SphericalRow row;
    const size_t n = s_grid.size();
    row.phi.resize(n);
    row.dphi.resize(n);
    for (size_t i = 1; i < n; ++i)
        if (s_grid[i] < s_grid[i - 1] - 1e-14)
            throw std::invalid_argument("spherical_profile: s_grid must be nondecreasing");

    // the 2F1 terms grow like e^{|lam| tanh s} before decaying; keep the series
    // where extended-precision accumulation still clears 1e-11
    auto series_ok = [&](double s) {
        return std::abs(lam) <= kOscillatorySwitch || std::abs(lam) * std::tanh(s) <= 22.0;
    };
    size_t i = 0;
    for (; i < n && s_grid[i] <= kSeriesRadius && series_ok(s_grid[i]); ++i)
        series_phi(p, lam, s_grid[i], row.phi[i], row.dphi[i]);
    if (i == n) {
        row.method = SphericalMethod::series;
        return row;
    }

    if (std::abs(lam) <= kOscillatorySwitch) {
        // continue with the oscillatory radial ODE from the series boundary
        Rkdp2c ode([&](double s, const Rkdp2c::State& y, Rkdp2c::State& dy) {
            radial_rhs(p, lam, s, y, dy);
        });
        ode.set_h_max(std::min(0.05, 1.0 / (1.0 + std::abs(lam))));
        Rkdp2c::State y;
        double s_cur = kSeriesRadius;
        series_phi(p, lam, s_cur, y[0], y[1]);
        for (; i < n; ++i) {
            ode.integrate_to(s_cur, s_grid[i], y);
            s_cur = s_grid[i];
            row.phi[i] = y[0];
            row.dphi[i] = y[1];
        }
        row.method = SphericalMethod::ode;
        return row;
    }

    // far-field amplitude representation
    const bool on_axis = std::abs(lam.imag()) < 1e-14;
    std::vector<double> pts(s_grid.begin() + i, s_grid.end());
    std::reverse(pts.begin(), pts.end());
    const Complex lam_up = lam.imag() >= 0.0 ? lam : std::conj(lam);
    JostRow plus = jost_amplitude(p, lam_up, pts);
    JostRow minus;
    if (!on_axis) minus = jost_amplitude(p, -std::conj(lam_up), pts);
    const Complex cp = harish_chandra_c(p, lam_up);
    const Complex cm = harish_chandra_c(p, -lam_up);
    const Complex I(0.0, 1.0);
    for (size_t k = 0; k < pts.size(); ++k) {
        const double s = pts[k];
        const size_t j = n - 1 - k;
        const Complex ep = std::exp((I * lam_up - p.rho) * s);
        Complex phi, dphi;
        if (on_axis) {
            const Complex w = cp * plus.y[k] * ep;
            const Complex dw = cp * (plus.dy[k] + (I * lam_up - p.rho) * plus.y[k]) * ep;
            phi = 2.0 * w.real();
            dphi = 2.0 * dw.real();
        } else {
            const Complex em = std::exp((-I * lam_up - p.rho) * s);
            phi = cp * plus.y[k] * ep + cm * minus.y[k] * em;
            dphi = cp * (plus.dy[k] + (I * lam_up - p.rho) * plus.y[k]) * ep +
                   cm * (minus.dy[k] + (-I * lam_up - p.rho) * minus.y[k]) * em;
        }
        if (lam.imag() < 0.0 && !on_axis) {  // phi_lam = phi_{-lam} = conj on the mirror
            phi = std::conj(phi);
            dphi = std::conj(dphi);
        }
        row.phi[j] = phi;
        row.dphi[j] = dphi;
    }
    row.method = SphericalMethod::ode;
    return row;
}

SphericalValue spherical_fn(const SpaceParams& p, Complex lam, double s, int deriv) {
    if (s < 0.0) throw std::domain_error("spherical_fn: s must be nonnegative");
    if (deriv != 0 && deriv != 1) throw std::invalid_argument("spherical_fn: deriv in {0,1}");
    SphericalValue out;
    if (s <= kSeriesRadius &&
        (std::abs(lam) <= kOscillatorySwitch || std::abs(lam) * std::tanh(s) <= 22.0)) {
        if (std::abs(lam.imag()) > p.rho_prime + 1e-12)
            throw std::domain_error("spherical_fn: |Im lam| exceeds the tube half-width rho'");
        series_phi(p, lam, s, out.value, out.s_derivative);
        out.method = SphericalMethod::series;
        return out;
    }
    auto row = spherical_profile(p, lam, {s});
    out.value = row.phi[0];
    out.s_derivative = row.dphi[0];
    out.method = row.method;
    return out;
}

double asymptotic_residual(const SpaceParams& p, double lam, double s) {
    if (lam == 0.0) throw std::domain_error("asymptotic_residual: lam must be nonzero");
    if (s < 0.1) throw std::domain_error("asymptotic_residual: s must be >= 1/10");
    auto v = spherical_fn(p, Complex(lam, 0.0), s);
    const Complex c = harish_chandra_c(p, Complex(lam, 0.0));
    const Complex lead = c * std::exp(Complex(0.0, lam * s));
    return std::abs(v.value.real() * std::exp(p.rho * s) - 2.0 * lead.real());
}

}  // namespace hypwave
