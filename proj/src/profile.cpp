#include "hypwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypwave/quadrature.hpp"

namespace hypwave {

namespace {
void check_grid(const std::vector<double>& g, size_t nvals, const char* who) {
    if (g.size() != nvals) throw std::invalid_argument(std::string(who) + ": size mismatch");
    if (g.empty()) throw std::invalid_argument(std::string(who) + ": empty grid");
    if (g.front() < 0.0) throw std::invalid_argument(std::string(who) + ": negative grid");
    for (size_t i = 1; i < g.size(); ++i)
        if (g[i] <= g[i - 1])
            throw std::invalid_argument(std::string(who) + ": grid not strictly increasing");
}

std::complex<double> interp(const std::vector<double>& g,
                            const std::vector<std::complex<double>>& v, double x) {
    if (g.empty() || x > g.back()) return {0.0, 0.0};
    if (x <= g.front()) return v.front();
    auto it = std::upper_bound(g.begin(), g.end(), x);
    if (it == g.end()) return v.back();
    const size_t i = (size_t)(it - g.begin());
    const double w = (x - g[i - 1]) / (g[i] - g[i - 1]);
    return v[i - 1] * (1.0 - w) + v[i] * w;
}
}  // namespace

RadialProfile::RadialProfile(std::vector<double> grid, std::vector<std::complex<double>> vals)
    : s(std::move(grid)), values(std::move(vals)) {
    check_grid(s, values.size(), "RadialProfile");
    for (auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("RadialProfile: non-finite value");
}

std::complex<double> RadialProfile::operator()(double x) const {
    if (x < 0.0) x = -x;
    return interp(s, values, x);
}

RadialProfile RadialProfile::sample(std::vector<double> grid,
                                    const std::function<double(double)>& f) {
    std::vector<std::complex<double>> v(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return RadialProfile(std::move(grid), std::move(v));
}

RadialProfile RadialProfile::sample_complex(
    std::vector<double> grid, const std::function<std::complex<double>(double)>& f) {
    std::vector<std::complex<double>> v(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return RadialProfile(std::move(grid), std::move(v));
}

Spectrum::Spectrum(std::vector<double> grid, std::vector<std::complex<double>> vals)
    : lam(std::move(grid)), values(std::move(vals)) {
    check_grid(lam, values.size(), "Spectrum");
}

std::complex<double> Spectrum::operator()(double x) const {
    return interp(lam, values, std::abs(x));
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2 || hi <= lo) throw std::invalid_argument("uniform_grid: bad range");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

double lp_norm(const SpaceParams& p, const RadialProfile& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lp_norm: q must be >= 1");
    if (std::isinf(q)) return sup_norm(f);
    std::vector<double> integ(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        integ[i] = std::pow(std::abs(f.values[i]), q) * density(p, f.s[i]);
    return std::pow(simpson(f.s, integ), 1.0 / q);
}

double sup_norm(const RadialProfile& f) {
    double m = 0.0;
    for (auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> radial_integral(const SpaceParams& p, const RadialProfile& f) {
    std::vector<std::complex<double>> integ(f.size());
    for (size_t i = 0; i < f.size(); ++i) integ[i] = f.values[i] * density(p, f.s[i]);
    return simpson(f.s, integ);
}

RadialProfile derivative(const RadialProfile& f) {
    const size_t n = f.size();
    std::vector<std::complex<double>> d(n);
    if (n >= 2) {
        d[0] = (f.values[1] - f.values[0]) / (f.s[1] - f.s[0]);
        d[n - 1] = (f.values[n - 1] - f.values[n - 2]) / (f.s[n - 1] - f.s[n - 2]);
        for (size_t i = 1; i + 1 < n; ++i)
            d[i] = (f.values[i + 1] - f.values[i - 1]) / (f.s[i + 1] - f.s[i - 1]);
    }
    RadialProfile out;
    out.s = f.s;
    out.values = std::move(d);
    return out;
}

RadialProfile multiply(const RadialProfile& f, const std::function<double(double)>& w) {
    RadialProfile out = f;
    for (size_t i = 0; i < out.size(); ++i) out.values[i] *= w(out.s[i]);
    return out;
}

RadialProfile lin_comb(double a, const RadialProfile& f, double b, const RadialProfile& g) {
    if (f.s != g.s) throw std::invalid_argument("lin_comb: grids differ");
    RadialProfile out = f;
    for (size_t i = 0; i < out.size(); ++i)
        out.values[i] = a * f.values[i] + b * g.values[i];
    return out;
}

double bump(double s, double R) {
    const double u = s / R;
    if (u >= 1.0 || u <= -1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double gauss_bump(double s, double c, double w, double R) {
    if (s < 0.0 || s > R) return 0.0;
    const double u = (s - c) / w, v = (s + c) / w;
    // mirror term keeps the even extension smooth at the origin
    return std::exp(-u * u) + std::exp(-v * v);
}

}  // namespace hypwave
