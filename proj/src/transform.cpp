#include "hypwave/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "hypwave/parallel.hpp"
#include "hypwave/quadrature.hpp"

namespace hypwave {

namespace {
constexpr int kPanelOrder = 16;

// Gauss-Legendre panel grid on [0, top] with panel width <= h
void panel_grid(double top, double h, std::vector<double>& nodes,
                std::vector<double>& weights) {
    static const GaussLegendre gl(kPanelOrder);
    const int n_panels = std::max(1, (int)std::ceil(top / h));
    const double ph = top / n_panels;
    nodes.clear();
    weights.clear();
    nodes.reserve((size_t)n_panels * kPanelOrder);
    weights.reserve((size_t)n_panels * kPanelOrder);
    for (int k = 0; k < n_panels; ++k) {
        const double lo = k * ph, c = lo + 0.5 * ph;
        for (int i = 0; i < kPanelOrder; ++i) {
            nodes.push_back(c + 0.5 * ph * gl.x[i]);
            weights.push_back(0.5 * ph * gl.w[i]);
        }
    }
}
}  // namespace

TransformPlan::TransformPlan(const SpaceParams& p, double lam_max, double s_max,
                             double h_lam, double h_s)
    : p_(p) {
    if (lam_max <= 1.0 || s_max <= 0.5)
        throw std::invalid_argument("TransformPlan: degenerate ranges");
    if (h_s <= 0.0) h_s = std::min(0.35, 5.6 / lam_max);
    if (h_lam <= 0.0) h_lam = std::min(0.6, 5.6 / s_max);
    panel_grid(s_max, h_s, s_grid_, s_w_);
    panel_grid(lam_max, h_lam, lam_grid_, lam_w_);
    const size_t nl = lam_grid_.size(), ns = s_grid_.size();
    phi_.resize(nl * ns);
    delta_.resize(ns);
    pl_density_.resize(nl);
    for (size_t i = 0; i < ns; ++i) delta_[i] = density(p_, s_grid_[i]);
    parallel_for(nl, [&](size_t il) {
        const double lam = lam_grid_[il];
        pl_density_[il] = plancherel_density(p_, lam);
        auto row = spherical_profile(p_, Complex(lam, 0.0), s_grid_);
        for (size_t is = 0; is < ns; ++is) phi_[il * ns + is] = row.phi[is].real();
    });
    calibrate();
}

namespace {
// raw inverse with unit constant
double inverse_point_raw(const TransformPlan& plan, const Spectrum& g, size_t is) {
    const auto& lw = plan.lam_weights();
    double acc = 0.0;
    for (size_t il = 0; il < lw.size(); ++il)
        acc += lw[il] * g.values[il].real() * plan.phi(il, is) * plan.plancherel_at(il);
    return acc;
}
}  // namespace

void TransformPlan::calibrate() {
    // reference bump supported in [0, min(2, 0.9 s_max)]
    const double R = std::min(2.0, 0.9 * s_grid_.back());
    const size_t nl = lam_grid_.size(), ns = s_grid_.size();
    std::vector<double> f0(ns);
    for (size_t i = 0; i < ns; ++i) f0[i] = bump(s_grid_[i], R);
    Spectrum g;
    g.lam = lam_grid_;
    g.values.resize(nl);
    for (size_t il = 0; il < nl; ++il) {
        double acc = 0.0;
        for (size_t is = 0; is < ns; ++is)
            acc += s_w_[is] * f0[is] * phi_[il * ns + is] * delta_[is];
        g.values[il] = acc;
    }
    double num = 0.0, den = 0.0;
    for (size_t is = 0; is < ns; ++is) {
        const double h = inverse_point_raw(*this, g, is);
        num += s_w_[is] * h * f0[is] * delta_[is];
        den += s_w_[is] * h * h * delta_[is];
    }
    if (den <= 0.0) throw std::runtime_error("TransformPlan: calibration failed");
    c_plancherel_ = num / den;
}

std::shared_ptr<const TransformPlan> TransformPlan::standard(const SpaceParams& p,
                                                             double lam_max, double s_max,
                                                             double h_lam, double h_s) {
    return std::make_shared<TransformPlan>(p, lam_max, s_max, h_lam, h_s);
}

Spectrum forward(const TransformPlan& plan, const RadialProfile& f) {
    const auto& sg = plan.s_grid();
    const size_t ns = sg.size(), nl = plan.lam_grid().size();
    std::vector<std::complex<double>> fv(ns);
    if (f.s == sg)
        fv = f.values;
    else
        for (size_t i = 0; i < ns; ++i) fv[i] = f(sg[i]);
    Spectrum g;
    g.lam = plan.lam_grid();
    g.values.resize(nl);
    const auto& w = plan.s_weights();
    for (size_t il = 0; il < nl; ++il) {
        std::complex<double> acc = 0.0;
        for (size_t is = 0; is < ns; ++is)
            acc += w[is] * fv[is] * plan.phi(il, is) * plan.density_at(is);
        g.values[il] = acc;
        if (!std::isfinite(std::abs(acc)))
            throw std::overflow_error("forward: non-finite spectral value");
    }
    return g;
}

RadialProfile inverse(const TransformPlan& plan, const Spectrum& g, double* tail_estimate) {
    if (g.lam != plan.lam_grid())
        throw std::invalid_argument("inverse: spectrum grid must match the plan");
    const auto& sg = plan.s_grid();
    const auto& lw = plan.lam_weights();
    RadialProfile out;
    out.s = sg;
    out.values.resize(sg.size());
    const double cp = plan.plancherel_constant();
    for (size_t is = 0; is < sg.size(); ++is) {
        std::complex<double> acc = 0.0;
        for (size_t il = 0; il < lw.size(); ++il)
            acc += lw[il] * g.values[il] * plan.phi(il, is) * plan.plancherel_at(il);
        out.values[is] = cp * acc;
    }
    if (tail_estimate) {
        const size_t nl = g.size();
        double m = 0.0;
        for (size_t il = nl - std::max<size_t>(2, nl / 10); il < nl; ++il)
            m = std::max(m, std::abs(g.values[il]) * plan.plancherel_at(il));
        *tail_estimate = cp * m * plan.lam_grid().back() * 0.5;
    }
    return out;
}

double plancherel_norm(const TransformPlan& plan, const Spectrum& g) {
    if (g.lam != plan.lam_grid())
        throw std::invalid_argument("plancherel_norm: spectrum grid must match the plan");
    const auto& lw = plan.lam_weights();
    double acc = 0.0;
    for (size_t il = 0; il < lw.size(); ++il)
        acc += lw[il] * std::norm(g.values[il]) * plan.plancherel_at(il);
    return std::sqrt(plan.plancherel_constant() * acc);
}

double l2_norm(const TransformPlan& plan, const RadialProfile& f) {
    const auto& sg = plan.s_grid();
    const auto& w = plan.s_weights();
    double acc = 0.0;
    for (size_t i = 0; i < sg.size(); ++i) {
        const std::complex<double> v = f.s == sg ? f.values[i] : f(sg[i]);
        acc += w[i] * std::norm(v) * plan.density_at(i);
    }
    return std::sqrt(acc);
}

RadialProfile radial_convolve(const TransformPlan& plan, const RadialProfile& f,
                              const RadialProfile& g) {
    Spectrum fs = forward(plan, f);
    Spectrum gs = forward(plan, g);
    for (size_t i = 0; i < fs.size(); ++i) fs.values[i] *= gs.values[i];
    return inverse(plan, fs);
}

RadialProfile multiplier_apply(const TransformPlan& plan,
                               const std::function<std::complex<double>(double)>& m,
                               const RadialProfile& f) {
    Spectrum fs = forward(plan, f);
    for (size_t i = 0; i < fs.size(); ++i) {
        const auto mv = m(fs.lam[i]);
        if (!std::isfinite(std::abs(mv)))
            throw std::domain_error("multiplier_apply: unbounded symbol on the real line");
        fs.values[i] *= mv;
    }
    return inverse(plan, fs);
}

}  // namespace hypwave
