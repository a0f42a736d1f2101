#include "hypwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hypwave/cutoff.hpp"
#include "hypwave/parallel.hpp"

namespace hypwave {

namespace {
constexpr double kDirectSwitch = 0.1;   // below this s, direct series quadrature
constexpr double kOmegaMin = 0.05;      // slowest phase the tail estimate accepts
constexpr int kTailPts = 9;

std::complex<double> I_unit(0.0, 1.0);

double legendre_p(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}
}  // namespace

double plancherel_constant(const SpaceParams& p) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p.m1, p.m2);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto plan = TransformPlan::standard(p, 50.0, 4.0);
    cache[key] = plan->plancherel_constant();
    return cache[key];
}

KernelPlan::KernelPlan(const SpaceParams& p, std::vector<double> s_grid,
                       KernelPlanConfig cfg)
    : gl(cfg.panel_order), p_(p), s_grid_(std::move(s_grid)), cfg_(cfg) {
    if (s_grid_.size() < 2) throw std::invalid_argument("KernelPlan: need an s grid");
    for (size_t i = 1; i < s_grid_.size(); ++i)
        if (s_grid_[i] <= s_grid_[i - 1])
            throw std::invalid_argument("KernelPlan: s grid must increase");
    if (s_grid_.front() < 0.0) throw std::invalid_argument("KernelPlan: negative s");
    c_plancherel_ = ::hypwave::plancherel_constant(p_);
    const int N = cfg_.panel_order;
    legmat.resize((size_t)N * N);
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < N; ++i)
            legmat[(size_t)n * N + i] = 0.5 * (2.0 * n + 1.0) * gl.w[i] * legendre_p(n, gl.x[i]);
    build_real_line();
    if (cfg_.with_contour) build_contour();
}

void KernelPlan::build_real_line() {
    const double s_ref = s_grid_.back();
    const double h1 = std::min(0.5, 2.4 / (1.0 + 2.0 * s_ref));
    const double h2 = std::min(1.5, 3.0 * h1);
    const int N = cfg_.panel_order;
    double lam = 0.0;
    while (lam < cfg_.lam_band1 - 1e-12) {
        const double hi = std::min(lam + h1, cfg_.lam_band1);
        panels.push_back({lam, hi, nodes.size()});
        for (int i = 0; i < N; ++i)
            nodes.push_back(0.5 * (lam + hi) + 0.5 * (hi - lam) * gl.x[i]);
        lam = hi;
    }
    while (lam < cfg_.lam_band2 - 1e-12) {
        const double hi = std::min(lam + h2, cfg_.lam_band2);
        panels.push_back({lam, hi, nodes.size()});
        for (int i = 0; i < N; ++i)
            nodes.push_back(0.5 * (lam + hi) + 0.5 * (hi - lam) * gl.x[i]);
        lam = hi;
    }
    tail_offset = nodes.size();
    tail_lambda = lam;
    for (int j = 0; j < kTailPts; ++j)
        nodes.push_back(lam + (j - kTailPts / 2) * tail_h);

    const size_t ns = s_grid_.size(), nn = nodes.size();
    phi.resize(nn * ns);
    dphi.resize(nn * ns);
    pl.resize(nn);
    parallel_for(nn, [&](size_t k) {
        pl[k] = plancherel_density(p_, nodes[k]);
        auto row = spherical_profile(p_, Complex(nodes[k], 0.0), s_grid_);
        for (size_t i = 0; i < ns; ++i) {
            phi[k * ns + i] = row.phi[i].real();
            dphi[k * ns + i] = row.dphi[i].real();
        }
    });
}

void KernelPlan::build_contour() {
    cs0 = 0;
    while (cs0 < s_grid_.size() && s_grid_[cs0] < 0.7) ++cs0;
    if (cs0 == s_grid_.size()) return;  // nothing beyond the cone on this grid
    const int N = cfg_.panel_order;
    const double hc = 1.0;
    double lam = 0.0;
    while (lam < cfg_.contour_lam_max - 1e-12) {
        const double hi = std::min(lam + hc, cfg_.contour_lam_max);
        cpanels.push_back({lam, hi, cnodes.size()});
        for (int i = 0; i < N; ++i)
            cnodes.push_back(0.5 * (lam + hi) + 0.5 * (hi - lam) * gl.x[i]);
        lam = hi;
    }
    ctail_offset = cnodes.size();
    ctail_lambda = lam;
    for (int j = 0; j < 5; ++j) cnodes.push_back(lam + (j - 2) * 0.25);

    std::vector<double> s_desc(s_grid_.begin() + cs0, s_grid_.end());
    std::reverse(s_desc.begin(), s_desc.end());
    const size_t ns = s_desc.size(), nn = cnodes.size();
    cy.resize(nn * ns);
    cdy.resize(nn * ns);
    cinvneg.resize(nn);
    parallel_for(nn, [&](size_t k) {
        const Complex mu(cnodes[k], p_.rho);
        cinvneg[k] = c_inv_neg(p_, mu);
        auto row = jost_amplitude(p_, mu, s_desc);
        for (size_t i = 0; i < ns; ++i) {  // store ascending in s
            cy[k * ns + (ns - 1 - i)] = row.y[i];
            cdy[k * ns + (ns - 1 - i)] = row.dy[i];
        }
    });
}

namespace {

struct TailFit {
    Complex P0{}, P1{}, P2{};  // polynomial part at the stencil center
    Complex R0{}, R1{};        // e^{-2 i s lambda} ripple part
    bool has_ripple = false;
};

// least squares of A(center + x) = P0 + P1 x + P2 x^2 + (R0 + R1 x) e^{-2 i s (center+x)}
TailFit fit_tail(const std::vector<Complex>& a, const std::vector<double>& x, double s,
                 double center) {
    TailFit f;
    const size_t m = a.size();
    const double span = x.back() - x.front();
    f.has_ripple = 2.0 * s * span > 1.2;
    const int nu = f.has_ripple ? 5 : 3;
    Complex M[5][5] = {};
    Complex rhs[5] = {};
    for (size_t j = 0; j < m; ++j) {
        Complex basis[5];
        basis[0] = 1.0;
        basis[1] = x[j];
        basis[2] = x[j] * x[j];
        if (f.has_ripple) {
            const Complex e = std::exp(-2.0 * I_unit * s * (center + x[j]));
            basis[3] = e;
            basis[4] = x[j] * e;
        }
        for (int r = 0; r < nu; ++r) {
            for (int c = 0; c < nu; ++c) M[r][c] += std::conj(basis[r]) * basis[c];
            rhs[r] += std::conj(basis[r]) * a[j];
        }
    }
    // gaussian elimination with partial pivoting
    int piv[5];
    for (int r = 0; r < nu; ++r) piv[r] = r;
    for (int col = 0; col < nu; ++col) {
        int best = col;
        for (int r = col + 1; r < nu; ++r)
            if (std::abs(M[r][col]) > std::abs(M[best][col])) best = r;
        if (best != col) {
            for (int c = 0; c < nu; ++c) std::swap(M[col][c], M[best][c]);
            std::swap(rhs[col], rhs[best]);
        }
        if (std::abs(M[col][col]) < 1e-14) {  // degenerate: drop ripple columns
            TailFit g = f;
            g.has_ripple = false;
            return g;
        }
        for (int r = col + 1; r < nu; ++r) {
            const Complex fac = M[r][col] / M[col][col];
            for (int c = col; c < nu; ++c) M[r][c] -= fac * M[col][c];
            rhs[r] -= fac * rhs[col];
        }
    }
    Complex sol[5] = {};
    for (int r = nu - 1; r >= 0; --r) {
        Complex acc = rhs[r];
        for (int c = r + 1; c < nu; ++c) acc -= M[r][c] * sol[c];
        sol[r] = acc / M[r][r];
    }
    f.P0 = sol[0];
    f.P1 = sol[1];
    f.P2 = sol[2];
    if (f.has_ripple) {
        f.R0 = sol[3];
        f.R1 = sol[4];
    }
    return f;
}

// int_L^inf A e^{i w lam} dlam for A ~ quadratic at L (3-term IBP)
Complex ibp3(Complex A, Complex A1, Complex A2, double w, double L) {
    const Complex iw = I_unit * w;
    return std::exp(iw * L) * (-A / iw + A1 / (iw * iw) - A2 / (iw * iw * iw));
}

struct TailResult {
    double value = 0.0;
    double estimate = 0.0;
    bool reliable = true;
};

// tail of Re int_L^inf A(lam) (e^{i w+ lam} + e^{i w- lam}) dlam
TailResult tail_contribution(const TailFit& f, double s, double L, double wp, double wm) {
    TailResult out;
    Complex total = 0.0;
    for (double w : {wp, wm}) {
        if (std::abs(w) < kOmegaMin) {
            if (std::abs(f.P0) + std::abs(f.R0) > 1e-13) out.reliable = false;
            continue;
        }
        total += ibp3(f.P0, f.P1, 2.0 * f.P2, w, L);
        out.estimate += std::abs(2.0 * f.P2) / std::pow(std::abs(w), 3);
        if (f.has_ripple) {
            const double wt = w - 2.0 * s;  // combined phase of the ripple part
            if (std::abs(wt) < kOmegaMin) {
                if (std::abs(f.R0) > 1e-13) out.reliable = false;
                continue;
            }
            const Complex iwt = I_unit * wt;
            total += std::exp(I_unit * w * L) * std::exp(-2.0 * I_unit * s * L) *
                     (-f.R0 / iwt + f.R1 / (iwt * iwt));
            out.estimate += std::abs(f.R1) / (wt * wt);
        }
    }
    out.value = total.real();
    return out;
}

double symbol_on_axis(const Symbol& m, double lam) {
    const auto v = m.eval(Complex(lam, 0.0));
    return v.real();
}

}  // namespace

KernelPoint wave_kernel_filon(const KernelPlan& plan, const Symbol& m, double t, size_t is) {
    const auto& sg = plan.s_grid();
    const double s = sg[is];
    const size_t ns = sg.size();
    const int N = plan.config().panel_order;
    const SpaceParams& p = plan.space();
    const double ers = std::exp(p.rho * s);
    const double g = s > 0.0 ? density_log_deriv(p, s) : 0.0;
    const double wp = s + t, wm = s - t;

    auto amplitude = [&](size_t node, Complex& A, Complex& A2) {
        const double lam = plan.nodes[node];
        const double ph = plan.phi[node * ns + is];
        const double dph = plan.dphi[node * ns + is];
        const double d2ph = -g * dph - (lam * lam + p.rho * p.rho) * ph;
        const Complex ilam(0.0, lam);
        const Complex V = 0.5 * ers * (ph + (dph + p.rho * ph) / ilam);
        const Complex V2 = 0.5 * ers * (dph + (d2ph + p.rho * dph) / ilam);
        const Complex rot = std::exp(-I_unit * lam * s);
        const double w = symbol_on_axis(m, lam) * plan.pl[node];
        A = w * V * rot;
        A2 = w * V2 * rot;
    };

    Complex acc = 0.0, acc2 = 0.0;
    std::vector<Complex> av(N), av2(N);
    const bool decayed = std::abs(symbol_on_axis(m, plan.config().lam_band1)) < 1e-14;
    for (const auto& panel : plan.panels) {
        if (decayed && panel.lo > plan.config().lam_band1) break;
        const double h = panel.hi - panel.lo, c = 0.5 * (panel.lo + panel.hi);
        for (int i = 0; i < N; ++i) amplitude(panel.offset + i, av[i], av2[i]);
        for (double w : {wp, wm}) {
            const double wt = 0.5 * w * h;
            auto mom = legendre_oscillatory_moments(N - 1, wt);
            const Complex pref = 0.5 * h * std::exp(I_unit * w * c);
            Complex sum = 0.0, sum2 = 0.0;
            for (int n = 0; n < N; ++n) {
                Complex an = 0.0, an2 = 0.0;
                for (int i = 0; i < N; ++i) {
                    an += plan.legmat[(size_t)n * N + i] * av[i];
                    an2 += plan.legmat[(size_t)n * N + i] * av2[i];
                }
                sum += an * mom[n];
                sum2 += an2 * mom[n];
            }
            acc += pref * sum;
            acc2 += pref * sum2;
        }
    }

    KernelPoint out;
    const double cp = plan.plancherel_constant();
    out.K = cp * std::exp(-p.rho * s) * acc.real();
    out.Kprime = cp * std::exp(-p.rho * s) * acc2.real();

    if (!decayed) {  // slowly decaying symbol: integration-by-parts tail
        std::vector<Complex> a(kTailPts), a2(kTailPts);
        std::vector<double> xs(kTailPts);
        for (int j = 0; j < kTailPts; ++j) {
            amplitude(plan.tail_offset + j, a[j], a2[j]);
            xs[j] = plan.nodes[plan.tail_offset + j] - plan.tail_lambda;
        }
        auto f = fit_tail(a, xs, s, plan.tail_lambda);
        auto f2 = fit_tail(a2, xs, s, plan.tail_lambda);
        auto tk = tail_contribution(f, s, plan.tail_lambda, wp, wm);
        auto tk2 = tail_contribution(f2, s, plan.tail_lambda, wp, wm);
        const double damp = cp * std::exp(-p.rho * s);
        out.K += damp * tk.value;
        out.Kprime += damp * tk2.value;
        out.tail_estimate = damp * std::max(tk.estimate, tk2.estimate);
        out.reliable = tk.reliable && tk2.reliable;
    }
    return out;
}

KernelPoint wave_kernel_contour(const KernelPlan& plan, const Symbol& m, double t,
                                size_t is) {
    const SpaceParams& p = plan.space();
    if (m.tube < p.rho - 1e-12)
        throw std::domain_error("wave_kernel_contour: symbol tube narrower than rho");
    if (is < plan.cs0 || plan.cnodes.empty())
        throw std::domain_error("wave_kernel_contour: no contour data at this point");
    const auto& sg = plan.s_grid();
    const double s = sg[is];
    const size_t ns = sg.size() - plan.cs0;
    const size_t js = is - plan.cs0;
    const int N = plan.config().panel_order;
    const double wp = s + t, wm = s - t;
    const double ep = std::exp(-p.rho * t), em = std::exp(p.rho * t);

    auto amplitude = [&](size_t node, Complex& B, Complex& B2) {
        const double lam = plan.cnodes[node];
        const Complex mu(lam, p.rho);
        const Complex base = m.eval(mu) * plan.cinvneg[node];
        const Complex y = plan.cy[node * ns + js];
        const Complex dy = plan.cdy[node * ns + js];
        B = base * y;
        B2 = base * (dy + (I_unit * lam - 2.0 * p.rho) * y);
    };

    Complex acc = 0.0, acc2 = 0.0;
    std::vector<Complex> bv(N), bv2(N);
    for (const auto& panel : plan.cpanels) {
        const double h = panel.hi - panel.lo, c = 0.5 * (panel.lo + panel.hi);
        for (int i = 0; i < N; ++i) amplitude(panel.offset + i, bv[i], bv2[i]);
        for (int phase = 0; phase < 2; ++phase) {
            const double w = phase == 0 ? wp : wm;
            const double weight = phase == 0 ? ep : em;
            const double wt = 0.5 * w * h;
            auto mom = legendre_oscillatory_moments(N - 1, wt);
            const Complex pref = 0.5 * weight * h * std::exp(I_unit * w * c);
            Complex sum = 0.0, sum2 = 0.0;
            for (int n = 0; n < N; ++n) {
                Complex bn = 0.0, bn2 = 0.0;
                for (int i = 0; i < N; ++i) {
                    bn += plan.legmat[(size_t)n * N + i] * bv[i];
                    bn2 += plan.legmat[(size_t)n * N + i] * bv2[i];
                }
                sum += bn * mom[n];
                sum2 += bn2 * mom[n];
            }
            acc += pref * sum;
            acc2 += pref * sum2;
        }
    }

    // polynomial tail (amplitude is ripple-free on the shifted line)
    std::vector<Complex> b(5), b2(5);
    std::vector<double> xs(5);
    for (int j = 0; j < 5; ++j) {
        amplitude(plan.ctail_offset + j, b[j], b2[j]);
        xs[j] = plan.cnodes[plan.ctail_offset + j] - plan.ctail_lambda;
    }
    TailResult tk, tk2;
    for (int phase = 0; phase < 2; ++phase) {
        const double w = phase == 0 ? wp : wm;
        const double weight = phase == 0 ? ep : em;
        if (std::abs(w) < kOmegaMin) {
            tk.reliable = false;
            continue;
        }
        const Complex a1 = (b[3] - b[1]) / (2.0 * 0.25);
        const Complex a2d = (b[3] - 2.0 * b[2] + b[1]) / (0.25 * 0.25);
        const Complex c1 = (b2[3] - b2[1]) / (2.0 * 0.25);
        const Complex c2d = (b2[3] - 2.0 * b2[2] + b2[1]) / (0.25 * 0.25);
        tk.value += weight * ibp3(b[2], a1, a2d, w, plan.ctail_lambda).real();
        tk2.value += weight * ibp3(b2[2], c1, c2d, w, plan.ctail_lambda).real();
        tk.estimate += weight * std::abs(a2d) / std::pow(std::abs(w), 3);
        tk2.estimate += weight * std::abs(c2d) / std::pow(std::abs(w), 3);
    }

    KernelPoint out;
    const double damp = plan.plancherel_constant() * std::exp(-2.0 * p.rho * s);
    out.K = damp * (acc.real() + tk.value);
    out.Kprime = damp * (acc2.real() + tk2.value);
    out.tail_estimate = damp * std::max(tk.estimate, tk2.estimate);
    out.reliable = tk.reliable;
    return out;
}

KernelPoint wave_kernel_direct_smalls(const SpaceParams& p, const Symbol& m, double t,
                                      double s, double lam_max, double c_plancherel) {
    if (s > kSeriesRadius)
        throw std::domain_error("wave_kernel_direct_smalls: s beyond the series radius");
    KernelPoint out;
    auto integrand = [&](double lam, bool deriv) {
        if (lam == 0.0) return 0.0;
        auto v = spherical_fn(p, Complex(lam, 0.0), s);
        const double ph = deriv ? v.s_derivative.real() : v.value.real();
        return symbol_on_axis(m, lam) * std::cos(t * lam) * ph * plancherel_density(p, lam);
    };
    auto qk = integrate([&](double l) { return integrand(l, false); }, 0.0, lam_max,
                        1e-11, 1e-9, 6000);
    auto qk2 = integrate([&](double l) { return integrand(l, true); }, 0.0, lam_max,
                         1e-11, 1e-9, 6000);
    out.K = c_plancherel * qk.value;
    out.Kprime = c_plancherel * qk2.value;
    out.reliable = qk.converged && qk2.converged;

    if (std::abs(symbol_on_axis(m, lam_max)) > 1e-14) {
        // recombined-amplitude tail, stencil by series evaluation
        const double ers = std::exp(p.rho * s);
        const double g = s > 0.0 ? density_log_deriv(p, s) : 0.0;
        std::vector<Complex> a(kTailPts), a2(kTailPts);
        std::vector<double> xs(kTailPts);
        const double dl = 0.125;
        for (int j = 0; j < kTailPts; ++j) {
            const double lam = lam_max + (j - kTailPts / 2) * dl;
            xs[j] = lam - lam_max;
            auto v = spherical_fn(p, Complex(lam, 0.0), s);
            const double ph = v.value.real(), dph = v.s_derivative.real();
            const double d2ph = -g * dph - (lam * lam + p.rho * p.rho) * ph;
            const Complex ilam(0.0, lam);
            const Complex V = 0.5 * ers * (ph + (dph + p.rho * ph) / ilam);
            const Complex V2 = 0.5 * ers * (dph + (d2ph + p.rho * dph) / ilam);
            const Complex rot = std::exp(-I_unit * lam * s);
            const double w = symbol_on_axis(m, lam) * plancherel_density(p, lam);
            a[j] = w * V * rot;
            a2[j] = w * V2 * rot;
        }
        auto f = fit_tail(a, xs, s, lam_max);
        auto f2 = fit_tail(a2, xs, s, lam_max);
        auto tk = tail_contribution(f, s, lam_max, s + t, s - t);
        auto tk2 = tail_contribution(f2, s, lam_max, s + t, s - t);
        const double damp = c_plancherel * std::exp(-p.rho * s);
        out.K += damp * tk.value;
        out.Kprime += damp * tk2.value;
        out.tail_estimate = damp * std::max(tk.estimate, tk2.estimate);
        out.reliable = out.reliable && tk.reliable && tk2.reliable;
    }
    return out;
}

WaveKernel wave_kernel(const KernelPlan& plan, const Symbol& m, double t,
                       const KernelOptions& opt) {
    if (t < 0.0) t = -t;  // K_t is even in t
    const auto& sg = plan.s_grid();
    const SpaceParams& p = plan.space();
    WaveKernel out;
    out.t = t;
    out.symbol = m;
    out.profile.s = sg;
    out.profile.values.resize(sg.size());
    out.derivative_profile.s = sg;
    out.derivative_profile.values.resize(sg.size());
    out.reliable.assign(sg.size(), 1);
    std::vector<double> tails(sg.size(), 0.0);

    parallel_for(sg.size(), [&](size_t i) {
        const double s = sg[i];
        KernelPoint pt;
        const bool contour_ok = plan.config().with_contour && !plan.cnodes.empty() &&
                                i >= plan.cs0 && m.tube >= p.rho - 1e-12 &&
                                s > t + 0.25;
        if (s < kDirectSwitch) {
            pt = wave_kernel_direct_smalls(p, m, t, s, plan.config().lam_band2,
                                           plan.plancherel_constant());
        } else if (opt.contour == ContourMode::on && contour_ok) {
            pt = wave_kernel_contour(plan, m, t, i);
        } else if (opt.contour == ContourMode::automatic && contour_ok && s > t + 0.4) {
            pt = wave_kernel_contour(plan, m, t, i);
        } else {
            pt = wave_kernel_filon(plan, m, t, i);
        }
        out.profile.values[i] = pt.K;
        out.derivative_profile.values[i] = pt.Kprime;
        tails[i] = pt.tail_estimate;
        bool rel = pt.reliable;
        if (std::abs(s - t) < opt.cone_exclusion) rel = false;  // singular support
        if (s < opt.origin_exclusion) rel = false;
        out.reliable[i] = rel ? 1 : 0;
    });
    for (size_t i = 0; i < sg.size(); ++i) {
        if (!out.reliable[i]) out.diag.unreliable_points++;
        out.diag.max_tail_estimate = std::max(out.diag.max_tail_estimate, tails[i]);
    }
    return out;
}

double split_cutoff(double s, double t, bool large_t) {
    if (large_t) return 1.0 - smooth_step((std::abs(s - t) - 0.1) / 0.1);
    return 1.0 - smooth_step((s - 0.75) * 4.0);
}

double split_cutoff_deriv(double s, double t, bool large_t) {
    if (large_t) {
        const double u = std::abs(s - t);
        const double sgn = s >= t ? 1.0 : -1.0;
        return -sgn * smooth_step_deriv((u - 0.1) / 0.1) / 0.1;
    }
    return -4.0 * smooth_step_deriv((s - 0.75) * 4.0);
}

SplitKernel split_kernel(const WaveKernel& k, bool large_t) {
    if (large_t && k.t < 0.5)
        throw std::invalid_argument("split_kernel: large_t regime needs t >= 1/2");
    if (!large_t && k.t >= 0.5)
        throw std::invalid_argument("split_kernel: small_t regime needs t < 1/2");
    SplitKernel out;
    out.large_t = large_t;
    const auto& sg = k.profile.s;
    out.S.s = out.G.s = out.S_deriv.s = out.G_deriv.s = sg;
    const size_t n = sg.size();
    out.S.values.resize(n);
    out.G.values.resize(n);
    out.S_deriv.values.resize(n);
    out.G_deriv.values.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const double psi = split_cutoff(sg[i], k.t, large_t);
        const double dpsi = split_cutoff_deriv(sg[i], k.t, large_t);
        const auto K = k.profile.values[i];
        const auto Kp = k.derivative_profile.values[i];
        out.S.values[i] = psi * K;
        out.G.values[i] = (1.0 - psi) * K;
        out.S_deriv.values[i] = dpsi * K + psi * Kp;
        out.G_deriv.values[i] = -dpsi * K + (1.0 - psi) * Kp;
    }
    return out;
}

RadialProfile apply_Tt_to_atom(const TransformPlan& tplan, const Symbol& m, double t,
                               const RadialProfile& atom) {
    return multiplier_apply(
        tplan,
        [&](double lam) { return m.eval(Complex(lam, 0.0)) * std::cos(t * lam); }, atom);
}

}  // namespace hypwave
