// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit code = number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hypwave/atoms.hpp"
#include "hypwave/cutoff.hpp"
#include "hypwave/kernel.hpp"
#include "hypwave/model.hpp"
#include "hypwave/parallel.hpp"
#include "hypwave/specfun.hpp"
#include "hypwave/symbol.hpp"
#include "hypwave/transform.hpp"
#include "hypwave/verify.hpp"

using namespace hypwave;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %-28s (%.1f s) %s\n", pass ? "PASS" : "FAIL", idx,
                name, seconds, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int idx, const char* name, const std::function<bool(std::string&)>& body) {
    const auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(idx, name, pass, std::chrono::duration<double>(Clock::now() - t0).count(),
           detail);
}

char buf[512];

// ---------------------------------------------------------------- criterion 1
bool spherical_correctness(std::string& detail) {
    auto h3 = hyperbolic3();
    double worst = 0.0;
    std::vector<double> sg;
    for (double s = 0.01; s <= 10.0; s += 0.167) sg.push_back(s);
    std::vector<double> lams;
    for (double lam = 0.1; lam <= 50.0; lam += 1.66) lams.push_back(lam);
    std::vector<double> errs(lams.size(), 0.0);
    parallel_for(lams.size(), [&](size_t i) {
        auto row = spherical_profile(h3, {lams[i], 0.0}, sg);
        double w = 0.0;
        for (size_t j = 0; j < sg.size(); ++j) {
            const double want = std::sin(lams[i] * sg[j]) / (lams[i] * std::sinh(sg[j]));
            w = std::max(w, std::abs(row.phi[j].real() - want));
        }
        errs[i] = w;
    });
    for (double e : errs) worst = std::max(worst, e);
    double worst0 = 0.0;
    for (auto& p : {hyperbolic2(), h3, SpaceParams::make(2, 1)})
        for (double lam : {0.0, 1.0, 10.0, 50.0})
            worst0 = std::max(
                worst0, std::abs(spherical_fn(p, {lam, 0.0}, 0.0).value.real() - 1.0));
    std::snprintf(buf, sizeof buf, "closed-form err %.2e (tol 1e-8), phi(0)-1 %.2e (tol 1e-10)",
                  worst, worst0);
    detail = buf;
    return worst < 1e-8 && worst0 < 1e-10;
}

// ---------------------------------------------------------------- criterion 2
bool plancherel_roundtrip(std::string& detail) {
    double worst = 0.0;
    const double prof[5][3] = {{0.0, 0.45, 2.0},
                               {0.8, 0.5, 6.0},
                               {1.5, 0.6, 8.0},
                               {2.5, 0.55, 8.0},
                               {0.3, 0.7, 6.0}};
    for (auto& p : {hyperbolic2(), hyperbolic3(), SpaceParams::make(2, 1)}) {
        auto plan = TransformPlan::standard(p);
        for (auto& pr : prof) {
            auto f = RadialProfile::sample(plan->s_grid(), [&](double s) {
                return gauss_bump(s, pr[0], pr[1], pr[2]);
            });
            auto g = forward(*plan, f);
            auto fr = inverse(*plan, g);
            double num = 0.0, den = 0.0;
            for (size_t i = 0; i < f.size(); ++i) {
                const double w = plan->s_weights()[i] * plan->density_at(i);
                num += std::norm(fr.values[i] - f.values[i]) * w;
                den += std::norm(f.values[i]) * w;
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
    }
    std::snprintf(buf, sizeof buf, "worst relative L2 roundtrip %.2e (tol 1e-6)", worst);
    detail = buf;
    return worst < 1e-6;
}

// ---------------------------------------------------------------- criterion 3
bool gaussian_kernel_oracle(std::string& detail) {
    auto h3 = hyperbolic3();
    std::vector<double> sg;
    for (double s = 0.1; s <= 8.0; s += 0.02) sg.push_back(s);
    KernelPlanConfig cfg;
    cfg.lam_band1 = cfg.lam_band2 = 14.0;
    cfg.with_contour = false;
    KernelPlan plan(h3, sg, cfg);
    auto m = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
    const double cp = plan.plancherel_constant();
    double worst = 0.0;
    for (double t : {0.3, 1.0, 3.0}) {
        auto k = wave_kernel(plan, m, t);
        for (size_t i = 0; i < sg.size(); ++i) {
            const double s = sg[i];
            const double want = cp * (std::sqrt(M_PI) / 8.0) / std::sinh(s) *
                                ((s + t) * std::exp(-0.25 * (s + t) * (s + t)) +
                                 (s - t) * std::exp(-0.25 * (s - t) * (s - t)));
            worst = std::max(worst, std::abs(k.profile.values[i].real() - want));
        }
    }
    std::snprintf(buf, sizeof buf, "worst pointwise err %.2e (tol 1e-6)", worst);
    detail = buf;
    return worst < 1e-6;
}

// ---------------------------------------------------------------- criterion 4
bool prop52_envelopes(std::string& detail) {
    int checks = 0, passed = 0;
    double worst_stab = 0.0;
    for (auto& p : {hyperbolic3(), hyperbolic2()}) {
        auto m = make_symbol(SymbolFamily::rational_power, -p.d - 0.5, p.rho, p.rho + 1.0,
                             p);
        for (double t : {2.0, 0.3}) {
            const Regime regime = t >= 0.5 ? Regime::large_t : Regime::small_t;
            for (Target target : {Target::K, Target::Kprime}) {
                auto rep = check_kernel_bounds(p, m, t, regime, target);
                for (auto& r : rep.regions) {
                    ++checks;
                    const bool ok = std::isfinite(r.c_star) && r.c_star > 0.0 &&
                                    r.stability <= 2.0 && r.stability > 0.0;
                    if (ok) ++passed;
                    worst_stab = std::max(worst_stab, r.stability);
                }
            }
        }
    }
    std::snprintf(buf, sizeof buf, "%d/%d region constants finite+stable (worst stability %.3f)",
                  passed, checks, worst_stab);
    detail = buf;
    return passed == checks && checks == 2 * (8 + 4);
}

// ---------------------------------------------------------------- criterion 5
bool lemma51_scans(std::string& detail) {
    bool all = true;
    double worst_stab = 0.0;
    for (auto& p : {hyperbolic2(), hyperbolic3(), SpaceParams::make(2, 1)}) {
        auto rep = check_lemma51(p, 50.0, 10.0, 41, 41);
        all = all && rep.pass;
        for (auto& r : rep.regions) worst_stab = std::max(worst_stab, r.stability);
    }
    std::snprintf(buf, sizeof buf, "scan constants finite, worst stability %.3f (tol 2)",
                  worst_stab);
    detail = buf;
    return all;
}

// ---------------------------------------------------------------- criterion 6
bool hardy_machinery(std::string& detail) {
    auto h2 = hyperbolic2();
    auto tplan = TransformPlan::standard(h2, 40.0, 6.0);
    bool ok = true;
    double worst_recon = 0.0;
    int atom_failures = 0;

    // ball decomposition
    auto fball = [](const ModelPoint& x) {
        return gauss_bump(model_distance(x, ModelPoint::origin(2)), 0.7, 0.5, 2.0);
    };
    auto bdec = decompose_ball(h2, fball, 2.0, 1234, 120000);
    worst_recon =
        std::max(worst_recon, bdec.reconstruction_l2_error / bdec.input_l2_norm);
    {
        BallQuadrature quad(h2, bdec.quad_seed);
        quad.warmup();
        std::vector<int> bad(bdec.terms.size(), 0);
        parallel_for(bdec.terms.size(), [&](size_t i) {
            bad[i] = validate_atom(h2, bdec.terms[i].atom, quad).pass ? 0 : 1;
        });
        for (int b : bad) atom_failures += b;
    }

    // annulus sweep: totals obey log(1/r) e^{rho R} r^{1/2} with one constant
    const double R = 2.0;
    std::vector<double> ratios;
    for (double r : {0.1, 0.2, 0.4}) {
        RadialProfile base = RadialProfile::sample(tplan->s_grid(), [&](double s) {
            return bump(s - R, r) * (s - R) / r;
        });
        RadialProfile corr = RadialProfile::sample(tplan->s_grid(), [&](double s) {
            return bump(s - R, 0.9 * r);
        });
        const double mean = radial_integral(h2, base).real();
        const double cmean = radial_integral(h2, corr).real();
        auto ann = lin_comb(1.0, base, -mean / cmean, corr);
        auto eval = [ann, h2](const ModelPoint& x) {
            return ann(model_distance(x, ModelPoint::origin(2))).real();
        };
        auto dec = decompose_annulus(h2, eval, R, r, 77, 150000);
        worst_recon =
            std::max(worst_recon, dec.reconstruction_l2_error / dec.input_l2_norm);
        BallQuadrature quad(h2, dec.quad_seed);
        quad.warmup();
        std::vector<int> bad(dec.terms.size(), 0);
        parallel_for(dec.terms.size(), [&](size_t i) {
            bad[i] = validate_atom(h2, dec.terms[i].atom, quad).pass ? 0 : 1;
        });
        for (int b : bad) atom_failures += b;
        const double l2 = lp_norm(h2, ann, 2.0);
        ratios.push_back(dec.total /
                         (std::log(1.0 / r) * std::exp(h2.rho * R) * std::sqrt(r) * l2));
    }
    double rlo = 1e300, rhi = 0.0;
    for (double q : ratios) {
        rlo = std::min(rlo, q);
        rhi = std::max(rhi, q);
    }
    ok = ok && worst_recon < 1e-8 && atom_failures == 0 && rhi / rlo <= 3.0;
    std::snprintf(buf, sizeof buf,
                  "recon %.2e (tol 1e-8), atom failures %d, scaling spread %.2f (tol 3)",
                  worst_recon, atom_failures, rhi / rlo);
    detail = buf;
    return ok;
}

// ---------------------------------------------------------------- criterion 7
bool norm_growth(std::string& detail) {
    auto h3 = hyperbolic3();
    const std::vector<double> ts{1, 2, 3, 4, 5, 6};
    // gaussian: analytic slope rho = 1
    auto mg = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
    auto repg = norm_growth_experiment(h3, mg, {0.2, 0.35}, ts, false, 7);
    double slope_err = 0.0;
    for (double s : repg.l1_slopes) slope_err = std::max(slope_err, std::abs(s - h3.rho));
    // order -d: bounded ratio
    auto md = make_symbol(SymbolFamily::rational_power, -h3.d, h3.rho, h3.rho + 1.0, h3);
    auto repd = norm_growth_experiment(h3, md, {0.2, 0.35}, ts, false, 7);
    const double spread = repd.max_ratio / repd.min_ratio;
    // order -d-1/2: h1 bracket growth rate
    auto me = make_symbol(SymbolFamily::rational_power, -h3.d - 0.5, h3.rho, h3.rho + 1.0,
                          h3);
    auto repe = norm_growth_experiment(h3, me, {0.2, 0.35}, ts, true, 7);
    double h1_slope = 0.0;
    for (double s : repe.h1_slopes) h1_slope = std::max(h1_slope, s);
    std::snprintf(
        buf, sizeof buf,
        "gaussian slope err %.3f (tol 0.15), b=-d spread %.2f (tol 3), h1 slope %.3f (tol %.2f)",
        slope_err, spread, h1_slope, h3.rho + 0.15);
    detail = buf;
    return slope_err <= 0.15 && spread <= 3.0 && h1_slope <= h3.rho + 0.15;
}

// ---------------------------------------------------------------- criterion 8
bool net_invariants(std::string& detail) {
    auto h2 = hyperbolic2();
    bool ok = true;
    // separation and covering at r = 0.25 on the annulus of the worked example
    auto net = build_net(h2, Annulus(2.0, 0.25), 0.25, 200000, 42);
    double min_sep = 1e300;
    NeighborIndex idx(0.25, 2);
    for (size_t i = 0; i < net.centers.size(); ++i) idx.insert(net.centers[i], i);
    for (size_t i = 0; i < net.centers.size(); ++i) {
        idx.nearby(net.centers[i], 0.3, [&](size_t j, const ModelPoint& z) {
            if (j != i) min_sep = std::min(min_sep, model_distance(net.centers[i], z));
        });
    }
    ok = ok && min_sep > 0.25 / 3.0;
    QmcSampler s(h2, 777);
    std::vector<ModelPoint> samples;
    for (int i = 0; i < 100000; ++i)
        samples.push_back(s.annulus_point(Annulus(2.0, 0.25), i));
    const double cov = covering_radius(net, samples);
    ok = ok && cov <= 0.25 / 3.0;
    // multiplicity sweep on the ball of radius 2
    int mmin = 1 << 30, mmax = 0;
    for (double r : {0.1, 0.2, 0.5, 1.0}) {
        auto netr = build_net(h2, Annulus(0.0, 2.0), r, r < 0.15 ? 400000 : 200000, 7);
        QmcSampler sr(h2, 779);
        std::vector<ModelPoint> pts;
        for (int i = 0; i < 100000; ++i)
            pts.push_back(sr.annulus_point(Annulus(0.0, 2.0), i));
        if (covering_radius(netr, pts) > r / 3.0) ok = false;
        const int mult = covering_multiplicity(netr, pts);
        mmin = std::min(mmin, mult);
        mmax = std::max(mmax, mult);
    }
    ok = ok && mmax <= 2 * mmin;  // one constant across the sweep
    std::snprintf(buf, sizeof buf,
                  "sep %.4f (> %.4f), covering %.4f (<= %.4f), multiplicity in [%d, %d]",
                  min_sep, 0.25 / 3.0, cov, 0.25 / 3.0, mmin, mmax);
    detail = buf;
    return ok;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    run(1, "spherical correctness", spherical_correctness);
    run(2, "plancherel roundtrip", plancherel_roundtrip);
    run(3, "gaussian kernel oracle", gaussian_kernel_oracle);
    run(4, "kernel-estimate envelopes", prop52_envelopes);
    run(5, "c/phi bound scans", lemma51_scans);
    run(6, "hardy machinery", hardy_machinery);
    run(7, "norm growth", norm_growth);
    run(8, "net invariants", net_invariants);
    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures;
}
