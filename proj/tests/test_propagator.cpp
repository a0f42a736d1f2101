#include <doctest.h>

#include <cmath>

#include "hypwave/cutoff.hpp"
#include "hypwave/kernel.hpp"
#include "hypwave/symbol.hpp"

using namespace hypwave;

TEST_CASE("symbols: construction, bounds, errors") {
    auto h3 = hyperbolic3();
    SUBCASE("rational power family") {
        auto m = make_symbol(SymbolFamily::rational_power, -h3.d - 0.5, h3.rho,
                             h3.rho + 1.0, h3);
        CHECK(m.epsilon == doctest::Approx(0.5));
        auto c = symbol_bound_constants(m);
        for (double v : c) {
            CHECK(std::isfinite(v));
            CHECK(v > 0.0);
        }
        // finite-difference check of the analytic derivatives on the tube
        for (double lam : {0.7, 13.0}) {
            const Complex z(lam, 0.5 * h3.rho);
            const double h = 1e-6 * (1.0 + lam);
            const Complex fd = (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
            CHECK(std::abs(fd - m.deriv(z, 1)) < 1e-7 * (1.0 + std::abs(fd)));
        }
    }
    SUBCASE("gaussian tube bound") {
        auto m = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
        double worst = 0.0;
        for (double re = 0.0; re <= 30.0; re += 1.0)
            worst = std::max(worst, std::abs(m.eval({re, h3.rho})));
        CHECK(worst <= std::exp(h3.rho * h3.rho) + 1e-12);
    }
    SUBCASE("branch points on the tube rejected") {
        CHECK_THROWS_AS(
            make_symbol(SymbolFamily::rational_power, -1.0, h3.rho, h3.rho, h3),
            std::invalid_argument);
    }
    SUBCASE("odd custom symbol rejected") {
        CHECK_THROWS_AS(make_custom_symbol([](Complex lam) { return lam; }, 1.0,
                                           h3.rho, h3),
                        std::invalid_argument);
    }
    SUBCASE("parser") {
        CHECK(parse_symbol("gaussian", h3).family == SymbolFamily::gaussian);
        auto m = parse_symbol("rational:-1.5:2.5", h3);
        CHECK(m.order == doctest::Approx(-1.5));
        CHECK(m.scale == doctest::Approx(2.5));
        CHECK_THROWS(parse_symbol("nope", h3));
    }
}

TEST_CASE("base bumps satisfy the complement identities") {
    // phi(s) = 1 - phi(s/2) on (1, 2)
    double worst = 0.0;
    for (double s = 1.0 + 1e-9; s < 2.0; s += 0.0013)
        worst = std::max(worst, std::abs(base_bump(s) - (1.0 - base_bump(0.5 * s))));
    CHECK(worst < 1e-14);
    // psi(s + 1) = 1 - psi(s) on (0, 1)
    worst = 0.0;
    for (double s = 1e-9; s < 1.0; s += 0.0013)
        worst = std::max(worst, std::abs(base_psi(s + 1.0) - (1.0 - base_psi(s))));
    CHECK(worst < 1e-14);
    // supports and plateaus
    CHECK(base_bump(0.5) == 0.0);
    CHECK(base_bump(1.2) == 1.0);
    CHECK(base_bump(2.0) == 0.0);
    CHECK(base_psi(1.0) == 1.0);
    CHECK(base_psi(2.0) == 0.0);
}

TEST_CASE("cutoff families: supports, gradients, index brackets") {
    auto h3 = hyperbolic3();
    const double r = 0.03, t = 2.0;
    auto ix = cutoff_indices(r, t);
    CHECK(std::ldexp(r, ix.I1 - 1) <= 0.1);
    CHECK(0.1 <= std::ldexp(r, ix.I1 + 1));
    CHECK(std::ldexp(r, ix.I2 - 1) <= t - 0.2);
    CHECK(t - 0.2 <= std::ldexp(r, ix.I2 + 1));
    CHECK(std::ldexp(r, ix.H1 - 1) <= 0.2);
    CHECK(0.2 <= std::ldexp(r, ix.H1 + 1));
    CHECK(ix.J - 2 <= t + 0.2);
    CHECK(t + 0.2 <= ix.J - 1);

    auto phis = cutoff_family(CutoffKind::dyadic_phii, r, t, h3);
    CHECK(phis.i_min == 1);
    CHECK(phis.i_max == ix.I2);
    for (auto& piece : phis.pieces) {
        const double sc = std::ldexp(r, piece.index);
        CHECK(piece.lo == doctest::Approx(0.5 * sc));
        CHECK(piece.hi == doctest::Approx(2.0 * sc));
        CHECK(std::abs(piece.eval(piece.lo - 1e-12)) == 0.0);
        CHECK(std::abs(piece.eval(piece.hi + 1e-12)) == 0.0);
        double g = 0.0;
        for (double s = piece.lo; s < piece.hi; s += (piece.hi - piece.lo) / 500)
            g = std::max(g, std::abs(piece.deriv(s)) * sc);
        CHECK(g < 10.0);  // |grad phi_i| <= C / (2^i r) with C from the base bump
    }
    auto etas = cutoff_family(CutoffKind::inner_etah, r, t, h3);
    for (auto& piece : etas.pieces) {
        const double sc = std::ldexp(r, piece.index);
        CHECK(piece.lo == doctest::Approx(t - 2.0 * sc));
        CHECK(piece.hi == doctest::Approx(t - 0.5 * sc));
        double g = 0.0;
        for (double s = piece.lo; s < piece.hi; s += (piece.hi - piece.lo) / 500)
            g = std::max(g, std::abs(piece.deriv(s)) * sc);
        CHECK(g < 10.0);
    }
    auto psis = cutoff_family(CutoffKind::unit_psij, r, t, h3, 10.0);
    CHECK(psis.i_min == ix.J);
    for (auto& piece : psis.pieces) {
        CHECK(piece.lo == doctest::Approx(piece.index - 1.0));
        CHECK(piece.hi == doctest::Approx(piece.index + 1.0));
        CHECK(piece.eval(piece.index - 1.0) == 0.0);
    }
}

TEST_CASE("wave partition of unity is exact off the singular annulus") {
    auto h3 = hyperbolic3();
    struct Cfg {
        double r, t;
    };
    for (auto cfg : {Cfg{0.02, 2.0}, Cfg{0.09, 0.6}, Cfg{0.4, 1.3}, Cfg{0.02, 0.45},
                     Cfg{0.25, 0.4}, Cfg{0.9, 0.3}}) {
        auto part = wave_partition(h3, cfg.r, cfg.t, 10.0);
        double worst_out = 0.0, worst_all = 0.0;
        for (double s = 1e-4; s <= 9.0; s += 0.0037) {
            double acc = 0.0;
            for (auto& piece : part.pieces) acc += piece.eval(s);
            const double tot =
                acc + (part.has_complement ? part.complement.eval(s) : 0.0);
            worst_all = std::max(worst_all, std::abs(tot - 1.0));
            const bool outside = !part.has_complement || s < part.complement.lo ||
                                 s > part.complement.hi;
            if (outside) worst_out = std::max(worst_out, std::abs(acc - 1.0));
        }
        CHECK(worst_out < 1e-12);
        CHECK(worst_all < 1e-12);
        if (part.has_complement) {
            // complement sits inside the singular annulus A_{t-10r}^{t+10r}
            CHECK(part.complement.lo >= cfg.t - 10.0 * cfg.r - 1e-12);
            CHECK(part.complement.hi <= cfg.t + 10.0 * cfg.r + 1e-12);
        }
    }
}

TEST_CASE("gaussian wave kernel against the H3 closed form") {
    auto h3 = hyperbolic3();
    std::vector<double> sg;
    for (double s = 0.1; s <= 6.0; s += 0.06) sg.push_back(s);
    KernelPlanConfig cfg;
    cfg.lam_band1 = cfg.lam_band2 = 14.0;
    cfg.with_contour = false;
    KernelPlan plan(h3, sg, cfg);
    auto m = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
    const double cp = plan.plancherel_constant();
    for (double t : {0.3, 1.0, 3.0}) {
        auto k = wave_kernel(plan, m, t);
        double worst = 0.0;
        for (size_t i = 0; i < sg.size(); ++i) {
            const double s = sg[i];
            const double want = cp * (std::sqrt(M_PI) / 8.0) / std::sinh(s) *
                                ((s + t) * std::exp(-0.25 * (s + t) * (s + t)) +
                                 (s - t) * std::exp(-0.25 * (s - t) * (s - t)));
            worst = std::max(worst, std::abs(k.profile.values[i].real() - want));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("kernel: t = 0 equals the inverse transform of the symbol") {
    auto h3 = hyperbolic3();
    std::vector<double> sg;
    for (double s = 0.12; s <= 4.0; s += 0.04) sg.push_back(s);
    KernelPlanConfig cfg;
    cfg.lam_band1 = cfg.lam_band2 = 14.0;
    cfg.with_contour = false;
    KernelPlan plan(h3, sg, cfg);
    auto m = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
    auto k0 = wave_kernel(plan, m, 0.0);
    auto tplan = TransformPlan::standard(h3, 14.0, 8.0);
    Spectrum spec;
    spec.lam = tplan->lam_grid();
    spec.values.resize(spec.lam.size());
    for (size_t i = 0; i < spec.lam.size(); ++i)
        spec.values[i] = m.eval({spec.lam[i], 0.0});
    auto f = inverse(*tplan, spec);
    double worst = 0.0;
    for (size_t i = 0; i < sg.size(); ++i)
        worst = std::max(worst, std::abs(k0.profile.values[i] - f(sg[i])));
    CHECK(worst < 1e-8);
}

TEST_CASE("kernel evenness in t and route agreement") {
    auto h3 = hyperbolic3();
    std::vector<double> sg;
    for (double s = 0.05; s <= 4.4; s += 0.05) sg.push_back(s);
    KernelPlan plan(h3, sg);
    auto m = make_symbol(SymbolFamily::rational_power, -h3.d - 0.5, h3.rho, h3.rho + 1.0,
                         h3);
    auto kp = wave_kernel(plan, m, 2.0);
    auto km = wave_kernel(plan, m, -2.0);
    for (size_t i = 0; i < sg.size(); i += 11)
        CHECK(kp.profile.values[i] == km.profile.values[i]);
    // contour vs recombined-amplitude route beyond the cone
    for (size_t i = 0; i < sg.size(); ++i) {
        const double s = sg[i];
        if (s < 2.0 + 0.3 || s > 4.0) continue;
        auto a = wave_kernel_filon(plan, m, 2.0, i);
        auto b = wave_kernel_contour(plan, m, 2.0, i);
        CHECK(std::abs(a.K - b.K) < 1e-6);
        CHECK(std::abs(a.Kprime - b.Kprime) < 1e-5);
    }
    // small-s direct route agrees with the panel rule just above the switch
    size_t i0 = 0;
    while (sg[i0] < 0.12) ++i0;
    auto fa = wave_kernel_filon(plan, m, 2.0, i0);
    auto da = wave_kernel_direct_smalls(h3, m, 2.0, sg[i0], plan.config().lam_band2,
                                        plan.plancherel_constant());
    CHECK(std::abs(fa.K - da.K) < 1e-9 * std::max(1.0, std::abs(da.K)));
}

TEST_CASE("split kernel") {
    auto h3 = hyperbolic3();
    std::vector<double> sg;
    for (double s = 0.05; s <= 4.0; s += 0.05) sg.push_back(s);
    KernelPlanConfig cfg;
    cfg.lam_band1 = cfg.lam_band2 = 14.0;
    cfg.with_contour = false;
    KernelPlan plan(h3, sg, cfg);
    auto m = make_symbol(SymbolFamily::gaussian, 0.0, h3.rho, 1.0, h3);
    SUBCASE("large t") {
        auto k = wave_kernel(plan, m, 2.0);
        auto sp = split_kernel(k, true);
        for (size_t i = 0; i < sg.size(); ++i) {
            CHECK(std::abs(sp.S.values[i] + sp.G.values[i] - k.profile.values[i]) <
                  1e-14);
            if (std::abs(sg[i] - 2.0) >= 0.2)  // G equals K outside the collar
                CHECK(sp.G.values[i] == k.profile.values[i]);
            if (std::abs(sg[i] - 2.0) <= 0.1)  // S equals K inside
                CHECK(sp.S.values[i] == k.profile.values[i]);
        }
        CHECK_THROWS(split_kernel(k, false));
    }
    SUBCASE("small t") {
        auto k = wave_kernel(plan, m, 0.3);
        auto sp = split_kernel(k, false);
        for (size_t i = 0; i < sg.size(); ++i) {
            CHECK(std::abs(sp.S.values[i] + sp.G.values[i] - k.profile.values[i]) <
                  1e-14);
            if (sg[i] <= 0.75) CHECK(sp.S.values[i] == k.profile.values[i]);
            if (sg[i] >= 1.0) CHECK(sp.G.values[i] == k.profile.values[i]);
        }
    }
}

TEST_CASE("T_t on atoms: multiplier bound and r-sweep exponent") {
    auto h3 = hyperbolic3();
    auto tplan = TransformPlan::standard(h3, 60.0, 10.0);
    auto m = make_symbol(SymbolFamily::rational_power, -h3.d - 0.5, h3.rho, h3.rho + 1.0,
                         h3);
    double supm = 0.0;
    for (double lam = 0.0; lam < 80.0; lam += 0.5)
        supm = std::max(supm, std::abs(m.eval({lam, 0.0}).real()));
    std::vector<double> radii{0.05, 0.1, 0.2, 0.4, 0.8};
    std::vector<double> norms;
    for (double r : radii) {
        RadialProfile atom = RadialProfile::sample(tplan->s_grid(), [r](double s) {
            return 0.0 * s;
        });
        // standard atom profile via the atoms module is validated elsewhere;
        // here a simple normalized mean-zero profile suffices
        atom = RadialProfile::sample(tplan->s_grid(), [r](double s) {
            return bump(s, 0.5 * r) - 0.5 * bump(s, 0.98 * r);
        });
        const double mean = radial_integral(h3, atom).real();
        RadialProfile corr = RadialProfile::sample(
            tplan->s_grid(), [r](double s) { return bump(s, 0.9 * r); });
        atom = lin_comb(1.0, atom, -mean / radial_integral(h3, corr).real(), corr);
        const double target = 1.0 / std::sqrt(ball_measure(h3, r));
        const double n2 = lp_norm(h3, atom, 2.0);
        for (auto& v : atom.values) v *= target / n2;
        auto Ta = apply_Tt_to_atom(*tplan, m, 1.5, atom);
        const double tnorm = l2_norm(*tplan, Ta);
        CHECK(tnorm <= supm * target * (1.0 + 1e-6));  // L2 multiplier bound
        norms.push_back(tnorm);
        if (atom.values.empty()) continue;
    }
    // fitted exponent of ||T_t a||_2 against r: at least -1/2 + eps - 0.1
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < radii.size(); ++i) {
        const double x = std::log(radii[i]), y = std::log(norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nn = (double)radii.size();
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    CHECK(slope >= -0.5 + m.epsilon - 0.1);
}
