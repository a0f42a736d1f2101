#include <doctest.h>

#include <cmath>

#include "hypwave/transform.hpp"

using namespace hypwave;

namespace {
double rel_l2(const TransformPlan& plan, const RadialProfile& a, const RadialProfile& b) {
    const auto& w = plan.s_weights();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double wt = w[i] * plan.density_at(i);
        num += std::norm(a.values[i] - b.values[i]) * wt;
        den += std::norm(b.values[i]) * wt;
    }
    return std::sqrt(num / den);
}
}  // namespace

TEST_CASE("calibrated Plancherel constant matches the Gamma-quotient value") {
    // independent closed form: C_P = 2^{2 rho - 1} / (pi omega_{n-1})
    for (auto& p : {hyperbolic2(), hyperbolic3(), SpaceParams::make(2, 1)}) {
        auto plan = TransformPlan::standard(p, 50.0, 6.0);
        const double analytic = std::pow(2.0, 2.0 * p.rho - 1.0) / (M_PI * p.omega());
        CHECK(plan->plancherel_constant() == doctest::Approx(analytic).epsilon(1e-7));
    }
}

TEST_CASE("zero maps to zero both ways") {
    auto plan = TransformPlan::standard(hyperbolic3(), 30.0, 6.0);
    RadialProfile z;
    z.s = plan->s_grid();
    z.values.assign(z.s.size(), 0.0);
    auto g = forward(*plan, z);
    for (auto& v : g.values) CHECK(std::abs(v) == 0.0);
    auto f = inverse(*plan, g);
    for (auto& v : f.values) CHECK(std::abs(v) == 0.0);
    CHECK(plancherel_norm(*plan, g) == 0.0);
}

TEST_CASE("roundtrip and Parseval on gaussian-core bumps") {
    for (auto& p : {hyperbolic2(), hyperbolic3(), SpaceParams::make(2, 1)}) {
        auto plan = TransformPlan::standard(p);
        const double prof[3][3] = {{0.0, 0.45, 2.0}, {1.5, 0.6, 8.0}, {2.5, 0.55, 8.0}};
        for (auto& pr : prof) {
            auto f = RadialProfile::sample(plan->s_grid(), [&](double s) {
                return gauss_bump(s, pr[0], pr[1], pr[2]);
            });
            auto g = forward(*plan, f);
            auto fr = inverse(*plan, g);
            CHECK(rel_l2(*plan, fr, f) < 1e-6);
            CHECK(std::abs(plancherel_norm(*plan, g) - l2_norm(*plan, f)) <
                  1e-6 * l2_norm(*plan, f));
        }
    }
}

TEST_CASE("H3 gaussian transform pair") {
    auto h3 = hyperbolic3();
    auto plan = TransformPlan::standard(h3, 10.0, 14.0);
    // F(s) = (s / sinh s) e^{-s^2/4}  <->  f~(lam) = 8 pi^{3/2} e^{-lam^2}
    auto f = RadialProfile::sample(plan->s_grid(), [](double s) {
        const double c = s < 1e-8 ? 1.0 : s / std::sinh(s);
        return c * std::exp(-0.25 * s * s);
    });
    auto g = forward(*plan, f);
    const double c0 = 8.0 * std::pow(M_PI, 1.5);
    for (size_t i = 0; i < g.size(); i += 57) {
        const double lam = g.lam[i];
        CHECK(std::abs(g.values[i].real() - c0 * std::exp(-lam * lam)) < 1e-8 * c0);
    }
    // and back: inverse of e^{-lam^2} is proportional to F
    Spectrum spec;
    spec.lam = plan->lam_grid();
    spec.values.resize(spec.lam.size());
    for (size_t i = 0; i < spec.lam.size(); ++i)
        spec.values[i] = std::exp(-spec.lam[i] * spec.lam[i]);
    auto fr = inverse(*plan, spec);
    for (size_t i = 0; i < fr.size(); i += 97) {
        const double want = f.values[i].real() / c0;
        CHECK(std::abs(fr.values[i].real() - want) < 1e-7);
    }
}

TEST_CASE("plancherel norm scaling") {
    auto plan = TransformPlan::standard(hyperbolic2(), 40.0, 8.0);
    auto f = RadialProfile::sample(plan->s_grid(),
                                   [](double s) { return gauss_bump(s, 1.0, 0.5, 6.0); });
    auto g = forward(*plan, f);
    Spectrum g2 = g;
    for (auto& v : g2.values) v *= 2.0;
    CHECK(plancherel_norm(*plan, g2) ==
          doctest::Approx(2.0 * plancherel_norm(*plan, g)).epsilon(1e-13));
}

TEST_CASE("radial convolution") {
    auto h3 = hyperbolic3();
    auto plan = TransformPlan::standard(h3, 60.0, 10.0);
    auto f = RadialProfile::sample(plan->s_grid(),
                                   [](double s) { return gauss_bump(s, 1.2, 0.5, 6.0); });
    auto g = RadialProfile::sample(plan->s_grid(),
                                   [](double s) { return gauss_bump(s, 0.0, 0.4, 2.0); });
    SUBCASE("commutativity") {
        auto fg = radial_convolve(*plan, f, g);
        auto gf = radial_convolve(*plan, g, f);
        double worst = 0.0;
        for (size_t i = 0; i < fg.size(); ++i)
            worst = std::max(worst, std::abs(fg.values[i] - gf.values[i]));
        CHECK(worst < 1e-10);
    }
    SUBCASE("spectra multiply") {
        auto fg = radial_convolve(*plan, f, g);
        auto lhs = forward(*plan, fg);
        auto a = forward(*plan, f);
        auto b = forward(*plan, g);
        double worst = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i)
            worst = std::max(worst, std::abs(lhs.values[i] - a.values[i] * b.values[i]));
        CHECK(worst < 1e-8);
    }
    SUBCASE("mollification by a narrow mass-one bump") {
        auto eta = RadialProfile::sample(plan->s_grid(), [](double s) {
            return gauss_bump(s, 0.0, 0.003, 0.01);
        });
        const double mass = radial_integral(h3, eta).real();
        for (auto& v : eta.values) v /= mass;
        auto fe = radial_convolve(*plan, f, eta);
        double worst = 0.0;
        for (size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(fe.values[i] - f.values[i]));
        CHECK(worst < 1e-3);
    }
    SUBCASE("Young inequality in L1") {
        auto fg = radial_convolve(*plan, f, g);
        CHECK(lp_norm(h3, fg, 1.0) <=
              lp_norm(h3, f, 1.0) * lp_norm(h3, g, 1.0) * (1.0 + 1e-6));
    }
}

TEST_CASE("multiplier application") {
    auto h2 = hyperbolic2();
    auto plan = TransformPlan::standard(h2, 60.0, 10.0);
    auto f = RadialProfile::sample(plan->s_grid(),
                                   [](double s) { return gauss_bump(s, 1.0, 0.5, 5.0); });
    SUBCASE("identity and zero multipliers") {
        auto id = multiplier_apply(*plan, [](double) { return 1.0; }, f);
        CHECK(rel_l2(*plan, id, f) < 1e-6);
        auto z = multiplier_apply(*plan, [](double) { return 0.0; }, f);
        CHECK(sup_norm(z) < 1e-14);
    }
    SUBCASE("L2 contraction by sup |m|") {
        auto half = multiplier_apply(
            *plan, [](double lam) { return 0.5 * std::cos(lam); }, f);
        CHECK(l2_norm(*plan, half) <= 0.5 * l2_norm(*plan, f) * (1.0 + 1e-9));
    }
    SUBCASE("unbounded symbol rejected") {
        CHECK_THROWS_AS(
            multiplier_apply(*plan, [](double lam) { return lam > 50.0 ? 1.0 / 0.0 : 1.0; },
                             f),
            std::domain_error);
    }
}

TEST_CASE("Cauchy-Schwarz bridge between L1 and L2 norms") {
    auto h2 = hyperbolic2();
    auto plan = TransformPlan::standard(h2, 30.0, 8.0);
    auto f = RadialProfile::sample(plan->s_grid(),
                                   [](double s) { return gauss_bump(s, 1.5, 0.4, 4.0); });
    const double mu_supp = ball_measure(h2, 4.0);
    CHECK(lp_norm(h2, f, 1.0) <= std::sqrt(mu_supp) * lp_norm(h2, f, 2.0) * (1.0 + 1e-9));
}
