#include <doctest.h>

#include <cmath>

#include "hypwave/model.hpp"
#include "hypwave/space.hpp"

using namespace hypwave;

TEST_CASE("space parameters and invariants") {
    auto h2 = hyperbolic2();
    CHECK(h2.n == 2);
    CHECK(h2.rho == doctest::Approx(0.5));
    CHECK(h2.d == doctest::Approx(0.5));
    auto h3 = hyperbolic3();
    CHECK(h3.n == 3);
    CHECK(h3.rho == doctest::Approx(1.0));
    auto ch2 = SpaceParams::make(2, 1);
    CHECK(ch2.n == 4);
    CHECK(ch2.rho == doctest::Approx(2.0));
    CHECK(ch2.d == doctest::Approx(1.5));
    for (auto& p : {h2, h3, ch2}) {
        CHECK(p.n == p.m1 + p.m2 + 1);
        CHECK(p.d == doctest::Approx(0.5 * (p.m1 + p.m2)));
        CHECK(p.rho >= 0.5);
        CHECK(p.rho_prime == doctest::Approx(p.rho + 0.1));
    }
    CHECK_THROWS(SpaceParams::make(0, 1));
    CHECK_THROWS(SpaceParams::make(1, -1));
}

TEST_CASE("density closed forms and asymptotics") {
    auto h3 = hyperbolic3();
    // 4 pi sinh^2(s)
    CHECK(density(h3, 1.0) ==
          doctest::Approx(4.0 * M_PI * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
    CHECK(density(h3, 0.0) == 0.0);
    CHECK_THROWS_AS(density(h3, -0.1), std::domain_error);
    // exponential regime: density / e^{2 rho s} -> omega 2^{-2 rho}; H3: pi
    CHECK(density(h3, 20.0) / std::exp(2.0 * 20.0) == doctest::Approx(M_PI).epsilon(1e-8));
    // small-s regime ~ omega s^{n-1} for every space
    for (auto& p : {hyperbolic2(), h3, SpaceParams::make(2, 1)}) {
        const double s = 1e-5;
        CHECK(density(p, s) / (p.omega() * std::pow(s, p.n - 1)) ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("ball measure") {
    auto h3 = hyperbolic3();
    // closed form pi (sinh 2r - 2r)
    CHECK(ball_measure(h3, 1.0) ==
          doctest::Approx(M_PI * (std::sinh(2.0) - 2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(ball_measure(h3, 0.0), std::domain_error);
    // small-r limit: measure / r^n -> omega / n
    auto h2 = hyperbolic2();
    CHECK(ball_measure(h2, 1e-4) / std::pow(1e-4, 2) ==
          doctest::Approx(h2.omega() / 2.0).epsilon(1e-6));
    // dominant exponential regime: ratio of r=5 to r=4 close to e^{2 rho}
    const double ratio = ball_measure(h3, 5.0) / ball_measure(h3, 4.0);
    CHECK(std::abs(ratio / std::exp(2.0 * h3.rho) - 1.0) < 0.05);
    CHECK(ball_measure(h3, 2.0) > ball_measure(h3, 1.0));
}

TEST_CASE("log ball measure is affine with slope 2 rho on [2, 6]") {
    for (auto& p : {hyperbolic2(), hyperbolic3()}) {
        double lo = std::log(ball_measure(p, 2.0));
        double hi = std::log(ball_measure(p, 6.0));
        const double slope = (hi - lo) / 4.0;
        CHECK(std::abs(slope / (2.0 * p.rho) - 1.0) < 0.03);
        double mid = std::log(ball_measure(p, 4.0));
        CHECK(std::abs(mid - 0.5 * (lo + hi)) < 0.03 * std::abs(mid));
    }
}

TEST_CASE("annulus measure") {
    auto h3 = hyperbolic3();
    SUBCASE("degenerate annulus equals the ball") {
        Annulus a(0.3, 0.5);  // R <= r
        CHECK(a.is_ball());
        CHECK(annulus_measure(h3, a) ==
              doctest::Approx(ball_measure(h3, 0.8)).epsilon(1e-10));
    }
    SUBCASE("quadrature bracket against e^{2 rho R} r") {
        Annulus a(3.0, 0.1);
        const double v = annulus_measure(h3, a) / (std::exp(2.0 * h3.rho * 3.0) * 0.1);
        CHECK(v > 1.0);
        CHECK(v < 50.0);
    }
    SUBCASE("vanishing width") { CHECK(annulus_measure(h3, Annulus(2.0, 1e-8)) < 1e-4); }
    CHECK_THROWS(Annulus(2.0, -1.0));
}

TEST_CASE("model points and distance") {
    auto o = ModelPoint::origin(2);
    CHECK(model_distance(o, o) == 0.0);
    ModelPoint y;
    y.coords = {std::cosh(1.0), std::sinh(1.0), 0.0};
    CHECK(model_distance(o, y) == doctest::Approx(1.0).epsilon(1e-14));
    QmcSampler s(hyperbolic2(), 5);
    for (int i = 0; i < 50; ++i) {
        auto a = s.annulus_point(Annulus(0.0, 2.0), 3 * i);
        auto b = s.annulus_point(Annulus(0.0, 2.0), 3 * i + 1);
        auto c = s.annulus_point(Annulus(0.0, 2.0), 3 * i + 2);
        const double ab = model_distance(a, b);
        CHECK(ab == doctest::Approx(model_distance(b, a)).epsilon(1e-13));
        CHECK(ab <= model_distance(a, c) + model_distance(c, b) + 1e-12);
    }
    // distances along one geodesic are additive
    ModelPoint m1 = model_point(0.7, {1.0, 0.0});
    ModelPoint m2 = model_point(1.9, {1.0, 0.0});
    CHECK(model_distance(m1, m2) == doctest::Approx(1.2).epsilon(1e-12));
    // boosts are isometries
    Boost b(model_point(1.3, {0.6, 0.8}));
    auto p1 = s.annulus_point(Annulus(0.0, 1.5), 7);
    auto p2 = s.annulus_point(Annulus(0.0, 1.5), 8);
    CHECK(model_distance(b.apply(p1), b.apply(p2)) ==
          doctest::Approx(model_distance(p1, p2)).epsilon(1e-11));
    ModelPoint bad;
    bad.coords = {0.5, 0.0, 0.0};
    CHECK_THROWS(model_distance(o, bad));
}

TEST_CASE("nets: separation, covering, multiplicity") {
    auto h2 = hyperbolic2();
    SUBCASE("degenerate region gives the origin") {
        auto net = build_net(h2, Annulus(0.0, 1e-15), 0.5, 1000, 3);
        REQUIRE(net.centers.size() == 1);
        CHECK(model_distance(net.centers[0], ModelPoint::origin(2)) < 1e-12);
    }
    SUBCASE("ball radius 1, r = 0.5: brute-force invariants") {
        auto net = build_net(h2, Annulus(0.0, 1.0), 0.5, 30000, 42);
        const double sep = 0.5 / 3.0;
        double min_sep = 1e9;
        for (size_t i = 0; i < net.centers.size(); ++i)
            for (size_t j = i + 1; j < net.centers.size(); ++j)
                min_sep =
                    std::min(min_sep, model_distance(net.centers[i], net.centers[j]));
        CHECK(min_sep > sep);
        QmcSampler s(h2, 777);
        std::vector<ModelPoint> samples;
        for (int i = 0; i < 20000; ++i)
            samples.push_back(s.annulus_point(Annulus(0.0, 1.0), i));
        CHECK(covering_radius(net, samples) <= sep);
        CHECK(covering_multiplicity(net, samples) >= 1);
        // deterministic given the seed
        auto net2 = build_net(h2, Annulus(0.0, 1.0), 0.5, 30000, 42);
        CHECK(net2.centers.size() == net.centers.size());
        CHECK(minkowski_dot(net2.centers.back(), net.centers.back()) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("multiplicity basics") {
        Net net;
        net.centers.push_back(ModelPoint::origin(2));
        net.mesh = 0.5;
        std::vector<ModelPoint> inside{model_point(0.3, {1.0, 0.0})};
        CHECK(covering_multiplicity(net, inside) == 1);
        std::vector<ModelPoint> outside{model_point(2.0, {1.0, 0.0})};
        CHECK(covering_multiplicity(net, outside) == 0);
        CHECK_THROWS_AS(covering_multiplicity(net, {}), std::domain_error);
    }
}
