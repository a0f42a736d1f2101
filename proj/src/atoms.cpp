#include "hypwave/atoms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "hypwave/parallel.hpp"
#include "hypwave/quadrature.hpp"

namespace hypwave {

namespace {

double ball_measure_cached(const SpaceParams& p, double r) {
    static thread_local std::map<std::pair<int, double>, double> cache;
    auto key = std::make_pair(p.m1 * 64 + p.m2, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = ball_measure(p, r);
    cache[key] = v;
    return v;
}

struct NetContext {
    std::vector<ModelPoint> centers;
    std::unique_ptr<NeighborIndex> index;
    double r = 1.0;
    double cosh_r = 1.0;
    void build(int dim) {
        cosh_r = std::cosh(r);
        index = std::make_unique<NeighborIndex>(r, dim);
        for (size_t i = 0; i < centers.size(); ++i) index->insert(centers[i], i);
    }
    // centers that can cover any point of B(z, r): used to localize the
    // partition weights to the ball currently being processed
    std::shared_ptr<std::vector<ModelPoint>> local_cover(const ModelPoint& z) const {
        auto out = std::make_shared<std::vector<ModelPoint>>();
        index->nearby(z, 2.0 * r * 1.05, [&](size_t, const ModelPoint& w) {
            out->push_back(w);
        });
        return out;
    }
    bool inside(const ModelPoint& x, const ModelPoint& z) const {
        return minkowski_dot(x, z) <= cosh_r;
    }
};

// partition weight 1/#covering over a prefetched candidate list
int local_multiplicity(const ModelPoint& x, const std::vector<ModelPoint>& cand,
                       double cosh_r) {
    int m = 0;
    for (const auto& w : cand)
        if (minkowski_dot(x, w) <= cosh_r) ++m;
    return m;
}

}  // namespace

BallQuadrature::BallQuadrature(const SpaceParams& p, std::uint64_t seed, int points)
    : p_(p), qmc_(std::make_shared<QmcSampler>(p, seed)), points_(points) {}

double BallQuadrature::integral(const ModelPoint& center, double radius,
                                const std::function<double(const ModelPoint&)>& f) const {
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < points_; ++i) {
        const double v = f(qmc_->ball_point(center, radius, (std::uint64_t)i));
        const double y = v - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return ball_measure_cached(p_, radius) * acc / points_;
}

double BallQuadrature::l2_norm_sq(const ModelPoint& center, double radius,
                                  const std::function<double(const ModelPoint&)>& f) const {
    return integral(center, radius, [&](const ModelPoint& x) {
        const double v = f(x);
        return v * v;
    });
}

void BallQuadrature::warmup() const { qmc_->warmup((std::uint64_t)points_); }

BallQuadrature::Moments BallQuadrature::moments(
    const ModelPoint& center, double radius,
    const std::function<double(const ModelPoint&)>& f) const {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < points_; ++i) {
        const double v = f(qmc_->ball_point(center, radius, (std::uint64_t)i));
        s0 += v;
        s1 += std::abs(v);
        s2 += v * v;
    }
    const double mu = ball_measure_cached(p_, radius) / points_;
    return {mu * s0, mu * s1, mu * s2};
}

AtomValidation validate_atom(const SpaceParams& p, const Atom& a,
                             const BallQuadrature& quad, const AtomTolerances& tol) {
    AtomValidation out;
    const ModelPoint c = a.center.value_or(ModelPoint::origin(p.n));
    const double r = a.radius;
    out.size_bound = 1.0 / std::sqrt(ball_measure_cached(p, r));
    if (a.is_radial() && a.radial.has_value() && !a.center.has_value()) {
        const auto& prof = *a.radial;
        out.l2_norm = lp_norm(p, prof, 2.0);
        out.l1_norm = lp_norm(p, prof, 1.0);
        out.integral = radial_integral(p, prof).real();
        double outside = 0.0;
        for (size_t i = 0; i < prof.size(); ++i)
            if (prof.s[i] > r * (1.0 + tol.support_rel) + 1e-12)
                outside = std::max(outside, std::abs(prof.values[i]));
        out.support_leak = outside / (sup_norm(prof) + 1e-300);
    } else {
        const auto mom = quad.moments(c, r, a.eval);
        out.l2_norm = std::sqrt(std::max(0.0, mom.square));
        out.l1_norm = mom.abs_integral;
        out.integral = mom.integral;
        const double far = quad.integral(c, 1.5 * r + 0.1, [&](const ModelPoint& x) {
            return model_distance(x, c) > r * (1.0 + tol.support_rel) ? std::abs(a.eval(x))
                                                                      : 0.0;
        });
        out.support_leak = far / (out.l1_norm + 1e-300);
    }
    out.size_ok = out.l2_norm <= out.size_bound + tol.size_slack;
    out.support_ok = out.support_leak <= tol.support_rel * 10.0 + 1e-12;
    out.cancellation_ok = a.kind == AtomKind::global ||
                          std::abs(out.integral) <= tol.cancellation_rel * out.l1_norm + 1e-14;
    out.pass = out.size_ok && out.support_ok && out.cancellation_ok;
    return out;
}

Atom make_standard_atom(const SpaceParams& p, double r, const std::vector<double>& s_grid) {
    if (r <= 0.0 || r > 1.0) throw std::invalid_argument("make_standard_atom: r in (0, 1]");
    RadialProfile inner = RadialProfile::sample(s_grid, [&](double s) {
        return bump(s, 0.5 * r);
    });
    RadialProfile outer = RadialProfile::sample(s_grid, [&](double s) {
        return bump(s, 0.98 * r);
    });
    const double kappa =
        radial_integral(p, inner).real() / radial_integral(p, outer).real();
    RadialProfile prof = lin_comb(1.0, inner, -kappa, outer);
    const double n2 = lp_norm(p, prof, 2.0);
    const double target = 1.0 / std::sqrt(ball_measure(p, r));
    for (auto& v : prof.values) v *= target / n2;
    Atom a;
    a.kind = AtomKind::standard;
    a.radius = r;
    a.radial = prof;
    a.eval = [prof, p](const ModelPoint& x) {
        return prof(model_distance(x, ModelPoint::origin(p.n))).real();
    };
    return a;
}

Atom make_global_atom(const SpaceParams& p, const std::vector<double>& s_grid) {
    RadialProfile prof = RadialProfile::sample(s_grid, [](double s) { return bump(s, 0.98); });
    const double n2 = lp_norm(p, prof, 2.0);
    const double target = 1.0 / std::sqrt(ball_measure(p, 1.0));
    for (auto& v : prof.values) v *= target / n2;
    Atom a;
    a.kind = AtomKind::global;
    a.radius = 1.0;
    a.radial = prof;
    a.eval = [prof, p](const ModelPoint& x) {
        return prof(model_distance(x, ModelPoint::origin(p.n))).real();
    };
    return a;
}

namespace {

AtomicDecomposition finish_decomposition(const SpaceParams& p,
                                         const std::function<double(const ModelPoint&)>& f,
                                         AtomicDecomposition dec,
                                         const BallQuadrature& quad, const ModelPoint& o,
                                         double region_radius) {
    double total = 0.0;
    for (const auto& t : dec.terms) total += std::abs(t.coefficient);
    dec.total = total;
    // radius-sorted term index: only terms whose support ball can reach x
    std::vector<std::pair<double, size_t>> by_radius;
    std::vector<double> radii(dec.terms.size());
    for (size_t i = 0; i < dec.terms.size(); ++i) {
        const auto& t = dec.terms[i];
        const ModelPoint tc = t.atom.center.value_or(ModelPoint::origin(p.n));
        by_radius.emplace_back(std::acosh(std::max(1.0, tc.coords[0])), i);
        radii[i] = t.atom.radius;
    }
    std::sort(by_radius.begin(), by_radius.end());
    double rmax = 0.0;
    for (double rr : radii) rmax = std::max(rmax, rr);
    auto rec = [&](const ModelPoint& x) {
        const double u = std::acosh(std::max(1.0, x.coords[0]));
        auto lo = std::lower_bound(by_radius.begin(), by_radius.end(),
                                   std::make_pair(u - rmax - 1e-12, (size_t)0));
        double acc = 0.0;
        for (auto it = lo; it != by_radius.end() && it->first <= u + rmax + 1e-12; ++it) {
            const auto& t = dec.terms[it->second];
            acc += t.coefficient * t.atom.eval(x);
        }
        return acc;
    };
    const double err2 = quad.l2_norm_sq(o, region_radius, [&](const ModelPoint& x) {
        return rec(x) - f(x);
    });
    const double f2 = quad.l2_norm_sq(o, region_radius, f);
    dec.reconstruction_l2_error = std::sqrt(std::max(0.0, err2));
    dec.input_l2_norm = std::sqrt(std::max(0.0, f2));
    return dec;
}

}  // namespace

AtomicDecomposition decompose_ball(const SpaceParams& p,
                                   const std::function<double(const ModelPoint&)>& f,
                                   double R, std::uint64_t seed, std::int64_t net_budget,
                                   int qmc_points) {
    if (!p.real_hyperbolic())
        throw std::invalid_argument("decompose_ball: net construction requires m2 = 0");
    const ModelPoint o = ModelPoint::origin(p.n);
    BallQuadrature quad(p, seed ^ 0xA5A5A5A5ull, qmc_points);
    AtomicDecomposition dec;
    dec.quad_seed = seed ^ 0xA5A5A5A5ull;

    if (R < 1.0) {
        // admissible only for mean-zero input: the function is its own atom
        const double i0 = quad.integral(o, R, f);
        const double l1 = quad.integral(o, R, [&](const ModelPoint& x) {
            return std::abs(f(x));
        });
        // gate at the quasi-Monte Carlo noise floor
        if (std::abs(i0) > 1e-2 * (l1 + 1e-300))
            throw std::domain_error(
                "decompose_ball: R < 1 requires a vanishing integral");
        const double n2 = std::sqrt(quad.l2_norm_sq(o, R, f));
        if (n2 > 0.0) {
            const double c = std::sqrt(ball_measure_cached(p, R)) * n2;
            Atom a;
            a.kind = AtomKind::standard;
            a.radius = R;
            a.eval = [f, c](const ModelPoint& x) { return f(x) / c; };
            dec.terms.push_back({c, std::move(a)});
        }
        return finish_decomposition(p, f, std::move(dec), quad, o, R);
    }

    Net net = build_net(p, Annulus(0.0, R + 1.0), 1.0, net_budget, seed);
    auto ctx = std::make_shared<NetContext>();
    ctx->centers = net.centers;
    ctx->r = 1.0;
    ctx->build(p.n);
    const double muB1 = ball_measure_cached(p, 1.0);
    ball_measure_cached(p, R + 1.0);
    quad.warmup();
    std::vector<std::vector<AtomicTerm>> buckets(ctx->centers.size());
    parallel_for(ctx->centers.size(), [&](size_t j) {
        const ModelPoint z = ctx->centers[j];
        auto local = ctx->local_cover(z);
        const double cr = ctx->cosh_r;
        auto fj = [f, ctx, z, local, cr](const ModelPoint& x) {
            if (!ctx->inside(x, z)) return 0.0;
            const int m = local_multiplicity(x, *local, cr);
            return m > 0 ? f(x) / m : 0.0;
        };
        const double n2 = std::sqrt(quad.l2_norm_sq(z, 1.0, fj));
        if (n2 <= 0.0) return;
        const double c = std::sqrt(muB1) * n2;
        Atom a;
        a.kind = AtomKind::global;
        a.center = z;
        a.radius = 1.0;
        a.eval = [fj, c](const ModelPoint& x) { return fj(x) / c; };
        buckets[j].push_back({c, std::move(a)});
    });
    for (auto& b : buckets)
        for (auto& t : b) dec.terms.push_back(std::move(t));
    return finish_decomposition(p, f, std::move(dec), quad, o, R + 1.0);
}

AtomicDecomposition decompose_annulus(const SpaceParams& p,
                                      const std::function<double(const ModelPoint&)>& f,
                                      double R, double r, std::uint64_t seed,
                                      std::int64_t net_budget, int qmc_points) {
    if (!p.real_hyperbolic())
        throw std::invalid_argument("decompose_annulus: net construction requires m2 = 0");
    if (r <= 0.0 || r > 1.0) throw std::invalid_argument("decompose_annulus: r in (0, 1]");
    if (R <= r) throw std::invalid_argument("decompose_annulus: need R > r");
    const ModelPoint o = ModelPoint::origin(p.n);
    BallQuadrature quad(p, seed ^ 0xC3C3C3C3ull, qmc_points);
    AtomicDecomposition predec;
    (void)predec;

    // precondition: vanishing integral over the annulus (within the QMC floor)
    {
        QmcSampler s(p, seed ^ 0x77u);
        const Annulus reg(R, r);
        double acc = 0.0, l1 = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double v = f(s.annulus_point(reg, (std::uint64_t)i));
            acc += v;
            l1 += std::abs(v);
        }
        // gate at the quasi-Monte Carlo noise floor; exact radial inputs are
        // pre-checked by the callers with radial quadrature
        if (std::abs(acc) > 1e-2 * (l1 + 1e-300) && l1 > 0.0)
            throw std::domain_error("decompose_annulus: input must have vanishing integral");
    }

    Net net = build_net(p, Annulus(R, r), r, net_budget, seed);
    auto ctx = std::make_shared<NetContext>();
    ctx->centers = net.centers;
    ctx->r = r;
    ctx->build(p.n);
    int K = 0;
    while (std::ldexp(r, K) <= 1.0) ++K;  // least K with 2^K r > 1

    AtomicDecomposition dec;
    dec.quad_seed = seed ^ 0xC3C3C3C3ull;
    const auto t_loop = std::chrono::steady_clock::now();
    for (int k = 0; k <= K; ++k) ball_measure_cached(p, std::ldexp(r, k));
    ball_measure_cached(p, 1.0);
    ball_measure_cached(p, R + 2.0 * r + 2.0);
    quad.warmup();
    std::vector<std::vector<AtomicTerm>> buckets(ctx->centers.size());
    parallel_for(ctx->centers.size(), [&](size_t jc) {
        const ModelPoint z = ctx->centers[jc];
        auto& bucket = buckets[jc];
        auto local = ctx->local_cover(z);
        const double cr = ctx->cosh_r;
        auto fj = [f, ctx, z, local, cr](const ModelPoint& x) {
            if (!ctx->inside(x, z)) return 0.0;
            const int m = local_multiplicity(x, *local, cr);
            return m > 0 ? f(x) / m : 0.0;
        };
        const auto mom = quad.moments(z, r, fj);
        const double Ij = mom.integral;
        const double n2 = std::sqrt(std::max(0.0, mom.square));
        if (n2 < 1e-14 && std::abs(Ij) < 1e-14) return;

        // radii 2^k r and the normalized indicators phi^k
        auto phi_k = [&](int k) {
            const double rad = std::ldexp(r, k);
            const double mu = ball_measure_cached(p, rad);
            const double cr = std::cosh(rad);
            return [z, cr, mu](const ModelPoint& x) {
                return minkowski_dot(x, z) <= cr ? 1.0 / mu : 0.0;
            };
        };

        {  // a_j^0 = f_j - phi^0 I_j  (standard atom on B(z, r)); its squared
           // norm expands exactly in the quadrature calculus since phi^0 is a
           // normalized indicator: ||a0||^2 = ||f_j||^2 - I_j^2 / mu(B)
            auto phi0 = phi_k(0);
            auto a0 = [fj, phi0, Ij](const ModelPoint& x) { return fj(x) - phi0(x) * Ij; };
            const double a0n2 = std::sqrt(
                std::max(0.0, mom.square - Ij * Ij / ball_measure_cached(p, r)));
            if (a0n2 > 1e-14) {
                const double c = std::sqrt(ball_measure_cached(p, r)) * a0n2;
                Atom a;
                a.kind = AtomKind::standard;
                a.center = z;
                a.radius = r;
                a.eval = [a0, c](const ModelPoint& x) { return a0(x) / c; };
                bucket.push_back({c, std::move(a)});
            }
        }
        for (int k = 1; k <= K - 1; ++k) {  // a_j^k = (phi^{k-1} - phi^k) I_j
            auto lo = phi_k(k - 1), hi = phi_k(k);
            auto ak = [lo, hi, Ij](const ModelPoint& x) { return (lo(x) - hi(x)) * Ij; };
            const double rad = std::ldexp(r, k);
            const double akn2 =
                std::abs(Ij) * std::sqrt(1.0 / ball_measure_cached(p, std::ldexp(r, k - 1)) -
                                         1.0 / ball_measure_cached(p, rad));
            if (akn2 < 1e-14) continue;
            const double c = std::sqrt(ball_measure_cached(p, rad)) * akn2;
            Atom a;
            a.kind = AtomKind::standard;
            a.center = z;
            a.radius = rad;
            a.eval = [ak, c](const ModelPoint& x) { return ak(x) / c; };
            bucket.push_back({c, std::move(a)});
        }
        {  // a_j^K = phi^{K-1} I_j, a global atom in B(z, 1)
            auto lo = phi_k(K - 1);
            auto aK = [lo, Ij](const ModelPoint& x) { return lo(x) * Ij; };
            const double aKn2 =
                std::abs(Ij) / std::sqrt(ball_measure_cached(p, std::ldexp(r, K - 1)));
            if (aKn2 > 1e-14) {
                const double c = std::sqrt(ball_measure_cached(p, 1.0)) * aKn2;
                Atom a;
                a.kind = AtomKind::global;
                a.center = z;
                a.radius = 1.0;
                a.eval = [aK, c](const ModelPoint& x) { return aK(x) / c; };
                bucket.push_back({c, std::move(a)});
            }
        }
    });
    for (auto& b : buckets)
        for (auto& t : b) dec.terms.push_back(std::move(t));
    if (std::getenv("HYPWAVE_ATOM_DEBUG"))
        std::fprintf(stderr, "annulus loop: %.1f s\n",
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t_loop)
                         .count());
    return finish_decomposition(p, f, std::move(dec), quad, o, R + 2.0 * r + 2.0);
}

ConvAtomBound conv_atom_bound(const TransformPlan& plan, const Atom& a,
                              const RadialProfile& gamma) {
    if (!a.radial.has_value() || a.center.has_value())
        throw std::invalid_argument(
            "conv_atom_bound: atom must be radial and centered at the origin");
    const SpaceParams& p = plan.space();
    ConvAtomBound out;
    RadialProfile conv = radial_convolve(plan, *a.radial, gamma);
    out.measured_l2 = lp_norm(p, conv, 2.0);
    out.bound_gamma_l2 = lp_norm(p, gamma, 2.0);
    out.bound_grad = a.radius * lp_norm(p, derivative(gamma), 2.0);

    double beta = 0.0;
    const double gmax = sup_norm(gamma);
    for (size_t i = 0; i < gamma.size(); ++i)
        if (std::abs(gamma.values[i]) > 1e-12 * gmax) beta = gamma.s[i];
    const double cmax = sup_norm(conv);
    for (size_t i = 0; i < conv.size(); ++i)
        if (std::abs(conv.values[i]) > 1e-8 * cmax) out.support_radius = conv.s[i];
    const double grid_tol = 2.0 * (conv.s.back() - conv.s.front()) / (conv.size() - 1);
    out.support_ok = out.support_radius <= a.radius + beta + grid_tol + 0.05;

    const double bound = a.kind == AtomKind::standard
                             ? std::min(out.bound_gamma_l2, out.bound_grad)
                             : out.bound_gamma_l2;
    out.l2_ok = out.measured_l2 <= bound * (1.0 + 1e-6) + 1e-12;
    out.h1_bound = std::sqrt(ball_measure(p, a.radius + beta)) * bound;
    return out;
}

H1Bracket h1_bracket(const SpaceParams& p, const RadialProfile& f, std::uint64_t seed) {
    H1Bracket out;
    out.lower = lp_norm(p, f, 1.0);
    const double fmax = sup_norm(f);
    if (fmax == 0.0) return out;
    double s_lo = f.s.back(), s_hi = 0.0;
    for (size_t i = 0; i < f.size(); ++i)
        if (std::abs(f.values[i]) > 1e-12 * fmax) {
            s_lo = std::min(s_lo, f.s[i]);
            s_hi = std::max(s_hi, f.s[i]);
        }
    auto eval = [f, p](const ModelPoint& x) {
        return f(model_distance(x, ModelPoint::origin(p.n))).real();
    };
    const double mean = radial_integral(p, f).real();
    const double half = 0.5 * (s_hi - s_lo);
    const bool mean_zero = std::abs(mean) <= 1e-6 * (out.lower + 1e-300);
    if (s_lo > 0.05 && half <= 1.0 && mean_zero) {
        out.decomposition =
            decompose_annulus(p, eval, 0.5 * (s_lo + s_hi), std::max(half, 1e-3), seed);
    } else if (s_hi >= 1.0) {
        out.decomposition = decompose_ball(p, eval, s_hi, seed);
    } else if (mean_zero) {
        // a mean-zero profile in a small ball is its own standard atom
        const double R = std::max(s_hi, 1e-3);
        const double c = std::sqrt(ball_measure(p, R)) * lp_norm(p, f, 2.0);
        AtomicDecomposition dec;
        dec.quad_seed = seed;
        if (c > 0.0) {
            RadialProfile prof = f;
            for (auto& v : prof.values) v /= c;
            Atom a;
            a.kind = AtomKind::standard;
            a.radius = R;
            a.radial = prof;
            a.eval = [prof, p](const ModelPoint& x) {
                return prof(model_distance(x, ModelPoint::origin(p.n))).real();
            };
            dec.terms.push_back({c, std::move(a)});
            dec.total = c;
            dec.input_l2_norm = c / std::sqrt(ball_measure(p, R));
        }
        out.decomposition = std::move(dec);
    } else {
        throw std::domain_error(
            "h1_bracket: small-ball support without cancellation is not admissible");
    }
    out.upper = out.decomposition.total;
    if (out.upper < out.lower * (1.0 - 1e-6) && out.upper > 0.0)
        throw std::runtime_error("h1_bracket: upper bound fell below the L1 lower bound");
    return out;
}

}  // namespace hypwave
