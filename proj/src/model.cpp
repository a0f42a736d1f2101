#include "hypwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>

#include "hypwave/quadrature.hpp"

namespace hypwave {

ModelPoint ModelPoint::origin(int n) {
    ModelPoint p;
    p.coords.assign(n + 1, 0.0);
    p.coords[0] = 1.0;
    return p;
}

double minkowski_dot(const ModelPoint& x, const ModelPoint& y) {
    if (x.coords.size() != y.coords.size())
        throw std::invalid_argument("minkowski_dot: dimension mismatch");
    double acc = x.coords[0] * y.coords[0];
    for (size_t i = 1; i < x.coords.size(); ++i) acc -= x.coords[i] * y.coords[i];
    return acc;
}

double model_distance(const ModelPoint& x, const ModelPoint& y) {
    const double q = minkowski_dot(x, y);
    if (q < 1.0 - 1e-9)
        throw std::invalid_argument("model_distance: points not on the hyperboloid");
    return std::acosh(std::max(1.0, q));
}

ModelPoint model_point(double s, const std::vector<double>& dir) {
    ModelPoint p;
    p.coords.resize(dir.size() + 1);
    p.coords[0] = std::cosh(s);
    const double sh = std::sinh(s);
    for (size_t i = 0; i < dir.size(); ++i) p.coords[i + 1] = sh * dir[i];
    return p;
}

Boost::Boost(const ModelPoint& z) : n(z.dim()) {
    // B = [[z0, zt^T], [zt, I + zt zt^T / (1 + z0)]]
    const int m = n + 1;
    mat.assign((size_t)m * m, 0.0);
    const double z0 = z.coords[0];
    mat[0] = z0;
    for (int i = 1; i < m; ++i) {
        mat[(size_t)i] = z.coords[i];
        mat[(size_t)i * m] = z.coords[i];
        for (int j = 1; j < m; ++j)
            mat[(size_t)i * m + j] =
                (i == j ? 1.0 : 0.0) + z.coords[i] * z.coords[j] / (1.0 + z0);
    }
}

ModelPoint Boost::apply(const ModelPoint& x) const {
    const int m = n + 1;
    ModelPoint out;
    out.coords.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += mat[(size_t)i * m + j] * x.coords[j];
        out.coords[i] = acc;
    }
    // renormalize onto the hyperboloid (guards drift at large radii)
    double q = out.coords[0] * out.coords[0];
    for (int i = 1; i < m; ++i) q -= out.coords[i] * out.coords[i];
    if (q > 0.0) {
        const double f = 1.0 / std::sqrt(q);
        for (auto& c : out.coords) c *= f;
    }
    return out;
}

namespace {

double halton(std::uint64_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t k = i + 1; k > 0; k /= base) {
        f /= base;
        r += f * (double)(k % base);
    }
    return r;
}

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double shift01(double x, std::uint64_t sh) {
    const double y = x + (double)(sh >> 11) * 0x1.0p-53;
    return y - std::floor(y);
}

}  // namespace

QmcSampler::QmcSampler(const SpaceParams& p, std::uint64_t seed) : p_(p) {
    if (!p.real_hyperbolic())
        throw std::invalid_argument("QmcSampler: point model requires m2 = 0");
    if (p.n != 2 && p.n != 3)
        throw std::invalid_argument("QmcSampler: point model supports n in {2, 3}");
    std::uint64_t st = seed;
    for (auto& s : shift_) s = splitmix(st);
}

double QmcSampler::radial_cdf_inv(double u, double lo, double hi) const {
    // tabulated inverse of s -> mu(lo, s)/mu(lo, hi); tables cached per range
    static thread_local std::map<std::pair<double, double>,
                                 std::shared_ptr<std::vector<double>>> cache;
    constexpr int kN = 4096;
    auto key = std::make_pair(lo, hi);
    auto it = cache.find(key);
    std::shared_ptr<std::vector<double>> tab;
    if (it != cache.end()) {
        tab = it->second;
    } else {
        // cumulative trapezoid of the density on a fine grid, then invert
        std::vector<double> cum(kN + 1, 0.0);
        const double h = (hi - lo) / kN;
        double prev = density(p_, lo);
        for (int i = 1; i <= kN; ++i) {
            const double cur = density(p_, lo + i * h);
            cum[i] = cum[i - 1] + 0.5 * h * (prev + cur);
            prev = cur;
        }
        tab = std::make_shared<std::vector<double>>(kN + 1);
        const double total = cum[kN];
        int j = 0;
        for (int i = 0; i <= kN; ++i) {
            const double target = total * i / kN;
            while (j < kN && cum[j + 1] < target) ++j;
            const double c0 = cum[j], c1 = cum[j + 1];
            const double w = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
            (*tab)[i] = lo + (j + w) * h;
        }
        (*tab)[kN] = hi;
        cache[key] = tab;
    }
    const double x = u * kN;
    const int i = std::min(kN - 1, (int)x);
    const double w = x - i;
    return (*tab)[i] * (1.0 - w) + (*tab)[i + 1] * w;
}

std::vector<double> QmcSampler::direction(std::uint64_t i, int offset) const {
    if (p_.n == 2) {
        const double th = 2.0 * M_PI * shift01(halton(i, 3), shift_[offset]);
        return {std::cos(th), std::sin(th)};
    }
    const double z = 2.0 * shift01(halton(i, 3), shift_[offset]) - 1.0;
    const double th = 2.0 * M_PI * shift01(halton(i, 5), shift_[offset + 1]);
    const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rr * std::cos(th), rr * std::sin(th), z};
}

void QmcSampler::warmup(std::uint64_t n) const { if (n > 0) ensure_cache(n - 1); }

void QmcSampler::ensure_cache(std::uint64_t i) const {
    while (u_cache_.size() <= i) {
        const std::uint64_t k = u_cache_.size();
        u_cache_.push_back(shift01(halton(k, 2), shift_[0]));
        dir_cache_.push_back(direction(k, 1));
    }
}

ModelPoint QmcSampler::ball_point(const ModelPoint& center, double radius,
                                  std::uint64_t i) const {
    ensure_cache(i);
    const double s = radial_cdf_inv(u_cache_[i], 0.0, radius);
    ModelPoint local = model_point(s, dir_cache_[i]);
    if (std::abs(center.coords[0] - 1.0) < 1e-15) return local;
    return Boost(center).apply(local);
}

ModelPoint QmcSampler::annulus_point(const Annulus& region, std::uint64_t i) const {
    const double u = shift01(halton(i, 2), shift_[0]);
    const double s = radial_cdf_inv(u, region.lower(), region.upper());
    return model_point(s, direction(i, 1));
}

// radial shells with per-ring angle buckets (n = 2); n = 3 falls back to
// radial-only candidate scans
namespace {
class ShellIndex {
  public:
    ShellIndex(double cell, int dim) : cell_(cell), dim_(dim) {}

    void insert(const ModelPoint& z, size_t id) {
        const double u = std::acosh(std::max(1.0, z.coords[0]));
        Ring& ring = rings_[ring_of(u)];
        if (dim_ == 2) {
            ring.by_angle[angle_bucket(ring_of(u), theta(z))].push_back(id);
        } else {
            ring.all.push_back(id);
        }
        pts_.push_back(z);
        (void)id;
    }

    template <class F>
    void nearby(const ModelPoint& x, double dist, F&& f) const {
        const double u = std::acosh(std::max(1.0, x.coords[0]));
        const int lo = ring_of(std::max(0.0, u - dist)), hi = ring_of(u + dist);
        for (int rg = lo; rg <= hi; ++rg) {
            auto it = rings_.find(rg);
            if (it == rings_.end()) continue;
            const Ring& ring = it->second;
            if (dim_ != 2) {
                for (size_t id : ring.all) f(id, pts_[id]);
                continue;
            }
            const double ring_lo = rg * cell_;
            // angular window: cos dtheta >= (cosh u1 cosh u2 - cosh D)/(sinh u1 sinh u2)
            double win = M_PI;
            const double su = std::sinh(std::max(u, 1e-12));
            const double s2 = std::sinh(std::max(ring_lo, 1e-12));
            if (u > 0.5 * cell_ && ring_lo > 0.0) {
                double worst = -1.0;
                for (double u2 : {ring_lo, ring_lo + cell_, std::min(std::max(u, ring_lo), ring_lo + cell_)}) {
                    const double c = (std::cosh(u) * std::cosh(u2) - std::cosh(dist)) /
                                     (su * std::sinh(std::max(u2, 1e-12)));
                    worst = std::max(worst, std::acos(std::min(1.0, std::max(-1.0, c))));
                }
                win = worst;
            }
            (void)s2;
            const int nb = n_buckets(rg);
            const int span =
                win >= M_PI ? nb : (int)std::ceil(win / (2.0 * M_PI / nb)) + 1;
            if (2 * span + 1 >= nb || nb <= 2) {  // window wraps: scan the ring once
                for (const auto& [b, ids] : ring.by_angle)
                    for (size_t id : ids) f(id, pts_[id]);
                continue;
            }
            const double th = theta(x);
            const int b0 = (int)std::floor(th / (2.0 * M_PI) * nb);
            for (int db = -span; db <= span; ++db) {
                const int b = ((b0 + db) % nb + nb) % nb;
                auto bit = ring.by_angle.find(b);
                if (bit == ring.by_angle.end()) continue;
                for (size_t id : bit->second) f(id, pts_[id]);
            }
        }
    }

  private:
    struct Ring {
        std::map<int, std::vector<size_t>> by_angle;
        std::vector<size_t> all;
    };
    int ring_of(double u) const { return (int)std::floor(u / cell_); }
    static double theta(const ModelPoint& z) {
        const double t = std::atan2(z.coords[2], z.coords[1]);
        return t < 0 ? t + 2.0 * M_PI : t;
    }
    int n_buckets(int rg) const {
        const double ring_lo = rg * cell_;
        const double arc = cell_ / std::max(std::sinh(std::max(ring_lo, cell_)), 1e-9);
        return std::max(1, std::min(4096, (int)std::floor(2.0 * M_PI / arc)));
    }
    int angle_bucket(int rg, double th) const {
        const int nb = n_buckets(rg);
        int b = (int)std::floor(th / (2.0 * M_PI) * nb);
        return std::min(nb - 1, std::max(0, b));
    }
    double cell_;
    int dim_;
    std::map<int, Ring> rings_;
    std::vector<ModelPoint> pts_;
};

}  // namespace

struct NeighborIndex::Impl {
    ShellIndex idx;
    Impl(double cell, int dim) : idx(cell, dim) {}
};

NeighborIndex::NeighborIndex(double cell, int dim)
    : impl_(std::make_unique<Impl>(cell, dim)) {}
NeighborIndex::~NeighborIndex() = default;
NeighborIndex::NeighborIndex(NeighborIndex&&) noexcept = default;
void NeighborIndex::insert(const ModelPoint& z, size_t id) { impl_->idx.insert(z, id); }
void NeighborIndex::nearby(const ModelPoint& x, double dist,
                           const std::function<void(size_t, const ModelPoint&)>& f) const {
    impl_->idx.nearby(x, dist, f);
}

namespace {

// Solve <x, row_i>_M = rhs_i (i = 1..n) together with <x,x>_M = 1 in the
// (n+1)-dimensional Minkowski space: candidates for packing deep holes.
std::vector<ModelPoint> sphere_candidates(const std::vector<std::vector<double>>& rows,
                                          const std::vector<double>& rhs) {
    const int m = (int)rows.size();
    const int dim = (int)rows[0].size();  // ambient n+1, m == n
    auto mdot = [dim](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = a[0] * b[0];
        for (int i = 1; i < dim; ++i) acc -= a[i] * b[i];
        return acc;
    };
    // orthocomplement direction: kernel of the m x dim matrix (G rows)
    std::vector<double> nvec(dim, 0.0);
    if (dim == 3) {
        // Euclidean cross of G r1, G r2
        auto g = [&](const std::vector<double>& v) {
            return std::vector<double>{v[0], -v[1], -v[2]};
        };
        auto a = g(rows[0]), b = g(rows[1]);
        nvec = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]};
    } else {
        // generalized cross in 4D via cofactor expansion
        auto g = [&](const std::vector<double>& v) {
            return std::vector<double>{v[0], -v[1], -v[2], -v[3]};
        };
        std::vector<std::vector<double>> r = {g(rows[0]), g(rows[1]), g(rows[2])};
        for (int col = 0; col < 4; ++col) {
            double minor[3][3];
            for (int i = 0; i < 3; ++i) {
                int cc = 0;
                for (int j = 0; j < 4; ++j) {
                    if (j == col) continue;
                    minor[i][cc++] = r[i][j];
                }
            }
            const double det = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                               minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                               minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
            nvec[col] = (col % 2 == 0 ? 1.0 : -1.0) * det;
        }
    }
    const double nn = mdot(nvec, nvec);
    if (std::abs(nn) < 1e-13) return {};
    // particular solution in span(rows): solve Gram * a = rhs
    double A[3][3], bb[3], sol[3];
    for (int i = 0; i < m; ++i) {
        bb[i] = rhs[i];
        for (int j = 0; j < m; ++j) A[i][j] = mdot(rows[i], rows[j]);
    }
    // gaussian elimination (m <= 3)
    int perm[3] = {0, 1, 2};
    (void)perm;
    for (int col = 0; col < m; ++col) {
        int best = col;
        for (int i = col + 1; i < m; ++i)
            if (std::abs(A[i][col]) > std::abs(A[best][col])) best = i;
        if (std::abs(A[best][col]) < 1e-13) return {};
        if (best != col) {
            for (int j = 0; j < m; ++j) std::swap(A[col][j], A[best][j]);
            std::swap(bb[col], bb[best]);
        }
        for (int i = col + 1; i < m; ++i) {
            const double f = A[i][col] / A[col][col];
            for (int j = col; j < m; ++j) A[i][j] -= f * A[col][j];
            bb[i] -= f * bb[col];
        }
    }
    for (int i = m - 1; i >= 0; --i) {
        double acc = bb[i];
        for (int j = i + 1; j < m; ++j) acc -= A[i][j] * sol[j];
        sol[i] = acc / A[i][i];
    }
    std::vector<double> x0(dim, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < dim; ++j) x0[j] += sol[i] * rows[i][j];
    const double q = mdot(x0, x0);
    const double e2 = (1.0 - q) / nn;
    if (e2 < 0.0) return {};
    const double e = std::sqrt(e2);
    std::vector<ModelPoint> out;
    for (double sgn : {1.0, -1.0}) {
        ModelPoint pt;
        pt.coords.resize(dim);
        for (int j = 0; j < dim; ++j) pt.coords[j] = x0[j] + sgn * e * nvec[j];
        if (pt.coords[0] < 1.0 - 1e-12) continue;
        // renormalize
        double qq = pt.coords[0] * pt.coords[0];
        for (int j = 1; j < dim; ++j) qq -= pt.coords[j] * pt.coords[j];
        if (qq <= 0.0) continue;
        const double f = 1.0 / std::sqrt(qq);
        for (auto& cset : pt.coords) cset *= f;
        out.push_back(std::move(pt));
        if (e < 1e-15) break;
    }
    return out;
}

}  // namespace

Net build_net(const SpaceParams& p, const Annulus& region, double r,
              std::int64_t sample_budget, std::uint64_t seed) {
    if (r <= 0.0 || r > 1.0) throw std::invalid_argument("build_net: r in (0, 1]");
    Net net;
    net.mesh = r;
    net.seed = seed;
    if (region.upper() <= 1e-14) {  // degenerate region: the origin alone
        net.centers.push_back(ModelPoint::origin(p.n));
        return net;
    }
    QmcSampler qmc(p, seed);
    const double sep = r / 3.0;
    ShellIndex index(sep, p.n);
    const double cosh_sep = std::cosh(sep);
    auto try_add = [&](const ModelPoint& cand) {
        bool ok = true;
        index.nearby(cand, sep, [&](size_t, const ModelPoint& z) {
            if (ok && minkowski_dot(cand, z) <= cosh_sep) ok = false;
        });
        if (ok) {
            index.insert(cand, net.centers.size());
            net.centers.push_back(cand);
        }
    };
    // seed the greedy pass with the origin when it lies in the region
    if (region.lower() <= 0.0) try_add(ModelPoint::origin(p.n));
    for (std::int64_t i = 0; i < sample_budget; ++i)
        try_add(qmc.annulus_point(region, (std::uint64_t)i));

    // maximality fill: any fresh point farther than r/3 from all centers is
    // itself admissible.  Sampling rounds first, then deep-hole candidates at
    // equidistant intersection points (Voronoi vertices) until nothing is left.
    const double lo_edge = region.lower(), hi_edge = region.upper();
    QmcSampler check(p, seed ^ 0x5DEECE66Dull);
    const std::int64_t n_round = std::max<std::int64_t>(100000, sample_budget / 2);
    std::uint64_t idx_main = 0;
    auto try_fill = [&](const ModelPoint& x) {
        const double u = std::acosh(std::max(1.0, x.coords[0]));
        if (u < lo_edge - 1e-12 || u > hi_edge + 1e-12) return 0;
        double best_dot = -1e300;  // larger dot = closer
        index.nearby(x, sep * 1.0001, [&](size_t, const ModelPoint& z) {
            best_dot = std::max(best_dot, -minkowski_dot(x, z));
        });
        if (-best_dot > cosh_sep) {
            index.insert(x, net.centers.size());
            net.centers.push_back(x);
            return 1;
        }
        return 0;
    };
    auto vertex_sweep = [&]() {
        std::int64_t added = 0;
        const double c_lin = std::cosh(sep * (1.0 + 1e-9));
        const size_t n_before = net.centers.size();
        std::vector<double> origin(p.n + 1, 0.0);
        origin[0] = 1.0;
        const double cosh_pair = std::cosh(2.0 * sep * 1.05);
        for (size_t i = 0; i < n_before; ++i) {
            const ModelPoint zi = net.centers[i];
            std::vector<size_t> nbr;
            index.nearby(zi, 2.0 * sep * 1.05, [&](size_t j, const ModelPoint& w) {
                if (j > i && minkowski_dot(zi, w) <= cosh_pair) nbr.push_back(j);
            });
            for (size_t j : nbr) {
                const ModelPoint zj = net.centers[j];
                if (p.n == 2) {
                    for (auto& cand : sphere_candidates({zi.coords, zj.coords}, {c_lin, c_lin}))
                        added += try_fill(cand);
                    for (double edge : {lo_edge, hi_edge}) {
                        if (edge <= 1e-12) continue;
                        std::vector<double> diff(p.n + 1);
                        for (int k = 0; k <= p.n; ++k)
                            diff[k] = zi.coords[k] - zj.coords[k];
                        for (auto& cand :
                             sphere_candidates({origin, diff}, {std::cosh(edge), 0.0}))
                            added += try_fill(cand);
                    }
                } else {
                    for (size_t k : nbr) {
                        if (k <= j) continue;
                        for (auto& cand : sphere_candidates(
                                 {zi.coords, zj.coords, net.centers[k].coords},
                                 {c_lin, c_lin, c_lin}))
                            added += try_fill(cand);
                    }
                    for (double edge : {lo_edge, hi_edge}) {
                        if (edge <= 1e-12) continue;
                        for (auto& cand :
                             sphere_candidates({origin, zi.coords, zj.coords},
                                               {std::cosh(edge), c_lin, c_lin}))
                            added += try_fill(cand);
                    }
                }
            }
            if (p.n == 2) {  // boundary circle against one center
                for (double edge : {lo_edge, hi_edge}) {
                    if (edge <= 1e-12) continue;
                    for (auto& cand : sphere_candidates({origin, zi.coords},
                                                        {std::cosh(edge), c_lin}))
                        added += try_fill(cand);
                }
            }
        }
        return added;
    };
    for (int round = 0; round < 60; ++round) {
        std::int64_t added = 0;
        for (std::int64_t i = 0; i < n_round; ++i)
            added += try_fill(check.annulus_point(region, idx_main++));
        if (added == 0) {
            std::int64_t vadd = 1;
            int vrounds = 0;
            while (vadd > 0 && vrounds++ < 40) {
                vadd = vertex_sweep();
                if (std::getenv("HYPWAVE_NET_DEBUG"))
                    std::fprintf(stderr, "  vertex sweep %d: added %lld (centers %zu)\n",
                                 vrounds, (long long)vadd, net.centers.size());
            }
            // final sampled certificate after exact saturation
            std::int64_t post = 0;
            for (std::int64_t i = 0; i < n_round; ++i)
                post += try_fill(check.annulus_point(region, idx_main++));
            if (std::getenv("HYPWAVE_NET_DEBUG"))
                std::fprintf(stderr, "build_net saturation: vrounds=%d post=%lld centers=%zu\n",
                             vrounds, (long long)post, net.centers.size());
            if (post == 0) return net;
        }
        if (std::getenv("HYPWAVE_NET_DEBUG"))
            std::fprintf(stderr, "build_net round %d: added %lld (centers %zu)\n", round,
                         (long long)added, net.centers.size());
    }
    throw std::runtime_error(
        "build_net: covering did not stabilize; increase sample_budget");
}

int covering_multiplicity(const Net& net, const std::vector<ModelPoint>& samples) {
    if (samples.empty())
        throw std::domain_error("covering_multiplicity: empty sample set");
    ShellIndex index(net.mesh, net.centers.empty() ? 2 : net.centers.front().dim());
    for (size_t i = 0; i < net.centers.size(); ++i) index.insert(net.centers[i], i);
    int worst = 0;
    const double cosh_mesh = std::cosh(net.mesh);
    for (const auto& x : samples) {
        int count = 0;
        index.nearby(x, net.mesh * 1.0001, [&](size_t, const ModelPoint& z) {
            if (minkowski_dot(x, z) <= cosh_mesh) ++count;
        });
        worst = std::max(worst, count);
    }
    return worst;
}

double covering_radius(const Net& net, const std::vector<ModelPoint>& samples) {
    ShellIndex index(net.mesh / 3.0, net.centers.empty() ? 2 : net.centers.front().dim());
    for (size_t i = 0; i < net.centers.size(); ++i) index.insert(net.centers[i], i);
    double worst = 0.0;
    for (const auto& x : samples) {
        double near_dot = 1e300;  // nearest center has the smallest <x,z>
        double reach = net.mesh / 3.0;
        for (;;) {  // widen until the window certifies the minimum
            index.nearby(x, reach, [&](size_t, const ModelPoint& z) {
                near_dot = std::min(near_dot, minkowski_dot(x, z));
            });
            if ((near_dot < 1e299 && std::acosh(std::max(1.0, near_dot)) <= reach) ||
                reach > 64.0)
                break;
            reach *= 2.0;
        }
        worst = std::max(worst, std::acosh(std::max(1.0, near_dot)));
    }
    return worst;
}

}  // namespace hypwave
