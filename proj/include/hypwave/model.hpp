#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hypwave/space.hpp"

namespace hypwave {

// Point on the hyperboloid {<x,x> = 1, x0 >= 1} in Minkowski space R^{1,n};
// only for the real hyperbolic spaces (m2 = 0), n in {2, 3}.
struct ModelPoint {
    std::vector<double> coords;  // size n + 1

    int dim() const { return (int)coords.size() - 1; }
    static ModelPoint origin(int n);
};

double minkowski_dot(const ModelPoint& x, const ModelPoint& y);
double model_distance(const ModelPoint& x, const ModelPoint& y);

// point at geodesic distance s from the origin in direction dir (unit vector
// in R^n)
ModelPoint model_point(double s, const std::vector<double>& dir);

// Lorentz boost taking the origin to z (hyperbolic translation)
struct Boost {
    std::vector<double> mat;  // (n+1) x (n+1), row major
    int n = 0;
    explicit Boost(const ModelPoint& z);
    ModelPoint apply(const ModelPoint& x) const;
};

// deterministic low-discrepancy radial/angular sampler (Halton with a seeded
// digital shift)
class QmcSampler {
  public:
    QmcSampler(const SpaceParams& p, std::uint64_t seed);
    // mu-uniform point in the ball B(center, radius)
    ModelPoint ball_point(const ModelPoint& center, double radius, std::uint64_t i) const;
    // mu-uniform point in the radial annulus around the origin
    ModelPoint annulus_point(const Annulus& region, std::uint64_t i) const;
    // prebuild the shared unit-stream cache (call before concurrent use)
    void warmup(std::uint64_t n) const;

  private:
    SpaceParams p_;
    std::uint64_t shift_[4];
    mutable std::vector<double> u_cache_;
    mutable std::vector<std::vector<double>> dir_cache_;
    void ensure_cache(std::uint64_t i) const;
    double radial_cdf_inv(double u, double lo, double hi) const;
    std::vector<double> direction(std::uint64_t i, int offset) const;
};

// Maximal r/3-separated net covering a radial region, built greedily over a
// quasi-random sample.
struct Net {
    std::vector<ModelPoint> centers;
    double mesh = 0.0;  // r: separation > r/3, covering radius <= r/3
    std::uint64_t seed = 0;
};

// Greedy packing; certifies the covering radius on a fresh sample and throws
// if the budget cannot establish it.
Net build_net(const SpaceParams& p, const Annulus& region, double r,
              std::int64_t sample_budget, std::uint64_t seed);

// radial-shell + angular-bucket candidate index for near-neighbor scans
class NeighborIndex {
  public:
    NeighborIndex(double cell, int dim);
    ~NeighborIndex();
    NeighborIndex(NeighborIndex&&) noexcept;
    void insert(const ModelPoint& z, size_t id);
    // visits every (id, point) that could lie within dist of x (superset)
    void nearby(const ModelPoint& x, double dist,
                const std::function<void(size_t, const ModelPoint&)>& f) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// max over samples of #{net balls B(z, r) containing the sample}
int covering_multiplicity(const Net& net, const std::vector<ModelPoint>& samples);

// nearest-center distances (covering radii) for diagnostics
double covering_radius(const Net& net, const std::vector<ModelPoint>& samples);

}  // namespace hypwave
