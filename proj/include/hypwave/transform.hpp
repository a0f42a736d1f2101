#pragma once

#include <memory>

#include "hypwave/profile.hpp"
#include "hypwave/space.hpp"
#include "hypwave/specfun.hpp"

namespace hypwave {

// Precomputed phi_lambda(s) table on a Gauss-Legendre panel product grid plus
// the calibrated Plancherel constant.  Panel widths are coupled to the dual
// oscillation (h_s ~ 1/lam_max, h_lam ~ 1/s_max) so that the oscillatory
// factors stay resolved by the 16-point rule.  Immutable and shareable.
class TransformPlan {
  public:
    TransformPlan(const SpaceParams& p, double lam_max, double s_max,
                  double h_lam = 0.0, double h_s = 0.0);

    const SpaceParams& space() const { return p_; }
    const std::vector<double>& lam_grid() const { return lam_grid_; }
    const std::vector<double>& s_grid() const { return s_grid_; }
    const std::vector<double>& lam_weights() const { return lam_w_; }
    const std::vector<double>& s_weights() const { return s_w_; }
    double lam_max() const { return lam_grid_.back(); }
    double s_max() const { return s_grid_.back(); }
    double plancherel_constant() const { return c_plancherel_; }

    double phi(size_t ilam, size_t is) const { return phi_[ilam * s_grid_.size() + is]; }
    double density_at(size_t is) const { return delta_[is]; }
    double plancherel_at(size_t ilam) const { return pl_density_[ilam]; }

    static std::shared_ptr<const TransformPlan> standard(const SpaceParams& p,
                                                         double lam_max = 60.0,
                                                         double s_max = 12.0,
                                                         double h_lam = 0.0,
                                                         double h_s = 0.0);

  private:
    SpaceParams p_;
    std::vector<double> lam_grid_, s_grid_;
    std::vector<double> lam_w_, s_w_;
    std::vector<double> phi_;         // row-major [lam][s]
    std::vector<double> delta_;       // density on s_grid
    std::vector<double> pl_density_;  // |c|^{-2} on lam_grid
    double c_plancherel_ = 0.0;

    void calibrate();
};

// f~(lambda) = int F(s) phi_lambda(s) delta(s) ds on the plan's lambda nodes.
Spectrum forward(const TransformPlan& plan, const RadialProfile& f);

// F(s) = C_P int g~(lambda) phi_lambda(s) |c|^{-2} dlambda on the plan's s nodes.
// *tail_estimate reports the crude truncation bound at lam_max when asked.
RadialProfile inverse(const TransformPlan& plan, const Spectrum& g,
                      double* tail_estimate = nullptr);

// (C_P int |g|^2 |c|^{-2} dlambda)^{1/2}
double plancherel_norm(const TransformPlan& plan, const Spectrum& g);

// L^2(delta ds) norm through the plan's panel weights (exact companion to
// plancherel_norm for profiles sampled on the plan grid)
double l2_norm(const TransformPlan& plan, const RadialProfile& f);

// spectral-product convolution of radial profiles
RadialProfile radial_convolve(const TransformPlan& plan, const RadialProfile& f,
                              const RadialProfile& g);

// U_m f for a bounded even multiplier m(lambda), applied spectrally.
RadialProfile multiplier_apply(const TransformPlan& plan,
                               const std::function<std::complex<double>(double)>& m,
                               const RadialProfile& f);

}  // namespace hypwave
