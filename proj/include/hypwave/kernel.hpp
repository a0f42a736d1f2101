#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hypwave/profile.hpp"
#include "hypwave/quadrature.hpp"
#include "hypwave/specfun.hpp"
#include "hypwave/symbol.hpp"
#include "hypwave/transform.hpp"

namespace hypwave {

enum class ContourMode { automatic, on, off };

struct KernelOptions {
    ContourMode contour = ContourMode::automatic;
    double cone_exclusion = 0.01;    // |s - t| below this is flagged
    double origin_exclusion = 0.01;  // s below this is flagged
};

struct KernelDiagnostics {
    int unreliable_points = 0;
    double max_tail_estimate = 0.0;
    std::string notes;
};

struct WaveKernel {
    double t = 0.0;
    Symbol symbol;
    RadialProfile profile;            // K_t on the plan grid
    RadialProfile derivative_profile; // d/ds K_t
    std::vector<std::uint8_t> reliable;
    KernelDiagnostics diag;
};

struct KernelPlanConfig {
    double lam_band1 = 60.0;   // Filon band with ripple-resolving panels
    double lam_band2 = 150.0;  // coarser extension for slowly decaying symbols
    int panel_order = 12;
    double contour_lam_max = 60.0;
    bool with_contour = true;
};

// Precomputed spherical data on a Filon panel structure over the real lambda
// axis (phi, phi' per node over the s grid) plus amplitude rows on the shifted
// line Im lambda = rho for the contour evaluation.  Immutable; shareable
// across kernels with different t and symbols.
class KernelPlan {
  public:
    KernelPlan(const SpaceParams& p, std::vector<double> s_grid,
               KernelPlanConfig cfg = {});

    const SpaceParams& space() const { return p_; }
    const std::vector<double>& s_grid() const { return s_grid_; }
    const KernelPlanConfig& config() const { return cfg_; }
    double plancherel_constant() const { return c_plancherel_; }

    struct Panel {
        double lo, hi;
        size_t offset;  // first node index
    };

    // real-line data
    std::vector<Panel> panels;
    std::vector<double> nodes;           // lambda values, panels then tail stencil
    size_t tail_offset = 0;              // start of the 9-point tail stencil
    double tail_lambda = 0.0, tail_h = 0.125;
    std::vector<double> phi, dphi;       // [node][s]
    std::vector<double> pl;              // |c|^{-2} per node

    // contour data (mu = lambda + i rho)
    std::vector<Panel> cpanels;
    std::vector<double> cnodes;
    size_t ctail_offset = 0;
    double ctail_lambda = 0.0;
    std::vector<Complex> cy, cdy;        // [node][s - cs0] amplitude rows
    std::vector<Complex> cinvneg;        // 1/c(-mu) per node
    size_t cs0 = 0;                      // first s index with contour data

    GaussLegendre gl;
    std::vector<double> legmat;          // [n][i] -> (2n+1)/2 w_i P_n(x_i)

  private:
    SpaceParams p_;
    std::vector<double> s_grid_;
    KernelPlanConfig cfg_;
    double c_plancherel_;
    void build_real_line();
    void build_contour();
};

// calibrated Plancherel constant, cached per (m1, m2)
double plancherel_constant(const SpaceParams& p);

// K_t on the plan's s grid: direct series quadrature below s = 1/10, the
// Filon rule on the recombined far-field amplitude above, and optionally the
// contour-shifted representation beyond the light cone.
WaveKernel wave_kernel(const KernelPlan& plan, const Symbol& m, double t,
                       const KernelOptions& opt = {});

// single-point evaluations used for cross-checks
struct KernelPoint {
    double K = 0.0, Kprime = 0.0;
    bool reliable = true;
    double tail_estimate = 0.0;
};
KernelPoint wave_kernel_filon(const KernelPlan& plan, const Symbol& m, double t, size_t is);
KernelPoint wave_kernel_contour(const KernelPlan& plan, const Symbol& m, double t, size_t is);
KernelPoint wave_kernel_direct_smalls(const SpaceParams& p, const Symbol& m, double t,
                                      double s, double lam_max, double c_plancherel);

// smooth cutoffs of the kernel split: Psi_t for t >= 1/2, Psi_0 for t < 1/2
double split_cutoff(double s, double t, bool large_t);
double split_cutoff_deriv(double s, double t, bool large_t);

// S_t = Psi K_t, G_t = (1 - Psi) K_t; also their derivatives via the product
// rule with the kernel's derivative profile.
struct SplitKernel {
    RadialProfile S, G;
    RadialProfile S_deriv, G_deriv;
    bool large_t = true;
};
SplitKernel split_kernel(const WaveKernel& k, bool large_t);

// T_t a for a radial atom profile: spectral multiplication by m(lam) cos(t lam)
RadialProfile apply_Tt_to_atom(const TransformPlan& tplan, const Symbol& m, double t,
                               const RadialProfile& atom);

}  // namespace hypwave
