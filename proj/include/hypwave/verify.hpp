#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypwave/kernel.hpp"
#include "hypwave/profile.hpp"
#include "hypwave/space.hpp"
#include "hypwave/symbol.hpp"

namespace hypwave {

enum class Regime { large_t, small_t };
enum class Target { K, Kprime, Gt, St_deriv };

struct EnvelopeRegion {
    std::string name;
    std::function<bool(double s, double t)> contains;
    std::function<double(double s, double t)> envelope;
};

struct EnvelopeSpec {
    Regime regime;
    Target target;
    std::vector<EnvelopeRegion> regions;
};

// kernel-estimate envelopes for a symbol of order -d-eps
EnvelopeSpec kernel_envelope_spec(const SpaceParams& p, double eps, Regime regime,
                                  Target target);
// good-part envelopes for order exactly -d
EnvelopeSpec gt_envelope_spec(const SpaceParams& p, Regime regime);

struct RegionReport {
    std::string name;
    int points = 0;
    int excluded = 0;
    double c_star = 0.0;
    double c_star_coarse = 0.0;
    double stability = 0.0;  // c_star / c_star_coarse (coarse is a subgrid)
    bool pass = false;
};

struct BoundReport {
    std::string check;
    std::string space;
    std::string symbol;
    double t = 0.0;
    std::vector<RegionReport> regions;
    bool pass = true;
    bool inconclusive = false;
    std::uint64_t seed = 0;
    std::string grid_note;
};

struct VerifyGrid {
    double base_step = 0.02;  // fine grid step above s = 1/10
    double cone_gap = 0.05;   // fitted points keep |s - t| >= this
    double s_min = 0.012;
    double s_pad = 2.5;       // grid reaches t + s_pad (large t) or max(1.5, ...)
    int smalls_points = 18;   // log-spaced points below 1/10
};

BoundReport check_kernel_bounds(const SpaceParams& p, const Symbol& m, double t,
                                Regime regime, Target target,
                                const VerifyGrid& grid = {});

// Eq.-style good-part bounds and the near-sphere derivative bound; includes
// the small-t low-frequency piece check when regime is small_t.
BoundReport check_Gt_envelope(const SpaceParams& p, const Symbol& m, double t,
                              const VerifyGrid& grid = {});

// Harish-Chandra function and spherical-function bound scans.
BoundReport check_lemma51(const SpaceParams& p, double lam_max = 50.0, double s_max = 10.0,
                          int n_lam = 41, int n_s = 41);

struct GrowthReport {
    std::string space, symbol;
    std::vector<double> t_list;
    std::vector<std::vector<double>> l1_norms;      // [atom][t]
    std::vector<std::vector<double>> h1_uppers;     // [atom][t], empty if not run
    std::vector<double> l1_slopes;                  // log-norm vs t per atom
    std::vector<double> h1_slopes;
    double max_ratio = 0.0, min_ratio = 0.0;        // ||T_t a||_1 / e^{rho t}
    double c34 = 0.0, c35 = 0.0;                    // fitted lemma constants used
    bool pass = true;
    std::string note;
};

GrowthReport norm_growth_experiment(const SpaceParams& p, const Symbol& m,
                                    const std::vector<double>& atom_radii,
                                    const std::vector<double>& t_list, bool with_h1,
                                    std::uint64_t seed);

struct LqReport {
    std::string space, symbol;
    double q = 0.0, s_dual = 0.0;
    double max_ratio = 0.0;        // ||U_m f||_q / ||f||_2
    double max_ratio_fine = 0.0;
    double max_dual_ratio = 0.0;   // ||U_m f||_2 / ||f||_s
    double stability = 0.0;
    bool pass = false;
};

LqReport check_multiplier_Lq(const SpaceParams& p, const Symbol& m, int n_profiles = 10);

// least-squares slope of log(y) against x
double log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hypwave
