#pragma once

#include <functional>
#include <vector>

#include "hypwave/space.hpp"

namespace hypwave {

// C-infinity step rising 0 -> 1 across [0, 1].
double smooth_step(double x);
double smooth_step_deriv(double x);

// Base bump phi: supported in [1/2, 2], == 1 on [1, 3/2], and
// phi(s) = 1 - phi(s/2) on (1, 2), so dyadic dilates partition unity.
double base_bump(double s);

// Base psi: supported in [1/3, 5/3] (inside [0, 2]), == 1 on [2/3, 4/3],
// psi(s+1) = 1 - psi(s) on (0, 1), so integer translates partition unity.
double base_psi(double s);

enum class CutoffKind { dyadic_phii, inner_etah, outer_omegah, unit_psij, singular_complement };

// which h1-bound route a partition piece feeds in the norm-growth pipeline
enum class PieceRole { ball_center, conv_ball, annulus_cancel };

struct CutoffPiece {
    CutoffKind kind;
    PieceRole role = PieceRole::conv_ball;
    int index = 0;
    double lo = 0.0, hi = 0.0;  // support interval
    double scale = 1.0;         // |d/ds| <= C / scale with C from the base bump
    double ann_R = 0.0, ann_w = 0.0;  // annulus center/half-width for annulus_cancel
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
};

// index bounds of the radial covering families, from the bracketing
// inequalities 2^{I1-1} r <= 1/10 <= 2^{I1+1} r and friends
struct CutoffIndices {
    bool large_t = true;
    int I1 = 0, I2 = -1;  // dyadic range (large t); empty when I2 < I1
    int H1 = 2, H2 = 2;   // eta/omega ranges are 3..H1, 3..H2
    int J = 2;            // first unit-scale translate
    int I = -1, I1s = 0, I2s = -1;  // small-t dyadic ranges 2..I and I1s..I2s
};
CutoffIndices cutoff_indices(double r, double t);

struct CutoffFamily {
    CutoffKind kind;
    double r = 0.0, t = 0.0;
    int i_min = 0, i_max = -1;  // empty when i_max < i_min
    std::vector<CutoffPiece> pieces;
};

// The literal radial families phi_i(|x|/2^i r), eta_h, omega_h, psi_j with
// supports and gradient scales as in the defining formulas.  j-range for
// unit_psij is capped at s_cap + 2.
CutoffFamily cutoff_family(CutoffKind kind, double r, double t, const SpaceParams& p,
                           double s_cap = 40.0);

// Exact partition of unity subordinate to the families: a smooth-step chain
// whose pieces carry the family supports and gradient scales and sum to
// 1 - complement, the complement supported in the singular annulus
// A_{t-10r}^{t+10r} (empty in the small-t wide-atom case).
struct WavePartition {
    std::vector<CutoffPiece> pieces;
    CutoffPiece complement;  // kind singular_complement
    CutoffIndices idx;
    bool has_complement = true;
};
WavePartition wave_partition(const SpaceParams& p, double r, double t, double s_cap);

}  // namespace hypwave
