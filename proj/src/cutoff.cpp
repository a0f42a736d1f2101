#include "hypwave/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypwave {

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double smooth_step_deriv(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    const double da = a / (x * x);
    const double db = -b / ((1.0 - x) * (1.0 - x));
    return (da * b - a * db) / ((a + b) * (a + b));
}

double base_bump(double s) {
    if (s <= 0.75 || s >= 2.0) return 0.0;
    if (s < 1.0) return smooth_step(4.0 * s - 3.0);
    if (s <= 1.5) return 1.0;
    return 1.0 - smooth_step(2.0 * s - 3.0);
}

double base_psi(double s) {
    if (s <= 1.0 / 3.0 || s >= 5.0 / 3.0) return 0.0;
    if (s < 2.0 / 3.0) return smooth_step(3.0 * s - 1.0);
    if (s <= 4.0 / 3.0) return 1.0;
    return 1.0 - smooth_step(3.0 * s - 4.0);
}

namespace {
double base_bump_deriv(double s) {
    if (s <= 0.75 || s >= 2.0) return 0.0;
    if (s < 1.0) return 4.0 * smooth_step_deriv(4.0 * s - 3.0);
    if (s <= 1.5) return 0.0;
    return -2.0 * smooth_step_deriv(2.0 * s - 3.0);
}
double base_psi_deriv(double s) {
    if (s <= 1.0 / 3.0 || s >= 5.0 / 3.0) return 0.0;
    if (s < 2.0 / 3.0) return 3.0 * smooth_step_deriv(3.0 * s - 1.0);
    if (s <= 4.0 / 3.0) return 0.0;
    return -3.0 * smooth_step_deriv(3.0 * s - 4.0);
}
}  // namespace

namespace {

int round_log2(double x) { return (int)std::lround(std::log2(x)); }

// monotone step rising across [a, b]
struct Step {
    double a, b;
    double operator()(double s) const { return smooth_step((s - a) / (b - a)); }
    double d(double s) const { return smooth_step_deriv((s - a) / (b - a)) / (b - a); }
};

CutoffPiece make_piece(CutoffKind kind, PieceRole role, int index, Step lo, Step hi) {
    if (lo.b > hi.a + 1e-12)
        throw std::logic_error("wave_partition: step chain out of order");
    CutoffPiece p;
    p.kind = kind;
    p.role = role;
    p.index = index;
    p.lo = lo.a;
    p.hi = hi.b;
    p.scale = std::min(lo.b - lo.a, hi.b - hi.a);
    p.eval = [lo, hi](double s) { return lo(s) - hi(s); };
    p.deriv = [lo, hi](double s) { return lo.d(s) - hi.d(s); };
    return p;
}

CutoffPiece center_piece(Step edge, double hi, double scale) {
    CutoffPiece p;
    p.kind = CutoffKind::dyadic_phii;
    p.role = PieceRole::ball_center;
    p.index = 0;
    p.lo = 0.0;
    p.hi = hi;
    p.scale = scale;
    p.eval = [edge](double s) { return 1.0 - edge(s); };
    p.deriv = [edge](double s) { return -edge.d(s); };
    return p;
}

Step t_step(double r, int k) {  // rises on [2^k r, 1.5 * 2^k r]
    const double sc = std::ldexp(r, k);
    return Step{sc, 1.5 * sc};
}

}  // namespace

CutoffIndices cutoff_indices(double r, double t) {
    if (r <= 0.0 || r > 1.0) throw std::invalid_argument("cutoff_indices: r in (0,1]");
    if (t <= 0.0) throw std::invalid_argument("cutoff_indices: t > 0");
    CutoffIndices ix;
    ix.large_t = t >= 0.5;
    if (ix.large_t) {
        ix.I1 = round_log2(0.1 / r);  // 2^{I1-1} r <= 1/10 <= 2^{I1+1} r
        ix.I2 = t > 0.2 ? round_log2((t - 0.2) / r) : -1;
        ix.H1 = ix.H2 = (int)std::floor(std::log2(0.2 / r));  // 2^{H} r in (0.1, 0.2]
        ix.J = (int)std::ceil(t + 1.2);  // J - 2 <= t + 2/10 <= J - 1
        if (r > 0.1) ix.I1 = ix.I2 = ix.H1 = ix.H2 = -1;      // families empty in IB
    } else {
        ix.J = 2;
        ix.I = t > 10.0 * r ? round_log2((t - 10.0 * r) / r) : -1;
        ix.I1s = round_log2((t + 10.0 * r) / r);
        ix.I2s = round_log2(1.0 / r);
    }
    return ix;
}

CutoffFamily cutoff_family(CutoffKind kind, double r, double t, const SpaceParams& p,
                           double s_cap) {
    (void)p;
    const CutoffIndices ix = cutoff_indices(r, t);
    CutoffFamily fam;
    fam.kind = kind;
    fam.r = r;
    fam.t = t;
    auto add = [&](int i, double lo, double hi, double scale,
                   std::function<double(double)> f, std::function<double(double)> df) {
        CutoffPiece piece;
        piece.kind = kind;
        piece.index = i;
        piece.lo = lo;
        piece.hi = hi;
        piece.scale = scale;
        piece.eval = std::move(f);
        piece.deriv = std::move(df);
        fam.pieces.push_back(std::move(piece));
    };
    switch (kind) {
        case CutoffKind::dyadic_phii: {
            fam.i_min = ix.large_t ? 1 : 2;
            fam.i_max = ix.large_t ? ix.I2 : ix.I2s;
            for (int i = fam.i_min; i <= fam.i_max; ++i) {
                const double sc = std::ldexp(r, i);
                add(i, 0.5 * sc, 2.0 * sc, sc,
                    [sc](double s) { return base_bump(s / sc); },
                    [sc](double s) { return base_bump_deriv(s / sc) / sc; });
            }
            break;
        }
        case CutoffKind::inner_etah:
        case CutoffKind::outer_omegah: {
            const bool inner = kind == CutoffKind::inner_etah;
            fam.i_min = 3;
            fam.i_max = ix.large_t ? (inner ? ix.H1 : ix.H2) : 2;
            for (int h = fam.i_min; h <= fam.i_max; ++h) {
                const double sc = std::ldexp(r, h);
                if (inner)
                    add(h, t - 2.0 * sc, t - 0.5 * sc, sc,
                        [sc, t](double s) { return base_bump((t - s) / sc); },
                        [sc, t](double s) { return -base_bump_deriv((t - s) / sc) / sc; });
                else
                    add(h, t + 0.5 * sc, t + 2.0 * sc, sc,
                        [sc, t](double s) { return base_bump((s - t) / sc); },
                        [sc, t](double s) { return base_bump_deriv((s - t) / sc) / sc; });
            }
            break;
        }
        case CutoffKind::unit_psij: {
            fam.i_min = ix.J;
            fam.i_max = std::max(fam.i_min - 1, (int)std::ceil(s_cap) + 2);
            for (int j = fam.i_min; j <= fam.i_max; ++j)
                add(j, j - 1.0, j + 1.0, 1.0 / 3.0,
                    [j](double s) { return base_psi(s - j + 1.0); },
                    [j](double s) { return base_psi_deriv(s - j + 1.0); });
            break;
        }
        case CutoffKind::singular_complement: {
            auto part = wave_partition(SpaceParams{}, r, t, s_cap);
            fam.i_min = fam.i_max = 0;
            if (part.has_complement) fam.pieces.push_back(part.complement);
            break;
        }
    }
    return fam;
}

WavePartition wave_partition(const SpaceParams& p, double r, double t, double s_cap) {
    (void)p;
    WavePartition out;
    out.idx = cutoff_indices(r, t);
    auto& pieces = out.pieces;
    const bool large = out.idx.large_t;

    const int Jcap = std::max(out.idx.J, (int)std::ceil(s_cap) + 2);
    Step u_psi{out.idx.J - 2.0 / 3.0, out.idx.J - 1.0 / 3.0};  // rising edge of psi_J

    auto add_psi_tail = [&]() {
        for (int j = out.idx.J; j <= Jcap; ++j) {
            CutoffPiece piece;
            piece.kind = CutoffKind::unit_psij;
            piece.role = PieceRole::conv_ball;
            piece.index = j;
            piece.lo = j - 1.0;
            piece.hi = j + 1.0;
            piece.scale = 1.0 / 3.0;
            piece.eval = [j](double s) { return base_psi(s - j + 1.0); };
            piece.deriv = [j](double s) { return base_psi_deriv(s - j + 1.0); };
            pieces.push_back(std::move(piece));
        }
    };

    auto set_complement = [&](Step w, Step v, double lo, double hi, double scale,
                              double ann_w) {
        out.complement.kind = CutoffKind::singular_complement;
        out.complement.role = PieceRole::annulus_cancel;
        out.complement.lo = lo;
        out.complement.hi = hi;
        out.complement.scale = scale;
        out.complement.ann_R = t;
        out.complement.ann_w = std::min(1.0, ann_w);
        out.complement.eval = [w, v](double s) { return w(s) - v(s); };
        out.complement.deriv = [w, v](double s) { return w.d(s) - v.d(s); };
    };

    if (large && r <= 0.1) {
        // subcase IA: dyadic balls around o, then dyadic-in-distance-to-the-sphere
        // pieces on both sides of |x| = t, then unit shells
        const int H = out.idx.H1;
        const bool with_eta = H >= 3;
        auto w_step = [&](int h) {  // rises on [t - 2^h r, t - 0.75 * 2^h r]
            const double sc = std::ldexp(r, h);
            return Step{t - sc, t - 0.75 * sc};
        };
        auto v_step = [&](int h) {  // rises on [t + 0.75 * 2^h r, t + 2^h r]
            const double sc = std::ldexp(r, h);
            return Step{t + 0.75 * sc, t + sc};
        };
        const Step w_anchor = with_eta ? w_step(3) : Step{t - 0.2, t - 0.15};
        const Step v_anchor = with_eta ? v_step(3) : Step{t + 0.15, t + 0.2};
        const Step w_top = with_eta ? w_step(H + 1) : w_anchor;
        const Step v_top = with_eta ? v_step(H + 1) : v_anchor;

        int K = 0;
        while (1.5 * std::ldexp(r, K + 1) <= w_top.a) ++K;
        pieces.push_back(center_piece(t_step(r, 0), 1.5 * r, 0.5 * r));
        for (int k = 1; k <= K; ++k)
            pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, k,
                                        t_step(r, k - 1), t_step(r, k)));
        pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, K + 1,
                                    t_step(r, K), w_top));
        if (with_eta) {
            for (int h = H; h >= 3; --h) {
                auto piece = make_piece(CutoffKind::inner_etah, PieceRole::annulus_cancel,
                                        h, w_step(h + 1), w_step(h));
                piece.ann_R = t;
                piece.ann_w = std::min(1.0, std::ldexp(r, h + 1));
                pieces.push_back(std::move(piece));
            }
            for (int h = 3; h <= H; ++h) {
                auto piece = make_piece(CutoffKind::outer_omegah, PieceRole::annulus_cancel,
                                        h, v_step(h), v_step(h + 1));
                piece.ann_R = t;
                piece.ann_w = std::min(1.0, std::ldexp(r, h + 1));
                pieces.push_back(std::move(piece));
            }
        }
        pieces.push_back(make_piece(CutoffKind::outer_omegah, PieceRole::conv_ball,
                                    with_eta ? H + 1 : 0, v_top, u_psi));
        add_psi_tail();
        const double reach = with_eta ? 8.0 * r : 0.2;
        set_complement(w_anchor, v_anchor, t - reach, t + reach,
                       with_eta ? 2.0 * r : 0.05, with_eta ? 10.0 * r : 0.2 + r);
        return out;
    }

    if (large) {
        // subcase IB: wide atom; center ball out to the sphere, no dyadic ladder
        Step w{t - 0.1, t - 0.05};
        Step v{t + 0.05, t + 0.1};
        Step x1{2.0, 2.5};
        if (t - 0.1 > 2.55) {
            pieces.push_back(center_piece(x1, 2.5, 0.5));
            pieces.push_back(
                make_piece(CutoffKind::inner_etah, PieceRole::conv_ball, 0, x1, w));
        } else {
            pieces.push_back(center_piece(w, t - 0.05, 0.05));
        }
        pieces.push_back(
            make_piece(CutoffKind::outer_omegah, PieceRole::conv_ball, 0, v, u_psi));
        add_psi_tail();
        set_complement(w, v, t - 0.1, t + 0.1, 0.05, 0.1 + r);
        return out;
    }

    if (r <= t / 20.0) {
        // subcase IIA: dyadic chain below and above the sphere |x| = t
        Step wc{t - 10.0 * r, t - 8.0 * r};
        Step vc{t + 8.0 * r, t + 10.0 * r};
        int K = 0;
        while (1.5 * std::ldexp(r, K + 1) <= wc.a) ++K;
        pieces.push_back(center_piece(t_step(r, 0), 1.5 * r, 0.5 * r));
        for (int k = 1; k <= K; ++k)
            pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, k,
                                        t_step(r, k - 1), t_step(r, k)));
        pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, K + 1,
                                    t_step(r, K), wc));
        int k0 = 0;
        while (std::ldexp(r, k0) < vc.b) ++k0;
        if (1.5 * std::ldexp(r, k0) <= u_psi.a) {
            int Ktop = k0;
            while (1.5 * std::ldexp(r, Ktop + 1) <= u_psi.a) ++Ktop;
            pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, k0,
                                        vc, t_step(r, k0)));
            for (int k = k0 + 1; k <= Ktop; ++k)
                pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball,
                                            k, t_step(r, k - 1), t_step(r, k)));
            pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball,
                                        Ktop + 1, t_step(r, Ktop), u_psi));
        } else {
            pieces.push_back(
                make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball, k0, vc, u_psi));
        }
        add_psi_tail();
        set_complement(wc, vc, t - 10.0 * r, t + 10.0 * r, 2.0 * r, 11.0 * r);
        return out;
    }

    // subcase IIB: t + 10 r < 30 r; one wide center ball, partition of all of X
    {
        if (24.0 * r <= u_psi.a) {
            Step tc{16.0 * r, 24.0 * r};
            pieces.push_back(center_piece(tc, 24.0 * r, 8.0 * r));
            int k1 = 5;
            while (std::ldexp(r, k1) < tc.b) ++k1;
            if (1.5 * std::ldexp(r, k1) <= u_psi.a) {
                int Ktop = k1;
                while (1.5 * std::ldexp(r, Ktop + 1) <= u_psi.a) ++Ktop;
                pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball,
                                            5, tc, t_step(r, k1)));
                for (int k = k1 + 1; k <= Ktop; ++k)
                    pieces.push_back(make_piece(CutoffKind::dyadic_phii,
                                                PieceRole::conv_ball, k, t_step(r, k - 1),
                                                t_step(r, k)));
                pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball,
                                            Ktop + 1, t_step(r, Ktop), u_psi));
            } else {
                pieces.push_back(make_piece(CutoffKind::dyadic_phii, PieceRole::conv_ball,
                                            5, tc, u_psi));
            }
        } else {
            pieces.push_back(center_piece(u_psi, u_psi.b, u_psi.b - u_psi.a));
        }
        add_psi_tail();
        out.has_complement = false;
        out.complement.kind = CutoffKind::singular_complement;
        out.complement.role = PieceRole::annulus_cancel;
        out.complement.eval = [](double) { return 0.0; };
        out.complement.deriv = [](double) { return 0.0; };
        return out;
    }
}

}  // namespace hypwave
