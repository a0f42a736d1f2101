#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypwave/atoms.hpp"
#include "hypwave/io.hpp"
#include "hypwave/kernel.hpp"
#include "hypwave/model.hpp"
#include "hypwave/symbol.hpp"
#include "hypwave/transform.hpp"
#include "hypwave/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

struct CommonOpts {
    std::string space = "m1=2,m2=0";
    std::string config_path;
    std::uint64_t seed = 12345;
};

hypwave::SpaceParams resolve_space(const CommonOpts& c) {
    if (!c.config_path.empty()) return hypwave::read_space_json(c.config_path);
    return hypwave::parse_space(c.space);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hypwave;
    CLI::App app{"spherical analysis and wave kernels on rank-one noncompact symmetric spaces"};
    app.require_subcommand(1);
    CommonOpts common;
    app.add_option("--space", common.space, "space parameters, e.g. m1=2,m2=0");
    app.add_option("--config", common.config_path, "JSON config {\"m1\":..,\"m2\":..}");
    app.add_option("--seed", common.seed, "seed for quasi-Monte Carlo paths");

    // spherical: tabulate phi_lambda / c / densities
    auto* sph = app.add_subcommand("spherical", "tabulate spherical functions");
    double sph_lam_max = 10.0, sph_s_max = 5.0;
    int sph_lam_n = 11, sph_s_n = 51;
    std::string sph_out = "spherical.csv";
    sph->add_option("--lam-max", sph_lam_max);
    sph->add_option("--lam-points", sph_lam_n);
    sph->add_option("--s-max", sph_s_max);
    sph->add_option("--s-points", sph_s_n);
    sph->add_option("--out", sph_out);

    // transform
    auto* tr = app.add_subcommand("transform", "spherical Fourier transform of a profile");
    std::string tr_dir = "fwd", tr_in, tr_out = "out.csv";
    double tr_lam_max = 60.0, tr_s_max = 12.0;
    tr->add_option("--direction", tr_dir, "fwd or inv")->check(CLI::IsMember({"fwd", "inv"}));
    tr->add_option("--in", tr_in)->required();
    tr->add_option("--out", tr_out);
    tr->add_option("--lam-max", tr_lam_max);
    tr->add_option("--s-max", tr_s_max);

    // kernel
    auto* ker = app.add_subcommand("kernel", "wave propagator kernel K_t");
    std::string ker_symbol = "gaussian", ker_contour = "auto", ker_out = "kernel.csv";
    double ker_t = 1.0, ker_smin = 0.05, ker_smax = 6.0, ker_cone = 0.01;
    int ker_pts = 300;
    ker->add_option("--symbol", ker_symbol, "gaussian | rational:<b>[:c]");
    ker->add_option("--t", ker_t)->required();
    ker->add_option("--s-min", ker_smin);
    ker->add_option("--s-max", ker_smax);
    ker->add_option("--s-points", ker_pts);
    ker->add_option("--contour", ker_contour)->check(CLI::IsMember({"auto", "on", "off"}));
    ker->add_option("--cone-exclusion", ker_cone);
    ker->add_option("--out", ker_out);

    // atoms
    auto* at = app.add_subcommand("atoms", "atomic decomposition of a radial profile");
    std::string at_shape, at_in, at_out = "decomposition.json";
    at->add_option("--shape", at_shape, "ball:<R> or annulus:<R>:<r>")->required();
    at->add_option("--input", at_in, "CSV radial profile")->required();
    at->add_option("--out", at_out);

    // verify
    auto* ver = app.add_subcommand("verify", "numerical verification checks");
    std::string ver_check, ver_symbol = "", ver_out = "report.json";
    double ver_t = 2.0, ver_step = 0.02, ver_cone = 0.05;
    std::vector<double> ver_tlist;
    ver->add_option("--check", ver_check, "kernel | gt | lemma51 | growth | lq")->required();
    ver->add_option("--symbol", ver_symbol);
    ver->add_option("--t", ver_t);
    ver->add_option("--t-list", ver_tlist);
    ver->add_option("--grid-step", ver_step);
    ver->add_option("--cone-gap", ver_cone);
    ver->add_option("--out", ver_out);

    // net export
    auto* nt = app.add_subcommand("net", "build and export an r/3 net");
    double nt_R = 1.0, nt_w = 1.0, nt_r = 0.5;
    std::int64_t nt_budget = 200000;
    std::string nt_out = "net.csv";
    nt->add_option("--R", nt_R, "region center radius");
    nt->add_option("--half-width", nt_w);
    nt->add_option("--r", nt_r, "mesh parameter");
    nt->add_option("--budget", nt_budget);
    nt->add_option("--out", nt_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const SpaceParams p = resolve_space(common);

        if (sph->parsed()) {
            write_spherical_csv(sph_out, p, uniform_grid(0.1, sph_lam_max, sph_lam_n),
                                uniform_grid(0.0, sph_s_max, sph_s_n));
            std::printf("wrote %s\n", sph_out.c_str());
            return kExitPass;
        }

        if (tr->parsed()) {
            auto plan = TransformPlan::standard(p, tr_lam_max, tr_s_max);
            if (tr_dir == "fwd") {
                RadialProfile f = read_profile_csv(tr_in);
                write_spectrum_csv(tr_out, forward(*plan, f));
            } else {
                Spectrum g0 = read_spectrum_csv(tr_in);
                Spectrum g;  // resample onto the plan's lambda nodes
                g.lam = plan->lam_grid();
                g.values.resize(g.lam.size());
                for (size_t i = 0; i < g.lam.size(); ++i) g.values[i] = g0(g.lam[i]);
                double tail = 0.0;
                RadialProfile f = inverse(*plan, g, &tail);
                if (tail > 1e-6)
                    std::fprintf(stderr, "warning: spectral truncation tail ~ %.2e\n", tail);
                write_profile_csv(tr_out, f);
            }
            std::printf("wrote %s\n", tr_out.c_str());
            return kExitPass;
        }

        if (ker->parsed()) {
            Symbol m = parse_symbol(ker_symbol, p);
            KernelPlanConfig cfg;
            if (m.family == SymbolFamily::gaussian) {
                cfg.lam_band1 = 14.0;
                cfg.lam_band2 = 14.0;
            }
            std::vector<double> sg;
            for (int i = 0; i < ker_pts; ++i)
                sg.push_back(ker_smin + (ker_smax - ker_smin) * i / (ker_pts - 1));
            KernelPlan plan(p, sg, cfg);
            KernelOptions opt;
            opt.cone_exclusion = ker_cone;
            opt.contour = ker_contour == "on"    ? ContourMode::on
                          : ker_contour == "off" ? ContourMode::off
                                                 : ContourMode::automatic;
            WaveKernel k = wave_kernel(plan, m, ker_t, opt);
            write_kernel_csv(ker_out, k);
            std::printf("wrote %s (unreliable points: %d)\n", ker_out.c_str(),
                        k.diag.unreliable_points);
            return kExitPass;
        }

        if (at->parsed()) {
            RadialProfile f = read_profile_csv(at_in);
            H1Bracket br = h1_bracket(p, f, common.seed);
            write_text(at_out, decomposition_json(br.decomposition));
            std::printf("lower (L1) = %.6e  upper (total) = %.6e  wrote %s\n", br.lower,
                        br.upper, at_out.c_str());
            return kExitPass;
        }

        if (nt->parsed()) {
            Net n = build_net(p, Annulus(nt_R, nt_w), nt_r, nt_budget, common.seed);
            write_net_csv(nt_out, n);
            std::printf("wrote %s (%zu centers)\n", nt_out.c_str(), n.centers.size());
            return kExitPass;
        }

        if (ver->parsed()) {
            VerifyGrid grid;
            grid.base_step = ver_step;
            grid.cone_gap = ver_cone;
            bool pass = false, inconclusive = false;
            std::string json_text;
            if (ver_check == "lemma51") {
                auto rep = check_lemma51(p);
                rep.seed = common.seed;
                pass = rep.pass;
                inconclusive = rep.inconclusive;
                json_text = bound_report_json(rep);
            } else if (ver_check == "kernel") {
                Symbol m = parse_symbol(
                    ver_symbol.empty() ? "rational:" + std::to_string(-p.d - 0.5) : ver_symbol,
                    p);
                const Regime regime = ver_t >= 0.5 ? Regime::large_t : Regime::small_t;
                auto repK = check_kernel_bounds(p, m, ver_t, regime, Target::K, grid);
                auto repK1 = check_kernel_bounds(p, m, ver_t, regime, Target::Kprime, grid);
                pass = repK.pass && repK1.pass;
                inconclusive = repK.inconclusive || repK1.inconclusive;
                json_text = "[" + bound_report_json(repK) + ",\n" + bound_report_json(repK1) + "]";
            } else if (ver_check == "gt") {
                Symbol m = parse_symbol(
                    ver_symbol.empty() ? "rational:" + std::to_string(-p.d) : ver_symbol, p);
                auto rep = check_Gt_envelope(p, m, ver_t, grid);
                pass = rep.pass;
                inconclusive = rep.inconclusive;
                json_text = bound_report_json(rep);
            } else if (ver_check == "growth") {
                Symbol m = parse_symbol(ver_symbol.empty() ? "gaussian" : ver_symbol, p);
                std::vector<double> ts = ver_tlist;
                if (ts.empty()) ts = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
                const bool with_h1 = m.order < -p.d;
                auto rep = norm_growth_experiment(p, m, {0.1, 0.25}, ts, with_h1, common.seed);
                pass = rep.pass;
                json_text = growth_report_json(rep);
            } else if (ver_check == "lq") {
                Symbol m = parse_symbol(
                    ver_symbol.empty() ? "rational:" + std::to_string(-p.d) : ver_symbol, p);
                auto rep = check_multiplier_Lq(p, m);
                pass = rep.pass;
                json_text = lq_report_json(rep);
            } else {
                std::cerr << "unknown check: " << ver_check << "\n";
                return kExitUsage;
            }
            write_text(ver_out, json_text);
            std::printf("%s: %s (report: %s)\n", ver_check.c_str(),
                        inconclusive ? "INCONCLUSIVE" : (pass ? "PASS" : "FAIL"),
                        ver_out.c_str());
            return inconclusive ? kExitInconclusive : (pass ? kExitPass : kExitFail);
        }
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("cannot open for reading") != std::string::npos) return kExitNoInput;
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
