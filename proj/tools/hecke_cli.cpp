// hecke: command-line front end for evaluations, scans, peak finding and the
// acceptance suite.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hecke/acceptance.hpp"
#include "hecke/eisenstein.hpp"
#include "hecke/epstein.hpp"
#include "hecke/errors.hpp"
#include "hecke/harness.hpp"
#include "hecke/lfunctions.hpp"
#include "json.hpp"

namespace {

using hecke::Complex;
using nlohmann::ordered_json;

void print_json(const ordered_json& j) { std::cout << j.dump() << '\n'; }

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

struct ScanOutput {
    std::string out;
    std::string format = "csv";
    std::string svg;
};

void add_output_flags(CLI::App* cmd, ScanOutput& o) {
    cmd->add_option("--out", o.out, "output path")->required();
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--svg", o.svg, "also write a log-log scatter of ratio against the x field");
}

std::filesystem::path sibling(const std::filesystem::path& p, const std::string& tag) {
    return p.parent_path() / (p.stem().string() + tag + p.extension().string());
}

void emit(const std::vector<hecke::ScanRecord>& records, const ScanOutput& o, const std::filesystem::path& path,
          const std::string& x_field) {
    hecke::write_text_file(path, o.format == "json" ? hecke::records_to_json(records) : hecke::records_to_csv(records));
    if (!o.svg.empty()) {
        const std::filesystem::path svg = path == std::filesystem::path(o.out) ? std::filesystem::path(o.svg)
                                                                               : sibling(o.svg, ".moments");
        hecke::write_text_file(svg, hecke::records_to_svg(records, x_field));
    }
    std::fprintf(stderr, "wrote %zu records to %s\n", records.size(), path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein series, Epstein zeta functions and class group L-functions"};
    app.require_subcommand(1);
    std::string config_path;
    int workers = -1;
    app.add_option("--config", config_path, "key = value file (tol, workers, cache_dir)");
    app.add_option("--workers", workers, "worker threads (0 = all cores)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one value");
    eval->require_subcommand(1);
    double x = 0.0, y = 1.0, t = 0.0, sigma = 0.5, a = 1.0, b = 0.0;
    double tol = -1.0;
    std::string method;
    std::int64_t disc = -23;
    int chi = 0;

    auto* ev_e = eval->add_subcommand("eisenstein", "E(x + iy, sigma + it)");
    ev_e->add_option("--x", x)->required();
    ev_e->add_option("--y", y)->required();
    ev_e->add_option("--t", t)->required();
    ev_e->add_option("--sigma", sigma);
    ev_e->add_option("--tol", tol);

    auto* ev_z = eval->add_subcommand("epstein", "Epstein zeta of ((a, b), (b, 1)) at sigma + it");
    ev_z->add_option("--a", a)->required();
    ev_z->add_option("--b", b)->required();
    ev_z->add_option("--t", t)->required();
    ev_z->add_option("--sigma", sigma);
    ev_z->add_option("--tol", tol);
    ev_z->add_option("--method", method)->required()->check(CLI::IsMember({"direct", "afe"}));

    auto* ev_l = eval->add_subcommand("lk", "class group L-function L_K(sigma + it, chi)");
    ev_l->add_option("--disc", disc)->required();
    ev_l->add_option("--char", chi)->required();
    ev_l->add_option("--sigma", sigma)->required();
    ev_l->add_option("--t", t)->required();
    ev_l->add_option("--tol", tol);
    ev_l->add_option("--method", method)->required()->check(CLI::IsMember({"hecke", "direct"}));

    // scan
    auto* scan = app.add_subcommand("scan", "exponent scans");
    scan->require_subcommand(1);
    ScanOutput out;
    hecke::SupnormOptions sup;
    auto* sc_sup = scan->add_subcommand("supnorm", "sup |E(z, 1/2 + it)| / y^{1/2} over the fundamental domain");
    sc_sup->add_option("--t-min", sup.t_min);
    sc_sup->add_option("--t-max", sup.t_max);
    sc_sup->add_option("--t-steps", sup.t_steps);
    sc_sup->add_option("--y-max", sup.y_max);
    sc_sup->add_option("--grid-density", sup.grid_density);
    add_output_flags(sc_sup, out);

    std::int64_t d_min = -10'000, d_max = -3;
    double delta = 0.5;
    auto* sc_l21 = scan->add_subcommand("lemma21", "sums of Heegner heights or geodesic height integrals");
    sc_l21->add_option("--d-min", d_min);
    sc_l21->add_option("--d-max", d_max);
    sc_l21->add_option("--delta", delta);
    add_output_flags(sc_l21, out);

    std::vector<std::int64_t> d_list{-23, -47};
    std::vector<double> t_list{1.0, 10.0};
    auto* sc_sub = scan->add_subcommand("subconv", "critical-line L-values and second moments");
    sc_sub->add_option("--disc", d_list)->delimiter(',');
    sc_sub->add_option("--t", t_list)->delimiter(',');
    add_output_flags(sc_sub, out);

    std::vector<double> a_list{1.0, 4.0, 16.0}, b_list{0.0, 0.5}, te_list{1e3, 1e4, 1e5};
    auto* sc_exp = scan->add_subcommand("expsum", "exponential sums over dyadic boxes");
    sc_exp->add_option("--a", a_list)->delimiter(',');
    sc_exp->add_option("--b", b_list)->delimiter(',');
    sc_exp->add_option("--t", te_list)->delimiter(',');
    add_output_flags(sc_exp, out);

    // peak
    double peak_t = 50.0, y_min = 10.0;
    auto* peak = app.add_subcommand("peak", "smallest in-phase height above y_min");
    peak->add_option("--t", peak_t)->required();
    peak->add_option("--y-min", y_min)->required();

    // verify
    std::string report;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--report", report)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        hecke::RunConfig config;
        if (!config_path.empty()) {
            config = hecke::load_config(config_path);
        }
        if (workers >= 0) {
            config.workers = workers;
        }
        hecke::apply_config(config);
        const double eval_tol = tol > 0.0 ? tol : config.tol;
        const int nworkers = config.worker_count();
        sup.tol = config.tol;
        sup.workers = nworkers;

        if (ev_e->parsed()) {
            const auto v = hecke::eisenstein({x, y}, Complex(sigma, t), eval_tol);
            print_json({{"value", complex_json(v.value)}, {"tail_bound", v.tail_bound}});
        } else if (ev_z->parsed()) {
            const auto g = hecke::GramMatrix::make(a, b);
            if (method == "direct") {
                print_json({{"value", complex_json(hecke::epstein_direct(g, Complex(sigma, t), eval_tol))}});
            } else {
                if (sigma != 0.5) {
                    throw hecke::RangeError("the approximate functional equation is for sigma = 1/2");
                }
                const auto r = hecke::epstein_afe(g, t, tol > 0.0 ? tol : 1e-8);
                print_json({{"value", complex_json(r.total)},
                            {"plus_sum", complex_json(r.plus_sum)},
                            {"minus_sum", complex_json(r.minus_sum)},
                            {"pole_terms", complex_json(r.pole_terms)},
                            {"plus_points", r.plus_points},
                            {"minus_points", r.minus_points}});
            }
        } else if (ev_l->parsed()) {
            const auto D = hecke::Discriminant::fundamental_only(disc);
            const Complex s(sigma, t);
            const auto v = method == "hecke" ? hecke::lk_hecke(D, chi, s, eval_tol) : hecke::lk_direct(D, chi, s, eval_tol);
            print_json({{"D", disc}, {"char", chi}, {"route", hecke::to_string(v.route)}, {"value", complex_json(v.value)}});
        } else if (sc_sup->parsed()) {
            emit(hecke::scan_supnorm(sup), out, out.out, "t");
        } else if (sc_l21->parsed()) {
            emit(hecke::scan_lemma21(d_min, d_max, delta, nworkers), out, out.out, "D");
        } else if (sc_sub->parsed()) {
            const auto records = hecke::scan_subconvexity(d_list, t_list, config.tol, nworkers);
            std::vector<hecke::ScanRecord> values, moments;
            for (const auto& r : records) {
                (r.kind == hecke::ScanKind::subconvexity ? values : moments).push_back(r);
            }
            emit(values, out, out.out, "t");
            if (!moments.empty()) {
                emit(moments, out, sibling(out.out, ".moments"), "t");
            }
        } else if (sc_exp->parsed()) {
            emit(hecke::scan_expsum(a_list, b_list, te_list, nworkers), out, out.out, "t");
        } else if (peak->parsed()) {
            const auto p = hecke::find_peak_height(peak_t, y_min);
            print_json({{"t", peak_t},
                        {"y", p.y},
                        {"E_ratio", p.E_ratio},
                        {"phase_residual", p.phase_residual},
                        {"main_term_residual", p.main_term_residual}});
        } else if (verify->parsed()) {
            const int status = hecke::verify_all(report, nworkers, [](const hecke::CriterionResult& r) {
                std::printf("%s\n", hecke::format_result(r).c_str());
                std::fflush(stdout);
            });
            std::printf("report written to %s\n", report.c_str());
            return status;
        }
    } catch (const hecke::Error& e) {
        std::fprintf(stderr, "hecke: %s\n", e.what());
        return 2;
    }
    return 0;
}
