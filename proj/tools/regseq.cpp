// regseq: analysis of q-regular sequences given by linear representations or
// subsequential transducers: exact evaluation and summation, spectral and
// joint-spectral-radius reports, Dirichlet-series continuation, Fourier
// coefficients of the periodic fluctuations, and asymptotic skeletons.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "regseq/asymptotics.hpp"
#include "regseq/dirichlet.hpp"
#include "regseq/examples.hpp"
#include "regseq/fourier.hpp"
#include "regseq/jsonio.hpp"
#include "regseq/linrep.hpp"
#include "regseq/pascal.hpp"
#include "regseq/pascal_system.hpp"
#include "regseq/spectral.hpp"
#include "regseq/transducer.hpp"

using json = nlohmann::json;
using namespace regseq;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

LinearRepresentation resolve_rep(const std::string& file, const std::string& example) {
    if (!example.empty()) return examples::by_name(example);
    if (!file.empty()) return io::load_representation(file);
    throw std::invalid_argument("provide --rep FILE or --example NAME");
}

struct Pipeline {
    LinearRepresentation rep;
    spectral::SpectralReport spec;
    spectral::JsrEstimate jsr;
    double log_q_R_upper = 0.0;
};

Pipeline analyze(const LinearRepresentation& rep, int jsr_len = 8) {
    Pipeline p{rep, {}, {}, 0.0};
    std::vector<CMat> mats;
    CMat C = CMat::Zero(rep.d, rep.d);
    for (const auto& m : rep.matrices) {
        mats.push_back(to_complex(m));
        C += mats.back();
    }
    p.spec = spectral::spectrum(C);
    p.jsr = spectral::jsr_bounds(mats, jsr_len);
    spectral::choose_R(p.jsr, p.spec);
    p.log_q_R_upper = std::log(p.jsr.upper) / std::log(double(rep.q));
    return p;
}

json spectrum_json(const spectral::SpectralReport& spec) {
    json evs = json::array();
    for (const auto& ev : spec.eigenvalues)
        evs.push_back(json{{"lambda", complex_json(ev.lambda)},
                           {"multiplicity", ev.multiplicity},
                           {"m", ev.jordan_max}});
    return json{{"eigenvalues", evs},
                {"trace_error", spec.trace_error},
                {"det_error", spec.det_error},
                {"tol", spec.tol}};
}

json jsr_json(const spectral::JsrEstimate& jsr) {
    return json{{"lower", jsr.lower},
                {"upper", jsr.upper},
                {"rho_ell", jsr.rho_ell},
                {"finiteness_detected", jsr.finiteness_detected},
                {"budget_exhausted", jsr.budget_exhausted},
                {"R", jsr.R},
                {"R_is_exact", jsr.R_is_exact}};
}

std::vector<std::uint64_t> parse_samples(const std::string& text, int q) {
    // "J1..J2:STEPS" -> floor(q^{j+u}) for j in [J1,J2], u on a 1/STEPS grid
    auto dots = text.find("..");
    auto colon = text.find(':');
    if (dots == std::string::npos || colon == std::string::npos || colon < dots)
        throw std::invalid_argument("samples spec must look like J1..J2:STEPS");
    int j1 = std::stoi(text.substr(0, dots));
    int j2 = std::stoi(text.substr(dots + 2, colon - dots - 2));
    int steps = std::stoi(text.substr(colon + 1));
    std::vector<std::uint64_t> out;
    for (int j = j1; j <= j2; ++j)
        for (int m = 0; m < steps; ++m) {
            double e = double(j) + double(m) / steps;
            out.push_back(std::uint64_t(std::pow(double(q), e)));
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of q-regular sequences and their summatory asymptotics"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "emit errors as machine-readable JSON");

    std::string rep_file, example_name, trans_file;
    std::uint64_t arg_n = 0, arg_upper = 0;

    auto add_rep_opts = [&](CLI::App* cmd) {
        cmd->add_option("--rep", rep_file, "representation JSON file");
        cmd->add_option("--example", example_name, "built-in example name");
    };

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate x(n) exactly");
    add_rep_opts(cmd_eval);
    cmd_eval->add_option("--n", arg_n, "index n")->required();

    // sum
    bool naive = false, matrix_mode = false;
    auto* cmd_sum = app.add_subcommand("sum", "summatory function over 0 <= n < N");
    add_rep_opts(cmd_sum);
    cmd_sum->add_option("--upper", arg_upper, "exclusive upper limit N")->required();
    cmd_sum->add_flag("--naive", naive, "term-by-term summation (oracle)");
    cmd_sum->add_flag("--matrix", matrix_mode, "matrix-mode summatory F(N)");

    // spectrum
    double tol = 1e-8;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalue/Jordan report of C");
    add_rep_opts(cmd_spectrum);
    cmd_spectrum->add_option("--tol", tol, "clustering tolerance");

    // jsr
    int max_len = 8;
    std::uint64_t budget = 1'000'000;
    auto* cmd_jsr = app.add_subcommand("jsr", "joint-spectral-radius bounds");
    add_rep_opts(cmd_jsr);
    cmd_jsr->add_option("--max-len", max_len, "maximal product length");
    cmd_jsr->add_option("--budget", budget, "product-count budget");

    // dirichlet
    std::string s_text;
    int n0 = 32;
    double precision = 1e-10;
    auto* cmd_dirichlet = app.add_subcommand("dirichlet", "evaluate the Dirichlet series");
    add_rep_opts(cmd_dirichlet);
    cmd_dirichlet->add_option("--s", s_text, "evaluation point RE,IM")->required();
    cmd_dirichlet->add_option("--n0", n0, "truncation start");
    cmd_dirichlet->add_option("--precision", precision, "absolute error target");

    // fourier
    int eigen_index = 0, kpow = 0;
    std::string l_range = "0..0";
    std::string format = "csv";
    auto* cmd_fourier = app.add_subcommand("fourier", "fluctuation Fourier coefficients");
    add_rep_opts(cmd_fourier);
    cmd_fourier->add_option("--eigenvalue-index", eigen_index, "index into the spectrum report");
    cmd_fourier->add_option("--k", kpow, "log-power index");
    cmd_fourier->add_option("--l-range", l_range, "frequency range, e.g. -10..10");
    cmd_fourier->add_option("--precision", precision, "absolute error target");
    cmd_fourier->add_option("--format", format, "csv or json");

    // fluctuation
    std::string samples_spec = "16..20:10";
    int recon_L = 99;
    auto* cmd_fluct = app.add_subcommand("fluctuation", "empirical vs reconstructed fluctuation");
    add_rep_opts(cmd_fluct);
    cmd_fluct->add_option("--samples", samples_spec, "sample spec J1..J2:STEPS");
    cmd_fluct->add_option("--degree", recon_L, "reconstruction degree");
    cmd_fluct->add_option("--precision", precision, "coefficient error target");

    // asymptotics
    std::string check_range;
    auto* cmd_asym = app.add_subcommand("asymptotics", "expansion skeleton");
    add_rep_opts(cmd_asym);
    cmd_asym->add_option("--check", check_range, "residual grid, e.g. 10..20:4");

    // transducer
    auto* cmd_trans = app.add_subcommand("transducer", "transducer frontend");
    cmd_trans->require_subcommand(1);
    auto* cmd_trun = cmd_trans->add_subcommand("run", "run T on n");
    cmd_trun->add_option("--file", trans_file, "transducer JSON file")->required();
    cmd_trun->add_option("--n", arg_n, "input")->required();
    auto* cmd_tembed = cmd_trans->add_subcommand("embed", "emit the linear representation");
    cmd_tembed->add_option("--file", trans_file, "transducer JSON file")->required();
    auto* cmd_tgraph = cmd_trans->add_subcommand("graph", "component/period analysis");
    cmd_tgraph->add_option("--file", trans_file, "transducer JSON file")->required();
    std::uint64_t seed = 1;
    int rq = 2, rstates = 5;
    auto* cmd_trand = cmd_trans->add_subcommand("random", "emit a pseudorandom transducer");
    cmd_trand->add_option("--seed", seed, "generator seed");
    cmd_trand->add_option("--q", rq, "radix");
    cmd_trand->add_option("--states", rstates, "maximal state count");

    // example
    auto* cmd_example = app.add_subcommand("example", "built-in example pipelines");
    cmd_example->require_subcommand(1);
    int table_L = -1;
    std::string fluct_csv;
    auto* cmd_pascal = cmd_example->add_subcommand("pascal", "Pascal's rhombus package");
    cmd_pascal->add_option("--table", table_L, "print Fourier coefficients for 0 <= l <= L");
    cmd_pascal->add_option("--precision", precision, "error target");
    cmd_pascal->add_option("--fluctuation-csv", fluct_csv, "write fluctuation samples CSV");

    try {
        app.parse(argc, argv);

        if (cmd_eval->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            std::cout << to_string(evaluate(rep, arg_n)) << "\n";
        } else if (cmd_sum->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            if (matrix_mode) {
                QMat F = naive ? summatory_matrix_naive(rep, arg_upper)
                               : summatory_matrix_fast(rep, arg_upper);
                json rows = json::array();
                for (int i = 0; i < rep.d; ++i) {
                    json row = json::array();
                    for (int j = 0; j < rep.d; ++j) row.push_back(to_string(F(i, j)));
                    rows.push_back(row);
                }
                std::cout << rows.dump() << "\n";
            } else {
                QVec V = naive ? summatory_naive(rep, arg_upper) : summatory_fast(rep, arg_upper);
                std::cout << to_string(dot(rep.e, V)) << "\n";
            }
        } else if (cmd_spectrum->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            CMat C = CMat::Zero(rep.d, rep.d);
            for (const auto& m : rep.matrices) C += to_complex(m);
            std::cout << spectrum_json(spectral::spectrum(C, tol)).dump(2) << "\n";
        } else if (cmd_jsr->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            auto p = analyze(rep, max_len);
            std::cout << jsr_json(p.jsr).dump(2) << "\n";
        } else if (cmd_dirichlet->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            auto p = analyze(rep);
            auto comma = s_text.find(',');
            cplx s(std::stod(s_text.substr(0, comma)),
                   comma == std::string::npos ? 0.0 : std::stod(s_text.substr(comma + 1)));
            dirichlet::EvaluatorConfig cfg;
            cfg.n0 = n0;
            cfg.target_abs_error = precision;
            dirichlet::DirichletEvaluator ev(rep, p.log_q_R_upper, cfg);
            auto val = ev.evaluate(s);
            json comps = json::array();
            for (int i = 0; i < rep.d; ++i) comps.push_back(complex_json(val.value(i)));
            std::cout << json{{"s", complex_json(s)},
                              {"value", comps},
                              {"abs_error_bound", val.abs_error_bound},
                              {"recursion_depth", val.depth}}
                             .dump(2)
                      << "\n";
        } else if (cmd_fourier->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            auto p = analyze(rep);
            if (eigen_index < 0 || eigen_index >= int(p.spec.eigenvalues.size()))
                throw std::invalid_argument("eigenvalue index out of range");
            cplx lambda = p.spec.eigenvalues[eigen_index].lambda;
            auto dots = l_range.find("..");
            long l1 = std::stol(l_range.substr(0, dots));
            long l2 = std::stol(l_range.substr(dots + 2));
            dirichlet::EvaluatorConfig cfg;
            cfg.target_abs_error = precision * 1e-2;
            dirichlet::DirichletEvaluator ev(rep, p.log_q_R_upper, cfg);
            fourier::CoefficientConfig fc;
            fc.target = precision;
            auto table =
                fourier::fourier_table(ev, rep, p.spec, p.jsr.upper, lambda, kpow, l1, l2, fc);
            if (format == "json") {
                json out = json::array();
                for (const auto& e : table.entries)
                    out.push_back(json{{"l", e.l},
                                       {"phi", complex_json(e.phi)},
                                       {"error", e.error}});
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "l,re,im,err\n";
                for (const auto& e : table.entries)
                    std::cout << e.l << "," << fmt(e.phi.real()) << "," << fmt(e.phi.imag())
                              << "," << fmt(e.error) << "\n";
            }
        } else if (cmd_fluct->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            auto p = analyze(rep);
            cplx lambda = p.spec.eigenvalues.front().lambda;
            int m = p.spec.eigenvalues.front().jordan_max;
            dirichlet::EvaluatorConfig cfg;
            cfg.target_abs_error = precision * 1e-2;
            dirichlet::DirichletEvaluator ev(rep, p.log_q_R_upper, cfg);
            fourier::CoefficientConfig fc;
            fc.target = precision;
            auto table = fourier::fourier_table(ev, rep, p.spec, p.jsr.upper, lambda, m - 1, 0,
                                                recon_L, fc);
            auto Ns = parse_samples(samples_spec, rep.q);
            auto samples = fourier::empirical_fluctuation(rep, lambda, m - 1, Ns, {});
            std::cout << "u,empirical,reconstructed\n";
            for (const auto& smp : samples) {
                cplx rec = table.reconstruct(lambda, m - 1, recon_L, smp.u);
                std::cout << fmt(smp.u) << "," << fmt(smp.value) << "," << fmt(rec.real())
                          << "\n";
            }
        } else if (cmd_asym->parsed()) {
            auto rep = resolve_rep(rep_file, example_name);
            auto p = analyze(rep);
            auto skel = asymptotics::skeleton(rep, p.spec, p.jsr);
            json terms = json::array();
            for (const auto& t : skel.terms)
                terms.push_back(json{{"lambda", complex_json(t.lambda)},
                                     {"exponent", complex_json(t.exponent)},
                                     {"log_powers", t.max_log_power},
                                     {"holder_bound", t.holder_bound}});
            json out{{"terms", terms},
                     {"error_exponent", skel.error_exponent},
                     {"error_log_power", skel.error_log_power},
                     {"has_error_term", skel.has_error_term},
                     {"sequence_mode", skel.sequence_mode},
                     {"K_v0_norm", skel.K_v0_norm},
                     {"theta_v0_norm", skel.theta_v0_norm},
                     {"warnings", skel.warnings}};
            std::cout << out.dump(2) << "\n";
        } else if (cmd_trun->parsed()) {
            auto t = io::load_transducer(trans_file);
            std::cout << to_string(transducer::run(t, arg_n)) << "\n";
        } else if (cmd_tembed->parsed()) {
            auto t = io::load_transducer(trans_file);
            std::cout << io::emit_representation(transducer::to_linear_representation(t)).dump(2)
                      << "\n";
        } else if (cmd_tgraph->parsed()) {
            auto t = io::load_transducer(trans_file);
            auto g = transducer::graph_analysis(t);
            auto check = transducer::adjacency_spectrum_check(t, g);
            json comps = json::array();
            for (const auto& c : g.components)
                comps.push_back(json{{"members", c.members},
                                     {"final", c.is_final},
                                     {"period", c.period}});
            std::cout << json{{"components", comps},
                              {"final_period", g.final_period},
                              {"spectrum_check_ok", check.ok},
                              {"violations", check.violations}}
                             .dump(2)
                      << "\n";
        } else if (cmd_trand->parsed()) {
            auto t = transducer::random_transducer(seed, rq, rstates);
            std::cout << io::emit_transducer(t).dump(2) << "\n";
        } else if (cmd_pascal->parsed()) {
            if (table_L >= 0) {
                auto table = pascal_system::fourier_table(table_L, precision);
                std::cout << "l,re,im,err\n";
                for (const auto& e : table.entries)
                    std::cout << e.l << "," << fmt(e.phi.real()) << "," << fmt(e.phi.imag())
                              << "," << fmt(e.error) << "\n";
            }
            if (!fluct_csv.empty()) {
                auto rep = pascal::representation();
                auto table = pascal_system::fourier_table(99, 1e-8);
                cplx lambda((3.0 + std::sqrt(17.0)) / 2.0, 0.0);
                auto Ns = parse_samples("16..20:10", 2);
                auto samples = fourier::empirical_fluctuation(rep, lambda, 0, Ns, {});
                FILE* f = std::fopen(fluct_csv.c_str(), "w");
                if (!f) throw std::runtime_error("cannot open " + fluct_csv);
                std::fprintf(f, "u,empirical,reconstructed\n");
                for (const auto& smp : samples) {
                    cplx rec = table.reconstruct(lambda, 0, 99, smp.u);
                    std::fprintf(f, "%.17g,%.17g,%.17g\n", smp.u, smp.value, rec.real());
                }
                std::fclose(f);
            }
            if (table_L < 0 && fluct_csv.empty()) {
                std::cout << "kappa=" << fmt(pascal::kappa()) << "\n";
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        if (json_errors)
            std::cout << json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
