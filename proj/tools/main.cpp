// qcorr: norms, optima, figure data, verification suites and conjecture
// sweeps for the correlated two-qubit depolarizing family.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/analysis.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/io.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/states.hpp"

using nlohmann::json;
using namespace qcorr;

namespace {

std::string g12(double x) { return format_g12(x); }

std::string default_out_dir() {
    const char* env = std::getenv("QCORR_OUT_DIR");
    return env && *env ? env : ".";
}

// config file values fill in flags the user did not pass
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config file ") + path + ": " + e.what());
    }
}

void cfg_str(const CLI::Option* opt, const json& cfg, const char* key,
             std::string& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    const json& v = cfg[key];
    if (v.is_string())
        var = v.get<std::string>();
    else if (v.is_number())
        var = format_g12(v.get<double>());
    else
        throw std::runtime_error(std::string("config key '") + key +
                                 "' must be a string or number");
}

void cfg_int(const CLI::Option* opt, const json& cfg, const char* key, int& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    if (!cfg[key].is_number_integer())
        throw std::runtime_error(std::string("config key '") + key +
                                 "' must be an integer");
    var = cfg[key].get<int>();
}

void cfg_u64(const CLI::Option* opt, const json& cfg, const char* key,
             std::uint64_t& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    if (!cfg[key].is_number_unsigned() && !cfg[key].is_number_integer())
        throw std::runtime_error(std::string("config key '") + key +
                                 "' must be an integer");
    var = cfg[key].get<std::uint64_t>();
}

void cfg_vec(const CLI::Option* opt, const json& cfg, const char* key,
             std::vector<std::string>& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    const json& v = cfg[key];
    if (!v.is_array())
        throw std::runtime_error(std::string("config key '") + key +
                                 "' must be an array");
    var.clear();
    for (const auto& item : v) {
        if (item.is_string())
            var.push_back(item.get<std::string>());
        else if (item.is_number())
            var.push_back(format_g12(item.get<double>()));
        else
            throw std::runtime_error(std::string("config key '") + key +
                                     "' entries must be strings or numbers");
    }
}

void require_set(const std::string& value, const char* flag) {
    if (value.empty())
        throw std::runtime_error(std::string("missing required ") + flag +
                                 " (flag or config)");
}

PureState4 resolve_input(const std::string& name) {
    if (name == "bell0") return bell_state(0);
    if (name == "product00")
        return PureState4::from_amplitudes({Complex(1, 0), Complex(0, 0), Complex(0, 0),
                                            Complex(0, 0)});
    if (name == "singlet")
        return PureState4::from_amplitudes({Complex(0, 0), Complex(1, 0),
                                            Complex(-1, 0), Complex(0, 0)});
    if (name == "product-yy")  // (|0> + i|1>)/sqrt2 on each qubit
        return PureState4::from_amplitudes({Complex(0.5, 0), Complex(0, 0.5),
                                            Complex(0, 0.5), Complex(-0.5, 0)});
    return read_state_json(name);  // anything else is a state file path
}

MaxEntangled resolve_beta(const std::string& path) {
    if (path.empty()) return MaxEntangled::bell0();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open beta file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("beta file ") + path + ": " + e.what());
    }
    const json* u = nullptr;
    if (j.is_array())
        u = &j;
    else if (j.is_object() && j.contains("beta_unitary"))
        u = &j["beta_unitary"];
    else
        throw std::runtime_error("beta file " + path +
                                 ": expected a 2x2 array or {\"beta_unitary\": ...}");
    if (!u->is_array() || u->size() != 2)
        throw std::runtime_error("beta file " + path + ": unitary must be 2x2");
    CMatrix m(2);
    for (int r = 0; r < 2; ++r) {
        const json& row = (*u)[static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != 2)
            throw std::runtime_error("beta file " + path + ": unitary must be 2x2");
        for (int c = 0; c < 2; ++c) {
            const json& cell = row[static_cast<size_t>(c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw std::runtime_error("beta file " + path +
                                         ": entries must be [re, im]");
            m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return MaxEntangled(m);
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::below_threshold: return "below_threshold";
        case Regime::at_or_above: return "at_or_above";
        default: return "trivial";
    }
}

void print_state(const char* label, const PureState4& psi) {
    std::cout << label << " =";
    for (const auto& a : psi.amplitudes())
        std::cout << " (" << g12(a.real()) << ", " << g12(a.imag()) << ")";
    std::cout << "\n";
}

void print_optimum(const Optimum& opt, double mu, double lambda) {
    std::cout << "value = " << g12(opt.value) << "\n"
              << "theta_opt = " << g12(opt.theta_opt) << "\n"
              << "regime = " << regime_name(opt.regime) << "\n"
              << "mu_c = " << g12(mu_critical(lambda)) << "\n";
    (void)mu;
    print_state("witness", opt.witness);
    std::cout << "witness_linear_entanglement = "
              << g12(entanglement(opt.witness, EntanglementKind::linear)) << "\n"
              << "witness_vn_entanglement = "
              << g12(entanglement(opt.witness, EntanglementKind::von_neumann)) << "\n";
    std::cout << "spectrum =";
    for (size_t i = 0; i < opt.spectrum.size(); ++i)
        std::cout << " " << g12(opt.spectrum[i]);
    std::cout << "\n";
}

std::vector<double> parse_p_list(const std::vector<std::string>& raw) {
    std::vector<double> ps;
    for (const auto& s : raw) {
        const PurityOrder o = PurityOrder::parse(s);
        if (o.is_entropy())
            ps.push_back(1.0);
        else if (o.is_infinity())
            ps.push_back(std::numeric_limits<double>::infinity());
        else
            ps.push_back(o.p());
    }
    return ps;
}

std::vector<PurityOrder> parse_order_list(const std::vector<std::string>& raw) {
    std::vector<PurityOrder> orders;
    for (const auto& s : raw) orders.push_back(PurityOrder::parse(s));
    return orders;
}

int run_norm(double mu, double lambda, const PurityOrder& order,
             const std::string& input, const std::string& beta_path) {
    const ChannelParams cp(mu, lambda, resolve_beta(beta_path));
    const PureState4 psi = resolve_input(input);
    const DensityMatrix4 out = apply_channel(cp, psi);
    const Spectrum sp = out.spectrum();
    std::cout << "spectrum =";
    for (size_t i = 0; i < sp.size(); ++i) std::cout << " " << g12(sp[i]);
    std::cout << "\n";
    if (!order.is_entropy())
        std::cout << "p_norm = " << g12(p_norm(sp, order)) << "\n";
    std::cout << "renyi_entropy = " << g12(renyi_entropy(sp, order)) << "\n";
    return 0;
}

int run_optimize(double mu, double lambda, const std::string& p_str,
                 const std::string& method, int budget, std::uint64_t seed) {
    const PurityOrder order = PurityOrder::parse(p_str);
    const bool analytic_ok =
        order.is_entropy() || order.is_infinity() ||
        (order.is_finite() && std::abs(order.p() - 2.0) <= 1e-12);
    if ((method == "analytic" || method == "both") && !analytic_ok) {
        std::cerr << "error: the analytic optimum is only available for p = 2, p = inf "
                     "and the entropy limit; run with --method numeric for p = "
                  << p_str << "\n";
        return 2;
    }

    if (method == "analytic") {
        const Optimum opt = order.is_finite() ? two_norm_optimum(mu, lambda)
                                              : conjectured_optimum(mu, lambda, order);
        print_optimum(opt, mu, lambda);
        return 0;
    }
    if (method == "numeric") {
        const Optimum opt = numeric_optimize(mu, lambda, order, budget, seed);
        print_optimum(opt, mu, lambda);
        return 0;
    }
    const Optimum an = order.is_finite() ? two_norm_optimum(mu, lambda)
                                         : conjectured_optimum(mu, lambda, order);
    const Optimum nu = numeric_optimize(mu, lambda, order, budget, seed);
    print_optimum(an, mu, lambda);
    std::cout << "value_numeric = " << g12(nu.value) << "\n";
    // positive gap means the numeric search beat the closed form
    const double gap =
        order.is_entropy() ? an.value - nu.value : nu.value - an.value;
    std::cout << "gap = " << g12(gap) << "\n";
    return 0;
}

int run_figures(const std::string& which, std::string out, const std::string& mu_s,
                const std::string& lambda_s, const std::vector<std::string>& p_raw,
                int n_random, std::uint64_t seed) {
    if (which != "fig1" && which != "fig2" && which != "fig3" && which != "all")
        throw std::runtime_error("figures: expected fig1 | fig2 | fig3 | all, got '" +
                                 which + "'");
    std::vector<double> lambdas, mus;
    for (int i = 1; i <= 10; ++i) lambdas.push_back(i / 10.0);
    for (int i = 0; i <= 50; ++i) mus.push_back(i * 0.02);

    const bool single_point = !mu_s.empty() && !lambda_s.empty();
    if (!lambda_s.empty()) lambdas = {parse_number(lambda_s)};
    if (!mu_s.empty()) mus = {parse_number(mu_s)};

    std::vector<double> ps = parse_p_list(p_raw);
    if (ps.empty())
        ps = {1.0, 1.1, 1.2, 1.35, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0, 10.0,
              std::numeric_limits<double>::infinity()};

    const std::string dir = out.empty() ? default_out_dir() : out;
    auto emit = [&](const std::string& name, auto writer) {
        const std::string path =
            (which == "all" || (which == "fig3" && !single_point) || out.empty())
                ? dir + "/" + name
                : out;
        writer(path);
        std::cout << "wrote " << path << "\n";
    };

    if (which == "fig1" || which == "all") {
        // theta_optimal and the closed form handle lambda = 1 and mu = 1 edges
        std::vector<double> l1 = lambdas, m1 = mus;
        emit("fig1.csv",
             [&](const std::string& p) { write_fig1_csv(p, fig1_rows(l1, m1)); });
    }
    if (which == "fig2" || which == "all") {
        std::vector<double> l2, m2 = mus;
        for (double l : lambdas)
            if (l < 1.0) l2.push_back(l);
        if (l2.empty()) throw std::runtime_error("fig2 needs lambda < 1");
        emit("fig2.csv",
             [&](const std::string& p) { write_fig2_csv(p, fig2_rows(l2, m2)); });
    }
    if (which == "fig3" || which == "all") {
        if (single_point && which == "fig3") {
            const double mu = parse_number(mu_s), lambda = parse_number(lambda_s);
            emit("fig3.csv", [&](const std::string& p) {
                write_fig3_csv(p, fig3_rows(mu, lambda, ps, n_random, seed));
            });
        } else {
            emit("fig3_panel1.csv", [&](const std::string& p) {
                write_fig3_csv(p, fig3_rows(0.25, 0.5, ps, n_random, seed));
            });
            emit("fig3_panel2.csv", [&](const std::string& p) {
                write_fig3_csv(p, fig3_rows(0.5, 1.0 / 3.0, ps, n_random, seed));
            });
        }
    }
    return 0;
}

int run_verify(std::vector<std::string> suites, std::uint64_t seed, int trials,
               const std::string& csv_out, const std::string& scan_out) {
    if (suites.empty())
        suites = {"lemmas", "covariance", "majorization", "tables", "perturbation"};
    std::vector<SuiteReport> reports;
    for (const auto& name : suites) {
        int t = trials;
        if (t <= 0) t = name == "lemmas" ? 10000 : 100;
        reports.push_back(run_suite(name, seed, t));
    }

    std::cout << "suite          passes  fails\n";
    for (const auto& r : reports) {
        std::cout << r.name;
        for (size_t i = r.name.size(); i < 15; ++i) std::cout << ' ';
        std::cout << r.passes << "       " << r.fails << "\n";
    }
    for (const auto& r : reports)
        for (const auto& m : r.messages) std::cout << "  [" << r.name << "] " << m << "\n";
    for (const auto& r : reports) std::cout << suite_to_json(r) << "\n";
    if (!csv_out.empty()) {
        write_suite_csv(csv_out, reports);
        std::cout << "wrote " << csv_out << "\n";
    }
    if (!scan_out.empty()) {
        write_perturbation_jsonl(scan_out, perturbation_scan_reports());
        std::cout << "wrote " << scan_out << "\n";
    }

    for (const auto& r : reports) {
        if (r.ok()) continue;
        for (const auto& m : r.messages) {
            if (m.rfind("FAIL", 0) == 0) {
                std::cout << "first_counterexample = " << m << "\n";
                return 1;
            }
        }
        return 1;
    }
    return 0;
}

int run_check(int cells, int per_cell, const std::vector<std::string>& p_raw,
              std::uint64_t seed, int threads, std::string out,
              const std::string& mu_s, const std::string& lambda_s) {
    SweepSpec spec;
    spec.cells = cells;
    spec.trials = per_cell;
    spec.orders = parse_order_list(p_raw);
    spec.seed = seed;
    spec.threads = threads;
    spec.lattice_pass = true;
    if (!mu_s.empty()) spec.fixed_mu = parse_number(mu_s);
    if (!lambda_s.empty()) spec.fixed_lambda = parse_number(lambda_s);

    const auto result = conjecture_sweep(spec);

    if (out.empty()) out = default_out_dir() + "/sweep.csv";
    write_sweep_csv(out, result);
    std::string vout = out;
    const size_t dot = vout.rfind(".csv");
    if (dot != std::string::npos && dot == vout.size() - 4) vout.resize(dot);
    vout += "_violations.jsonl";
    write_violations_jsonl(vout, result);

    double max_gap = -std::numeric_limits<double>::infinity();
    int violations = 0;
    for (const auto& c : result) {
        max_gap = std::max(max_gap, c.gap);
        if (c.violation) ++violations;
    }
    std::cout << "cells = " << cells << "\n"
              << "rows = " << result.size() << "\n"
              << "max_gap = " << g12(max_gap) << "\n"
              << "violations = " << violations << "\n"
              << "wrote " << out << "\n"
              << "wrote " << vout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlated two-qubit depolarizing channel toolkit"};
    app.require_subcommand(1);
    // lets --config appear after the subcommand name as well as before it
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config file; flags given on the command line win");

    // norm
    auto* norm = app.add_subcommand("norm", "output spectrum, p-norm and Renyi entropy");
    std::string n_mu, n_lambda = "0", n_p = "2", n_input = "bell0", n_beta;
    auto* n_mu_o = norm->add_option("--mu", n_mu, "correlation weight in [0, 1]; fractions like 1/3 accepted");
    auto* n_la_o = norm->add_option("--lambda", n_lambda, "depolarizing parameter in [-1/3, 1]");
    auto* n_p_o = norm->add_option("--p", n_p, "order: number > 1, inf, or entropy");
    auto* n_in_o = norm->add_option("--input", n_input,
                                    "bell0 | product00 | singlet | product-yy | state json path");
    auto* n_be_o = norm->add_option("--beta", n_beta, "json file with the 2x2 beta frame unitary");

    // optimize
    auto* opt = app.add_subcommand("optimize", "maximal output purity over input states");
    std::string o_mu, o_lambda = "0", o_p = "2", o_method = "both";
    int o_budget = 200;
    std::uint64_t o_seed = 20260823ull;
    auto* o_mu_o = opt->add_option("--mu", o_mu, "correlation weight");
    auto* o_la_o = opt->add_option("--lambda", o_lambda, "depolarizing parameter");
    auto* o_p_o = opt->add_option("--p", o_p, "order: number > 1, inf, or entropy");
    auto* o_me_o = opt->add_option("--method", o_method, "analytic | numeric | both");
    auto* o_bu_o = opt->add_option("--budget", o_budget, "random starts for the numeric search");
    auto* o_se_o = opt->add_option("--seed", o_seed, "numeric search seed");

    // figures
    auto* fig = app.add_subcommand("figures", "emit figure data as CSV");
    std::string f_which, f_out, f_mu, f_lambda;
    std::vector<std::string> f_ps;
    int f_random = 300;
    std::uint64_t f_seed = 20260823ull;
    fig->add_option("which", f_which, "fig1 | fig2 | fig3 | all")->required();
    auto* f_out_o = fig->add_option("--out", f_out, "output file (directory for all / two-panel fig3)");
    auto* f_mu_o = fig->add_option("--mu", f_mu, "restrict to one mu (fig3: pick the panel)");
    auto* f_la_o = fig->add_option("--lambda", f_lambda, "restrict to one lambda");
    auto* f_ps_o = fig->add_option("--p-grid", f_ps, "orders for fig3 rows");
    auto* f_ra_o = fig->add_option("--n-random", f_random, "random inputs per fig3 panel");
    auto* f_se_o = fig->add_option("--seed", f_seed, "fig3 sampling seed");

    // verify
    auto* ver = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> v_suites;
    std::uint64_t v_seed = 20260823ull;
    int v_trials = 0;
    std::string v_csv, v_scan;
    ver->add_option("suites", v_suites,
                    "lemmas | covariance | majorization | tables | perturbation (default all)");
    auto* v_se_o = ver->add_option("--seed", v_seed, "suite seed");
    auto* v_tr_o = ver->add_option("--trials", v_trials, "draws per property (0 = per-suite default)");
    auto* v_cs_o = ver->add_option("--csv-out", v_csv, "write per-suite pass/fail counts as CSV");
    auto* v_sc_o = ver->add_option("--scan-out", v_scan,
                                   "write the perturbation grid scan as JSONL");

    // check-conjecture
    auto* chk = app.add_subcommand("check-conjecture",
                                   "random-search the conjectured optimal family");
    int c_cells = 2000, c_per = 50, c_threads = 0;
    std::vector<std::string> c_ps;
    std::uint64_t c_seed = 20260823ull;
    std::string c_out, c_mu, c_lambda;
    auto* c_ce_o = chk->add_option("--cells", c_cells, "random (mu, lambda) cells");
    auto* c_pe_o = chk->add_option("--per-cell", c_per, "random inputs per cell");
    auto* c_ps_o = chk->add_option("--p-grid", c_ps, "orders (default 1.1 1.5 2 3 5 inf)");
    auto* c_se_o = chk->add_option("--seed", c_seed, "sweep seed");
    auto* c_th_o = chk->add_option("--threads", c_threads, "worker threads (0 = hardware)");
    auto* c_ou_o = chk->add_option("--out", c_out, "sweep CSV path");
    auto* c_mu_o = chk->add_option("--mu", c_mu, "pin mu instead of drawing it");
    auto* c_la_o = chk->add_option("--lambda", c_lambda, "pin lambda instead of drawing it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const json cfg = load_config(config_path);
        if (norm->parsed()) {
            cfg_str(n_mu_o, cfg, "mu", n_mu);
            cfg_str(n_la_o, cfg, "lambda", n_lambda);
            cfg_str(n_p_o, cfg, "p", n_p);
            cfg_str(n_in_o, cfg, "input", n_input);
            cfg_str(n_be_o, cfg, "beta", n_beta);
            require_set(n_mu, "--mu");
            return run_norm(parse_number(n_mu), parse_number(n_lambda),
                            PurityOrder::parse(n_p), n_input, n_beta);
        }
        if (opt->parsed()) {
            cfg_str(o_mu_o, cfg, "mu", o_mu);
            cfg_str(o_la_o, cfg, "lambda", o_lambda);
            cfg_str(o_p_o, cfg, "p", o_p);
            cfg_str(o_me_o, cfg, "method", o_method);
            cfg_int(o_bu_o, cfg, "budget", o_budget);
            cfg_u64(o_se_o, cfg, "seed", o_seed);
            require_set(o_mu, "--mu");
            if (o_method != "analytic" && o_method != "numeric" && o_method != "both")
                throw std::runtime_error("--method must be analytic, numeric or both");
            return run_optimize(parse_number(o_mu), parse_number(o_lambda), o_p,
                                o_method, o_budget, o_seed);
        }
        if (fig->parsed()) {
            cfg_str(f_out_o, cfg, "out", f_out);
            cfg_str(f_mu_o, cfg, "mu", f_mu);
            cfg_str(f_la_o, cfg, "lambda", f_lambda);
            cfg_vec(f_ps_o, cfg, "p_grid", f_ps);
            cfg_int(f_ra_o, cfg, "n_random", f_random);
            cfg_u64(f_se_o, cfg, "seed", f_seed);
            return run_figures(f_which, f_out, f_mu, f_lambda, f_ps, f_random, f_seed);
        }
        if (ver->parsed()) {
            cfg_u64(v_se_o, cfg, "seed", v_seed);
            cfg_int(v_tr_o, cfg, "trials", v_trials);
            cfg_str(v_cs_o, cfg, "csv_out", v_csv);
            cfg_str(v_sc_o, cfg, "scan_out", v_scan);
            return run_verify(v_suites, v_seed, v_trials, v_csv, v_scan);
        }
        if (chk->parsed()) {
            cfg_int(c_ce_o, cfg, "cells", c_cells);
            cfg_int(c_pe_o, cfg, "per_cell", c_per);
            cfg_vec(c_ps_o, cfg, "p_grid", c_ps);
            cfg_u64(c_se_o, cfg, "seed", c_seed);
            cfg_int(c_th_o, cfg, "threads", c_threads);
            cfg_str(c_ou_o, cfg, "out", c_out);
            cfg_str(c_mu_o, cfg, "mu", c_mu);
            cfg_str(c_la_o, cfg, "lambda", c_lambda);
            return run_check(c_cells, c_per, c_ps, c_seed, c_threads, c_out, c_mu,
                             c_lambda);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
