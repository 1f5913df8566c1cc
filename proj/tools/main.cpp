// pointctl: analysis, control synthesis, simulation and spline diagnostics
// for the pointwise-controlled degenerate/singular heat equation.
//
// Exit codes: 0 ok, 2 invalid parameters, 3 actuator point in P,
// 4 Gram conditioning failure, 5 solver failure.

#include "cli_support.hpp"

#include "pointctl/collocation.hpp"
#include "pointctl/controllability.hpp"
#include "pointctl/errors.hpp"
#include "pointctl/experiments.hpp"
#include "pointctl/moment_control.hpp"
#include "pointctl/spectrum.hpp"
#include "pointctl/splines.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace pointctl;
using namespace pointctl::cli;
using nlohmann::json;
namespace fs = std::filesystem;

json params_json(const ProblemParams& p) {
    return {{"alpha", p.alpha}, {"mu", p.mu}, {"b_bar", p.b_bar}, {"T", p.T}};
}

void fail_json(const json& j) { std::cerr << j.dump() << "\n"; }

BadSetVerdict check_membership(const RunConfig& cfg) { return bad_set_membership(cfg.problem, cfg.N, cfg.tol); }

json verdict_json(const BadSetVerdict& v) {
    json w = nullptr;
    if (v.witness) w = {v.witness->k, v.witness->n};
    return {{"in_P", v.in_P}, {"witness", w}, {"N", v.scan_limit}, {"tol", v.tolerance}, {"distance", number(v.distance)}};
}

int refuse_membership(const BadSetVerdict& v) {
    fail_json({{"error", "membership"},
               {"message", "actuator point lies in P; synthesis refused"},
               {"witness", {v.witness->k, v.witness->n}}});
    return ExitCode::membership;
}

int cmd_analyze(const RunConfig& cfg, bool synthesize) {
    const ProblemParams& p = cfg.problem;
    const SpectralBasis basis(p.alpha, p.mu, cfg.K);
    const BadSetVerdict bad = check_membership(cfg);

    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "analyze";
    report["params"] = params_json(p);
    report["nu"] = basis.nu();
    report["mu_critical"] = hardy_constant(p.alpha);
    report["gap_constant"] = gap_constant(p.alpha, p.mu);
    report["K"] = cfg.K;
    report["lambdas"] = numbers(basis.eigenvalues());
    report["bad_set_verdict"] = verdict_json(bad);
    report["approximately_controllable"] = !bad.in_P;

    std::string verdict = "not_controllable";
    if (bad.in_P) {
        report["minimal_time"] = nullptr;
    } else {
        const MinimalTimeEstimate est = minimal_time_estimate(basis, p.b_bar, cfg.K);
        std::string csv = "k,lambda,abs_phi,ratio,running_sup,tail_sup\n";
        for (std::size_t i = 0; i < est.per_k.size(); ++i) {
            const MinimalTimeRow& r = est.per_k[i];
            csv += std::to_string(r.k) + "," + fmt(r.lambda) + "," + fmt(r.abs_phi) + "," + fmt(r.ratio) + "," +
                   fmt(est.running_sup[i]) + "," + fmt(est.tail_sup[i]) + "\n";
        }
        write_atomic(cfg.out / "minimal_time.csv", csv);
        report["minimal_time"] = {{"estimate", number(est.estimate)},
                                  {"xi", number(est.xi)},
                                  {"K", est.K},
                                  {"per_k_table", "minimal_time.csv"}};
        verdict = std::string(to_string(null_controllability_verdict(p.T, est)));
    }
    report["null_controllability_verdict"] = verdict;
    report["synthesis_permitted"] = !bad.in_P;
    write_json(cfg.out / "analyze.json", report);
    std::printf("analyze: in_P=%s verdict=%s -> %s\n", bad.in_P ? "true" : "false", verdict.c_str(),
                (cfg.out / "analyze.json").string().c_str());
    if (synthesize && bad.in_P) return refuse_membership(bad);
    return ExitCode::ok;
}

int cmd_control(const RunConfig& cfg) {
    const ProblemParams& p = cfg.problem;
    const BadSetVerdict bad = check_membership(cfg);
    if (bad.in_P) return refuse_membership(bad);

    const SpectralBasis basis(p.alpha, p.mu, cfg.K);
    const CoefficientVector u0 = expand_initial_data(basis, parse_initial_data(cfg.u0));
    const BiorthogonalFamily fam = biorthogonal_family(basis.eigenvalues(), p.T);
    const ControlSignal h = synthesize_control(basis, fam, u0.coeffs, p.b_bar, cfg.M);
    const MomentResiduals res = moment_residuals(basis, h, u0.coeffs, p.b_bar);

    auto sb = std::make_shared<const SpectralBasis>(basis);
    const ModalTrajectory oracle = spectral_simulate(sb, u0.coeffs, &h, p.b_bar, p.T, p.T);
    const std::vector<double>& final_modes = oracle.modes.back();
    double oracle_max = 0.0;
    for (double v : final_modes) oracle_max = std::max(oracle_max, std::fabs(v));

    write_atomic(cfg.out / "h.csv", control_csv(h));
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "control";
    report["params"] = params_json(p);
    report["u0"] = cfg.u0;
    report["K"] = cfg.K;
    report["M"] = cfg.M;
    report["lambdas"] = numbers(basis.eigenvalues());
    report["initial_coefficients"] = numbers(u0.coeffs);
    report["residuals"] = numbers(res.values);
    double rmax = 0.0;
    for (double r : res.values) rmax = std::max(rmax, std::fabs(r));
    report["max_residual"] = number(rmax);
    report["quadrature_resolved"] = res.resolved;
    report["quadrature_error"] = number(res.quadrature_error);
    report["gram_condition"] = number(fam.gram_condition);
    report["solver"] = fam.solver == SolverTag::direct ? "direct" : "regularized";
    report["regularization"] = fam.regularization;
    report["biorthogonality_defect"] = number(fam.defect);
    report["q_norms"] = numbers(fam.q_norms);
    report["l2_norm"] = number(h.l2_norm);
    report["oracle_final_modes"] = numbers(final_modes);
    report["oracle_max_final_mode"] = number(oracle_max);
    report["control_file"] = "h.csv";
    write_json(cfg.out / "residuals.json", report);
    std::printf("control: K=%d max_residual=%.3g oracle_max=%.3g -> %s\n", cfg.K, rmax, oracle_max,
                (cfg.out / "h.csv").string().c_str());
    return ExitCode::ok;
}

std::string trajectory_header(const RunConfig& cfg, const std::string& control) {
    const ProblemParams& p = cfg.problem;
    return "# alpha=" + fmt(p.alpha) + ",mu=" + fmt(p.mu) + ",b_bar=" + fmt(p.b_bar) + ",d=" +
           std::to_string(cfg.degree) + ",knot_set=" + cfg.knots + ",dt=" + fmt(cfg.dt) + ",scheme=" + cfg.scheme +
           ",control=" + control + "\n";
}

std::vector<std::size_t> snap_times(const std::vector<double>& times, double dt, std::size_t steps) {
    std::vector<std::size_t> idx;
    for (double t : times) {
        const double s = std::round(t / dt);
        if (!(s >= 0.0) || s > static_cast<double>(steps)) throw DomainError("requested time outside [0, T]");
        idx.push_back(static_cast<std::size_t>(s));
    }
    return idx;
}

template <class Eval>
std::string field_csv(const std::string& header, const char* name, const std::vector<double>& times,
                      const std::vector<std::size_t>& steps, Eval eval) {
    std::string s = header + "t,x," + name + "\n";
    for (std::size_t step : steps) {
        for (int i = 0; i <= 200; ++i) {
            const double x = i / 200.0;
            s += fmt(times[step]) + "," + fmt(x) + "," + fmt(eval(step, x)) + "\n";
        }
    }
    return s;
}

json l2_history(const Trajectory& tr) {
    json a = json::array();
    for (std::size_t s = 0; s < tr.times.size(); ++s) {
        a.push_back(number(grid_norms([&](double x) { return tr.eval(s, x); }).l2));
    }
    return a;
}

int cmd_simulate(const RunConfig& cfg, const std::string& control_file, bool with_control,
                 std::vector<double> times) {
    const ProblemParams& p = cfg.problem;
    const Scheme scheme = parse_scheme(cfg.scheme);
    auto qi = std::make_shared<const QuasiInterpolant>(make_space(cfg.degree, cfg.knots));
    const auto u0 = parse_initial_data(cfg.u0);

    std::string source = "none";
    json result;
    Trajectory uncontrolled;
    std::optional<ControlledComparison> cmp;
    if (!control_file.empty()) {
        ControlSignal h = read_control_csv(control_file);
        if (std::fabs(h.T - p.T) > 1e-12 * p.T) throw DomainError("control file horizon differs from --T");
        cmp = run_with_control(p, qi, u0, std::move(h), scheme, cfg.dt);
        source = "file";
    } else if (with_control) {
        const BadSetVerdict bad = check_membership(cfg);
        if (bad.in_P) return refuse_membership(bad);
        ComparisonOptions opt;
        opt.K = cfg.K;
        opt.scheme = scheme;
        opt.dt = cfg.dt;
        opt.model = parse_control_model(cfg.control_model);
        opt.M = cfg.M;
        cmp = run_controlled_comparison(p, qi, u0, opt);
        source = cfg.control_model;
        write_atomic(cfg.out / "h_synthesized.csv", control_csv(cmp->control));
    }

    CollocationSystem system = cmp ? cmp->system : assemble(p, qi);
    if (cmp) {
        uncontrolled = cmp->uncontrolled;
    } else {
        std::vector<double> samples;
        for (double x : qi->sites()) samples.push_back(u0(x));
        uncontrolled = simulate(system, samples, nullptr, scheme, cfg.dt);
    }

    if (times.empty()) times = {0.0, 0.25 * p.T, 0.5 * p.T, 0.75 * p.T, p.T};
    const auto steps = snap_times(times, cfg.dt, uncontrolled.times.size() - 1);

    write_atomic(cfg.out / "trajectory_uncontrolled.csv",
                 field_csv(trajectory_header(cfg, "none"), "u", uncontrolled.times, steps,
                           [&](std::size_t s, double x) { return uncontrolled.eval(s, x); }));

    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "simulate";
    report["params"] = params_json(p);
    report["degree"] = cfg.degree;
    report["knot_set"] = cfg.knots;
    report["scheme"] = cfg.scheme;
    report["dt"] = cfg.dt;
    report["u0"] = cfg.u0;
    report["system_size"] = system.unknowns();
    report["dirac_range"] = {system.dirac_first, system.dirac_last};
    const Norms n0 = grid_norms([&](double x) { return uncontrolled.eval(0, x); });
    const Norms nu = final_norms(uncontrolled);
    report["initial"] = {{"l2", number(n0.l2)}, {"sup", number(n0.sup)}};
    report["uncontrolled_final"] = {{"l2", number(nu.l2)}, {"sup", number(nu.sup)}};
    report["uncontrolled_l2_history"] = l2_history(uncontrolled);
    report["control_source"] = source;

    if (cmp) {
        const Trajectory& co = cmp->controlled;
        const std::string hdr = trajectory_header(cfg, source);
        write_atomic(cfg.out / "trajectory_controlled.csv",
                     field_csv(hdr, "u", co.times, steps, [&](std::size_t s, double x) { return co.eval(s, x); }));
        write_atomic(cfg.out / "control_field.csv", field_csv(hdr, "h", co.times, steps, [&](std::size_t s, double x) {
                         return co.control_field(s, x);
                     }));
        const Norms nc = final_norms(co);
        report["controlled_final"] = {{"l2", number(nc.l2)}, {"sup", number(nc.sup)}};
        report["controlled_l2_history"] = l2_history(co);
        report["controlled_below_uncontrolled"] = nc.l2 < nu.l2;
        report["control"] = {{"K", cmp->control.K},
                             {"max_residual", number(cmp->control.max_residual())},
                             {"l2_norm", number(cmp->control.l2_norm)}};
        std::printf("simulate: uncontrolled L2(T)=%.6g controlled L2(T)=%.6g (%s)\n", nu.l2, nc.l2, source.c_str());
    } else {
        report["controlled_final"] = nullptr;
        std::printf("simulate: uncontrolled L2(T)=%.6g\n", nu.l2);
    }
    write_json(cfg.out / "summary.json", report);
    return ExitCode::ok;
}

int cmd_spline_test(const RunConfig& cfg) {
    const auto f = [](double x) { return std::sin(3.0 * std::numbers::pi * x); };
    const std::vector<int> n_list{8, 16, 32, 64, 128};
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "spline-test";
    report["function"] = "sin(3*pi*x)";
    report["n_list"] = n_list;
    for (int d : {2, 3}) {
        json errors = json::array();
        for (int n : n_list) errors.push_back(number(sup_error(QuasiInterpolant(SplineSpace::uniform(d, n)), f)));
        json entry = {{"slope", number(convergence_order(d, f, n_list))}, {"sup_errors", errors}};
        json repro = json::object();
        for (const char* ks : {"x1", "x2", "x3"}) {
            const SplineSpace space = make_space(d, ks);
            const QuasiInterpolant qi(space);
            std::string basis = "x";
            for (int k = 1; k <= space.dimension(); ++k) basis += ",B_" + std::to_string(k);
            std::string modified = "x";
            for (int r = 0; r < qi.site_count(); ++r) modified += ",Bt_" + std::to_string(r);
            basis += "\n";
            modified += "\n";
            for (int i = 0; i <= 200; ++i) {
                const double x = i / 200.0;
                basis += fmt(x);
                for (int k = 1; k <= space.dimension(); ++k) basis += "," + fmt(space.basis(k - 1, x));
                basis += "\n";
                modified += fmt(x);
                for (int r = 0; r < qi.site_count(); ++r) modified += "," + fmt(qi.modified_basis(r, x));
                modified += "\n";
            }
            const std::string tag = "d" + std::to_string(d) + "_" + ks;
            write_atomic(cfg.out / ("basis_" + tag + ".csv"), basis);
            write_atomic(cfg.out / ("modified_basis_" + tag + ".csv"), modified);
            const auto mono = [d](double x) { return std::pow(x, d); };
            repro[ks] = number(sup_error(qi, mono));
        }
        entry["reproduction_defect_x_pow_d"] = repro;
        report["d" + std::to_string(d)] = entry;
    }
    write_json(cfg.out / "orders.json", report);
    std::printf("spline-test: slopes d2=%s d3=%s\n", report["d2"]["slope"].dump().c_str(),
                report["d3"]["slope"].dump().c_str());
    return ExitCode::ok;
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_file) {
    sub->add_option("--alpha", cfg.problem.alpha, "degeneracy exponent, [0, 1)");
    sub->add_option("--mu", cfg.problem.mu, "singular potential coefficient, <= (1-alpha)^2/4");
    sub->add_option("--b", cfg.problem.b_bar, "actuator point in (0, 1)");
    sub->add_option("--T", cfg.problem.T, "control horizon");
    sub->add_option("--K", cfg.K, "number of modes (analyze default 50, otherwise 8)");
    sub->add_option("--N", cfg.N, "scan bound for P membership");
    sub->add_option("--tol", cfg.tol, "tolerance for P membership");
    sub->add_option("--M", cfg.M, "control time-grid intervals");
    sub->add_option("--degree", cfg.degree, "spline degree, 2 or 3");
    sub->add_option("--knots", cfg.knots, "x1 | x2 | x3 | knot JSON file");
    sub->add_option("--dt", cfg.dt, "time step");
    sub->add_option("--scheme", cfg.scheme, "implicit_euler | crank_nicolson");
    sub->add_option("--u0", cfg.u0, "initial data: sine:k[:amp] | example1 | example2");
    sub->add_option("--control-model", cfg.control_model, "collocation | spectral");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--config", config_file, "JSON config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pointctl: pointwise control of degenerate/singular heat equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    bool synthesize = false;
    bool with_control = false;
    std::string control_file;
    std::vector<double> times;
    int example = 0;

    auto* analyze = app.add_subcommand("analyze", "spectrum, P membership and minimal control time");
    auto* control = app.add_subcommand("control", "moment-method control synthesis");
    auto* simulate_cmd = app.add_subcommand("simulate", "collocation simulation, optionally controlled");
    auto* spline = app.add_subcommand("spline-test", "basis tables and quasi-interpolation orders");
    for (auto* sub : {analyze, control, simulate_cmd, spline}) add_common(sub, cfg, config_file);
    analyze->add_flag("--synthesize", synthesize, "exit 3 when the actuator point lies in P");
    simulate_cmd->add_option("--control", control_file, "control CSV written by 'control'");
    simulate_cmd->add_flag("--with-control", with_control, "synthesize a control and compare");
    simulate_cmd->add_option("--times", times, "instants written to the trajectory CSVs");
    simulate_cmd->add_option("--example", example, "1 or 2: load a worked example (flags still override)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ExitCode::invalid_params;
    }

    CLI::App* sub = app.get_subcommands().front();
    const auto given = [sub](const std::string& key) {
        const std::string flag = key == "control_model" ? "--control-model" : "--" + key;
        return sub->count(flag) > 0;
    };
    if (sub == analyze && !given("K")) cfg.K = 50;

    try {
        if (example != 0) {
            const ExampleSetup ex = example_setup(example);
            if (!given("alpha")) cfg.problem.alpha = ex.params.alpha;
            if (!given("mu")) cfg.problem.mu = ex.params.mu;
            if (!given("b")) cfg.problem.b_bar = ex.params.b_bar;
            if (!given("T")) cfg.problem.T = ex.params.T;
            if (!given("degree")) cfg.degree = ex.degree;
            if (!given("u0")) cfg.u0 = "example" + std::to_string(example);
        }
        if (!config_file.empty()) merge_config_file(cfg, config_file, given);
        validate(cfg);
        if (sub == analyze) return cmd_analyze(cfg, synthesize);
        if (sub == control) return cmd_control(cfg);
        if (sub == simulate_cmd) return cmd_simulate(cfg, control_file, with_control, times);
        return cmd_spline_test(cfg);
    } catch (const ConditioningError& e) {
        fail_json({{"error", "conditioning"},
                   {"message", e.what()},
                   {"condition_number", number(e.condition_number())},
                   {"defect", number(e.defect())},
                   {"K", cfg.K}});
        return ExitCode::conditioning;
    } catch (const MembershipError& e) {
        fail_json({{"error", "membership"}, {"message", e.what()}, {"mode", e.mode()}});
        return ExitCode::membership;
    } catch (const SolverError& e) {
        fail_json({{"error", "solver"}, {"message", e.what()}, {"step", e.step()}});
        return ExitCode::solver;
    } catch (const DomainError& e) {
        fail_json({{"error", "invalid_parameters"}, {"message", e.what()}});
        return ExitCode::invalid_params;
    } catch (const std::exception& e) {
        fail_json({{"error", "internal"}, {"message", e.what()}});
        return 1;
    }
}
