#include "ailearn/cli.hpp"

#include "ailearn/agent.hpp"
#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"
#include "ailearn/oracle.hpp"
#include "ailearn/policy.hpp"
#include "ailearn/statics.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace ailearn {

namespace {

std::string csv_safe(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

// Joins fields with commas; doubles go through format_real.
struct Row {
    std::ostream& out;
    bool first = true;

    Row& operator<<(double x) { return field(format_real(x)); }
    Row& operator<<(int x) { return field(std::to_string(x)); }
    Row& operator<<(bool b) { return field(boolean(b)); }
    Row& operator<<(std::string_view s) { return field(std::string(s)); }
    Row& operator<<(const char* s) { return field(s); }
    Row& field(const std::string& s) {
        if (!first) out << ',';
        out << s;
        first = false;
        return *this;
    }
    ~Row() { out << '\n'; }
};

void print_decision(std::ostream& out, double t, const AgentDecision& d) {
    Row{out} << t << to_string(d.regime) << d.ability << d.utility << d.solvable_mass;
}

struct Options {
    std::string config;
    double t = 0.0;
    int grid_n = 0;  // 0: take the scenario's value
    double h = 0.0;
    std::optional<double> p_prime;
    std::optional<double> lambda;
    int t_grid = kOracleTypePoints;
    int a_grid = kOracleAbilityPoints;
    SweepAxis d_axis{0.0, 1.0, 11};
    SweepAxis p_axis{0.0, 1.0, 11};
    std::size_t workers = 0;  // 0: hardware concurrency
};

int grid_points(const Options& o, const Scenario& s) {
    const int n = o.grid_n > 0 ? o.grid_n : s.grid_n;
    if (n < 2) throw InputError("--grid-n: must be >= 2");
    return n;
}

int cmd_decide(const Options& o, const Scenario& s, std::ostream& out) {
    const auto cost = make_cost(s.cost);
    const AgentDecision d = decide(o.t, s.tech, *cost);
    Row{out} << "t" << "regime" << "ability" << "utility" << "solvable_mass";
    print_decision(out, o.t, d);
    return kExitOk;
}

int cmd_map(const Options& o, const Scenario& s, std::ostream& out) {
    const auto cost = make_cost(s.cost);
    const AbilityMap map = ability_map(s.tech, *cost, grid_points(o, s));
    Row{out} << "t" << "regime" << "ability" << "utility" << "solvable_mass";
    for (const auto& pt : map.points) print_decision(out, pt.t, pt.decision);
    return kExitOk;
}

void threshold_header(std::ostream& out) {
    Row{out} << "T" << "boundary" << "a_s_at_T" << "a_h_at_T" << "gap" << "indifference_residual";
}

void threshold_row(std::ostream& out, const ThresholdResult& r) {
    Row{out} << r.threshold << to_string(r.boundary) << r.solver_ability << r.helper_ability << r.gap
             << r.indifference_residual;
}

int cmd_threshold(const Options&, const Scenario& s, std::ostream& out) {
    const auto cost = make_cost(s.cost);
    const ThresholdResult r = find_threshold(s.tech, *cost);
    threshold_header(out);
    threshold_row(out, r);
    return kExitOk;
}

int cmd_verify(const Options& o, const Scenario& s, std::ostream& out, std::ostream& err) {
    const auto cost = make_cost(s.cost);
    const PropositionReport report = verify_proposition(s.tech, *cost, grid_points(o, s));
    const ThresholdResult& thr = report.threshold;

    auto detail_for = [&](const std::string& clause) {
        for (const auto& f : report.failures)
            if (f.rfind(clause + ":", 0) == 0) return csv_safe(f);
        return std::string();
    };

    Row{out} << "clause" << "passed" << "detail";
    Row{out} << "monotone" << report.monotone << detail_for("monotone");
    Row{out} << "indifferent_at_T" << report.indifferent_at_T
             << "residual=" + format_real(thr.indifference_residual);
    Row{out} << "bracketed" << report.bracketed
             << "a_s=" + format_real(thr.solver_ability) + " d=" + format_real(s.tech.d) +
                    " a_h=" + format_real(thr.helper_ability);
    Row{out} << "gap_positive" << report.gap_positive << "gap=" + format_real(thr.gap);
    Row{out} << "foc_contradiction_check" << report.foc_contradiction_check << detail_for("foc_contradiction_check");
    Row{out} << "gap_function_monotone" << report.gap_function_monotone << detail_for("gap_function_monotone");

    const OracleThreshold oracle = oracle_threshold(s.tech, *cost, o.t_grid, o.a_grid);
    const bool oracle_ok =
        oracle.boundary == Boundary::Interior && std::abs(oracle.threshold - thr.threshold) <= oracle.cell;
    Row{out} << "oracle_threshold" << oracle_ok
             << "T=" + format_real(thr.threshold) + " oracle=" + format_real(oracle.threshold) +
                    " cell=" + format_real(oracle.cell);

    const double resolution = 1.0 / (o.a_grid - 1);
    bool decide_ok = true;
    std::string worst;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const AgentDecision a = decide(t, s.tech, *cost);
        const AgentDecision b = oracle_decide(t, s.tech, *cost, o.a_grid);
        if (a.regime != b.regime || std::abs(a.ability - b.ability) > 2.0 * resolution) {
            decide_ok = false;
            worst = "t=" + format_real(t) + " solver=" + format_real(a.ability) + " oracle=" + format_real(b.ability);
        }
    }
    Row{out} << "oracle_decide" << decide_ok << worst;

    const bool ok = report.all_passed() && oracle_ok && decide_ok;
    if (!ok) {
        for (const auto& f : report.failures) err << "verification failed: " << f << '\n';
        if (!oracle_ok) err << "verification failed: oracle threshold disagrees\n";
        if (!decide_ok) err << "verification failed: oracle decision disagrees (" << worst << ")\n";
    }
    return ok ? kExitOk : kExitVerification;
}

int cmd_statics(const Options& o, const Scenario& s, std::ostream& out, std::ostream& err) {
    const auto cost = make_cost(s.cost);
    const SensitivityReport r = threshold_sensitivity(s.tech, *cost, o.h > 0.0 ? o.h : 1e-4);
    Row{out} << "dT_dp" << "dT_dd" << "criterion_dp" << "criterion_dd" << "analytic_sign_dp"
             << "analytic_sign_dd" << "agree";
    Row{out} << r.dT_dp << r.dT_dd << r.criterion_dp << r.criterion_dd << r.analytic_sign_dp << r.analytic_sign_dd
             << r.agree;
    if (!r.agree) {
        err << "verification failed: numeric and analytic threshold directions disagree\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_reduce(const Options&, const Scenario& s, std::ostream& out, std::ostream& err) {
    if (!s.reduction) throw InputError("reduction: section missing from config");
    const ThresholdShift shift = reduction_threshold_shift(s.tech, make_cost(s.cost), *s.reduction);
    Row{out} << "T_before" << "T_after" << "delta" << "boundary_before" << "boundary_after"
             << "marginal_reduction_positive" << "sign_consistent";
    Row{out} << shift.before << shift.after << shift.delta << to_string(shift.boundary_before)
             << to_string(shift.boundary_after) << shift.marginal_reduction_positive << shift.sign_consistent;
    if (!shift.sign_consistent) {
        err << "verification failed: cost reduction with k' > 0 did not lower the threshold\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_policy(const Options& o, const Scenario& s, std::ostream& out, std::ostream& err) {
    Belief belief;
    if (s.policy) belief = *s.policy;
    if (!s.policy && !o.p_prime) throw InputError("policy.p_prime: missing (config section or --p-prime)");
    if (o.p_prime) belief.p_prime = *o.p_prime;
    if (o.lambda) belief.lambda = *o.lambda;
    belief.validate(s.tech);

    const auto cost = make_cost(s.cost);
    const double lambda_star = optimal_lambda(s.tech.p, belief.p_prime);
    const auto rows = investment_gap_profile(s.tech, *cost, belief, grid_points(o, s));
    Row{out} << "t" << "regime" << "a_misspecified" << "a_true" << "gap" << "lambda" << "p_prime" << "lambda_star";
    for (const auto& r : rows)
        Row{out} << r.t << to_string(r.regime) << r.a_misspecified << r.a_true << r.gap << belief.lambda
                 << belief.p_prime << lambda_star;

    const ThresholdResult tm = misspecified_threshold(s.tech, *cost, belief);
    err << "misspecified threshold T_m = " << format_real(tm.threshold) << " (" << to_string(tm.boundary) << ")\n";
    return kExitOk;
}

int cmd_sweep(const Options& o, const Scenario& s, std::ostream& out) {
    const std::size_t workers = o.workers > 0 ? o.workers : std::max(1u, std::thread::hardware_concurrency());
    const auto rows = sweep(o.d_axis, o.p_axis, s, workers);
    Row{out} << "d" << "p" << "T" << "boundary" << "gap" << "status";
    for (const auto& r : rows) {
        if (r.error.empty())
            Row{out} << r.d << r.p << r.result.threshold << to_string(r.result.boundary) << r.result.gap << "ok";
        else
            Row{out} << r.d << r.p << "nan" << "Error" << "nan" << csv_safe(r.error);
    }
    return kExitOk;
}

}  // namespace

std::string format_real(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", x);
    return buf;
}

double SweepAxis::at(int i) const {
    if (steps == 1) return lo;
    return i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
}

std::vector<SweepRow> sweep(const SweepAxis& d_axis, const SweepAxis& p_axis, const Scenario& scenario,
                            std::size_t workers) {
    if (d_axis.steps < 2 || p_axis.steps < 2) throw InputError("sweep: need >= 2 steps per axis");
    const auto cost = make_cost(scenario.cost);
    const std::size_t n = static_cast<std::size_t>(d_axis.steps) * p_axis.steps;
    std::vector<SweepRow> rows(n);
    parallel_for(n, workers, [&](std::size_t k) {
        SweepRow& row = rows[k];
        row.d = d_axis.at(static_cast<int>(k / p_axis.steps));
        row.p = p_axis.at(static_cast<int>(k % p_axis.steps));
        try {
            row.result = find_threshold(AiTech{row.d, row.p}, *cost);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equilibrium solver for student ability investment under AI access"};
    app.require_subcommand(1);
    Options o;

    auto with_config = [&](CLI::App* sub) {
        sub->add_option("config", o.config, "Scenario file (INI)")->required();
        return sub;
    };
    auto* decide_cmd = with_config(app.add_subcommand("decide", "Regime and ability of one type"));
    decide_cmd->add_option("--t", o.t, "Type in [0,1]")->required();
    auto* map_cmd = with_config(app.add_subcommand("map", "Induced ability mapping A(t)"));
    map_cmd->add_option("--grid-n", o.grid_n, "Number of type grid points");
    with_config(app.add_subcommand("threshold", "Threshold type between regimes"));
    auto* verify_cmd = with_config(app.add_subcommand("verify", "Threshold structure checks and oracle cross-check"));
    verify_cmd->add_option("--grid-n", o.grid_n, "Type grid for the monotonicity check");
    verify_cmd->add_option("--t-grid", o.t_grid, "Oracle type grid points")->check(CLI::Range(2, 1 << 30));
    verify_cmd->add_option("--a-grid", o.a_grid, "Oracle ability grid points")->check(CLI::Range(2, 1 << 30));
    auto* statics_cmd = with_config(app.add_subcommand("statics", "Threshold sensitivity to p and d"));
    statics_cmd->add_option("--step", o.h, "Finite-difference step for T (default 1e-4)");
    with_config(app.add_subcommand("reduce", "Threshold shift under the configured cost reduction"));
    auto* policy_cmd = with_config(app.add_subcommand("policy", "Misspecification gap profile and lambda*"));
    policy_cmd->add_option("--p-prime", o.p_prime, "Perceived accuracy p'");
    policy_cmd->add_option("--lambda", o.lambda, "Weight on AI-permitted assignments");
    policy_cmd->add_option("--grid-n", o.grid_n, "Number of type grid points");
    auto* sweep_cmd = with_config(app.add_subcommand("sweep", "Threshold surface over (d, p)"));
    sweep_cmd->add_option("--d-steps", o.d_axis.steps, "Grid points along d")->check(CLI::Range(2, 1 << 20));
    sweep_cmd->add_option("--p-steps", o.p_axis.steps, "Grid points along p")->check(CLI::Range(2, 1 << 20));
    sweep_cmd->add_option("--d-min", o.d_axis.lo)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--d-max", o.d_axis.hi)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--p-min", o.p_axis.lo)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--p-max", o.p_axis.hi)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--workers", o.workers, "Worker threads (0: all cores)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const Scenario s = load_scenario(o.config);
        if (*decide_cmd) return cmd_decide(o, s, out);
        if (*map_cmd) return cmd_map(o, s, out);
        if (*verify_cmd) return cmd_verify(o, s, out, err);
        if (*statics_cmd) return cmd_statics(o, s, out, err);
        if (*policy_cmd) return cmd_policy(o, s, out, err);
        if (*sweep_cmd) return cmd_sweep(o, s, out);
        if (app.got_subcommand("reduce")) return cmd_reduce(o, s, out, err);
        return cmd_threshold(o, s, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        for (const auto& [t, g] : e.witness()) err << "  t=" << format_real(t) << " value=" << format_real(g) << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace ailearn
