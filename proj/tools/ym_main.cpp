// Command-line driver: exact verification suites, balance series, curve
// analysis, simulation, and the separation/quadrature checks, with
// reproducible JSON/CSV outputs.
//
// Exit codes: 0 all executed checks pass, 1 a mathematical check failed,
// 2 invalid input or configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ym/checks.hpp"
#include "ym/curves.hpp"
#include "ym/integrate.hpp"
#include "ym/separation.hpp"
#include "ym/series.hpp"
#include "ym/systems.hpp"

using json = nlohmann::ordered_json;
using namespace ym;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string system = "4d";
    double a = 1.0;
    double b1 = 1.0, b2 = 0.5;
    double c1 = 1.0, c2 = 0.5, c3 = 0.25;
    std::vector<double> state;
    double t0 = 0.0, t1 = 10.0;
    double rtol = 1e-12, atol = 1e-14;
    double max_step = 0.5, fixed_step = 0.0;
    int order = 12;
    std::string branch = "i";
    unsigned seed = 20240817;
    int draws = 3;
    double cluster_tol = 1e-8;
    std::string out_json;
    std::string out_csv;
    std::string csv_in;
};

class MathCheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void atomic_write(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open output file: " + tmp);
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

Scalar parse_branch(const std::string& b) {
    if (b == "i" || b == "+i") return Scalar::i();
    if (b == "-i") return -Scalar::i();
    throw std::invalid_argument("branch must be i or -i");
}

json check_to_json(const Check& c) {
    json j;
    j["name"] = c.name;
    j["status"] = c.pass ? "pass" : "fail";
    j["residual"] = c.residual;
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

json report_document(unsigned seed, const std::vector<Check>& checks) {
    json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["checks"] = json::array();
    for (auto& c : checks) j["checks"].push_back(check_to_json(c));
    j["environment"] = {{"language", "c++20"}, {"integrator", "dormand-prince-5(4)"}};
    return j;
}

CVec parse_state(const RunConfig& cfg, int dim) {
    if (cfg.state.empty()) {
        // Documented defaults: (1,1,0,0) for 4d and its image under the
        // quadratic morphism for 5d.
        CVec q{{1, 0}, {1, 0}, {0, 0}, {0, 0}};
        return dim == 4 ? q : pushforward_phi(q);
    }
    if (static_cast<int>(cfg.state.size()) != dim)
        throw std::invalid_argument("state must have " + std::to_string(dim) + " components");
    CVec y;
    for (double x : cfg.state) y.emplace_back(x, 0.0);
    return y;
}

IntegratorConfig integrator_config(const RunConfig& cfg) {
    IntegratorConfig ic;
    ic.rtol = cfg.rtol;
    ic.atol = cfg.atol;
    ic.max_step = cfg.max_step;
    ic.fixed_step = cfg.fixed_step;
    return ic;
}

std::string trajectory_csv(const SystemDef& sys, const Trajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    os << "t_re,t_im";
    for (VarId v : sys.state) os << "," << VarTable::name(v) << "_re," << VarTable::name(v) << "_im";
    os << "\n";
    for (size_t i = 0; i < traj.states.size(); ++i) {
        auto t = traj.time_at(i);
        os << t.real() << "," << t.imag();
        for (auto& z : traj.states[i]) os << "," << z.real() << "," << z.imag();
        os << "\n";
    }
    return os.str();
}

Trajectory trajectory_from_csv(const std::string& path, const SystemDef& sys, double a) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read csv: " + path);
    Trajectory traj;
    traj.system = sys.name;
    traj.a = a;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty csv: " + path);
    bool first = true;
    std::complex<double> tfirst;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
        if (static_cast<int>(cells.size()) != 2 + 2 * sys.dim())
            throw std::invalid_argument("csv row has wrong arity for system " + sys.name);
        std::complex<double> t(cells[0], cells[1]);
        CVec y;
        for (int k = 0; k < sys.dim(); ++k)
            y.emplace_back(cells[static_cast<size_t>(2 + 2 * k)], cells[static_cast<size_t>(3 + 2 * k)]);
        if (first) {
            tfirst = t;
            traj.t0 = t;
            first = false;
        }
        traj.nodes.push_back(std::abs(t - tfirst));
        traj.states.push_back(y);
    }
    if (traj.states.empty()) throw std::invalid_argument("csv has no samples");
    return traj;
}

// ---- subcommand payloads ----------------------------------------------------

json balance_json(const RunConfig& cfg) {
    const SystemDef& sys = system_by_name(cfg.system);
    const Scalar eps = parse_branch(cfg.branch);
    if (cfg.order < 8) throw std::invalid_argument("balance order must be >= 8 (the last resonance)");
    Balance b = compute_balance(sys, eps, cfg.order);

    json j;
    j["system"] = sys.name;
    j["epsilon"] = cfg.branch;
    j["order"] = cfg.order;
    json series = json::object();
    for (int i = 0; i < sys.dim(); ++i) {
        json coeffs = json::array();
        const auto& z = b.coords[static_cast<size_t>(i)];
        for (size_t k = 0; k < z.coeffs.size(); ++k) {
            if (z.coeffs[k].is_zero()) continue;
            coeffs.push_back(json::array({z.lead + static_cast<int>(k), z.coeffs[k].str()}));
        }
        series[VarTable::name(sys.state[static_cast<size_t>(i)])] = coeffs;
    }
    j["series"] = series;
    json frees = json::array();
    for (auto& slot : b.inserted) frees.push_back(slot.param);
    j["free_parameters"] = frees;

    const int checkable = cfg.order - (sys.name == "4d" ? 6 : 8);
    auto rep = residual_check(b, std::max(0, checkable));
    j["residual_ok"] = rep.ok;
    j["residual_checked_to"] = rep.checked_to;
    if (!rep.ok) throw MathCheckFailure("balance residual nonzero: " + rep.witness.str());
    return j;
}

json curve_report_json(const CurveRelation& c, const std::map<VarId, std::complex<double>>& params,
                       double tol) {
    BranchReport r = count_branch_points(c, params, tol);
    json j;
    j["curve_id"] = c.id;
    if (!c.eps.is_zero()) j["epsilon"] = c.eps == Scalar::i() ? "i" : "-i";
    json pj = json::object();
    for (auto& [v, val] : params) pj[VarTable::name(v)] = {val.real(), val.imag()};
    j["params"] = pj;
    j["n_sheets"] = r.sheets;
    json bp = json::array();
    for (auto& z : r.branch_points) bp.push_back({z.real(), z.imag()});
    j["branch_points"] = bp;
    j["infinity_branched"] = r.infinity_branched;
    j["degenerate"] = r.degenerate;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.degenerate) j["genus"] = r.genus;
    return j;
}

json curves_json(const RunConfig& cfg, const std::string& curve_id, bool* failed) {
    const Scalar eps = parse_branch(cfg.branch);
    CurveRelation curve;
    std::map<VarId, std::complex<double>> params;
    params[VarTable::intern("a")] = cfg.a;
    if (curve_id == "balance-4d" || curve_id == "gamma") {
        curve = curve_from_balance(compute_balance(sys4(), eps, 8));
        if (curve_id == "gamma") curve = quotient_to_gamma(curve);
        params[VarTable::intern("b1")] = cfg.b1;
        params[VarTable::intern("b2")] = cfg.b2;
    } else if (curve_id == "balance-5d") {
        curve = curve_from_balance(compute_balance(sys5(), eps, 8));
        params[VarTable::intern("c1")] = cfg.c1;
        params[VarTable::intern("c2")] = cfg.c2;
        params[VarTable::intern("c3")] = cfg.c3;
    } else if (curve_id == "p6") {
        curve = separation_curve();
        params[VarTable::intern("b1")] = cfg.b1;
        params[VarTable::intern("b2")] = cfg.b2;
    } else {
        throw std::invalid_argument("unknown curve id: " + curve_id +
                                    " (expected balance-4d, balance-5d, gamma, p6)");
    }

    json out;
    out["relation"] = curve.rel.str();
    json reports = json::array();
    reports.push_back(curve_report_json(curve, params, cfg.cluster_tol));

    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int d = 1; d < cfg.draws; ++d) {
        auto drawn = params;
        for (auto& [v, val] : drawn) val = {U(rng), U(rng)};
        reports.push_back(curve_report_json(curve, drawn, cfg.cluster_tol));
    }
    out["reports"] = reports;
    for (auto& r : reports)
        if (r["degenerate"].get<bool>()) *failed = true;
    return out;
}

json drift_json(const SystemDef& sys, const Trajectory& traj) {
    auto drift = invariant_drift(sys, traj);
    json j;
    j["system"] = sys.name;
    j["a"] = {traj.a.real(), traj.a.imag()};
    j["steps"] = traj.steps();
    j["truncated"] = traj.truncated;
    if (traj.truncated) j["diagnostic"] = traj.diagnostic;
    json inv = json::array();
    for (size_t i = 0; i < drift.names.size(); ++i) {
        inv.push_back({{"name", drift.names[i]},
                       {"max_abs_drift", drift.max_abs[i]},
                       {"max_rel_drift", drift.max_rel[i]}});
    }
    j["invariants"] = inv;
    return j;
}

json separation_json(const Trajectory& traj) {
    auto samples = separation_coordinates(traj);
    auto rep = p6_residual(traj);
    json j;
    j["samples"] = samples.size();
    j["flagged"] = rep.flagged;
    double worst_closure = 0.0;
    for (auto& s : samples)
        if (!s.degenerate) worst_closure = std::max(worst_closure, s.closure);
    j["max_closure_residual"] = worst_closure;
    j["p6_max_residual"] = rep.max_residual;
    j["b1"] = {rep.b1.real(), rep.b1.imag()};
    j["b2"] = {rep.b2.real(), rep.b2.imag()};
    return j;
}

json quadrature_json(const Trajectory& traj) {
    auto rep = quadrature_linearization(traj, BranchMode::principal);
    auto cross = quadrature_linearization(traj, BranchMode::dynamical);
    json j;
    j["xi1_deviation"] = rep.xi1_deviation;
    j["xi2_deviation"] = rep.xi2_deviation;
    j["slope"] = rep.slope;
    j["sheet_sign_1"] = rep.sheet_sign_1;
    j["sheet_sign_2"] = rep.sheet_sign_2;
    j["panels"] = rep.panels;
    j["crosscheck_dynamical"] = {{"xi1_deviation", cross.xi1_deviation},
                                 {"xi2_deviation", cross.xi2_deviation},
                                 {"slope", cross.slope}};
    return j;
}

// The end-to-end report: every suite, one JSON document.
json full_report(const RunConfig& cfg, bool* failed) {
    std::vector<Check> checks = run_exact_suite();

    auto add = [&](const std::string& name, bool pass, double residual, const std::string& witness = "") {
        Check c;
        c.name = name;
        c.pass = pass;
        c.residual = residual;
        c.witness = witness;
        checks.push_back(c);
    };

    // Balance reproduction and residuals, both branches, both systems.
    for (const auto* sys : {&sys4(), &sys5()}) {
        for (const char* br : {"i", "-i"}) {
            RunConfig c2 = cfg;
            c2.system = sys->name;
            c2.branch = br;
            c2.order = 16 + (sys->name == "4d" ? 6 : 8);
            json bj = balance_json(c2);
            add("balance-residual-" + sys->name + "-eps-" + br, bj["residual_ok"].get<bool>(), 0.0);
        }
    }

    // Curves: genus counts over the seeded draws.
    for (const char* id : {"balance-4d", "balance-5d", "gamma", "p6"}) {
        bool bad = false;
        json cj = curves_json(cfg, id, &bad);
        const int expect = std::string(id) == "balance-4d" ? 4 : 2;
        bool ok = !bad;
        for (auto& r : cj["reports"])
            ok = ok && !r["degenerate"].get<bool>() && r["genus"].get<int>() == expect;
        add(std::string("curve-genus-") + id, ok, 0.0);
    }

    // Numerics: invariant drift for both flows.
    for (const auto* sys : {&sys4(), &sys5()}) {
        RunConfig c2 = cfg;
        c2.system = sys->name;
        Trajectory traj = integrate(*sys, parse_state(c2, sys->dim()), c2.a, c2.t0, c2.t1,
                                    integrator_config(c2));
        auto drift = invariant_drift(*sys, traj);
        add("invariant-drift-" + sys->name, !traj.truncated && drift.worst_rel <= 1e-8,
            drift.worst_rel);
    }

    // Separation, quadrature, commutation on the 4d default trajectory.
    {
        RunConfig c2 = cfg;
        c2.system = "4d";
        Trajectory traj = integrate(sys4(), parse_state(c2, 4), c2.a, c2.t0, c2.t1, integrator_config(c2));
        auto p6 = p6_residual(traj);
        add("separation-p6-identity", p6.max_residual <= 1e-6, p6.max_residual);
        auto q = quadrature_linearization(traj);
        add("abel-quadrature-xi1-constant", q.xi1_deviation <= 1e-6, q.xi1_deviation);
        add("abel-quadrature-xi2-linear", q.xi2_deviation <= 1e-6, q.xi2_deviation,
            "slope " + std::to_string(q.slope));
        double disc = flows_commute_numeric(parse_state(RunConfig{}, 5), cfg.a, 0.5, 0.5,
                                            integrator_config(cfg));
        add("flows-commute", disc <= 1e-6, disc);
    }

    for (auto& c : checks)
        if (!c.pass) *failed = true;
    return report_document(cfg.seed, checks);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced SU(2) Yang-Mills integrable system: exact verification, "
                 "balance series, curves, and numerics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value configuration file; flags override file values");

    RunConfig cfg;
    app.add_option("--system", cfg.system, "System selector: 4d or 5d")
        ->check(CLI::IsMember({"4d", "5d"}));
    app.add_option("--a", cfg.a, "Coupling parameter a");
    app.add_option("--b1", cfg.b1, "Invariant value b1 (4d curves)");
    app.add_option("--b2", cfg.b2, "Invariant value b2 (4d curves)");
    app.add_option("--c1", cfg.c1, "Invariant value c1 (5d curve)");
    app.add_option("--c2", cfg.c2, "Invariant value c2 (5d curve)");
    app.add_option("--c3", cfg.c3, "Invariant value c3 (5d curve)");
    app.add_option("--state", cfg.state, "Initial state components (comma separated)")->delimiter(',');
    app.add_option("--t0", cfg.t0, "Start time");
    app.add_option("--t1", cfg.t1, "End time");
    app.add_option("--rtol", cfg.rtol, "Relative tolerance");
    app.add_option("--atol", cfg.atol, "Absolute tolerance");
    app.add_option("--max-step", cfg.max_step, "Maximum step size");
    app.add_option("--fixed-step", cfg.fixed_step, "Fixed step size (disables adaptivity)");
    app.add_option("--order", cfg.order, "Balance truncation order in tau (tau^2 = t)");
    app.add_option("--branch", cfg.branch, "Branch epsilon: i or -i");
    app.add_option("--seed", cfg.seed, "Seed for randomized parameter draws");
    app.add_option("--draws", cfg.draws, "Number of seeded parameter draws for curve reports");
    app.add_option("--cluster-tol", cfg.cluster_tol, "Root clustering tolerance");
    app.add_option("--json", cfg.out_json, "JSON output path (default: stdout)");
    app.add_option("--csv", cfg.out_csv, "CSV output path (trajectories)");
    app.add_option("--csv-in", cfg.csv_in,
                   "Read the trajectory from this CSV instead of integrating (separate only)");

    auto* cmd_verify = app.add_subcommand("verify", "Run the exact identity suite");
    auto* cmd_balance = app.add_subcommand("balance", "Compute the Puiseux balance series");
    auto* cmd_curves = app.add_subcommand("curves", "Branch points and genus of the model curves");
    std::string curve_id = "balance-4d";
    cmd_curves->add_option("--curve", curve_id, "balance-4d | balance-5d | gamma | p6");
    auto* cmd_simulate = app.add_subcommand("simulate", "Integrate a flow; write trajectory CSV + drift JSON");
    auto* cmd_separate = app.add_subcommand("separate", "Separation coordinates and the P6 identity");
    auto* cmd_quadrature = app.add_subcommand(
        "quadrature", "Abel-map quadratures (always integrates afresh; needs dense output)");
    auto* cmd_report = app.add_subcommand("report", "Run everything and write a single JSON document");
    for (auto* sub : {cmd_verify, cmd_balance, cmd_curves, cmd_simulate, cmd_separate,
                      cmd_quadrature, cmd_report})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (double x : {cfg.a, cfg.b1, cfg.b2, cfg.c1, cfg.c2, cfg.c3, cfg.t0, cfg.t1, cfg.rtol,
                         cfg.atol, cfg.max_step, cfg.fixed_step, cfg.cluster_tol})
            if (!std::isfinite(x)) throw std::invalid_argument("numeric options must be finite");
        for (double x : cfg.state)
            if (!std::isfinite(x)) throw std::invalid_argument("state components must be finite");

        bool failed = false;
        if (app.got_subcommand(cmd_verify)) {
            auto checks = run_exact_suite();
            failed = !all_pass(checks);
            json doc = report_document(cfg.seed, checks);
            // Canonical text of the verified definitions, for the record.
            json defs = json::object();
            for (const auto* sys : {&sys4(), &sys5()}) {
                json d;
                json field = json::array();
                for (auto& f : sys->field) field.push_back(f.str());
                d["field"] = field;
                json invs = json::object();
                for (auto& [name, inv] : sys->invariants) invs[name] = inv.str();
                d["invariants"] = invs;
                defs[sys->name] = d;
            }
            doc["systems"] = defs;
            atomic_write(cfg.out_json, doc.dump(2) + "\n");
        } else if (app.got_subcommand(cmd_balance)) {
            atomic_write(cfg.out_json, balance_json(cfg).dump(2) + "\n");
        } else if (app.got_subcommand(cmd_curves)) {
            atomic_write(cfg.out_json, curves_json(cfg, curve_id, &failed).dump(2) + "\n");
        } else if (app.got_subcommand(cmd_simulate)) {
            const SystemDef& sys = system_by_name(cfg.system);
            Trajectory traj = integrate(sys, parse_state(cfg, sys.dim()), cfg.a, cfg.t0, cfg.t1,
                                        integrator_config(cfg));
            if (!cfg.out_csv.empty()) atomic_write(cfg.out_csv, trajectory_csv(sys, traj));
            atomic_write(cfg.out_json, drift_json(sys, traj).dump(2) + "\n");
            failed = traj.truncated;
        } else if (app.got_subcommand(cmd_separate)) {
            Trajectory traj = cfg.csv_in.empty()
                                  ? integrate(sys4(), parse_state(cfg, 4), cfg.a, cfg.t0, cfg.t1,
                                              integrator_config(cfg))
                                  : trajectory_from_csv(cfg.csv_in, sys4(), cfg.a);
            json j = separation_json(traj);
            failed = j["p6_max_residual"].get<double>() > 1e-6;
            atomic_write(cfg.out_json, j.dump(2) + "\n");
        } else if (app.got_subcommand(cmd_quadrature)) {
            if (!cfg.csv_in.empty())
                throw std::invalid_argument("quadrature integrates afresh; --csv-in is not supported here");
            Trajectory traj = integrate(sys4(), parse_state(cfg, 4), cfg.a, cfg.t0, cfg.t1,
                                        integrator_config(cfg));
            json j = quadrature_json(traj);
            failed = j["xi1_deviation"].get<double>() > 1e-6 || j["xi2_deviation"].get<double>() > 1e-6;
            atomic_write(cfg.out_json, j.dump(2) + "\n");
        } else if (app.got_subcommand(cmd_report)) {
            atomic_write(cfg.out_json, full_report(cfg, &failed).dump(2) + "\n");
        }
        return failed ? 1 : 0;
    } catch (const MathCheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
