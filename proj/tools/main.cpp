#include "sodehelm/helmholtz.hpp"
#include "sodehelm/numeric.hpp"
#include "sodehelm/spencer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;
using namespace sodehelm;

namespace {

// exit codes: 0 success/confirmed, 1 usage or parse error, 2 checks ran and
// failed, 3 inconclusive
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitInconclusive = 3;

struct ProblemFile {
    int n = 0;
    std::optional<std::vector<std::string>> G;
    std::optional<std::string> theta0;
    std::optional<std::vector<std::string>> theta;
    std::optional<std::string> L;
    ZeroTestConfig cfg;
    double step = 1e-3;
    int steps = 1000;
};

class CliError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw CliError("unknown key '" + it.key() + "' in " + where);
    }
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open problem file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CliError("problem file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw CliError("problem file must be a JSON object");
    reject_unknown_keys(doc, {"n", "G", "theta", "L", "config"}, "problem file");

    ProblemFile pf;
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw CliError("problem file: missing integer field 'n'");
    pf.n = doc["n"].get<int>();
    if (pf.n < 1) throw CliError("problem file: n must be >= 1");

    if (doc.contains("G")) {
        if (!doc["G"].is_array()) throw CliError("problem file: 'G' must be an array of strings");
        std::vector<std::string> g;
        for (const auto& item : doc["G"]) {
            if (!item.is_string()) throw CliError("problem file: 'G' must be an array of strings");
            g.push_back(item.get<std::string>());
        }
        if (static_cast<int>(g.size()) != pf.n)
            throw CliError("problem file: 'G' must list exactly n = " + std::to_string(pf.n) +
                           " expressions");
        pf.G = std::move(g);
    }

    if (doc.contains("theta")) {
        const json& th = doc["theta"];
        if (!th.is_object()) throw CliError("problem file: 'theta' must be an object");
        reject_unknown_keys(th, {"theta0", "theta"}, "theta");
        if (!th.contains("theta0") || !th["theta0"].is_string())
            throw CliError("problem file: theta.theta0 must be a string");
        if (!th.contains("theta") || !th["theta"].is_array())
            throw CliError("problem file: theta.theta must be an array of strings");
        std::vector<std::string> comps;
        for (const auto& item : th["theta"]) {
            if (!item.is_string()) throw CliError("problem file: theta.theta entries must be strings");
            comps.push_back(item.get<std::string>());
        }
        if (static_cast<int>(comps.size()) != pf.n)
            throw CliError("problem file: theta.theta must list exactly n components");
        pf.theta0 = th["theta0"].get<std::string>();
        pf.theta = std::move(comps);
    }

    if (doc.contains("L")) {
        if (!doc["L"].is_string()) throw CliError("problem file: 'L' must be a string");
        pf.L = doc["L"].get<std::string>();
    }

    if (doc.contains("config")) {
        const json& c = doc["config"];
        if (!c.is_object()) throw CliError("problem file: 'config' must be an object");
        reject_unknown_keys(c, {"seed", "samples", "box", "tolerance", "step", "steps"}, "config");
        if (c.contains("seed")) pf.cfg.seed = c["seed"].get<std::uint64_t>();
        if (c.contains("samples")) pf.cfg.sample_count = c["samples"].get<int>();
        if (c.contains("tolerance")) pf.cfg.tolerance = c["tolerance"].get<double>();
        if (c.contains("box")) {
            if (!c["box"].is_array() || c["box"].size() != 2)
                throw CliError("problem file: config.box must be [lo, hi]");
            pf.cfg.box_lo = c["box"][0].get<double>();
            pf.cfg.box_hi = c["box"][1].get<double>();
            if (!(pf.cfg.box_lo < pf.cfg.box_hi))
                throw CliError("problem file: config.box must be a nonempty interval");
        }
        if (c.contains("step")) pf.step = c["step"].get<double>();
        if (c.contains("steps")) pf.steps = c["steps"].get<int>();
    }
    if (pf.cfg.sample_count < 1) throw CliError("problem file: config.samples must be >= 1");
    if (pf.cfg.tolerance <= 0) throw CliError("problem file: config.tolerance must be positive");
    return pf;
}

json config_json(const ProblemFile& pf) {
    json c;
    c["seed"] = pf.cfg.seed;
    c["samples"] = pf.cfg.sample_count;
    c["box"] = {pf.cfg.box_lo, pf.cfg.box_hi};
    c["tolerance"] = pf.cfg.tolerance;
    c["step"] = pf.step;
    c["steps"] = pf.steps;
    return c;
}

json matrix_json(const std::vector<std::vector<Expr>>& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& e : row) r.push_back(to_string(e));
        out.push_back(r);
    }
    return out;
}

json report_json(const HelmholtzReport& rep) {
    json r;
    r["dJ_zero"] = rep.dJ_zero;
    r["dh_zero"] = rep.dh_zero;
    r["dR_zero"] = rep.dR_zero;
    r["rank_dtheta"] = rep.rank_dtheta;
    r["regular"] = rep.regular;
    r["verdict"] = to_string(rep.verdict);
    r["details"] = rep.details;
    return r;
}

void emit(const json& report, const std::string& json_out) {
    if (json_out.empty()) return;
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw CliError("cannot write report to " + json_out);
    out << report.dump(2) << "\n";
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::LagrangianConfirmed:
        case Verdict::FormallyIntegrableClass:
            return kExitOk;
        case Verdict::ObstructionFails:
            return kExitFailed;
        case Verdict::Inconclusive:
            return kExitInconclusive;
    }
    return kExitInconclusive;
}

Semispray require_semispray(const ProblemFile& pf) {
    if (!pf.G) throw CliError("problem file: 'G' is required for this command");
    return make_semispray(pf.n, *pf.G);
}

SemiBasicOneForm require_theta(const ProblemFile& pf) {
    if (!pf.theta0 || !pf.theta)
        throw CliError("problem file: 'theta' is required for this command");
    SemiBasicOneForm th;
    th.theta0 = parse(*pf.theta0, pf.n);
    for (const auto& s : *pf.theta) th.theta.push_back(parse(s, pf.n));
    return th;
}

int cmd_analyze(const ProblemFile& pf, const std::string& json_out) {
    Semispray S = require_semispray(pf);
    Connection N = connection(S);
    Curvature R = curvature(S);
    ClassificationReport cls = classify(S, pf.cfg);
    auto identities = structure_identities(S, pf.cfg);

    json rep;
    rep["command"] = "analyze";
    rep["n"] = pf.n;
    rep["config"] = config_json(pf);
    rep["connection"] = {{"N_spatial", matrix_json(N.spatial)}, {"N_time", json::array()}};
    for (const auto& e : N.time) rep["connection"]["N_time"].push_back(to_string(e));
    rep["jacobi_endomorphism"] = matrix_json(R.phi);
    rep["curvature_R3"] = json::array();
    for (const auto& block : R.r3) rep["curvature_R3"].push_back(matrix_json(block));
    rep["structure_identities"] = json::array();
    bool identities_ok = true;
    for (const auto& c : identities) {
        rep["structure_identities"].push_back(
            {{"name", c.name}, {"passed", c.passed}, {"max_residual", c.max_residual}});
        identities_ok = identities_ok && c.passed;
    }
    json cj;
    cj["is_flat"] = cls.is_flat;
    cj["is_isotropic"] = cls.is_isotropic;
    cj["inconclusive"] = cls.inconclusive;
    if (cls.lambda) cj["lambda"] = to_string(*cls.lambda);
    if (cls.alpha) {
        cj["alpha"] = json::array();
        for (const auto& a : *cls.alpha) cj["alpha"].push_back(to_string(a));
    }
    cj["notes"] = cls.notes;
    rep["classification"] = cj;
    emit(rep, json_out);

    std::cout << "semispray (n = " << pf.n << ")\n";
    for (int i = 0; i < pf.n; ++i)
        std::cout << "  G^" << i + 1 << " = " << to_string(S.coefficient[i]) << "\n";
    std::cout << "connection N^i_j:\n";
    for (int i = 0; i < pf.n; ++i) {
        std::cout << "  ";
        for (int j = 0; j < pf.n; ++j) std::cout << "[" << to_string(N.spatial[i][j]) << "] ";
        std::cout << "\n";
    }
    std::cout << "Jacobi endomorphism Phi^i_j:\n";
    for (int i = 0; i < pf.n; ++i) {
        std::cout << "  ";
        for (int j = 0; j < pf.n; ++j) std::cout << "[" << to_string(R.phi[i][j]) << "] ";
        std::cout << "\n";
    }
    std::cout << "flat: " << (cls.is_flat ? "yes" : "no")
              << ", isotropic: " << (cls.is_isotropic ? "yes" : "no") << "\n";
    if (cls.lambda) std::cout << "lambda = " << to_string(*cls.lambda) << "\n";
    for (const auto& note : cls.notes) std::cout << "note: " << note << "\n";
    for (const auto& c : identities)
        std::cout << (c.passed ? "  [ok]   " : "  [FAIL] ") << c.name
                  << " (residual " << c.max_residual << ")\n";

    if (cls.inconclusive) return kExitInconclusive;
    return identities_ok ? kExitOk : kExitFailed;
}

int cmd_check_theta(const ProblemFile& pf, const std::string& json_out) {
    Semispray S = require_semispray(pf);
    SemiBasicOneForm theta = require_theta(pf);
    HelmholtzReport hr = variationality_verdict(S, theta, pf.cfg);

    json rep;
    rep["command"] = "check-theta";
    rep["n"] = pf.n;
    rep["config"] = config_json(pf);
    rep["report"] = report_json(hr);
    if (hr.verdict == Verdict::LagrangianConfirmed)
        rep["reconstructed_lagrangian"] = to_string(contract_S(theta));
    emit(rep, json_out);

    std::cout << "verdict: " << to_string(hr.verdict) << "\n";
    for (const auto& d : hr.details) std::cout << "  " << d << "\n";
    if (hr.verdict == Verdict::LagrangianConfirmed)
        std::cout << "reconstructed L = " << to_string(contract_S(theta)) << "\n";
    return verdict_exit_code(hr.verdict);
}

int cmd_check_lagrangian(const ProblemFile& pf, const std::string& json_out) {
    if (!pf.L) throw CliError("problem file: 'L' is required for check-lagrangian");
    Expr L = parse(*pf.L, pf.n);
    MetricReport metric = metric_tensor(L, pf.n, pf.cfg);

    json rep;
    rep["command"] = "check-lagrangian";
    rep["n"] = pf.n;
    rep["config"] = config_json(pf);
    rep["metric"] = {{"g", matrix_json(metric.g)},
                     {"regular", metric.verdict == Regularity::Regular},
                     {"min_rank", metric.min_rank},
                     {"max_rank", metric.max_rank}};

    if (metric.verdict != Regularity::Regular) {
        rep["verdict"] = "Inconclusive";
        rep["details"] = {metric.verdict == Regularity::Singular
                              ? "metric tensor is degenerate (rank < n)"
                              : "metric regularity test inconclusive"};
        emit(rep, json_out);
        std::cout << "verdict: Inconclusive (degenerate metric)\n";
        return kExitInconclusive;
    }

    if (!pf.G && pf.n > 3) {
        // numeric mode: no symbolic metric inversion beyond n = 3; integrate
        // the Euler-Lagrange semispray numerically and report the residual
        auto accel = lagrangian_geodesic_rhs(L, pf.n);
        auto starts = sample_points(pf.cfg.seed, 10, pf.cfg.box_lo, pf.cfg.box_hi, pf.n);
        double max_residual = 0.0;
        int integrated = 0;
        for (const auto& start : starts) {
            Trajectory traj = integrate_geodesic(pf.n, accel, start, pf.step, pf.steps);
            if (traj.domain_error) continue;
            max_residual = std::max(max_residual, euler_lagrange_residual(L, pf.n, traj));
            ++integrated;
        }
        rep["euler_lagrange"] = {{"trajectories", integrated},
                                 {"max_residual", max_residual},
                                 {"bound", 1e-6},
                                 {"passed", integrated > 0 && max_residual <= 1e-6}};
        rep["verdict"] = "Inconclusive";
        rep["details"] = {"n > 3: symbolic Helmholtz checks need an explicit G (numeric "
                          "Euler-Lagrange residual reported)"};
        emit(rep, json_out);
        std::cout << "verdict: Inconclusive (numeric mode, n > 3)\n"
                  << "  EL residual (max over " << integrated
                  << " trajectories): " << max_residual << "\n";
        return kExitInconclusive;
    }

    Semispray S;
    bool derived = false;
    if (pf.G) {
        S = make_semispray(pf.n, *pf.G);
    } else {
        S = semispray_from_lagrangian(L, pf.n, pf.cfg);
        derived = true;
    }
    rep["semispray"] = json::array();
    for (const auto& g : S.coefficient) rep["semispray"].push_back(to_string(g));
    rep["semispray_derived_from_L"] = derived;

    HelmholtzReport hr = verify_lagrangian(L, S, pf.cfg);

    // numeric cross-check: Euler-Lagrange residual along seeded trajectories
    const int trajectories = 10;
    auto starts = sample_points(pf.cfg.seed, trajectories, pf.cfg.box_lo, pf.cfg.box_hi, pf.n);
    double max_residual = 0.0;
    int integrated = 0;
    for (const auto& start : starts) {
        Trajectory traj = integrate_geodesic(S, start, pf.step, pf.steps);
        if (traj.domain_error) continue;
        max_residual = std::max(max_residual, euler_lagrange_residual(L, pf.n, traj));
        ++integrated;
    }
    const double el_bound = 1e-6;
    bool el_ok = integrated > 0 && max_residual <= el_bound;
    rep["euler_lagrange"] = {{"trajectories", integrated},
                             {"max_residual", max_residual},
                             {"bound", el_bound},
                             {"passed", el_ok}};
    if (hr.verdict == Verdict::LagrangianConfirmed && !el_ok) {
        hr.verdict = Verdict::ObstructionFails;
        hr.details.push_back("numeric Euler-Lagrange residual exceeds bound");
    }
    rep["report"] = report_json(hr);
    emit(rep, json_out);

    std::cout << "verdict: " << to_string(hr.verdict) << "\n";
    if (derived)
        for (int i = 0; i < pf.n; ++i)
            std::cout << "  derived G^" << i + 1 << " = " << to_string(S.coefficient[i]) << "\n";
    std::cout << "  EL residual (max over " << integrated << " trajectories): " << max_residual
              << "\n";
    for (const auto& d : hr.details) std::cout << "  " << d << "\n";
    return verdict_exit_code(hr.verdict);
}

int cmd_symbol_dims(int n_max, const std::string& json_out) {
    json rep;
    rep["command"] = "symbol-dims";
    rep["rows"] = json::array();
    bool all_ok = true;

    std::cout << "  n   dim g1   dim g2   chain                     coker   exact\n";
    for (int n = 1; n <= n_max; ++n) {
        auto chain = spencer::quasi_regular_chain(n);
        long long g1 = spencer::kernel_dim(spencer::sigma1(n));
        long long g2 = spencer::kernel_dim(spencer::sigma2(n));
        long long chain_sum = 0;
        for (int v : chain) chain_sum += v;
        auto coker = spencer::cokernel_dim(n);
        auto tau = spencer::tau_maps(n);

        bool ok = g1 == spencer::g1_dim_closed(n) && g2 == spencer::g2_dim_closed(n) &&
                  chain_sum == g2 && chain[0] == g1 && coker.agree && tau.tau_sigma2_zero &&
                  tau.middle_exact && tau.tau_onto;
        all_ok = all_ok && ok;

        json row;
        row["n"] = n;
        row["g1"] = g1;
        row["g2"] = g2;
        row["chain"] = std::vector<int>(chain.begin() + 1, chain.end());
        row["chain_sum"] = chain_sum;
        row["cokernel"] = coker.computed;
        row["cokernel_closed_form"] = coker.closed_form;
        row["tau_sigma2_zero"] = tau.tau_sigma2_zero;
        row["middle_exact"] = tau.middle_exact;
        row["tau_onto"] = tau.tau_onto;
        row["all_checks_pass"] = ok;
        rep["rows"].push_back(row);

        std::cout << "  " << n << "   " << g1 << "   " << g2 << "   (";
        for (std::size_t k = 1; k < chain.size(); ++k)
            std::cout << (k > 1 ? "," : "") << chain[k];
        std::cout << ")   " << coker.computed << "   " << (ok ? "pass" : "FAIL") << "\n";
    }
    rep["all_checks_pass"] = all_ok;
    emit(rep, json_out);
    return all_ok ? kExitOk : kExitFailed;
}

int cmd_geodesic(const ProblemFile& pf, const std::string& start_text, double step, int steps,
                 const std::string& json_out) {
    Semispray S = require_semispray(pf);
    Point start;
    {
        std::vector<double> vals;
        std::string token;
        for (char c : start_text + ",") {
            if (c == ',') {
                if (!token.empty()) vals.push_back(std::stod(token));
                token.clear();
            } else {
                token += c;
            }
        }
        if (static_cast<int>(vals.size()) != 2 * pf.n + 1)
            throw CliError("--start must list t,x1..xn,y1..yn (" +
                           std::to_string(2 * pf.n + 1) + " values)");
        start.t = vals[0];
        start.x.assign(vals.begin() + 1, vals.begin() + 1 + pf.n);
        start.y.assign(vals.begin() + 1 + pf.n, vals.end());
    }
    Trajectory traj = integrate_geodesic(S, start, step, steps);
    std::cout << format_trajectory(traj);

    json rep;
    rep["command"] = "geodesic";
    rep["n"] = pf.n;
    rep["config"] = config_json(pf);
    rep["step"] = step;
    rep["steps"] = steps;
    rep["status"] = traj.domain_error ? "domain_error" : "ok";
    rep["truncated_at_step"] = traj.truncated_at_step;
    rep["samples"] = traj.samples.size();
    rep["consistency_residual"] = traj.consistency_residual;
    emit(rep, json_out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz-condition toolkit for time-dependent SODEs"};
    app.require_subcommand(1);

    std::string file, json_out, start_text;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> tol;
    int n_max = 6;
    std::optional<double> step;
    std::optional<int> steps;

    auto add_common = [&](CLI::App* cmd, bool needs_file) {
        if (needs_file) cmd->add_option("--file", file, "problem file (JSON)")->required();
        cmd->add_option("--json-out", json_out, "write the machine report to this path");
        cmd->add_option("--seed", seed, "override config.seed");
        cmd->add_option("--samples", samples, "override config.samples");
        cmd->add_option("--tol", tol, "override config.tolerance");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "geometry dump + classification");
    add_common(analyze, true);
    CLI::App* check_theta = app.add_subcommand("check-theta", "check a candidate 1-form");
    add_common(check_theta, true);
    CLI::App* check_lagrangian =
        app.add_subcommand("check-lagrangian", "verify a Lagrangian against the semispray");
    add_common(check_lagrangian, true);
    CLI::App* symbol_dims =
        app.add_subcommand("symbol-dims", "exact symbol dimension table for n = 1..n-max");
    symbol_dims->add_option("--n-max", n_max, "largest dimension in the table")
        ->check(CLI::Range(1, 12));
    symbol_dims->add_option("--json-out", json_out, "write the machine report to this path");
    CLI::App* geodesic = app.add_subcommand("geodesic", "integrate geodesics, print trajectory");
    add_common(geodesic, true);
    geodesic->add_option("--start", start_text, "start point t,x1..xn,y1..yn")->required();
    geodesic->add_option("--step", step, "integration step");
    geodesic->add_option("--steps", steps, "number of steps");

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        int code = kExitUsage;
        if (symbol_dims->parsed()) {
            code = cmd_symbol_dims(n_max, json_out);
        } else {
            ProblemFile pf = load_problem(file);
            if (seed) pf.cfg.seed = *seed;
            if (samples) pf.cfg.sample_count = *samples;
            if (tol) pf.cfg.tolerance = *tol;
            if (step) pf.step = *step;
            if (steps) pf.steps = *steps;
            if (pf.cfg.sample_count < 1) throw CliError("--samples must be >= 1");
            if (pf.cfg.tolerance <= 0) throw CliError("--tol must be positive");
            if (analyze->parsed()) code = cmd_analyze(pf, json_out);
            else if (check_theta->parsed()) code = cmd_check_theta(pf, json_out);
            else if (check_lagrangian->parsed()) code = cmd_check_lagrangian(pf, json_out);
            else if (geodesic->parsed())
                code = cmd_geodesic(pf, start_text, pf.step, pf.steps, json_out);
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "elapsed: " << ms << " ms\n";
        return code;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SingularMetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
