// bench: command-line harness around the solver library.
//
// Subcommands:
//   table    run (method, grid) cells and emit a results table (md/csv/json)
//   analyze  run the spectral parameter pipeline for one instance
//   verify   run the dense verification battery at desk scale
//   gmres    run a single restarted-GMRES experiment
//   export   write a generated system to Matrix Market + JSON sidecar
//
// Exit code is 0 only if every requested run converged (or verification
// passed).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ssts/ssts.hpp"

namespace {

std::vector<int> parse_grids(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<std::string> parse_methods(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

// "table1-opt" | "table1-exp" | "computed" | "a=<v>,w=<v>"
void parse_params(const std::string& spec, ssts::ExperimentPlan& plan) {
    if (spec == "table1-opt") {
        plan.params = ssts::ParamSource::table1_opt;
    } else if (spec == "table1-exp") {
        plan.params = ssts::ParamSource::table1_exp;
    } else if (spec == "computed") {
        plan.params = ssts::ParamSource::computed;
    } else {
        plan.params = ssts::ParamSource::explicit_values;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.rfind("a=", 0) == 0) plan.alpha_explicit = std::stod(tok.substr(2));
            else if (tok.rfind("w=", 0) == 0) plan.omega_explicit = std::stod(tok.substr(2));
            else throw CLI::ValidationError("--params", "expected a=<v>,w=<v>, got: " + tok);
        }
    }
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << text;
}

nlohmann::json estimates_json(int example, int m, const ssts::SpectralEstimates& est) {
    return nlohmann::json{
        {"example", example},
        {"m", m},
        {"mode", est.mode == ssts::EigMode::dense ? "dense" : "lanczos"},
        {"eta_min", est.eta_min},
        {"eta_max", est.eta_max},
        {"mu_min", est.mu_min},
        {"mu_max", est.mu_max},
        {"alpha_opt", est.alpha_opt},
        {"omega_opt", est.omega_opt},
        {"rho_opt", est.rho_opt},
        {"omega_mu", est.omega_mu}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark harness for block two-by-two splitting solvers"};
    app.require_subcommand(1);

    // ---- table ----
    auto* table_cmd = app.add_subcommand("table", "run solver cells and emit a results table");
    int t_example = 1;
    std::string t_grids = "16,32,64,128,256";
    std::string t_methods = "ssts";
    std::string t_params = "table1-opt";
    double t_tol = 1e-6;
    int t_max_iters = 5000;
    int t_restart = 10;
    std::string t_format = "md";
    std::string t_out;
    table_cmd->add_option("--example", t_example, "benchmark example: 1 or 2 (0 = synthetic)");
    table_cmd->add_option("--grids", t_grids, "comma-separated grid sides");
    table_cmd->add_option("--methods", t_methods,
                          "comma-separated: mhss,sbts,psbts,ssts,gmres,ssts-gmres");
    table_cmd->add_option("--params", t_params, "table1-opt | table1-exp | computed | a=<v>,w=<v>");
    table_cmd->add_option("--tol", t_tol, "outer relative-residual tolerance");
    table_cmd->add_option("--max-iters", t_max_iters, "sweep cap (GMRES: cycle cap)");
    table_cmd->add_option("--restart", t_restart, "GMRES restart length");
    table_cmd->add_option("--format", t_format, "md | csv | json");
    table_cmd->add_option("--out", t_out, "output path (stdout if omitted)");

    // ---- analyze ----
    auto* analyze_cmd = app.add_subcommand("analyze", "spectral parameter pipeline for one instance");
    int a_example = 1;
    int a_m = 16;
    analyze_cmd->add_option("--example", a_example, "benchmark example: 1 or 2")->required();
    analyze_cmd->add_option("--m", a_m, "grid side")->required();

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "dense spectral verification battery (m <= 16)");
    int v_example = 1;
    int v_m = 4;
    verify_cmd->add_option("--example", v_example, "benchmark example: 1 or 2 (0 = synthetic)")->required();
    verify_cmd->add_option("--m", v_m, "grid side (<= 16)")->required();

    // ---- gmres ----
    auto* gmres_cmd = app.add_subcommand("gmres", "single restarted-GMRES experiment");
    int g_example = 1;
    int g_m = 16;
    int g_restart = 10;
    std::string g_precond = "none";
    std::string g_params = "opt";
    double g_tol = 1e-6;
    gmres_cmd->add_option("--example", g_example, "benchmark example: 1 or 2")->required();
    gmres_cmd->add_option("--m", g_m, "grid side")->required();
    gmres_cmd->add_option("--restart", g_restart, "restart length");
    gmres_cmd->add_option("--precond", g_precond, "none | ssts");
    gmres_cmd->add_option("--params", g_params, "opt | exp | <alpha>,<omega>");
    gmres_cmd->add_option("--tol", g_tol, "relative-residual tolerance");

    // ---- export ----
    auto* export_cmd = app.add_subcommand("export", "write a system to Matrix Market + JSON sidecar");
    int e_example = 1;
    int e_m = 16;
    std::string e_prefix = "system";
    export_cmd->add_option("--example", e_example, "benchmark example: 1 or 2")->required();
    export_cmd->add_option("--m", e_m, "grid side")->required();
    export_cmd->add_option("--out", e_prefix, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*table_cmd) {
            ssts::ExperimentPlan plan;
            plan.example = t_example;
            plan.grids = parse_grids(t_grids);
            plan.methods = parse_methods(t_methods);
            parse_params(t_params, plan);
            plan.tol = t_tol;
            plan.max_iters = t_max_iters;
            plan.restart = t_restart;

            const ssts::TableArtifact table = ssts::run_table(plan);
            if (t_format == "md") write_or_print(table.markdown(), t_out);
            else if (t_format == "csv") write_or_print(table.csv(), t_out);
            else if (t_format == "json") write_or_print(table.json().dump(2) + "\n", t_out);
            else throw CLI::ValidationError("--format", "expected md|csv|json");
            for (const ssts::CellResult& c : table.cells)
                if (!c.error.empty()) std::cerr << c.method << " m=" << c.m << ": " << c.error << "\n";
            return table.all_converged ? 0 : 1;
        }

        if (*analyze_cmd) {
            const ssts::SpectralEstimates est = ssts::compute_params(a_example, a_m);
            std::cout << estimates_json(a_example, a_m, est).dump(2) << "\n";
            const auto tab_opt = ssts::table1_lookup(a_example, a_m, "ssts-opt");
            if (tab_opt) {
                std::cerr << "table1 ssts-opt: alpha=" << tab_opt->alpha << " omega=" << tab_opt->omega
                          << "  computed: alpha=" << est.alpha_opt << " omega=" << est.omega_opt
                          << "  delta: " << std::abs(tab_opt->alpha - est.alpha_opt) << ", "
                          << std::abs(tab_opt->omega - est.omega_opt) << "\n";
            }
            return 0;
        }

        if (*verify_cmd) {
            const ssts::VerifyReport rep = ssts::verify(v_example, v_m);
            for (const auto& item : rep.items)
                std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.name << ": " << item.detail
                          << "\n";
            std::cout << (rep.all_pass ? "verification passed" : "verification FAILED") << "\n";
            return rep.all_pass ? 0 : 1;
        }

        if (*gmres_cmd) {
            ssts::ExperimentPlan plan;
            plan.example = g_example;
            plan.grids = {g_m};
            plan.methods = {g_precond == "ssts" ? "ssts-gmres" : "gmres"};
            if (g_params == "opt") plan.params = ssts::ParamSource::table1_opt;
            else if (g_params == "exp") plan.params = ssts::ParamSource::table1_exp;
            else {
                plan.params = ssts::ParamSource::explicit_values;
                std::stringstream ss(g_params);
                char comma = 0;
                if (!(ss >> plan.alpha_explicit >> comma >> plan.omega_explicit) || comma != ',')
                    throw CLI::ValidationError("--params", "expected opt|exp|<alpha>,<omega>");
            }
            plan.tol = g_tol;
            plan.restart = g_restart;

            const ssts::TableArtifact table = ssts::run_table(plan);
            std::cout << table.json().dump(2) << "\n";
            return table.all_converged ? 0 : 1;
        }

        if (*export_cmd) {
            const ssts::BlockSystem sys = ssts::make_system(e_example, e_m);
            ssts::write_matrix_market(sys.W, e_prefix + "_W.mtx");
            ssts::write_matrix_market(sys.T, e_prefix + "_T.mtx");
            nlohmann::json side{{"descriptor", sys.descriptor},
                                {"n", sys.n},
                                {"m", e_m},
                                {"p", sys.p},
                                {"q", sys.q}};
            std::ofstream os(e_prefix + ".json");
            if (!os) throw std::runtime_error("cannot open " + e_prefix + ".json");
            os << side.dump(2) << "\n";
            std::cout << "wrote " << e_prefix << "_W.mtx, " << e_prefix << "_T.mtx, " << e_prefix
                      << ".json\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
