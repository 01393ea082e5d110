/// @file bench.hpp
/// @brief Experiment harness: runs (method, grid) cells against the benchmark
///        generators, assembles iteration-count tables in Markdown/CSV/JSON,
///        computes optimal parameters through the spectral pipeline, and
///        drives the desk-scale spectral verification battery.

#ifndef SSTS_BENCH_HPP
#define SSTS_BENCH_HPP

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ssts/gmres.hpp"
#include "ssts/problems.hpp"
#include "ssts/report_json.hpp"
#include "ssts/spectral.hpp"
#include "ssts/stationary.hpp"
#include "ssts/table1.hpp"
#include "ssts/transform.hpp"

namespace ssts {

enum class ParamSource { table1_opt, table1_exp, computed, explicit_values };

struct ExperimentPlan {
    int example = 1;  // 1, 2, or 0 for the synthetic identity system
    std::vector<int> grids;
    std::vector<std::string> methods;
    ParamSource params = ParamSource::table1_opt;
    double alpha_explicit = 0.0;
    double omega_explicit = 0.0;
    double tol = 1e-6;
    int max_iters = 5000;
    int restart = 10;

    void validate() const {
        if (example != 0 && example != 1 && example != 2)
            throw std::invalid_argument("plan: example must be 1, 2, or 0 (synthetic)");
        if (grids.empty()) throw std::invalid_argument("plan: no grids");
        for (int m : grids)
            if (m < 2) throw std::invalid_argument("plan: grid side m must be >= 2");
        if (methods.empty()) throw std::invalid_argument("plan: no methods");
        for (const std::string& s : methods)
            if (s != "mhss" && s != "sbts" && s != "psbts" && s != "ssts" && s != "gmres" &&
                s != "ssts-gmres")
                throw std::invalid_argument("plan: unknown method '" + s + "'");
        if (params == ParamSource::explicit_values &&
            !(alpha_explicit > 0.0 && omega_explicit > 0.0))
            throw std::invalid_argument("plan: explicit params need alpha > 0 and omega > 0");
        if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("plan: tol in (0,1)");
        if (max_iters < 1 || restart < 1)
            throw std::invalid_argument("plan: max_iters and restart must be >= 1");
    }
};

inline BlockSystem make_system(int example, int m) {
    if (example == 1) return example1(m);
    if (example == 2) return example2(m);
    if (example == 0) {
        BlockSystem sys;
        sys.n = static_cast<index_t>(m) * m;
        sys.W = identity(sys.n);
        sys.T = identity(sys.n);
        sys.p.assign(static_cast<std::size_t>(sys.n), 1.0);
        sys.q.assign(static_cast<std::size_t>(sys.n), 1.0);
        sys.descriptor = "synthetic-identity: m=" + std::to_string(m);
        return sys;
    }
    throw std::invalid_argument("make_system: example must be 0, 1, or 2");
}

/// Theorem-angle parameter selection for a benchmark instance: dense
/// eigensolves up to n = 4096, Lanczos beyond.
inline SpectralEstimates compute_params(int example, int m) {
    const BlockSystem sys = make_system(example, m);
    const EigMode mode = sys.n <= kDenseEigMaxN ? EigMode::dense : EigMode::lanczos;
    return analyze(sys.W, sys.T, mode);
}

struct CellResult {
    std::string method;
    int m = 0;
    double alpha = 0.0;
    double omega = 0.0;
    bool has_omega = false;
    std::string it_label;  // sweeps, or "cycles(inner)" for GMRES rows
    int iterations = 0;    // sweeps, or total inner steps for GMRES rows
    bool converged = false;
    double final_res = 0.0;
    double wall_time_s = 0.0;
    std::string error;  // non-empty when the cell failed outright
    nlohmann::json report;
};

namespace detail {

struct ResolvedParams {
    double alpha = 0.0;
    double omega = 1.0;
    bool has_omega = false;
};

inline ResolvedParams resolve_params(const ExperimentPlan& plan, const std::string& method,
                                     int m) {
    ResolvedParams rp;
    if (method == "gmres") return rp;  // unpreconditioned: no parameters

    if (plan.params == ParamSource::explicit_values) {
        rp.alpha = plan.alpha_explicit;
        rp.omega = plan.omega_explicit;
        rp.has_omega = method == "ssts" || method == "psbts" || method == "ssts-gmres";
        return rp;
    }
    if (plan.params == ParamSource::computed &&
        (method == "ssts" || method == "ssts-gmres")) {
        const SpectralEstimates est = compute_params(plan.example, m);
        rp.alpha = est.alpha_opt;
        rp.omega = est.omega_opt;
        rp.has_omega = true;
        return rp;
    }
    // Table 1 lookup. Only the triangular-splitting method has an
    // experiential row; everything else carries a single parameter set.
    std::string key = method;
    if (method == "ssts" || method == "ssts-gmres")
        key = plan.params == ParamSource::table1_exp ? "ssts-exp" : "ssts-opt";
    const std::optional<Table1Entry> entry = table1_lookup(plan.example, m, key);
    if (!entry)
        throw std::invalid_argument("no tabulated parameters for example " +
                                    std::to_string(plan.example) + ", m=" + std::to_string(m) +
                                    ", method " + method);
    rp.alpha = entry->alpha;
    rp.omega = entry->has_omega ? entry->omega : 1.0;
    rp.has_omega = entry->has_omega;
    return rp;
}

inline std::string fmt(const char* f, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

}  // namespace detail

/// Runs one (method, grid) cell. Failures are captured in the result rather
/// than thrown so a table can finish with DIVERGED rows.
inline CellResult run_cell(const BlockSystem& sys, const std::string& method, int m,
                           const ExperimentPlan& plan) {
    CellResult cell;
    cell.method = method;
    cell.m = m;
    try {
        const detail::ResolvedParams rp = detail::resolve_params(plan, method, m);
        cell.alpha = rp.alpha;
        cell.omega = rp.omega;
        cell.has_omega = rp.has_omega;

        if (method == "ssts" || method == "sbts" || method == "psbts" || method == "mhss") {
            SolverConfig cfg;
            cfg.alpha = rp.alpha;
            cfg.omega = rp.omega;
            cfg.tol = plan.tol;
            cfg.max_iters = plan.max_iters;
            const DenseVector zero(static_cast<std::size_t>(sys.n), 0.0);
            SolveResult res;
            if (method == "ssts") res = ssts_solve(sys, cfg, zero, zero);
            else if (method == "sbts") res = sbts_solve(sys, cfg, zero, zero);
            else if (method == "psbts") res = psbts_solve(sys, cfg, zero, zero);
            else res = mhss_solve(sys, cfg, zero, zero);

            cell.iterations = res.report.iterations;
            cell.converged = res.report.converged;
            cell.final_res = res.report.residual_history.back();
            cell.wall_time_s = res.report.wall_time_s;
            cell.it_label = cell.converged ? std::to_string(cell.iterations) : "DIVERGED";
            cell.report = res.report;
            return cell;
        }

        // GMRES rows. The unpreconditioned run solves the complex system
        // (W + iT) u = p + iq directly; the preconditioned run solves the
        // transformed real block system.
        GmresConfig gcfg;
        gcfg.restart = plan.restart;
        gcfg.tol = plan.tol;
        gcfg.max_cycles = plan.max_iters;
        const detail::Stopwatch timer;
        GmresReport grep;
        if (method == "gmres") {
            const ComplexOperator op = complex_operator(sys.W, sys.T);
            ComplexVector b(static_cast<std::size_t>(sys.n));
            for (std::size_t i = 0; i < b.size(); ++i) b[i] = {sys.p[i], sys.q[i]};
            grep = gmres_restarted_complex(op, b, gcfg).second;
        } else {  // ssts-gmres
            const TransformedSystem ts = transform(sys, rp.omega);
            const LinearOperator op = block_operator(ts.Wt, ts.Tt);
            DenseVector b(static_cast<std::size_t>(2 * sys.n));
            std::copy(ts.pt.begin(), ts.pt.end(), b.begin());
            std::copy(ts.qt.begin(), ts.qt.end(), b.begin() + sys.n);
            const SstsPreconditioner P(ts, rp.alpha);
            grep = gmres_restarted(op, b, P, gcfg).second;
        }
        cell.wall_time_s = timer.seconds();
        cell.iterations = grep.total_inner;
        cell.converged = grep.converged;
        cell.final_res = grep.residual_history.back();
        cell.it_label = cell.converged ? std::to_string(grep.cycles) + "(" +
                                             std::to_string(grep.inner_last) + ")"
                                       : "DIVERGED";
        nlohmann::json j{{"method", method},
                         {"m", m},
                         {"restart", plan.restart},
                         {"cycles", grep.cycles},
                         {"inner_last", grep.inner_last},
                         {"total_inner", grep.total_inner},
                         {"total_matvecs", grep.total_matvecs},
                         {"converged", grep.converged},
                         {"residual_history", grep.residual_history},
                         {"wall_time_s", cell.wall_time_s}};
        if (method == "ssts-gmres") {
            j["alpha"] = rp.alpha;
            j["omega"] = rp.omega;
        }
        cell.report = std::move(j);
        return cell;
    } catch (const std::exception& e) {
        cell.error = e.what();
        cell.it_label = "DIVERGED";
        cell.converged = false;
        return cell;
    }
}

struct TableArtifact {
    std::vector<CellResult> cells;
    bool all_converged = true;

    std::string markdown() const {
        std::string out =
            "| method | m | alpha | omega | IT | RES | CPU_s | converged |\n"
            "|---|---|---|---|---|---|---|---|\n";
        for (const CellResult& c : cells) {
            out += "| " + c.method + " | " + std::to_string(c.m) + " | " +
                   (c.method == "gmres" ? std::string("-") : detail::fmt("%.6g", c.alpha)) +
                   " | " + (c.has_omega ? detail::fmt("%.6g", c.omega) : std::string("-")) +
                   " | " + c.it_label + " | " + detail::fmt("%.3e", c.final_res) + " | " +
                   detail::fmt("%.4f", c.wall_time_s) + " | " + (c.converged ? "yes" : "no") +
                   " |\n";
        }
        return out;
    }

    std::string csv() const {
        std::string out = "method,m,alpha,omega,it,total_iterations,res,cpu_s,converged\n";
        for (const CellResult& c : cells) {
            out += c.method + "," + std::to_string(c.m) + "," +
                   (c.method == "gmres" ? std::string() : detail::fmt("%.6g", c.alpha)) + "," +
                   (c.has_omega ? detail::fmt("%.6g", c.omega) : std::string()) + "," +
                   c.it_label + "," + std::to_string(c.iterations) + "," +
                   detail::fmt("%.6e", c.final_res) + "," + detail::fmt("%.4f", c.wall_time_s) +
                   "," + (c.converged ? "true" : "false") + "\n";
        }
        return out;
    }

    nlohmann::json json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const CellResult& c : cells) {
            nlohmann::json j = c.report;
            if (!c.error.empty()) j["error"] = c.error;
            arr.push_back(std::move(j));
        }
        return arr;
    }
};

/// Number of worker threads for table cells; SSTS_BENCH_THREADS caps it.
/// Defaults to 1 (sequential) so wall-clock columns are undisturbed.
inline int bench_thread_count() {
    const char* env = std::getenv("SSTS_BENCH_THREADS");
    if (env == nullptr) return 1;
    const int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

/// Runs every (method, grid) cell of the plan. Cell order in the artifact is
/// methods-major then grids, independent of execution order.
inline TableArtifact run_table(const ExperimentPlan& plan) {
    plan.validate();

    std::map<int, BlockSystem> systems;
    for (int m : plan.grids)
        if (!systems.count(m)) systems.emplace(m, make_system(plan.example, m));

    struct Job {
        std::string method;
        int m;
    };
    std::vector<Job> jobs;
    for (const std::string& method : plan.methods)
        for (int m : plan.grids) jobs.push_back({method, m});

    TableArtifact table;
    table.cells.resize(jobs.size());
    const int threads = std::min<int>(bench_thread_count(), static_cast<int>(jobs.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            table.cells[i] = run_cell(systems.at(jobs[i].m), jobs[i].method, jobs[i].m, plan);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                    table.cells[i] =
                        run_cell(systems.at(jobs[i].m), jobs[i].method, jobs[i].m, plan);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (const CellResult& c : table.cells) table.all_converged &= c.converged;
    return table;
}

// ---------------------------------------------------------------------------
// Desk-scale verification battery.
// ---------------------------------------------------------------------------

struct VerifyReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail) {
        items.push_back({name, pass, detail});
        all_pass &= pass;
    }
};

/// Dense verification of every spectral claim the solvers rely on, at desk
/// scale (m <= 16): transform equivalence, realness of the St spectrum, the
/// eta->mu map, the iteration-matrix spectrum, the convergence boundary,
/// optimality of (alpha_opt, omega_opt), and the preconditioned spectrum.
inline VerifyReport verify(int example, int m) {
    if (m > 16) throw std::invalid_argument("verify: dense verification capped at m=16");
    VerifyReport rep;
    const BlockSystem sys = make_system(example, m);
    const SpectralEstimates est = analyze(sys.W, sys.T, EigMode::dense);
    const TransformedSystem ts = transform(sys, est.omega_opt);

    {
        const InvarianceReport inv = solution_invariance_check(sys, est.omega_opt);
        rep.add("transform-equivalence", inv.pass,
                "solution rel diff " + detail::fmt("%.3e", inv.solution_rel_diff));
    }
    {
        Eigen::EigenSolver<Eigen::MatrixXd> es(dense_stilde(ts), false);
        const double max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
        rep.add("stilde-real-spectrum", max_imag < 1e-10,
                "max |imag| " + detail::fmt("%.3e", max_imag));
    }
    {
        std::vector<double> mapped;
        for (double eta : gen_eig_spectrum(sys.W, sys.T, EigMode::dense))
            mapped.push_back(mu_from_eta(eta, est.omega_opt));
        const double err = detail::multiset_distance(mapped, stilde_spectrum(ts));
        rep.add("eta-mu-map-consistency", err <= 1e-8, "multiset err " + detail::fmt("%.3e", err));
    }
    {
        const IterationMatrixCheck chk = check_iteration_matrix_spectrum(ts, est.alpha_opt);
        rep.add("iteration-matrix-spectrum", chk.pass,
                "rank tail " + detail::fmt("%.3e", chk.tail_singular_ratio) + ", multiset err " +
                    detail::fmt("%.3e", chk.multiset_err));
    }
    {
        const double thr = alpha_threshold(est.mu_max);
        const double rho_above = dense_spectral_radius(dense_iteration_matrix(ts, 1.01 * thr));
        const double rho_below = dense_spectral_radius(dense_iteration_matrix(ts, 0.99 * thr));
        rep.add("convergence-boundary", rho_above < 1.0 && rho_below >= 1.0,
                "rho(1.01 thr) = " + detail::fmt("%.6f", rho_above) + ", rho(0.99 thr) = " +
                    detail::fmt("%.6f", rho_below));
    }
    {
        // Equioscillation at alpha_opt, the closed-form optimal factor, its
        // agreement with the dense spectral radius, and grid optimality.
        const double f = std::abs(1.0 - (1.0 + est.mu_min * est.mu_min) / est.alpha_opt);
        const double g = std::abs(1.0 - (1.0 + est.mu_max * est.mu_max) / est.alpha_opt);
        const double rho_formula = rho_h(est.mu_min, est.mu_max, est.alpha_opt);
        const double rho_dense = dense_spectral_radius(dense_iteration_matrix(ts, est.alpha_opt));
        bool grid_ok = true;
        const std::vector<double> etas = gen_eig_spectrum(sys.W, sys.T, EigMode::dense);
        for (int wi = 1; wi <= 50 && grid_ok; ++wi) {
            const double w = 0.1 * wi;
            double mu_lo = std::numeric_limits<double>::infinity(), mu_hi = 0.0;
            for (double eta : etas) {
                const double am = std::abs(mu_from_eta(eta, w));
                mu_lo = std::min(mu_lo, am);
                mu_hi = std::max(mu_hi, am);
            }
            const double thr_w = alpha_threshold(mu_hi);
            for (int ai = 101; ai <= 300; ++ai) {
                if (rho_h(mu_lo, mu_hi, thr_w * 0.01 * ai) < est.rho_opt - 1e-12) {
                    grid_ok = false;
                    break;
                }
            }
        }
        const bool pass = std::abs(f - g) <= 1e-12 &&
                          std::abs(rho_formula - est.rho_opt) <= 1e-10 &&
                          std::abs(rho_dense - est.rho_opt) <= 1e-8 && grid_ok;
        rep.add("optimal-parameters", pass,
                "equioscillation gap " + detail::fmt("%.3e", std::abs(f - g)) +
                    ", |rho_dense - rho_opt| " + detail::fmt("%.3e", std::abs(rho_dense - est.rho_opt)) +
                    (grid_ok ? ", grid optimal" : ", grid optimality FAILED"));
    }
    {
        const PrecondSpectrumCheck chk = precond_spectrum_check(ts, est.alpha_opt);
        rep.add("preconditioned-spectrum", chk.pass,
                "unit count " + std::to_string(chk.unit_count) + "/" + std::to_string(chk.n) +
                    ", multiset err " + detail::fmt("%.3e", chk.multiset_err) + ", min real " +
                    detail::fmt("%.3e", chk.min_real));
    }
    return rep;
}

}  // namespace ssts

#endif  // SSTS_BENCH_HPP
