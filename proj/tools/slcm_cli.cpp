// Command-line front end: configuration parsing, computation dispatch,
// canonical text/JSON output, and the verification-suite runner.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include "CLI11.hpp"
#include "json.hpp"
#include "slcm/verify.hpp"

#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace slcm;

// ---------------------------------------------------------------------------
// Option plumbing.  Every subcommand accepts the same job keys, either from
// a flat key=value file (--config) or as flags; flags win over file values.
// All values go through set_config_key so validation is uniform.
// ---------------------------------------------------------------------------

struct JobCli {
    std::string config_path;
    bool json_out = false;
    std::string p, f, n, modulus, unit_exp, varpi_num, varpi_den;
    std::string psi_val, psi_unit_exp, decomposition;
};

void add_job_options(CLI::App* cmd, JobCli& o) {
    cmd->add_option("--config", o.config_path, "flat key=value configuration file");
    cmd->add_flag("--json", o.json_out, "emit the JSON payload instead of text");
    cmd->add_option("--p", o.p, "residue characteristic (odd prime)");
    cmd->add_option("--f", o.f, "residue degree");
    cmd->add_option("--n", o.n, "cover degree (n | q-1, 4 does not divide n)");
    cmd->add_option("--modulus", o.modulus, "residue modulus coefficients, comma separated");
    cmd->add_option("--unit-exp", o.unit_exp, "character exponent at the unit generator");
    cmd->add_option("--varpi-num", o.varpi_num, "uniformizer angle numerator");
    cmd->add_option("--varpi-den", o.varpi_den, "uniformizer angle denominator");
    cmd->add_option("--psi-val", o.psi_val, "valuation of the additive twist");
    cmd->add_option("--psi-unit-exp", o.psi_unit_exp, "unit class of the additive twist");
    cmd->add_option("--decomposition", o.decomposition, "standard or swapped");
}

JobConfig build_config(const CLI::App* cmd, const JobCli& o) {
    JobConfig cfg;
    if (!o.config_path.empty()) load_config_file(cfg, o.config_path);
    auto apply = [&](const char* flag, const char* key, const std::string& v) {
        if (cmd->count(flag) > 0) set_config_key(cfg, key, v);
    };
    apply("--p", "p", o.p);
    apply("--f", "f", o.f);
    apply("--n", "n", o.n);
    apply("--modulus", "modulus_coeffs", o.modulus);
    apply("--unit-exp", "unit_exp", o.unit_exp);
    apply("--varpi-num", "varpi_num", o.varpi_num);
    apply("--varpi-den", "varpi_den", o.varpi_den);
    apply("--psi-val", "psi_val", o.psi_val);
    apply("--psi-unit-exp", "psi_unit_exp", o.psi_unit_exp);
    apply("--decomposition", "decomposition", o.decomposition);
    return cfg;
}

json context_json(const TameField& T, const MultChar& chi, const FStarClass& a,
                  const std::string& decomposition) {
    json c;
    c["p"] = T.p();
    c["f"] = T.f();
    c["n"] = T.n();
    c["q"] = T.q();
    c["d"] = T.d();
    c["N"] = T.cyc().order();
    c["character"] = {{"unit_exp", chi.unit_exp}, {"varpi_exp", chi.varpi_exp}};
    c["psi"] = {{"val", a.val}, {"unit_exp", a.unit_dlog}};
    c["decomposition"] = decomposition;
    return c;
}

void print_context(std::ostream& os, const TameField& T, const MultChar& chi,
                   const FStarClass& a, const std::string& decomposition) {
    os << "context: p=" << T.p() << " f=" << T.f() << " n=" << T.n() << " q=" << T.q()
       << " d=" << T.d() << " N=" << T.cyc().order() << "\n";
    os << "character: unit_exp=" << chi.unit_exp << " varpi_exp=" << chi.varpi_exp
       << (mchar_is_unramified(chi) ? " (unramified)" : " (ramified)") << "\n";
    os << "psi: val=" << a.val << " unit_exp=" << a.unit_dlog << "\n";
    os << "decomposition: " << decomposition << "\n";
}

// ---------------------------------------------------------------------------
// gamma: the scalar factors attached to the configured (chi, psi).
// ---------------------------------------------------------------------------

int cmd_gamma(const JobConfig& cfg, const JobCli& o, bool oracle) {
    TameField T = make_field(cfg);
    MultChar chi = make_character(T, cfg);
    FStarClass a = make_psi(cfg);
    LagrangianDecomposition L = make_decomposition(T, cfg);
    const bool even = T.n() % 2 == 0;
    WeilIndex W(T);
    GenuineCharData D{&T, even ? &W : nullptr, chi, a, cfg.decomposition == "swapped"};

    RatFun g = tate_gamma(T, chi, a);
    RatFun eps = epsilon_factor(T, chi, a);
    RatFun l = l_factor(T, chi);
    RatFun l_dual = to_one_minus_s(T, l_factor(T, mchar_inv(T, chi)));
    std::vector<RatFun> partials;
    for (const FStarClass& k : L.Kbar) partials.push_back(partial_gamma_over(D, L.Jbar, chi, k));

    if (o.json_out) {
        json out;
        out["context"] = context_json(T, chi, a, cfg.decomposition);
        out["gamma"] = g.str();
        out["epsilon"] = eps.str();
        out["l_factor"] = l.str();
        out["l_factor_dual"] = l_dual.str();
        if (even) out["meta_gamma"] = meta_gamma(T, W, chi, a).str();
        json parts = json::array();
        for (const RatFun& pg : partials) parts.push_back(pg.str());
        out["partial"] = parts;
        if (oracle) {
            RatFun shell = to_one_minus_s(T, shell_integral_gamma(T, mchar_inv(T, chi), a));
            out["oracle"] = {{"shell", shell.str()}, {"difference", (g - shell).str()}};
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    print_context(std::cout, T, chi, a, cfg.decomposition);
    std::cout << "gamma        = " << g.str() << "\n";
    std::cout << "epsilon      = " << eps.str() << "\n";
    std::cout << "L            = " << l.str() << "\n";
    std::cout << "L_dual(1-s)  = " << l_dual.str() << "\n";
    if (even) std::cout << "meta_gamma   = " << meta_gamma(T, W, chi, a).str() << "\n";
    for (size_t t = 0; t < partials.size(); ++t)
        std::cout << (even ? "partial_meta[" : "partial[") << t << "] = " << partials[t].str()
                  << "\n";
    if (oracle) {
        RatFun shell = to_one_minus_s(T, shell_integral_gamma(T, mchar_inv(T, chi), a));
        std::cout << "shell_oracle = " << shell.str() << "\n";
        std::cout << "difference   = " << (g - shell).str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// slcm / plancherel: the d x d matrix, its invariants, and (for plancherel)
// the measure report.
// ---------------------------------------------------------------------------

void print_matrix(std::ostream& os, const SlcmMatrix& M) {
    for (long i = 0; i < M.dim(); ++i) {
        for (long j = 0; j < M.dim(); ++j)
            os << "  [" << i << "][" << j << "] = "
               << M.entries[static_cast<size_t>(i)][static_cast<size_t>(j)].str() << "\n";
    }
}

json matrix_json(const SlcmMatrix& M) {
    json rows = json::array();
    for (const auto& row : M.entries) {
        json r = json::array();
        for (const RatFun& e : row) r.push_back(e.str());
        rows.push_back(r);
    }
    return rows;
}

int cmd_slcm(const JobConfig& cfg, const JobCli& o, bool with_plancherel) {
    TameField T = make_field(cfg);
    MultChar chi = make_character(T, cfg);
    FStarClass a = make_psi(cfg);
    const bool even = T.n() % 2 == 0;
    WeilIndex W(T);
    GenuineCharData D{&T, even ? &W : nullptr, chi, a, cfg.decomposition == "swapped"};

    SlcmMatrix M = assemble_slcm(D);
    RatFun tr = trace_T(D);
    RatFun det = det_matrix(T.cyc(), M.entries);
    std::vector<RatFun> cp = charpoly_matrix(T.cyc(), M.entries);

    if (o.json_out) {
        json out;
        out["context"] = context_json(T, chi, a, cfg.decomposition);
        out["matrix"] = matrix_json(M);
        out["trace"] = tr.str();
        out["det"] = det.str();
        if (with_plancherel) {
            PlancherelReport R = plancherel_report(D);
            json paths;
            paths["plan_and_sum"] = R.plan_and_sum.str();
            paths["average"] = R.average.str();
            paths["closed"] = R.closed.str();
            paths["trace_sum"] = R.trace_path.str();
            out["plancherel"] = {{"paths", paths},
                                 {"paths_agree", R.paths_agree},
                                 {"c_sigma", R.c_sigma.str()},
                                 {"pole_order_at_s0", R.classification.pole_order_at_s0()},
                                 {"reducible", R.classification.reducible}};
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    print_context(std::cout, T, chi, a, cfg.decomposition);
    std::cout << "matrix (" << M.dim() << "x" << M.dim() << "):\n";
    print_matrix(std::cout, M);
    std::cout << "trace = " << tr.str() << "\n";
    std::cout << "det   = " << det.str() << "\n";
    std::cout << "charpoly (ascending):\n";
    for (size_t i = 0; i < cp.size(); ++i)
        std::cout << "  c[" << i << "] = " << cp[i].str() << "\n";
    if (with_plancherel) {
        PlancherelReport R = plancherel_report(D);
        std::cout << "plancherel:\n";
        std::cout << "  plan_and_sum    = " << R.plan_and_sum.str() << "\n";
        std::cout << "  average         = " << R.average.str() << "\n";
        std::cout << "  closed          = " << R.closed.str() << "\n";
        std::cout << "  trace_sum       = " << R.trace_path.str() << "\n";
        std::cout << "  paths_agree     = " << (R.paths_agree ? "yes" : "no") << "\n";
        std::cout << "  c_sigma         = " << R.c_sigma.str() << "\n";
        std::cout << "  pole_order_at_s0 = " << R.classification.pole_order_at_s0() << "\n";
        std::cout << "  reducible       = " << (R.classification.reducible ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// table: reducibility panorama of the full twist family chi * eta_x over the
// d^2 dual classes x, one row per twist.
// ---------------------------------------------------------------------------

int cmd_table(const JobConfig& cfg, const JobCli& o) {
    TameField T = make_field(cfg);
    MultChar chi = make_character(T, cfg);
    FStarClass a = make_psi(cfg);
    const bool even = T.n() % 2 == 0;
    WeilIndex W(T);

    json rows = json::array();
    std::ostringstream table;
    table << std::left << std::setw(10) << "class" << std::setw(22) << "character"
          << std::setw(10) << "self_dual" << std::setw(12) << "pole_order"
          << "verdict\n";
    long x_index = 0;
    for (long v = 0; v < T.d(); ++v)
        for (long u = 0; u < T.d(); ++u) {
            FStarClass x{v, u * ((T.q() - 1) / T.d())};
            MultChar tw = mchar_mul(T, chi, eta(T, x));
            GenuineCharData D{&T, even ? &W : nullptr, tw, a, cfg.decomposition == "swapped"};
            ReducibilityReport R = reducibility(D);
            if (o.json_out) {
                rows.push_back({{"class", {{"val", x.val}, {"unit_dlog", x.unit_dlog}}},
                                {"character", {{"unit_exp", tw.unit_exp}, {"varpi_exp", tw.varpi_exp}}},
                                {"self_dual", R.self_dual},
                                {"pole_order_at_s0", R.pole_order_at_s0()},
                                {"reducible", R.reducible}});
            } else {
                std::ostringstream cls, ch;
                cls << "(" << x.val << "," << x.unit_dlog << ")";
                ch << "(" << tw.unit_exp << "," << tw.varpi_exp << ")";
                table << std::left << std::setw(10) << cls.str() << std::setw(22) << ch.str()
                      << std::setw(10) << (R.self_dual ? "yes" : "no") << std::setw(12)
                      << R.pole_order_at_s0() << (R.reducible ? "reducible" : "irreducible")
                      << "\n";
            }
            ++x_index;
        }
    (void)x_index;
    if (o.json_out) {
        json out;
        out["context"] = context_json(T, chi, a, cfg.decomposition);
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    } else {
        print_context(std::cout, T, chi, a, cfg.decomposition);
        std::cout << table.str();
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify: every identity suite over the built-in grid plus any configured
// context; contexts run concurrently (each job is independent and pure).
// ---------------------------------------------------------------------------

int cmd_verify(const JobConfig& cfg, const JobCli& o, const std::string& only,
               const std::string& inject, bool want_grid) {
    std::vector<GridContext> contexts;
    if (want_grid || cfg.p == 0) contexts = verify_grid();
    if (cfg.p != 0) {
        bool dup = false;
        for (const auto& g : contexts)
            if (g.p == cfg.p && g.f == cfg.f && g.n == cfg.n) dup = true;
        if (!dup) contexts.push_back({cfg.p, cfg.f, cfg.n});
    }

    // Validate suite/injection names once up front (configuration errors
    // must not surface as verification failures).
    if (!only.empty() &&
        std::find(verify_suite_names().begin(), verify_suite_names().end(), only) ==
            verify_suite_names().end())
        throw ConfigError("unknown verification suite '" + only + "'");
    if (!inject.empty() && inject != "epsilon-sign")
        throw ConfigError("unknown fault injection '" + inject + "'");

    std::vector<std::future<std::vector<CheckResult>>> futures;
    futures.reserve(contexts.size());
    for (const GridContext& g : contexts)
        futures.push_back(std::async(std::launch::async, [g, &cfg, &only, &inject]() {
            if (g.p == cfg.p && g.f == cfg.f && g.n == cfg.n && !cfg.modulus_coeffs.empty()) {
                TameField T(g.p, g.f, g.n, cfg.modulus_coeffs);
                return run_verify(T, only, inject);
            }
            TameField T(g.p, g.f, g.n);
            return run_verify(T, only, inject);
        }));

    std::vector<CheckResult> all;
    for (auto& fut : futures) {
        auto part = fut.get();
        all.insert(all.end(), part.begin(), part.end());
    }

    long failures = 0;
    for (const CheckResult& r : all)
        if (!r.pass) ++failures;

    if (o.json_out) {
        json results = json::array();
        for (const CheckResult& r : all)
            results.push_back(
                {{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        json out;
        out["results"] = results;
        out["checks"] = all.size();
        out["failures"] = failures;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const CheckResult& r : all) {
            std::cout << (r.pass ? "pass" : "FAIL") << " [" << r.suite << "] " << r.name;
            if (!r.pass && !r.detail.empty()) std::cout << " -- " << r.detail;
            std::cout << "\n";
        }
        std::cout << all.size() << " checks, " << failures << " failures\n";
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local factors, coefficient matrices and Plancherel "
                 "measures for tame covers"};
    app.require_subcommand(1);

    JobCli gamma_opts, slcm_opts, plan_opts, table_opts, verify_opts;
    bool oracle = false, want_grid = false;
    std::string only, inject;

    CLI::App* c_gamma = app.add_subcommand("gamma", "scalar factors for the configured data");
    add_job_options(c_gamma, gamma_opts);
    c_gamma->add_flag("--oracle", oracle, "also print the shell-integral oracle value");

    CLI::App* c_slcm = app.add_subcommand("slcm", "local coefficient matrix and invariants");
    add_job_options(c_slcm, slcm_opts);

    CLI::App* c_plan =
        app.add_subcommand("plancherel", "matrix invariants plus the measure report");
    add_job_options(c_plan, plan_opts);

    CLI::App* c_table =
        app.add_subcommand("table", "reducibility table over the d^2 twist family");
    add_job_options(c_table, table_opts);

    CLI::App* c_verify = app.add_subcommand("verify", "run the identity suites");
    add_job_options(c_verify, verify_opts);
    c_verify->add_flag("--grid", want_grid, "include the built-in context grid");
    c_verify->add_option("--only", only, "restrict to one suite");
    c_verify->add_option("--inject", inject, "fault injection (diagnostics)")
        ->group(""); // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_gamma->parsed()) return cmd_gamma(build_config(c_gamma, gamma_opts), gamma_opts, oracle);
        if (c_slcm->parsed()) return cmd_slcm(build_config(c_slcm, slcm_opts), slcm_opts, false);
        if (c_plan->parsed()) return cmd_slcm(build_config(c_plan, plan_opts), plan_opts, true);
        if (c_table->parsed()) return cmd_table(build_config(c_table, table_opts), table_opts);
        if (c_verify->parsed())
            return cmd_verify(build_config(c_verify, verify_opts), verify_opts, only, inject,
                              want_grid);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
