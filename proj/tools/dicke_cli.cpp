// dicke — command-line driver: point, sweep, scaling, benchmark, oracle
//
// Exit codes: 0 ok, 1 benchmark failure, 2 configuration error, 3 convergence failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dicke/acceptance.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle.hpp"
#include "dicke/report_io.hpp"
#include "dicke/scf.hpp"
#include "dicke/sweep.hpp"

using namespace dicke;

namespace {

constexpr int kOk = 0;
constexpr int kBenchmarkFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNotConverged = 3;

struct ModelFlags {
    std::string preset{"dicke"};
    int N{2};
    double g{0.0}, J{0.0}, Jz{0.0}, omega{1.0}, epsilon{1.0};
    std::optional<double> Jx, Jy, Jz_override;
    std::string boundary{"open"};

    void add(CLI::App* app) {
        app->add_option("--preset", preset, "dicke | dicke-ising | dicke-xxz")->capture_default_str();
        app->add_option("--N", N, "number of spins")->capture_default_str();
        app->add_option("--g", g, "light-matter coupling")->capture_default_str();
        app->add_option("--J", J, "Ising exchange (dicke-ising, J_z = 4J)")->capture_default_str();
        app->add_option("--Jz", Jz, "anisotropy (dicke-xxz) or J_z override")->capture_default_str();
        app->add_option("--Jx", Jx, "J_x override");
        app->add_option("--Jy", Jy, "J_y override");
        app->add_option("--omega", omega, "cavity frequency")->capture_default_str();
        app->add_option("--epsilon", epsilon, "spin splitting")->capture_default_str();
        app->add_option("--boundary", boundary, "open | periodic")->capture_default_str();
    }

    ModelPreset preset_value() const {
        ModelPreset p;
        p.kind = preset_from_string(preset);
        p.N = N;
        p.g = g;
        p.J = J;
        p.Jz = Jz;
        p.omega = omega;
        p.epsilon = epsilon;
        p.boundary = boundary_from_string(boundary);
        return p;
    }

    ModelSpec spec(const CLI::App* app) const {
        ModelPreset p = preset_value();
        ModelSpec s = p.to_spec();
        if (Jx) s.J.x = *Jx;
        if (Jy) s.J.y = *Jy;
        if (p.kind != PresetKind::dicke_xxz && app->count("--Jz") > 0) s.J.z = Jz;
        s.validate();
        return s;
    }
};

struct SolverFlags {
    std::string backend{"dense"};
    std::string gradient{"analytic"};
    ScfConfig scf;
    SolverConfig solver;

    void add(CLI::App* app) {
        app->add_option("--backend", backend, "dense | collective | mps")->capture_default_str();
        app->add_option("--max-outer", scf.max_outer, "SCF outer iterations")->capture_default_str();
        app->add_option("--tol-E", scf.tol_E, "energy tolerance per site")->capture_default_str();
        app->add_option("--tol-O", scf.tol_O, "observable tolerance")->capture_default_str();
        app->add_option("--initial-step", scf.initial_step)->capture_default_str();
        app->add_option("--shrink", scf.shrink)->capture_default_str();
        app->add_option("--grow", scf.grow)->capture_default_str();
        app->add_option("--frame-steps", scf.frame_steps)->capture_default_str();
        app->add_option("--gradient", gradient, "analytic | fd")->capture_default_str();
        app->add_option("--fd-step", scf.fd_step)->capture_default_str();
        app->add_option("--normal-seed-kick", scf.normal_seed_kick)->capture_default_str();
        app->add_option("--superradiant-seed-lambda", scf.superradiant_seed_lambda)->capture_default_str();
        app->add_option("--krylov-dim", solver.krylov_dim)->capture_default_str();
        app->add_option("--krylov-tol", solver.krylov_tol)->capture_default_str();
        app->add_option("--max-lanczos", solver.max_lanczos_iterations)->capture_default_str();
        app->add_option("--bond-dim", solver.bond_dim)->capture_default_str();
        app->add_option("--sweeps", solver.sweeps)->capture_default_str();
        app->add_option("--dmrg-tol", solver.dmrg_tol)->capture_default_str();
        app->add_option("--degeneracy-field", solver.degeneracy_field,
                        "staggered pinning field in units of epsilon")
            ->capture_default_str();
        app->add_option("--warm-noise", solver.warm_noise)->capture_default_str();
        app->add_option("--seed", solver.seed)->capture_default_str();
    }

    void finish() {
        solver.backend = backend_from_string(backend);
        scf.gradient = gradient_mode_from_string(gradient);
        scf.validate();
        solver.validate();
    }
};

AxisDef parse_axis(const std::string& text) {
    // name:min:max:step
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 4) throw ConfigError("axis '" + text + "' must be name:min:max:step");
    AxisDef a;
    a.name = parts[0];
    try {
        a.min = std::stod(parts[1]);
        a.max = std::stod(parts[2]);
        a.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("axis '" + text + "' has a non-numeric bound");
    }
    return a;
}

void print_point(const PointResult& p) {
    std::printf("E0        %.12f\n", p.report.E0);
    std::printf("n_mean    %.6e\n", p.obs.n_mean);
    std::printf("Mz        %.8f\n", p.obs.Mz);
    std::printf("|Mz|      %.8f\n", p.obs.abs_Mz);
    std::printf("zz_bulk   %.6f\n", p.obs.zz_bulk);
    std::printf("stag_bulk %.6f (opposite sign convention %.6f)\n", p.obs.stag_bulk,
                p.obs.stag_bulk_opposite);
    if (p.obs.xx.size() >= 3) std::printf("xx_class  %s\n", to_string(p.phase.xx.kind).c_str());
    std::printf("phase     %s\n", p.phase.label.c_str());
    std::printf("branch    %s\n", p.report.branch.c_str());
    std::printf("converged %s after %d iterations\n", p.report.converged ? "yes" : "no",
                p.report.iterations);
}

int run_point_cmd(const ModelSpec& spec, SolverFlags& sf, const std::string& branches,
                  const std::string& out) {
    sf.finish();
    const BranchMode mode = branch_mode_from_string(branches);
    SweepPlan plan;
    plan.branches = mode;
    PointResult p;
    p.spec = spec;
    p.two_branch = wants_two_branch(plan, spec);
    try {
        if (p.two_branch) {
            TwoBranchResult r = solve_two_branch(spec, sf.scf, sf.solver);
            const bool normal = r.selected == SeedKind::normal;
            p.report = normal ? r.normal : r.superradiant;
            p.other = normal ? r.superradiant : r.normal;
        } else {
            p.report = solve(spec, SeedKind::normal, sf.scf, sf.solver);
        }
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotConverged;
    } catch (const ScfError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotConverged;
    }
    p.obs = lab_frame_observables(p.report.spec, p.report.frame, p.report.state);
    p.phase = classify_phase(p.obs);
    if (!p.report.converged) p.status = "not-converged";
    print_point(p);
    if (!out.empty()) {
        Json j{{"version", version_string()},
               {"report", p.report},
               {"observables", p.obs},
               {"phase", p.phase}};
        if (p.other) j["other_branch"] = *p.other;
        write_json((std::filesystem::path(out) / "point.json").string(), j);
        std::filesystem::path csv = std::filesystem::path(out) / "point.csv";
        std::FILE* f = std::fopen(csv.string().c_str(), "w");
        if (!f) throw std::runtime_error("cannot write " + csv.string());
        std::fprintf(f, "%s\n%s\n", csv_header().c_str(), csv_row(p).c_str());
        std::fclose(f);
    }
    return p.report.converged ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dicke-Heisenberg chains with a non-Gaussian variational state"};
    app.set_config("--config", "", "INI/TOML file; keys are the long flag names");
    app.require_subcommand(1);

    // point
    auto* point = app.add_subcommand("point", "solve one parameter point");
    ModelFlags pm;
    SolverFlags ps;
    std::string p_branches{"auto"}, p_out;
    pm.add(point);
    ps.add(point);
    point->add_option("--branches", p_branches, "auto | always | never (two-branch seeding)")
        ->capture_default_str();
    point->add_option("--out", p_out, "output directory");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid sweep with boundary extraction");
    ModelFlags sm;
    SolverFlags ss;
    std::vector<std::string> s_axes;
    std::string s_branches{"auto"}, s_out{"sweep-out"};
    int s_workers{0};
    double s_threshold{0.01}, s_jump{0.1};
    sm.add(sweep);
    ss.add(sweep);
    sweep->add_option("--axis", s_axes, "name:min:max:step (first axis is scanned for the boundary)")
        ->required();
    sweep->add_option("--branches", s_branches, "auto | always | never")->capture_default_str();
    sweep->add_option("--out", s_out, "output directory")->capture_default_str();
    sweep->add_option("--workers", s_workers, "worker-pool width (0: DICKE_WORKERS or 1)")
        ->capture_default_str();
    sweep->add_option("--sr-threshold", s_threshold, "n_mean above this is superradiant")
        ->capture_default_str();
    sweep->add_option("--jump-threshold", s_jump, "adjacent jump marking a first-order boundary")
        ->capture_default_str();

    // scaling
    auto* scaling = app.add_subcommand("scaling", "fit n_mean ~ N^-alpha on a grid");
    ModelFlags cm;
    SolverFlags cs;
    std::vector<std::string> c_axes;
    std::vector<int> c_Ns;
    std::string c_branches{"never"}, c_out{"scaling-out"};
    int c_workers{0};
    cm.add(scaling);
    cs.add(scaling);
    scaling->add_option("--axis", c_axes, "name:min:max:step");
    scaling->add_option("--Ns", c_Ns, "system sizes (>= 4 distinct)")->delimiter(',')->required();
    scaling->add_option("--branches", c_branches, "auto | always | never")->capture_default_str();
    scaling->add_option("--out", c_out, "output directory")->capture_default_str();
    scaling->add_option("--workers", c_workers)->capture_default_str();

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "run the acceptance suite");
    std::vector<int> b_only;
    std::string b_out{"benchmark-out"};
    int b_workers{0};
    bool b_verbose{false};
    bench->add_option("--only", b_only, "criterion ids")->delimiter(',');
    bench->add_option("--out", b_out, "output directory")->capture_default_str();
    bench->add_option("--workers", b_workers)->capture_default_str();
    bench->add_flag("--verbose", b_verbose, "progress on stderr");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact diagonalisation in truncated Fock space");
    ModelFlags om;
    FockTruncation trunc;
    double o_pin{0.0};
    std::string o_dump, o_out;
    om.add(oracle);
    oracle->add_option("--n-max", trunc.n_max, "Fock cutoff")->capture_default_str();
    oracle->add_option("--cutoff-step", trunc.step, "cutoff increase for the margin")
        ->capture_default_str();
    oracle->add_option("--margin-tol", trunc.margin_tol)->capture_default_str();
    oracle->add_option("--staggered-field", o_pin, "absolute staggered pinning field")
        ->capture_default_str();
    oracle->add_option("--dump", o_dump, "binary eigenvector file");
    oracle->add_option("--out", o_out, "output directory for JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*point) return run_point_cmd(pm.spec(point), ps, p_branches, p_out);

        if (*sweep || *scaling) {
            const bool is_sweep = static_cast<bool>(*sweep);
            ModelFlags& mf = is_sweep ? sm : cm;
            SolverFlags& sf = is_sweep ? ss : cs;
            sf.finish();
            SweepPlan plan;
            plan.base = mf.preset_value();
            for (const auto& a : is_sweep ? s_axes : c_axes) plan.axes.push_back(parse_axis(a));
            plan.scf = sf.scf;
            plan.solver = sf.solver;
            plan.branches = branch_mode_from_string(is_sweep ? s_branches : c_branches);
            plan.out_dir = is_sweep ? s_out : c_out;
            plan.workers = is_sweep ? s_workers : c_workers;
            if (is_sweep) {
                plan.thresholds.superradiant_n = s_threshold;
                plan.jump_threshold = s_jump;
                const SweepResult r = run_sweep(plan);
                int failed = 0;
                for (const auto& p : r.points) failed += p.status != "ok";
                for (const auto& b : r.boundary)
                    std::printf("boundary line=%g at=%.6f order=%s jump=%.4f\n", b.line, b.at,
                                b.order.c_str(), b.jump);
                std::printf("%zu points, %d not ok; results in %s\n", r.points.size(), failed,
                            plan.out_dir.c_str());
                return failed ? kNotConverged : kOk;
            }
            plan.N_list = c_Ns;
            const auto cells = run_scaling(plan);
            int failed = 0;
            for (const auto& c : cells) {
                std::string where;
                for (std::size_t k = 0; k < c.coords.size(); ++k)
                    where += plan.axes[k].name + "=" + std::to_string(c.coords[k]) + " ";
                if (c.fit)
                    std::printf("%salpha=%.4f r2=%.4f regime=%s\n", where.c_str(), c.fit->alpha,
                                c.fit->r2, c.fit->regime.c_str());
                else
                    std::printf("%s%s\n", where.c_str(), c.status.c_str());
                failed += c.status != "ok";
            }
            return failed ? kNotConverged : kOk;
        }

        if (*bench) {
            AcceptanceOptions opt;
            opt.only.insert(b_only.begin(), b_only.end());
            opt.out_dir = b_out;
            opt.workers = b_workers;
            opt.verbose = b_verbose;
            std::filesystem::create_directories(b_out);
            const auto res = run_acceptance(opt);
            print_acceptance(std::cout, res);
            for (const auto& r : res)
                if (!r.pass) return kBenchmarkFailed;
            return kOk;
        }

        if (*oracle) {
            ModelSpec spec = om.spec(oracle);
            spec.staggered_field = o_pin;
            const OracleResult r = full_ground_state(spec, trunc);
            const OracleObservables o = full_observables(r);
            std::printf("E         %.12f\n", r.energy);
            std::printf("E0        %.12f\n", (r.energy - 0.5 * spec.omega) / spec.N);
            std::printf("margin    %.3e (n_max %d -> %d)\n", r.margin, r.n_max, r.n_max + trunc.step);
            std::printf("n_mean    %.6e\n", o.n_mean);
            std::printf("Mz        %.8f\n", o.Mz);
            if (!o_dump.empty()) write_eigenvector(r, o_dump);
            if (!o_out.empty())
                write_json((std::filesystem::path(o_out) / "oracle.json").string(),
                           Json{{"version", version_string()}, {"result", r}, {"observables", o}});
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const CutoffError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotConverged;
    }
    return kOk;
}
