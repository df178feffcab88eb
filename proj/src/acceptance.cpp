#include "dicke/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/frame_check.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle.hpp"
#include "dicke/scf.hpp"
#include "dicke/spin_solvers.hpp"
#include "dicke/sweep.hpp"

namespace dicke {

namespace {

std::string format(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

class Context {
public:
    explicit Context(const AcceptanceOptions& opt) : opt_(opt) {}

    void log(const std::string& msg) const {
        if (opt_.verbose) std::cerr << "  " << msg << std::endl;
    }

    /// Output directory for one criterion's data, empty when nothing is written.
    std::string dir(const std::string& name) const {
        if (opt_.out_dir.empty()) return {};
        return (std::filesystem::path(opt_.out_dir) / name).string();
    }

    int workers() const { return opt_.workers; }

private:
    const AcceptanceOptions& opt_;
};

struct Outcome {
    bool pass{true};
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        pass = false;
        failures.push_back(why);
    }
    void note(const std::string& s) { notes.push_back(s); }

    std::string detail() const {
        auto join = [](const std::vector<std::string>& v) {
            std::string out;
            for (const auto& x : v) out += (out.empty() ? "" : "; ") + x;
            return out;
        };
        if (failures.empty()) return join(notes);
        return join(failures) + (notes.empty() ? "" : " | " + join(notes));
    }
};

std::mt19937_64 criterion_rng(int id) { return std::mt19937_64(0xacce97ull * 1000 + id); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::VectorXcd random_spin_vector(std::mt19937_64& rng, int N) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(Eigen::Index{1} << N);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = {nd(rng), nd(rng)};
    return v / v.norm();
}

ModelSpec random_spec(std::mt19937_64& rng, int N) {
    ModelSpec s;
    s.N = N;
    s.omega = uniform(rng, 0.5, 1.5);
    s.epsilon = uniform(rng, 0.5, 1.5);
    s.g = uniform(rng, 0.0, 1.2);
    s.J = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    s.boundary = (rng() & 1u) ? Boundary::periodic : Boundary::open;
    s.staggered_field = uniform(rng, -0.1, 0.1);
    return s;
}

PhotonFrame random_frame(std::mt19937_64& rng) {
    return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -0.4, 0.4),
            uniform(rng, -1.2, 0.3)};
}

// Grid value nearest to v on multiples of step.
double snap(double v, double step) { return std::round(v / step) * step; }

// 1. Collective Dicke benchmark at N = 200.
Outcome dicke_benchmark(const Context& ctx) {
    Outcome out;
    SweepPlan plan;
    plan.base.kind = PresetKind::dicke;
    plan.base.N = 200;
    plan.axes = {{"g", 0.0, 1.0, 0.05}};
    plan.solver.backend = Backend::collective;
    plan.branches = BranchMode::always;
    plan.workers = ctx.workers();
    plan.out_dir = ctx.dir("c1-dicke");
    const SweepResult res = run_sweep(plan);
    const double gc = 0.5;
    double worst = 0.0;
    for (const auto& p : res.points) {
        const double g = p.coords[0];
        if (p.status != "ok") {
            out.fail(format("g=%.2f status %s", g, p.status.c_str()));
            continue;
        }
        const double ref = g <= gc ? -0.5 : -(std::pow(g, 4) + std::pow(gc, 4)) / (g * g);
        const double err = std::abs(p.obs.E0 - ref);
        worst = std::max(worst, err);
        if (err > 1e-3)
            out.fail(format("g=%.2f E0=%.6f vs thermodynamic %.6f", g, p.obs.E0, ref));
        if (g < gc - 0.05 + 1e-9) {
            if (p.obs.n_mean >= 0.01) out.fail(format("g=%.2f n/N=%.4f >= 0.01", g, p.obs.n_mean));
            if (std::abs(p.obs.Mz + 0.5) > 0.01) out.fail(format("g=%.2f Mz=%.4f", g, p.obs.Mz));
        }
        if (g > gc + 0.05 - 1e-9) {
            if (p.obs.n_mean <= 0.01) out.fail(format("g=%.2f n/N=%.4f <= 0.01", g, p.obs.n_mean));
            const double mz_ref = -0.5 * (gc * gc) / (g * g);
            if (std::abs(p.obs.Mz - mz_ref) > 0.01)
                out.fail(format("g=%.2f Mz=%.4f expected %.4f", g, p.obs.Mz, mz_ref));
        }
    }
    // Exact finite-N value at the critical point, for the record.
    {
        ModelPreset p;
        p.kind = PresetKind::dicke;
        p.N = 200;
        p.g = gc;
        const double exact = (collective_ground_energy(p.to_spec()).energy - 0.5) / p.N;
        for (const auto& pt : res.points)
            if (std::abs(pt.coords[0] - gc) < 1e-9)
                out.note(format("exact N=200 E0(g_c)=%.6f, optimiser %.6f", exact, pt.obs.E0));
        ctx.log(format("exact N=200 E0(g_c) = %.8f", exact));
    }
    if (res.boundary.empty()) {
        out.fail("no superradiant onset found");
    } else {
        const BoundaryPoint& b = res.boundary.front();
        if (std::abs(b.at - gc) > 0.05 + 1e-9) out.fail(format("onset at g=%.4f", b.at));
        out.note(format("onset g=%.4f (%s order), max |dE0|=%.2e", b.at, b.order.c_str(), worst));
    }
    return out;
}

// 2. Iterate deltas at g = 0.25, N = 200.
Outcome convergence_thresholds(const Context&) {
    Outcome out;
    ModelPreset p;
    p.kind = PresetKind::dicke;
    p.N = 200;
    p.g = 0.25;
    ScfConfig scf;
    SolverConfig solver;
    solver.backend = Backend::collective;
    const ScfReport r = solve(p.to_spec(), SeedKind::normal, scf, solver);
    if (!r.converged) out.fail("not converged: " + r.message);
    if (r.history.size() < 2) {
        out.fail("fewer than two iterates");
        return out;
    }
    const double N = p.N;
    const auto& a = r.history[r.history.size() - 2];
    const auto& b = r.history.back();
    const double dE = std::abs((b.energy - a.energy) / N);
    const double dn = std::abs(b.n_mean - a.n_mean);
    const double dm = std::abs(b.Mz - a.Mz);
    if (!(dE < 1e-12)) out.fail(format("final dE0=%.3e", dE));
    if (!(dn < 1e-8)) out.fail(format("final dn=%.3e", dn));
    if (!(dm < 1e-8)) out.fail(format("final dMz=%.3e", dm));
    out.note(format("%d iterations, dE0=%.1e dn=%.1e dMz=%.1e", r.iterations, dE, dn, dm));
    return out;
}

// 3. H_eff against the explicitly transformed state.
Outcome frame_equality(const Context&) {
    Outcome out;
    auto rng = criterion_rng(3);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const ModelSpec spec = random_spec(rng, 3);
        const PhotonFrame f = random_frame(rng);
        const Eigen::VectorXcd phi = random_spin_vector(rng, 3);
        const double d = frame_equality_check(spec, f, phi, 60);
        worst = std::max(worst, d);
        if (!(d < 1e-8)) out.fail(format("draw %d: difference %.3e", k, d));
    }
    out.note(format("100 frames, max difference %.2e", worst));
    return out;
}

// 4. Variational bound against the oracle.
Outcome variational_bound(const Context& ctx) {
    Outcome out;
    struct Case {
        PresetKind kind;
        int N;
        double g, J, Jz;
    };
    const std::vector<Case> cases = {
        {PresetKind::dicke, 4, 0.3, 0, 0},         {PresetKind::dicke, 6, 0.6, 0, 0},
        {PresetKind::dicke, 4, 0.9, 0, 0},         {PresetKind::dicke, 6, 1.2, 0, 0},
        {PresetKind::dicke_ising, 4, 0.3, 0.25, 0}, {PresetKind::dicke_ising, 6, 0.6, -0.5, 0},
        {PresetKind::dicke_ising, 6, 0.7, 0.125, 0}, {PresetKind::dicke_xxz, 4, 0.4, 0, -1.6},
        {PresetKind::dicke_xxz, 6, 0.01, 0, -10},  {PresetKind::dicke_xxz, 6, 0.5, 0, 2.0},
    };
    ScfConfig scf;
    SolverConfig solver;
    FockTruncation trunc;
    trunc.n_max = 60;
    double worst_gap = 0.0;
    for (const Case& c : cases) {
        ModelPreset p;
        p.kind = c.kind;
        p.N = c.N;
        p.g = c.g;
        p.J = c.J;
        p.Jz = c.Jz;
        const std::string name =
            format("%s N=%d g=%.2f J=%.3f Jz=%.1f", to_string(c.kind).c_str(), c.N, c.g, c.J, c.Jz);
        // Both seeds, so the bound and the gap refer to the best variational state.
        const PointResult pt = run_point(p.to_spec(), true, scf, solver);
        if (pt.status != "ok") {
            out.fail(name + ": " + pt.status);
            continue;
        }
        std::vector<const ScfReport*> reports{&pt.report};
        if (pt.other) reports.push_back(&*pt.other);
        for (const ScfReport* r : reports) {
            const OracleResult o = full_ground_state(r->spec, trunc);
            const double gap = r->energy - o.energy;
            ctx.log(format("%s [%s] E_ngs=%.10f E_oracle=%.10f", name.c_str(), r->branch.c_str(),
                           r->energy, o.energy));
            if (gap < -1e-10) out.fail(format("%s: E_ngs below oracle by %.3e", name.c_str(), -gap));
            if (c.kind == PresetKind::dicke && r == &pt.report) {
                const double rel = gap / std::abs(o.energy);
                worst_gap = std::max(worst_gap, rel);
                if (!(rel < 0.02)) out.fail(format("%s: gap %.2f%% of |E|", name.c_str(), 100 * rel));
            }
        }
    }
    out.note(format("10 points, largest Dicke gap %.3f%% of |E|", 100 * worst_gap));
    return out;
}

// Dicke-Ising sweep along g on one line of constant J.
SweepPlan ising_plan(const Context& ctx, int N, double J, double g0, double g1,
                     const std::string& name) {
    SweepPlan plan;
    plan.base.kind = PresetKind::dicke_ising;
    plan.base.N = N;
    plan.base.J = J;
    plan.base.boundary = Boundary::periodic;
    plan.axes = {{"g", g0, g1, 0.02}};
    plan.workers = ctx.workers();
    plan.out_dir = ctx.dir(name);
    return plan;
}

// 5. Dicke-Ising boundary at N = 16.
Outcome ising_boundary_check(const Context& ctx) {
    Outcome out;
    const double step = 0.02;
    ModelSpec unit;
    for (double J : {-0.125, 0.0, 0.125, 0.25}) {
        const double gc = ising_boundary(J, unit);
        const double g0 = snap(gc - 0.08, step);
        const double g1 = snap(gc + 0.06, step);
        std::vector<double> x;
        std::vector<std::vector<double>> n(2);
        const int sizes[2] = {16, 18};
        std::string thr;
        for (int s = 0; s < 2; ++s) {
            const SweepResult res =
                run_sweep(ising_plan(ctx, sizes[s], J, g0, g1, format("c5-N%d-J%+.3f", sizes[s], J)));
            x.clear();
            for (const auto& p : res.points) {
                if (p.status.rfind("error", 0) == 0)
                    out.fail(format("J=%.3f N=%d g=%.2f %s", J, sizes[s], p.coords[0], p.status.c_str()));
                x.push_back(p.coords[0]);
                n[s].push_back(p.obs.n_mean);
            }
            if (sizes[s] == 16 && !res.boundary.empty())
                thr = format(", n/N>0.01 at %.3f", res.boundary.front().at);
        }
        const auto at = finite_size_crossing(x, sizes[0], n[0], sizes[1], n[1]);
        if (!at) {
            out.fail(format("J=%.3f: no onset in [%.2f, %.2f]", J, g0, g1));
            continue;
        }
        ctx.log(format("J=%.3f onset %.4f g_c %.4f%s", J, *at, gc, thr.c_str()));
        if (std::abs(*at - gc) > step) out.fail(format("J=%.3f: onset %.4f vs g_c %.4f", J, *at, gc));
        out.note(format("J=%.3f onset %.3f (g_c %.3f)", J, *at, gc));
    }

    const SweepResult res = run_sweep(ising_plan(ctx, 16, -0.5, 0.50, 0.70, "c5-N16-J-0.500"));
    if (res.boundary.empty()) {
        out.fail("J=-0.5: no superradiant onset");
        return out;
    }
    const BoundaryPoint& b = res.boundary.front();
    if (b.order != "first") out.fail(format("J=-0.5: tagged %s order, jump %.3f", b.order.c_str(), b.jump));
    if (!(b.jump > 0.1)) out.fail(format("J=-0.5: jump %.3f", b.jump));
    if (!std::isfinite(b.energy_crossing)) {
        out.fail("J=-0.5: branch energies do not cross");
    } else {
        const double lo = res.points[b.bracket].coords[0];
        const double hi = res.points[b.bracket + 1].coords[0];
        if (b.energy_crossing < lo - step || b.energy_crossing > hi + step)
            out.fail(format("J=-0.5: energy crossing %.4f outside [%.2f, %.2f]", b.energy_crossing,
                            lo, hi));
    }
    out.note(format("J=-0.5 first-order jump %.3f, branch energies cross at g=%.4f", b.jump,
                    b.energy_crossing));
    return out;
}

// 6. Order parameters in the normal phases.
Outcome order_diagnostics(const Context& ctx) {
    Outcome out;
    struct Case {
        PresetKind kind;
        double g, J, Jz;
        const char* phase;
    };
    const std::vector<Case> cases = {
        {PresetKind::dicke_ising, 0.30, 0.25, 0, "FM-NP"},
        {PresetKind::dicke_ising, 0.25, 0.0, 0, "FM-NP"},
        {PresetKind::dicke_ising, 0.15, -0.125, 0, "FM-NP"},
        {PresetKind::dicke_xxz, 0.01, 0, 10.0, "FM-NP"},
        {PresetKind::dicke_ising, 0.30, -0.5, 0, "AFM-NP"},
        {PresetKind::dicke_ising, 0.50, -1.0, 0, "AFM-NP"},
        {PresetKind::dicke_xxz, 0.01, 0, -10.0, "AFM-NP"},
    };
    ScfConfig scf;
    SolverConfig solver;
    for (const Case& c : cases) {
        ModelPreset p;
        p.kind = c.kind;
        p.N = 16;
        p.g = c.g;
        p.J = c.J;
        p.Jz = c.Jz;
        p.boundary = Boundary::periodic;
        const std::string name =
            format("%s g=%.2f J=%.3f Jz=%.0f", to_string(c.kind).c_str(), c.g, c.J, c.Jz);
        SweepPlan probe;
        probe.base = p;
        const ModelSpec spec = p.to_spec();
        const PointResult pt = run_point(spec, wants_two_branch(probe, spec), scf, solver);
        if (pt.status != "ok") {
            out.fail(name + ": " + pt.status);
            continue;
        }
        const auto& o = pt.obs;
        ctx.log(format("%s: %s zz=%.4f stag=%+.4f opposite=%+.4f", name.c_str(),
                       pt.phase.label.c_str(), o.zz_bulk, o.stag_bulk, o.stag_bulk_opposite));
        if (pt.phase.label != c.phase) out.fail(name + ": labelled " + pt.phase.label);
        if (std::string(c.phase) == "FM-NP") {
            if (std::abs(o.zz_bulk - 0.25) > 0.02) out.fail(format("%s: zz=%.4f", name.c_str(), o.zz_bulk));
            out.note(format("%s zz=%.3f", name.c_str(), o.zz_bulk));
        } else {
            const double m1 = std::abs(o.stag_bulk), m2 = std::abs(o.stag_bulk_opposite);
            if (std::abs(m1 - 0.25) > 0.02 || std::abs(m2 - 0.25) > 0.02)
                out.fail(format("%s: |stag|=%.4f/%.4f", name.c_str(), m1, m2));
            out.note(format("%s stag=%+.3f (opposite sign %+.3f)", name.c_str(), o.stag_bulk,
                            o.stag_bulk_opposite));
        }
    }
    return out;
}

// 7. Photon-number scaling exponents in the XXZ model.
Outcome xxz_scaling(const Context& ctx) {
    Outcome out;
    struct Case {
        double g, Jz, lo, hi;
        bool open_interval;
    };
    const std::vector<Case> cases = {{0.01, -10.0, 0.9, 1.1, false},
                                     {0.01, 10.0, 0.9, 1.1, false},
                                     {0.4, -1.6, -0.1, 0.1, false},
                                     {0.01, -1.6, 0.05, 0.95, true}};
    for (const Case& c : cases) {
        SweepPlan plan;
        plan.base.kind = PresetKind::dicke_xxz;
        plan.base.g = c.g;
        plan.base.Jz = c.Jz;
        // Periodic: on open chains edge flips cost eps + Jz/2 and bias alpha by O(1/N).
        plan.base.boundary = Boundary::periodic;
        plan.axes = {{"g", c.g, c.g, 1.0}};
        plan.N_list = {8, 10, 12, 14, 16, 18, 20};
        plan.branches = BranchMode::never;
        plan.workers = ctx.workers();
        plan.out_dir = ctx.dir(format("c7-g%.2f-Jz%+.1f", c.g, c.Jz));
        const auto cells = run_scaling(plan);
        const ScalingCell& cell = cells.front();
        if (!cell.fit) {
            out.fail(format("g=%.2f Jz=%.1f: %s", c.g, c.Jz, cell.status.c_str()));
            continue;
        }
        for (const auto& p : cell.points)
            if (p.status != "ok") out.fail(format("g=%.2f Jz=%.1f N=%d %s", c.g, c.Jz, p.spec.N, p.status.c_str()));
        const double a = cell.fit->alpha;
        const bool ok = c.open_interval ? (a > c.lo && a < c.hi) : (a >= c.lo && a <= c.hi);
        if (!ok) out.fail(format("g=%.2f Jz=%.1f: alpha=%.3f", c.g, c.Jz, a));
        std::vector<std::pair<int, double>> large;
        for (const auto& p : cell.points)
            if (p.spec.N >= 12) large.emplace_back(p.spec.N, p.obs.n_mean);
        const double a12 = scaling_fit(large).alpha;
        out.note(format("g=%.2f Jz=%.1f alpha=%.3f (N>=12: %.3f)", c.g, c.Jz, a, a12));
    }
    return out;
}

// 8. Decay class of the xx correlations at N = 20.
Outcome correlation_classes(const Context& ctx) {
    Outcome out;
    struct Case {
        double g, Jz;
        DecayClass expect;
    };
    const std::vector<Case> cases = {{0.01, -5.0, DecayClass::exponential},
                                     {0.04, -1.6, DecayClass::power_law},
                                     {0.4, -1.6, DecayClass::long_range}};
    ScfConfig scf;
    SolverConfig solver;
    for (const Case& c : cases) {
        ModelPreset p;
        p.kind = PresetKind::dicke_xxz;
        p.N = 20;
        p.g = c.g;
        p.Jz = c.Jz;
        const PointResult pt = run_point(p.to_spec(), false, scf, solver);
        const std::string name = format("Jz=%.1f g=%.2f", c.Jz, c.g);
        if (pt.status != "ok") {
            out.fail(name + ": " + pt.status);
            continue;
        }
        const DecayFit& f = pt.phase.xx;
        ctx.log(format("%s: %s tail=%.4f ratio=%.3f", name.c_str(), to_string(f.kind).c_str(), f.tail,
                       f.ratio));
        if (f.kind != c.expect) out.fail(name + ": " + to_string(f.kind));
        out.note(name + " " + to_string(f.kind));
    }
    return out;
}

// 9. Dense against DMRG and collective ground energies at N = 12.
Outcome backend_cross_validation(const Context&) {
    Outcome out;
    auto rng = criterion_rng(9);
    double worst_mps = 0.0, worst_col = 0.0;
    SolverConfig dense, mps, col;
    mps.backend = Backend::mps;
    col.backend = Backend::collective;
    for (int k = 0; k < 20; ++k) {
        EffectiveCouplings c;
        c.N = 12;
        c.boundary = Boundary::open;
        c.e_photon = uniform(rng, 0.0, 1.0);
        c.h_x = uniform(rng, -1.0, 1.0);
        c.h_z = uniform(rng, -1.0, 1.0);
        c.hs_z = uniform(rng, -0.2, 0.2);
        c.k_xx = uniform(rng, -0.1, 0.1);
        c.jt_xx = uniform(rng, -1.0, 1.0);
        c.jt_yy = uniform(rng, -1.0, 1.0);
        c.jt_zz = uniform(rng, -1.0, 1.0);
        if (k % 2) {
            c.h_y = uniform(rng, -1.0, 1.0);
            c.hs_y = uniform(rng, -0.2, 0.2);
            c.jt_yz = uniform(rng, -0.5, 0.5);
        }
        const double ed = ground_state(c, dense).energy;
        const double em = ground_state(c, mps).energy;
        worst_mps = std::max(worst_mps, std::abs(ed - em));
        if (!(std::abs(ed - em) < 1e-8)) out.fail(format("draw %d: dense-mps %.3e", k, ed - em));

        EffectiveCouplings s = c;
        s.jt_xx = s.jt_yy = s.jt_zz = s.jt_yz = 0.0;
        s.hs_y = s.hs_z = 0.0;
        const double sd = ground_state(s, dense).energy;
        const double sc = ground_state(s, col).energy;
        worst_col = std::max(worst_col, std::abs(sd - sc));
        if (!(std::abs(sd - sc) < 1e-9)) out.fail(format("draw %d: dense-collective %.3e", k, sd - sc));
    }
    out.note(format("max |dense-mps|=%.1e, max |dense-collective|=%.1e", worst_mps, worst_col));
    return out;
}

// 10. Analytic frame gradient against central differences.
Outcome gradient_check(const Context&) {
    Outcome out;
    auto rng = criterion_rng(10);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const ModelSpec spec = random_spec(rng, 4);
        const PhotonFrame f = random_frame(rng);
        const SpinMoments m = explicit_moments(spec, random_spin_vector(rng, 4));
        const auto a = frame_gradient(spec, f, m);
        const auto d = frame_gradient_fd(spec, f, m);
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < 4; ++i) {
            scale = std::max(scale, std::abs(a[i]));
            diff = std::max(diff, std::abs(a[i] - d[i]));
        }
        const double rel = scale > 0.0 ? diff / scale : diff;
        worst = std::max(worst, rel);
        if (!(rel < 1e-6)) out.fail(format("frame %d: relative difference %.3e", k, rel));
    }
    out.note(format("50 frames, max relative difference %.1e", worst));
    return out;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(const Context&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "Dicke benchmark N=200", dicke_benchmark},
        {2, "convergence thresholds", convergence_thresholds},
        {3, "frame equality", frame_equality},
        {4, "variational bound", variational_bound},
        {5, "Dicke-Ising boundary N=16", ising_boundary_check},
        {6, "order diagnostics", order_diagnostics},
        {7, "XXZ photon scaling", xxz_scaling},
        {8, "xx correlation classes", correlation_classes},
        {9, "backend cross-validation", backend_cross_validation},
        {10, "frame gradient check", gradient_check},
    };
    return list;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    const Context ctx(opt);
    std::vector<CriterionResult> res;
    for (const Criterion& c : criteria()) {
        if (!opt.only.empty() && !opt.only.count(c.id)) continue;
        if (opt.verbose) std::cerr << "[" << c.id << "] " << c.name << std::endl;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run(ctx);
            r.pass = o.pass;
            r.detail = o.detail();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.push_back(r);
    }
    return res;
}

void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& res) {
    for (const auto& r : res) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
        os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail
           << " (" << secs << ")\n";
    }
    os.flush();
}

}  // namespace dicke
