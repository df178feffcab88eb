#include "dicke/scf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/observables.hpp"

namespace dicke {

std::string to_string(SeedKind s) { return s == SeedKind::normal ? "normal" : "superradiant"; }

std::string to_string(GradientMode g) {
    return g == GradientMode::analytic ? "analytic" : "finite-difference";
}

GradientMode gradient_mode_from_string(const std::string& s) {
    if (s == "analytic") return GradientMode::analytic;
    if (s == "fd" || s == "finite-difference") return GradientMode::finite_difference;
    throw std::invalid_argument("unknown gradient mode '" + s + "' (expected analytic|fd)");
}

void ScfConfig::validate() const {
    if (!(tol_E > 0.0) || !(tol_O > 0.0)) throw std::invalid_argument("SCF tolerances must be positive");
    if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("shrink factor must be in (0,1)");
    if (!(grow > 1.0)) throw std::invalid_argument("grow factor must be > 1");
    if (!(initial_step > 0.0) || !(fd_step > 0.0))
        throw std::invalid_argument("step sizes must be positive");
    if (max_outer < 1 || frame_steps < 0) throw std::invalid_argument("iteration limits must be positive");
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 to_vec(const PhotonFrame& f) { return {f.delta_x, f.delta_p, f.r, f.lambda}; }
PhotonFrame to_frame(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

double dot(const Vec4& a, const Vec4& b) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += a[k] * b[k];
    return s;
}

double closed_form_dx(const ModelSpec& spec, double lambda, const SpinMoments& m) {
    return -effective_single_coupling(spec) * (1.0 + lambda) * m.X / spec.omega;
}

}  // namespace

PhotonFrame minimize_frame(const ModelSpec& spec, const PhotonFrame& start, const SpinMoments& m,
                           const ScfConfig& cfg) {
    const bool coupled = effective_single_coupling(spec) != 0.0;
    PhotonFrame f = start;
    if (!coupled) f.lambda = 0.0;  // the entangler is inert
    f.delta_x = closed_form_dx(spec, f.lambda, m);
    double E = frame_energy(spec, f, m);

    auto gradient = [&](const PhotonFrame& fr) {
        Vec4 g = cfg.gradient == GradientMode::analytic ? frame_gradient(spec, fr, m)
                                                         : frame_gradient_fd(spec, fr, m, cfg.fd_step);
        g[0] = 0.0;  // delta_x is set in closed form
        if (!coupled) g[3] = 0.0;
        return g;
    };

    Vec4 x = to_vec(f);
    Vec4 g = gradient(f);
    Vec4 x_prev{}, g_prev{};
    double step = cfg.initial_step;
    for (int k = 0; k < cfg.frame_steps; ++k) {
        const double gn2 = dot(g, g);
        if (gn2 == 0.0) break;
        if (k > 0) {
            Vec4 s, y;
            for (int i = 0; i < 4; ++i) {
                s[i] = x[i] - x_prev[i];
                y[i] = g[i] - g_prev[i];
            }
            const double sy = dot(s, y);
            step = sy > 0.0 ? std::clamp(dot(s, s) / sy, 1e-8, 1e3) : step * cfg.grow;
        }
        // Armijo backtracking
        Vec4 xn;
        double En = E;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            for (int i = 0; i < 4; ++i) xn[i] = x[i] - step * g[i];
            PhotonFrame fn = to_frame(xn);
            fn.delta_x = closed_form_dx(spec, fn.lambda, m);
            xn[0] = fn.delta_x;
            En = frame_energy(spec, fn, m);
            if (En <= E - 1e-4 * step * gn2) {
                accepted = true;
                break;
            }
            step *= cfg.shrink;
        }
        if (!accepted || En >= E) break;
        const double drop = E - En;
        x_prev = x;
        g_prev = g;
        x = xn;
        E = En;
        g = gradient(to_frame(x));
        if (drop < 1e-16 * std::max(1.0, std::abs(E))) break;
    }
    return to_frame(x);
}

PhotonFrame seed_frame(const ModelSpec& spec, SeedKind seed, const ScfConfig& cfg) {
    PhotonFrame f;
    if (seed == SeedKind::normal) {
        f.delta_x = effective_single_coupling(spec) != 0.0 ? cfg.normal_seed_kick : 0.0;
        return f;
    }
    // Mean-field superradiant displacement of the bare Dicke model: the collective
    // spin tilts by cos(theta) = g_c^2 / g^2 and x = g' (N/2) sin(theta) / omega.
    const double gc = dicke_critical_coupling(spec);
    const double c = spec.g > gc ? (gc * gc) / (spec.g * spec.g) : 1.0;
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - c * c));
    f.delta_x = effective_single_coupling(spec) * 0.5 * spec.N * sin_t / spec.omega;
    f.lambda = cfg.superradiant_seed_lambda;
    return f;
}

double pinning_field(const ModelSpec& spec, const SolverConfig& solver) {
    return solver.backend == Backend::collective ? 0.0 : solver.degeneracy_field * spec.epsilon;
}

ScfReport solve(const ModelSpec& spec, SeedKind seed, const ScfConfig& scf,
                const SolverConfig& solver) {
    spec.validate();
    scf.validate();
    solver.validate();
    SpinState state;
    if (seed == SeedKind::superradiant) state = polarized_state(solver.backend, spec.N, 0.5 * M_PI, M_PI);
    return solve_from(spec, seed_frame(spec, seed, scf), state, to_string(seed), scf, solver);
}

ScfReport solve_from(const ModelSpec& spec_in, const PhotonFrame& start, const SpinState& warm,
                     const std::string& branch, const ScfConfig& scf, const SolverConfig& solver) {
    spec_in.validate();
    scf.validate();
    solver.validate();
    ModelSpec spec = spec_in;
    spec.staggered_field = pinning_field(spec_in, solver);
    const int N = spec.N;

    ScfReport rep;
    rep.branch = branch;
    rep.spec = spec;
    rep.scf = scf;
    rep.solver = solver;

    PhotonFrame frame = start;
    SpinState state = warm;
    if (state.valid() && (state.sites() != N || state.backend() != solver.backend))
        throw std::invalid_argument("warm state does not match the model size or backend");

    double prev_E0 = 0.0, prev_n = 0.0, prev_Mz = 0.0;
    Vec4 prev_frame{};
    for (int it = 1; it <= scf.max_outer; ++it) {
        const EffectiveCouplings c = build(spec, frame);
        GroundState gs = ground_state(c, solver, state.valid() ? &state : nullptr);
        state = gs.state;
        const double inner_E0 = (gs.energy - 0.5 * spec.omega) / N;
        if (it > 1) {
            const double slack = 10.0 * scf.tol_E * std::max(1.0, std::abs(prev_E0)) +
                                 (solver.backend == Backend::mps ? solver.dmrg_tol : 0.0);
            if (inner_E0 > prev_E0 + slack) {
                std::ostringstream os;
                os.precision(17);
                os << "energy rose in the spin solve at iteration " << it << ": " << prev_E0
                   << " -> " << inner_E0;
                throw ScfError(os.str());
            }
        }

        const SpinMoments m = state.moments(spec.boundary);
        const PhotonFrame next = minimize_frame(spec, frame, m, scf);
        const double E = frame_energy(spec, next, m);
        const double E0 = (E - 0.5 * spec.omega) / N;
        if (E0 > inner_E0 + 10.0 * scf.tol_E * std::max(1.0, std::abs(inner_E0)))
            throw ScfError("energy rose in the frame update at iteration " + std::to_string(it));

        ScfIterate rec;
        rec.energy = E;
        rec.inner_energy = gs.energy;
        rec.frame = next;
        rec.n_mean = lab_photon_number(spec, next, m) / N;
        rec.Mz = lab_total_sz(spec, next, m) / N;
        rec.inner_iterations = gs.iterations;
        rep.history.push_back(rec);
        rep.iterations = it;

        bool done = false;
        if (it > 1) {
            const Vec4 fv = to_vec(next);
            double dframe = 0.0;
            for (int k = 0; k < 4; ++k) dframe = std::max(dframe, std::abs(fv[k] - prev_frame[k]));
            done = std::abs(E0 - prev_E0) < scf.tol_E && std::abs(rec.n_mean - prev_n) < scf.tol_O &&
                   std::abs(rec.Mz - prev_Mz) < scf.tol_O && dframe < scf.tol_O;
        }
        frame = next;
        prev_E0 = E0;
        prev_n = rec.n_mean;
        prev_Mz = rec.Mz;
        prev_frame = to_vec(next);
        if (done) {
            rep.converged = true;
            break;
        }
    }

    const SpinMoments m = state.moments(spec.boundary);
    rep.lab_x = frame.delta_x + entangler_scale(frame, spec) * m.X;
    if (rep.lab_x < 0.0) {
        // Z2 partner: x, p -> -x, -p with every spin rotated by pi about z.
        frame.delta_x = -frame.delta_x;
        frame.delta_p = -frame.delta_p;
        state = rotate_pi_z(state);
        rep.lab_x = -rep.lab_x;
        rep.mirrored = true;
    }
    rep.frame = frame;
    rep.state = state;
    const ScfIterate& last = rep.history.back();
    rep.energy = last.energy;
    rep.E0 = (last.energy - 0.5 * spec.omega) / N;
    rep.n_mean = last.n_mean;
    rep.Mz = last.Mz;
    if (!rep.converged) {
        std::ostringstream os;
        os << "not converged after " << rep.iterations << " outer iterations";
        rep.message = os.str();
    }
    return rep;
}

TwoBranchResult solve_two_branch(const ModelSpec& spec, const ScfConfig& scf,
                                 const SolverConfig& solver) {
    TwoBranchResult r;
    r.normal = solve(spec, SeedKind::normal, scf, solver);
    r.superradiant = solve(spec, SeedKind::superradiant, scf, solver);
    // Ties (both seeds reaching the same state) go to the normal branch.
    const double tie = 1e-10 * std::max(1.0, std::abs(r.normal.energy));
    r.selected = r.superradiant.energy < r.normal.energy - tie ? SeedKind::superradiant
                                                                : SeedKind::normal;
    return r;
}

}  // namespace dicke
