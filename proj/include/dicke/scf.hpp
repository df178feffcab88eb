// scf.hpp — self-consistent optimisation of the photon frame and the spin state
//
// Each outer iteration solves H_eff at the current frame for its spin ground
// state (warm-started), then lowers <phi|H_eff(frame)|phi> over the frame at
// fixed spin moments by gradient descent with Barzilai-Borwein steps and
// Armijo backtracking. The displacement delta_x has the closed-form minimiser
// -g'(1 + lambda) <S^x> / omega and is reset to it after every step. Neither
// half can raise the energy, so the history is non-increasing.

#pragma once

#include <string>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/photon_frame.hpp"
#include "dicke/spin_solvers.hpp"

namespace dicke {

class ScfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SeedKind { normal, superradiant };
enum class GradientMode { analytic, finite_difference };

std::string to_string(SeedKind s);
std::string to_string(GradientMode g);
GradientMode gradient_mode_from_string(const std::string& s);

struct ScfConfig {
    int max_outer{400};
    double tol_E{1e-12};  // on E0 = (E - omega/2) / N
    double tol_O{1e-8};   // on n_mean, M_z and the frame parameters
    double initial_step{0.1};
    double shrink{0.5};
    double grow{2.0};
    int frame_steps{100};  // descent steps per outer iteration
    GradientMode gradient{GradientMode::analytic};
    double fd_step{1e-5};
    /// delta_x offset of the normal seed; moves it off the delta_x = 0 saddle.
    double normal_seed_kick{1e-3};
    /// Entangler strength of the superradiant seed.
    double superradiant_seed_lambda{0.0};

    void validate() const;
};

struct ScfIterate {
    double energy{0.0};        // after the frame update
    double inner_energy{0.0};  // ground energy of H_eff before the frame update
    PhotonFrame frame;
    double n_mean{0.0};
    double Mz{0.0};
    int inner_iterations{0};
};

struct ScfReport {
    bool converged{false};
    int iterations{0};
    PhotonFrame frame;
    double energy{0.0};
    double E0{0.0};
    double n_mean{0.0};
    double Mz{0.0};
    double lab_x{0.0};  // <x> in the lab frame
    std::vector<ScfIterate> history;
    std::string branch;  // normal | superradiant
    bool mirrored{false};  // canonical-sign flip applied
    std::string message;
    ModelSpec spec;  // as solved, including the pinning field
    ScfConfig scf;
    SolverConfig solver;
    SpinState state;
};

/// Minimise the frame at fixed spin moments, starting from `start`.
PhotonFrame minimize_frame(const ModelSpec& spec, const PhotonFrame& start, const SpinMoments& m,
                           const ScfConfig& cfg);

/// The seed frame and warm spin state of a branch.
PhotonFrame seed_frame(const ModelSpec& spec, SeedKind seed, const ScfConfig& cfg);

/// Pinning field that `solve` adds for a backend: degeneracy_field * epsilon
/// for dense and mps, zero for collective.
double pinning_field(const ModelSpec& spec, const SolverConfig& solver);

/// Throws ScfError if an iteration raises the energy (internal error) and
/// SolverError from the inner solver; non-convergence returns converged = false.
ScfReport solve(const ModelSpec& spec, SeedKind seed, const ScfConfig& scf,
                const SolverConfig& solver);

/// Same optimisation started from an explicit frame and warm spin state
/// (continuation along a parameter line). `branch` labels the report.
ScfReport solve_from(const ModelSpec& spec, const PhotonFrame& start, const SpinState& warm,
                     const std::string& branch, const ScfConfig& scf, const SolverConfig& solver);

struct TwoBranchResult {
    ScfReport normal;
    ScfReport superradiant;
    SeedKind selected{SeedKind::normal};
    const ScfReport& best() const { return selected == SeedKind::normal ? normal : superradiant; }
};

TwoBranchResult solve_two_branch(const ModelSpec& spec, const ScfConfig& scf,
                                 const SolverConfig& solver);

}  // namespace dicke
