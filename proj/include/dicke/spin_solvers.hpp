// spin_solvers.hpp — ground state of H_eff on three interchangeable backends
//
//   dense       matrix-free restarted Lanczos on the full 2^N space (N <= 24)
//   collective  exact diagonalisation in the maximal-spin sector |N/2, m>
//               (permutation-symmetric H_eff only)
//   mps         two-site DMRG with the MPO of H_eff (open chains)

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/spin_state.hpp"

namespace dicke {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    Backend backend{Backend::dense};
    int max_lanczos_iterations{4000};
    int krylov_dim{40};
    double krylov_tol{1e-9};
    int bond_dim{64};
    int sweeps{10};
    double dmrg_tol{1e-10};
    /// Staggered pinning field in units of epsilon (dense and mps backends).
    double degeneracy_field{1e-9};
    /// Random admixture added to a dense warm start so no symmetry sector is missed.
    double warm_noise{1e-3};
    std::uint64_t seed{20240611};

    void validate() const;
};

struct GroundState {
    double energy{0.0};
    SpinState state;
    int iterations{0};
    bool converged{false};
};

/// Lowest eigenpair of H_eff (energy includes e_photon). `warm` seeds the
/// iterative backends. Throws SolverError on precondition violations or
/// non-convergence.
GroundState ground_state(const EffectiveCouplings& c, const SolverConfig& cfg,
                         const SpinState* warm = nullptr);

/// Backend-specific initial states used by the optimiser's seeds.
SpinState polarized_state(Backend b, int N, double theta, double phi);

}  // namespace dicke
