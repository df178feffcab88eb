// mps.hpp — open-boundary matrix product states, MPOs and two-site DMRG
//
// An MPS site holds two matrices A[s] (s = 0 up, 1 down) of shape Dl x Dr.
// An MPO site holds a Dl x Dr grid of 2x2 local operators, lower-triangular
// in the usual finite-state-machine layout: bond index 0 means "nothing placed
// yet", the last index means "all operators placed".
//
// H_eff MPO channels (bond dimension 6):
//   0 start | 1 s^x just placed | 2 s^y just placed | 3 s^z just placed
//   4 collective s^x placed, waiting (identity string) | 5 done
// The all-to-all k_xx (S^x)^2 term uses channel 4: s^x opens it, identities
// carry it, 2 k_xx s^x closes it. The on-site N k_xx / 4 and e_photon are
// added as constants outside the MPO.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/spin_ops.hpp"

namespace dicke::mps {

using Matrix = Eigen::MatrixXcd;

struct Mps {
    std::vector<std::array<Matrix, 2>> sites;

    int size() const { return static_cast<int>(sites.size()); }
    int max_bond() const;

    /// Product state; `up[i]` selects the local spin. Alternatively a state
    /// polarised along an arbitrary local vector (theta, phi on the Bloch sphere).
    static Mps product(const std::vector<bool>& up);
    static Mps product_bloch(int N, double theta, double phi);
    static Mps random(int N, int bond, std::uint64_t seed);
};

struct MpoSite {
    int Dl{1}, Dr{1};
    std::vector<Eigen::Matrix2cd> ops;  // (a, b) -> ops[a * Dr + b]
    std::vector<bool> nonzero;

    MpoSite(int dl, int dr);
    Eigen::Matrix2cd& at(int a, int b) { return ops[a * Dr + b]; }
    const Eigen::Matrix2cd& at(int a, int b) const { return ops[a * Dr + b]; }
    void set(int a, int b, const Eigen::Matrix2cd& op);
    void add(int a, int b, const Eigen::Matrix2cd& op);
};

struct Mpo {
    std::vector<MpoSite> sites;
    double constant{0.0};  // added to every expectation
    int size() const { return static_cast<int>(sites.size()); }
};

/// H_eff without its constant parts in the MPO; `constant` = e_photon + N k_xx / 4.
Mpo heff_mpo(const EffectiveCouplings& c);

/// sum_i coef[i] s^a_i
Mpo onsite_sum(int N, Axis a, const std::vector<double>& coef);
/// sum_{i} s^a_i s^b_{i+1}
Mpo bond_sum(int N, Axis a, Axis b);
/// (sum_i s^a_i)^2
Mpo collective_square(int N, Axis a);
/// s^a_i s^b_j (i may equal j: the product is applied on that site)
Mpo product_operator(int N, int i, Axis a, int j, Axis b);

cplx overlap(const Mps& bra, const Mps& ket);
/// <psi|W|psi> / <psi|psi> + W.constant
double expectation(const Mps& psi, const Mpo& W);

struct DmrgOptions {
    int bond_dim{64};
    int max_sweeps{10};
    int min_sweeps{2};
    double energy_tol{1e-10};
    double svd_cutoff{1e-14};
    int local_krylov{20};
    double local_tol{1e-11};
};

struct DmrgResult {
    double energy{0.0};
    Mps state;
    int sweeps{0};
    bool converged{false};
    std::vector<double> sweep_energies;
    double max_truncation{0.0};
};

/// Two-site DMRG ground state of `H` starting from `start`. Throws
/// std::logic_error if the sweep energy rises by more than the truncation allows.
DmrgResult dmrg(const Mpo& H, Mps start, const DmrgOptions& opt);

}  // namespace dicke::mps
