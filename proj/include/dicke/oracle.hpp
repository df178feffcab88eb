// oracle.hpp — exact ground state of the lab Hamiltonian in truncated Fock (x) spin space
//
// Small-size ground truth for every other module. The full Hamiltonian is
// assembled as a sparse matrix and solved with Lanczos; the Fock cutoff is
// checked by re-solving at n_max + step. Basis: photon index major, spin
// configuration minor, index = n * 2^N + config.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/frame_check.hpp"
#include "dicke/model.hpp"
#include "dicke/spin_ops.hpp"

namespace dicke {

struct FockTruncation {
    int n_max{40};
    int step{20};            // cutoff increase used to measure the margin
    double margin_tol{1e-8};  // allowed energy shift between the two cutoffs

    void validate() const;
};

/// Largest full-space dimension the oracle accepts.
inline constexpr std::int64_t kOracleMaxDim = 5'000'000;

struct OracleResult {
    ModelSpec spec;
    int n_max{0};
    double energy{0.0};
    double margin{0.0};  // |E(n_max) - E(n_max + step)|
    int iterations{0};
    Eigen::VectorXd state;  // real: H is real in this basis
};

/// Throws ConfigError if (n_max + 1) 2^N exceeds kOracleMaxDim and CutoffError
/// (with a suggested cutoff) if the margin exceeds trunc.margin_tol.
OracleResult full_ground_state(const ModelSpec& spec, const FockTruncation& trunc = {});

struct CollectiveOracleResult {
    double energy{0.0};
    double margin{0.0};
    int n_max{0};
};

/// Exact ground energy of the Dicke model (no exchange, no staggered field) in
/// the maximal-spin sector |N/2, m> (x) Fock 0..n_max, for N beyond the reach
/// of the full oracle. Throws ConfigError for a spec with couplings J or
/// pinning, and CutoffError like full_ground_state.
CollectiveOracleResult collective_ground_energy(const ModelSpec& spec,
                                                const FockTruncation& trunc = {});

struct OracleObservables {
    int N{0};
    double n_mean{0.0};  // <a^dag a> / N
    double Mz{0.0};      // sum_i <s^z_i> / N
    double Mx{0.0};
    double XX{0.0};  // <(S^x)^2>
    std::vector<double> sz;  // <s^z_i>
    std::vector<double> sx;
    // Tables from the bulk site, same layout as ObservableSet.
    int bulk_site{0};
    std::vector<double> zz;
    std::vector<double> xx;
};

OracleObservables full_observables(const OracleResult& r);

/// <s^a_i s^b_j> on the full state.
double full_expect_pair(const OracleResult& r, int i, Axis a, int j, Axis b);

/// <a^dag a> of a full-space vector with the given cutoff.
double full_photon_number(const Eigen::VectorXd& v, int N, int n_max);

/// Binary eigenvector dump: the 8-byte tag "DICKEGS1", then int64 N, n_max,
/// dimension, the ordering tag length and text ("photon-major"), the energy
/// as a double and the amplitudes as little-endian doubles.
void write_eigenvector(const OracleResult& r, const std::string& path);
OracleResult read_eigenvector(const std::string& path);

}  // namespace dicke
