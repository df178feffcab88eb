// kernels.hpp — matrix-free H_eff application and expectation values on 2^N vectors
//
// Two implementations of the Hamiltonian apply are kept side by side: a
// term-by-term serial scatter used as the reference in tests, and a blocked
// gather kernel parallelised over blocks of 2^10 configurations with OpenMP.
// Within a block every term reads one contiguous partner block, so the
// power-of-two strides of high-bit flips never alias in cache. Both are
// instantiated for double (real H_eff) and std::complex<double>.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/spin_ops.hpp"

namespace dicke::kernels {

/// Nearest-neighbour lists per site, derived from the chain bonds.
struct Lattice {
    int N{0};
    std::vector<std::pair<int, int>> bonds;
    std::vector<std::vector<int>> neighbours;
    bool wrap{false};  // bond (N-1, 0) present

    static Lattice chain(int N, Boundary b);
};

template <class Scalar>
void apply_heff_reference(const EffectiveCouplings& c, std::span<const Scalar> in,
                          std::span<Scalar> out);

/// out = H_eff in. `scratch` must have the same size as `in`.
template <class Scalar>
void apply_heff(const EffectiveCouplings& c, const Lattice& lat, std::span<const Scalar> in,
                std::span<Scalar> out, std::span<Scalar> scratch);

/// out = s^a_site in.
template <class Scalar>
void apply_site(Axis a, int site, std::span<const Scalar> in, std::span<Scalar> out);

/// All frame-dependent spin expectations in one pass (OpenMP reductions).
template <class Scalar>
SpinMoments moments(const Lattice& lat, std::span<const Scalar> v);

/// <v| s^a_i s^b_j |v> (real part; the pair is Hermitian for i != j or a == b).
template <class Scalar>
double expect_pair(int N, int i, Axis a, int j, Axis b, std::span<const Scalar> v);

template <class Scalar>
double expect_site(int N, int i, Axis a, std::span<const Scalar> v);

}  // namespace dicke::kernels
