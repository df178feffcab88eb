// frame_check.hpp — validates H_eff against the explicitly transformed state
//
// Builds |Psi> = U (U_GS|0> (x) |phi>) in truncated Fock (x) spin space with
// matrix exponentials and compares <Psi|H|Psi> to <phi|H_eff|phi>.

#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/model.hpp"
#include "dicke/photon_frame.hpp"

namespace dicke {

class CutoffError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Squeezed displaced vacuum U_d U_S |0> on Fock states 0..n_max.
Eigen::VectorXcd gaussian_photon_state(const PhotonFrame& frame, int n_max);

/// U (U_GS|0> (x) |phi>), photon index major.
Eigen::VectorXcd prepare_ngs_state(const ModelSpec& spec, const PhotonFrame& frame,
                                   const Eigen::VectorXcd& phi, int n_max);

/// Spin moments of an explicit 2^N spin vector via sparse operator products.
SpinMoments explicit_moments(const ModelSpec& spec, const Eigen::VectorXcd& phi);

/// |<phi|H_eff|phi> - <Psi|H|Psi>|. Requires N <= 6 and n_max >= 40. Throws
/// CutoffError when raising n_max by 20 moves the full-space value by > 1e-9.
double frame_equality_check(const ModelSpec& spec, const PhotonFrame& frame,
                            const Eigen::VectorXcd& phi, int n_max);

}  // namespace dicke
