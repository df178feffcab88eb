// effective_hamiltonian.hpp — photon-averaged spin Hamiltonian
//
//   H_eff = e_photon + sum_i [h_x s^x + (h_y + (-1)^i hs_y) s^y + (h_z + (-1)^i hs_z) s^z]
//         + k_xx (S^x)^2
//         - sum_<ij> [jt_xx s^x s^x + jt_yy s^y s^y + jt_zz s^z s^z + jt_yz (s^y s^z + s^z s^y)]
//
// obtained as <psi_ph| U^dag H U |psi_ph> for the Gaussian photon state of a
// PhotonFrame. The (S^x)^2 term is collective and keeps its on-site N/4 part.

#pragma once

#include <array>

#include "dicke/model.hpp"
#include "dicke/photon_frame.hpp"

namespace dicke {

struct EffectiveCouplings {
    int N{2};
    Boundary boundary{Boundary::open};
    double e_photon{0.0};
    double h_x{0.0};
    double h_y{0.0};
    double h_z{0.0};
    double hs_y{0.0};  // staggered parts, sign (-1)^i
    double hs_z{0.0};
    double k_xx{0.0};
    double jt_xx{0.0};
    double jt_yy{0.0};
    double jt_zz{0.0};
    double jt_yz{0.0};

    /// True when H_eff is real in the s^z basis (no s^y terms).
    bool is_real() const { return h_y == 0.0 && hs_y == 0.0 && jt_yz == 0.0; }
    /// True when H_eff is permutation symmetric (collective backend applies).
    bool is_collective() const {
        return jt_xx == 0.0 && jt_yy == 0.0 && jt_zz == 0.0 && jt_yz == 0.0 && hs_y == 0.0 &&
               hs_z == 0.0;
    }
};

EffectiveCouplings build(const ModelSpec& spec, const PhotonFrame& frame);

/// The spin-state expectations that enter <phi|H_eff|phi>. Pair sums run over
/// the chain bonds; Pyz is the sum of <s^y_i s^z_j + s^z_i s^y_j>.
struct SpinMoments {
    double X{0.0}, Y{0.0}, Z{0.0};
    double XX{0.0};
    double Ys{0.0}, Zs{0.0};  // sum_i (-1)^i <s^a_i>
    double Pxx{0.0}, Pyy{0.0}, Pzz{0.0}, Pyz{0.0};
};

/// <phi|H_eff(frame)|phi> as a function of the frame at fixed spin moments.
double frame_energy(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m);

/// Analytic gradient of frame_energy with respect to (delta_x, delta_p, r, lambda).
std::array<double, 4> frame_gradient(const ModelSpec& spec, const PhotonFrame& frame,
                                     const SpinMoments& m);

/// Central finite-difference gradient of frame_energy (step h).
std::array<double, 4> frame_gradient_fd(const ModelSpec& spec, const PhotonFrame& frame,
                                        const SpinMoments& m, double h = 1e-5);

/// Expectation of H_eff from its couplings and the spin moments.
double couplings_energy(const EffectiveCouplings& c, const SpinMoments& m);

}  // namespace dicke
