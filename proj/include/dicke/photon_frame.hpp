// photon_frame.hpp — Gaussian photon state and entangler parameters
//
// The photon state is a squeezed, displaced vacuum with quadrature means
// (delta_x, delta_p) and variances v_x = e^{2r}/2, v_p = e^{-2r}/2. The
// entangler U = exp(-i eta S^x p), eta = g' lambda / omega, shifts x by eta S^x
// and rotates every spin about its x axis by the operator angle eta p.

#pragma once

#include "dicke/model.hpp"

namespace dicke {

struct PhotonFrame {
    double delta_x{0.0};
    double delta_p{0.0};
    double r{0.0};
    double lambda{0.0};
};

struct PhotonMoments {
    double mean_x{0.0};
    double mean_p{0.0};
    double v_x{0.5};
    double v_p{0.5};
};

/// <cos(eta p)>, <sin(eta p)>, <cos(2 eta p)>, <sin(2 eta p)> in the Gaussian state.
struct DressingFactors {
    double eta{0.0};
    double C1{1.0};
    double S1{0.0};
    double C2{1.0};
    double S2{0.0};
};

PhotonMoments moments(const PhotonFrame& frame);

/// Entangler scale eta = g' lambda / omega.
double entangler_scale(const PhotonFrame& frame, const ModelSpec& spec);

DressingFactors dressing(const PhotonFrame& frame, const ModelSpec& spec);

/// Same closed form from explicit (eta, mean_p, v_p).
DressingFactors dressing(double eta, double mean_p, double v_p);

}  // namespace dicke
