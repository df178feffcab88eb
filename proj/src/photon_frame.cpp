#include "dicke/photon_frame.hpp"

#include <cmath>

namespace dicke {

PhotonMoments moments(const PhotonFrame& frame) {
    return {frame.delta_x, frame.delta_p, 0.5 * std::exp(2.0 * frame.r),
            0.5 * std::exp(-2.0 * frame.r)};
}

double entangler_scale(const PhotonFrame& frame, const ModelSpec& spec) {
    return effective_single_coupling(spec) * frame.lambda / spec.omega;
}

DressingFactors dressing(double eta, double mean_p, double v_p) {
    const double d1 = std::exp(-0.5 * eta * eta * v_p);
    const double d2 = std::exp(-2.0 * eta * eta * v_p);
    return {eta, d1 * std::cos(eta * mean_p), d1 * std::sin(eta * mean_p),
            d2 * std::cos(2.0 * eta * mean_p), d2 * std::sin(2.0 * eta * mean_p)};
}

DressingFactors dressing(const PhotonFrame& frame, const ModelSpec& spec) {
    const PhotonMoments m = moments(frame);
    return dressing(entangler_scale(frame, spec), m.mean_p, m.v_p);
}

}  // namespace dicke
