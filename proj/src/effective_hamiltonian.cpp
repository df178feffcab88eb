#include "dicke/effective_hamiltonian.hpp"

#include <cmath>

namespace dicke {

EffectiveCouplings build(const ModelSpec& spec, const PhotonFrame& frame) {
    const PhotonMoments mo = moments(frame);
    const DressingFactors d = dressing(frame, spec);
    const double gp = effective_single_coupling(spec);
    const double lam = frame.lambda;

    EffectiveCouplings c;
    c.N = spec.N;
    c.boundary = spec.boundary;
    c.e_photon = 0.5 * spec.omega * (mo.v_x + mo.v_p + mo.mean_x * mo.mean_x + mo.mean_p * mo.mean_p);
    c.h_x = gp * mo.mean_x * (1.0 + lam);
    c.h_y = spec.epsilon * d.S1;
    c.h_z = spec.epsilon * d.C1;
    c.hs_y = spec.staggered_field * d.S1;
    c.hs_z = spec.staggered_field * d.C1;
    c.k_xx = gp * gp / spec.omega * (lam + 0.5 * lam * lam);
    c.jt_xx = spec.J.x;
    c.jt_yy = 0.5 * (spec.J.y * (1.0 + d.C2) + spec.J.z * (1.0 - d.C2));
    c.jt_zz = 0.5 * (spec.J.z * (1.0 + d.C2) + spec.J.y * (1.0 - d.C2));
    c.jt_yz = 0.5 * (spec.J.z - spec.J.y) * d.S2;
    return c;
}

double couplings_energy(const EffectiveCouplings& c, const SpinMoments& m) {
    return c.e_photon + c.h_x * m.X + c.h_y * m.Y + c.h_z * m.Z + c.hs_y * m.Ys + c.hs_z * m.Zs +
           c.k_xx * m.XX - c.jt_xx * m.Pxx - c.jt_yy * m.Pyy - c.jt_zz * m.Pzz - c.jt_yz * m.Pyz;
}

double frame_energy(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m) {
    return couplings_energy(build(spec, frame), m);
}

namespace {

// Partial derivatives of (C1, S1, C2, S2) with respect to one of eta, mean_p, v_p.
struct DressingPartials {
    double C1, S1, C2, S2;
};

}  // namespace

std::array<double, 4> frame_gradient(const ModelSpec& spec, const PhotonFrame& frame,
                                     const SpinMoments& m) {
    const PhotonMoments mo = moments(frame);
    const DressingFactors d = dressing(frame, spec);
    const double gp = effective_single_coupling(spec);
    const double w = spec.omega;
    const double a = d.eta;
    const double mp = mo.mean_p;
    const double vp = mo.v_p;

    // Field and exchange weights multiplying the dressing factors.
    const double A = spec.epsilon * m.Z + spec.staggered_field * m.Zs;
    const double B = spec.epsilon * m.Y + spec.staggered_field * m.Ys;
    const double Q = -0.5 * (spec.J.y - spec.J.z) * (m.Pyy - m.Pzz);
    const double R = -0.5 * (spec.J.z - spec.J.y) * m.Pyz;
    auto contract = [&](const DressingPartials& p) {
        return A * p.C1 + B * p.S1 + Q * p.C2 + R * p.S2;
    };

    const DressingPartials d_eta{-a * vp * d.C1 - mp * d.S1, -a * vp * d.S1 + mp * d.C1,
                                 -4.0 * a * vp * d.C2 - 2.0 * mp * d.S2,
                                 -4.0 * a * vp * d.S2 + 2.0 * mp * d.C2};
    const DressingPartials d_mp{-a * d.S1, a * d.C1, -2.0 * a * d.S2, 2.0 * a * d.C2};
    const DressingPartials d_vp{-0.5 * a * a * d.C1, -0.5 * a * a * d.S1, -2.0 * a * a * d.C2,
                                -2.0 * a * a * d.S2};

    std::array<double, 4> grad{};
    grad[0] = w * mo.mean_x + gp * (1.0 + frame.lambda) * m.X;
    grad[1] = w * mp + contract(d_mp);
    // dv_x/dr = 2 v_x, dv_p/dr = -2 v_p
    grad[2] = w * (mo.v_x - vp) - 2.0 * vp * contract(d_vp);
    grad[3] = gp * mo.mean_x * m.X + gp * gp / w * (1.0 + frame.lambda) * m.XX +
              gp / w * contract(d_eta);
    return grad;
}

std::array<double, 4> frame_gradient_fd(const ModelSpec& spec, const PhotonFrame& frame,
                                        const SpinMoments& m, double h) {
    std::array<double, 4> grad{};
    for (int k = 0; k < 4; ++k) {
        PhotonFrame up = frame, dn = frame;
        double* pu[] = {&up.delta_x, &up.delta_p, &up.r, &up.lambda};
        double* pd[] = {&dn.delta_x, &dn.delta_p, &dn.r, &dn.lambda};
        *pu[k] += h;
        *pd[k] -= h;
        grad[k] = (frame_energy(spec, up, m) - frame_energy(spec, dn, m)) / (2.0 * h);
    }
    return grad;
}

}  // namespace dicke
