#include "dicke/frame_check.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dicke/fock.hpp"

namespace dicke {

Eigen::VectorXcd gaussian_photon_state(const PhotonFrame& frame, int n_max) {
    const Eigen::MatrixXcd x = fock::x_quadrature(n_max).cast<cplx>();
    const Eigen::MatrixXcd p = fock::p_quadrature(n_max);
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(n_max + 1);
    vac(0) = 1.0;
    // U_S = exp(-i r (xp + px)/2) stretches x by e^r.
    const Eigen::MatrixXcd squeeze_gen = 0.5 * (x * p + p * x);
    // U_d = exp(i (x d_p - p d_x)) shifts (x, p) by (d_x, d_p).
    const Eigen::MatrixXcd disp_gen = -(frame.delta_p * x - frame.delta_x * p);
    Eigen::VectorXcd psi = fock::expm_hermitian(squeeze_gen, frame.r) * vac;
    psi = fock::expm_hermitian(disp_gen, 1.0) * psi;
    return psi;
}

Eigen::VectorXcd prepare_ngs_state(const ModelSpec& spec, const PhotonFrame& frame,
                                   const Eigen::VectorXcd& phi, int n_max) {
    const int dim_s = 1 << spec.N;
    if (phi.size() != dim_s) throw std::invalid_argument("prepare_ngs_state: phi has wrong size");
    const Eigen::VectorXcd ph = gaussian_photon_state(frame, n_max);
    const double eta = entangler_scale(frame, spec);
    const Eigen::MatrixXcd p = fock::p_quadrature(n_max);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        Eigen::MatrixXcd(fock::spin_total(spec.N, Axis::x)));
    // U = exp(-i eta S^x p) = sum_k exp(-i eta m_k p) (x) |k><k|
    std::map<long, Eigen::VectorXcd> shifted;  // keyed by 2 m
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max + 1) * dim_s);
    for (int k = 0; k < dim_s; ++k) {
        const double m = es.eigenvalues()(k);
        const long key = std::lround(2.0 * m);
        auto it = shifted.find(key);
        if (it == shifted.end())
            it = shifted.emplace(key, fock::expm_hermitian(p, eta * 0.5 * key) * ph).first;
        const Eigen::VectorXcd vk = es.eigenvectors().col(k);
        const cplx amp = vk.dot(phi);  // <k|phi>
        if (std::abs(amp) == 0.0) continue;
        for (int n = 0; n <= n_max; ++n)
            psi.segment(static_cast<Eigen::Index>(n) * dim_s, dim_s) += it->second(n) * amp * vk;
    }
    return psi;
}

SpinMoments explicit_moments(const ModelSpec& spec, const Eigen::VectorXcd& phi) {
    const int N = spec.N;
    auto ev = [&](const fock::SpMatC& op) { return phi.dot(op * phi).real(); };
    std::vector<fock::SpMatC> sx, sy, sz;
    for (int i = 0; i < N; ++i) {
        sx.push_back(fock::spin_site(N, i, Axis::x));
        sy.push_back(fock::spin_site(N, i, Axis::y));
        sz.push_back(fock::spin_site(N, i, Axis::z));
    }
    SpinMoments m;
    for (int i = 0; i < N; ++i) {
        const double s = stagger_sign(i);
        m.X += ev(sx[i]);
        const double yi = ev(sy[i]), zi = ev(sz[i]);
        m.Y += yi;
        m.Z += zi;
        m.Ys += s * yi;
        m.Zs += s * zi;
    }
    const fock::SpMatC SX = fock::spin_total(N, Axis::x);
    m.XX = ev(SX * SX);
    for (auto [i, j] : spec.bonds()) {
        m.Pxx += ev(sx[i] * sx[j]);
        m.Pyy += ev(sy[i] * sy[j]);
        m.Pzz += ev(sz[i] * sz[j]);
        m.Pyz += ev(sy[i] * sz[j] + sz[i] * sy[j]);
    }
    return m;
}

namespace {

double full_space_energy(const ModelSpec& spec, const PhotonFrame& frame,
                         const Eigen::VectorXcd& phi, int n_max) {
    const Eigen::VectorXcd psi = prepare_ngs_state(spec, frame, phi, n_max);
    const fock::SpMat H = fock::lab_hamiltonian(spec, n_max);
    const Eigen::VectorXcd Hpsi = H.cast<cplx>() * psi;
    return psi.dot(Hpsi).real() / psi.squaredNorm();
}

}  // namespace

double frame_equality_check(const ModelSpec& spec, const PhotonFrame& frame,
                            const Eigen::VectorXcd& phi, int n_max) {
    spec.validate();
    if (spec.N > 6) throw std::invalid_argument("frame_equality_check: N must be <= 6");
    if (n_max < 40) throw std::invalid_argument("frame_equality_check: n_max must be >= 40");
    const Eigen::VectorXcd unit = phi.normalized();
    const double full = full_space_energy(spec, frame, unit, n_max);
    const double wider = full_space_energy(spec, frame, unit, n_max + 20);
    if (std::abs(full - wider) > 1e-9) {
        std::ostringstream os;
        os << "frame_equality_check: Fock cutoff " << n_max << " insufficient (shift "
           << std::abs(full - wider) << " when raised by 20)";
        throw CutoffError(os.str());
    }
    const double eff = couplings_energy(build(spec, frame), explicit_moments(spec, unit));
    return std::abs(eff - full);
}

}  // namespace dicke
