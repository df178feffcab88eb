#include <gtest/gtest.h>

#include <cmath>

#include "dicke/fock.hpp"
#include "dicke/frame_check.hpp"
#include "dicke/photon_frame.hpp"

using namespace dicke;

TEST(PhotonFrame, MomentsOfSqueezedState) {
    const PhotonFrame f{0.3, -0.2, 0.25, 0.0};
    const PhotonMoments m = moments(f);
    EXPECT_DOUBLE_EQ(m.mean_x, 0.3);
    EXPECT_DOUBLE_EQ(m.mean_p, -0.2);
    EXPECT_NEAR(m.v_x * m.v_p, 0.25, 1e-15);  // minimum uncertainty
    EXPECT_NEAR(m.v_x, 0.5 * std::exp(0.5), 1e-15);
}

TEST(PhotonFrame, DressingMatchesExplicitAverages) {
    const PhotonFrame f{0.4, 0.35, -0.2, 0.0};
    const int n_max = 80;
    const Eigen::VectorXcd psi = gaussian_photon_state(f, n_max);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    const Eigen::MatrixXcd p = fock::p_quadrature(n_max + 40);
    const double eta = 0.7;
    Eigen::VectorXcd big = Eigen::VectorXcd::Zero(n_max + 41);
    big.head(n_max + 1) = psi;
    const Eigen::MatrixXcd U1 = fock::expm_hermitian(p, -eta);      // exp(i eta p)
    const Eigen::MatrixXcd U2 = fock::expm_hermitian(p, -2.0 * eta);
    const cplx e1 = big.dot(U1 * big);
    const cplx e2 = big.dot(U2 * big);
    const DressingFactors d = dressing(eta, moments(f).mean_p, moments(f).v_p);
    EXPECT_NEAR(d.C1, e1.real(), 1e-10);
    EXPECT_NEAR(d.S1, e1.imag(), 1e-10);
    EXPECT_NEAR(d.C2, e2.real(), 1e-10);
    EXPECT_NEAR(d.S2, e2.imag(), 1e-10);
}

TEST(PhotonFrame, IdentityFrameIsUndressed) {
    ModelSpec s;
    s.N = 4;
    s.g = 0.7;
    const DressingFactors d = dressing(PhotonFrame{}, s);
    EXPECT_DOUBLE_EQ(d.eta, 0.0);
    EXPECT_DOUBLE_EQ(d.C1, 1.0);
    EXPECT_DOUBLE_EQ(d.S1, 0.0);
    EXPECT_DOUBLE_EQ(d.C2, 1.0);
}

TEST(PhotonFrame, CoherentStateAtZeroSqueezing) {
    const PhotonFrame f{0.6, -0.3, 0.0, 0.0};
    const Eigen::VectorXcd psi = gaussian_photon_state(f, 60);
    const Eigen::MatrixXd a = fock::annihilation(60);
    const cplx alpha = psi.dot(a * psi);
    EXPECT_NEAR(alpha.real(), 0.6 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(alpha.imag(), -0.3 / std::sqrt(2.0), 1e-10);
    const double n = psi.dot(fock::number(60) * psi).real();
    EXPECT_NEAR(n, std::norm(alpha), 1e-10);
}
