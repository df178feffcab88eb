#include <gtest/gtest.h>

#include <random>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/frame_check.hpp"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::random_frame;
using dicke::testing::random_spec;
using dicke::testing::random_spin_vector;

TEST(EffectiveHamiltonian, IdentityFrameIsBareSpinModel) {
    ModelSpec s;
    s.N = 4;
    s.g = 0.6;
    s.J = {0.1, 0.2, 0.3};
    const EffectiveCouplings c = build(s, PhotonFrame{});
    EXPECT_DOUBLE_EQ(c.e_photon, 0.5 * s.omega);
    EXPECT_DOUBLE_EQ(c.h_x, 0.0);
    EXPECT_DOUBLE_EQ(c.h_z, s.epsilon);
    EXPECT_DOUBLE_EQ(c.k_xx, 0.0);
    EXPECT_DOUBLE_EQ(c.jt_xx, 0.1);
    EXPECT_DOUBLE_EQ(c.jt_yy, 0.2);
    EXPECT_DOUBLE_EQ(c.jt_zz, 0.3);
    EXPECT_TRUE(c.is_real());
}

TEST(EffectiveHamiltonian, PolaronLimitCancelsLinearCoupling) {
    ModelSpec s;
    s.N = 4;
    s.g = 0.6;
    const EffectiveCouplings c = build(s, PhotonFrame{0.7, 0.0, 0.0, -1.0});
    EXPECT_NEAR(c.h_x, 0.0, 1e-15);
    const double gp = effective_single_coupling(s);
    EXPECT_NEAR(c.k_xx, -0.5 * gp * gp / s.omega, 1e-15);
}

TEST(EffectiveHamiltonian, FrameEnergyMatchesCouplings) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 10; ++k) {
        const ModelSpec s = random_spec(rng, 4, Boundary::periodic);
        const PhotonFrame f = random_frame(rng);
        const SpinMoments m = explicit_moments(s, random_spin_vector(rng, 4));
        EXPECT_NEAR(frame_energy(s, f, m), couplings_energy(build(s, f), m), 1e-12);
    }
}

TEST(EffectiveHamiltonian, FrameEqualityOnRandomFrames) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 8; ++k) {
        const ModelSpec s = random_spec(rng, 3, k % 2 ? Boundary::periodic : Boundary::open);
        const PhotonFrame f = random_frame(rng);
        EXPECT_LT(frame_equality_check(s, f, random_spin_vector(rng, 3), 60), 1e-8);
    }
}

TEST(EffectiveHamiltonian, SabotagedCouplingIsDetected) {
    std::mt19937_64 rng(13);
    ModelSpec s = random_spec(rng, 3);
    s.g = 0.8;
    const PhotonFrame f{0.3, 0.4, 0.1, -0.6};
    const Eigen::VectorXcd phi = random_spin_vector(rng, 3);
    const SpinMoments m = explicit_moments(s, phi);
    const double good = frame_energy(s, f, m);
    EffectiveCouplings c = build(s, f);
    c.h_y = -c.h_y;  // opposite entangler rotation
    EXPECT_GT(std::abs(couplings_energy(c, m) - good), 1e-6);
}

TEST(EffectiveHamiltonian, FrameCheckRejectsSmallCutoff) {
    ModelSpec s;
    s.N = 2;
    const Eigen::VectorXcd phi = Eigen::VectorXcd::Unit(4, 0);
    EXPECT_THROW(frame_equality_check(s, PhotonFrame{}, phi, 20), std::invalid_argument);
}

TEST(EffectiveHamiltonian, AnalyticGradientMatchesDifferences) {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 20; ++k) {
        const ModelSpec s = random_spec(rng, 4);
        const PhotonFrame f = random_frame(rng);
        const SpinMoments m = explicit_moments(s, random_spin_vector(rng, 4));
        const auto a = frame_gradient(s, f, m);
        const auto d = frame_gradient_fd(s, f, m);
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::abs(v));
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i], d[i], 1e-6 * scale) << "component " << i;
    }
}
