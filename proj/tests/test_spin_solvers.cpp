#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "dicke/fock.hpp"
#include "dicke/mps.hpp"
#include "dicke/spin_solvers.hpp"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::random_couplings;

namespace {

double exact_lowest(const EffectiveCouplings& c) {
    const int N = c.N;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(1 << N, 1 << N) * c.e_photon;
    for (int i = 0; i < N; ++i) {
        const double s = stagger_sign(i);
        H += c.h_x * Eigen::MatrixXcd(fock::spin_site(N, i, Axis::x));
        H += (c.h_y + s * c.hs_y) * Eigen::MatrixXcd(fock::spin_site(N, i, Axis::y));
        H += (c.h_z + s * c.hs_z) * Eigen::MatrixXcd(fock::spin_site(N, i, Axis::z));
    }
    const Eigen::MatrixXcd Sx = fock::spin_total(N, Axis::x);
    const Eigen::MatrixXcd Sx2 = Sx * Sx;
    H += c.k_xx * Sx2;
    ModelSpec spec;
    spec.N = N;
    spec.boundary = c.boundary;
    for (auto [i, j] : spec.bonds()) {
        auto op = [&](Axis a, Axis b) -> Eigen::MatrixXcd {
            return Eigen::MatrixXcd(fock::spin_site(N, i, a) * fock::spin_site(N, j, b));
        };
        H -= c.jt_xx * op(Axis::x, Axis::x) + c.jt_yy * op(Axis::y, Axis::y) +
             c.jt_zz * op(Axis::z, Axis::z) + c.jt_yz * (op(Axis::y, Axis::z) + op(Axis::z, Axis::y));
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(H).eigenvalues()(0);
}

}  // namespace

TEST(SpinSolvers, DenseMatchesExactDiagonalisation) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 6; ++k) {
        const auto c = random_couplings(rng, 7, k % 2 ? Boundary::periodic : Boundary::open, k < 3);
        const GroundState gs = ground_state(c, SolverConfig{});
        EXPECT_TRUE(gs.converged);
        EXPECT_NEAR(gs.energy, exact_lowest(c), 1e-9);
        EXPECT_NEAR(gs.state.norm(), 1.0, 1e-12);
    }
}

TEST(SpinSolvers, DmrgMatchesDense) {
    std::mt19937_64 rng(32);
    SolverConfig mps;
    mps.backend = Backend::mps;
    for (int k = 0; k < 4; ++k) {
        const auto c = random_couplings(rng, 10, Boundary::open, k % 2 == 0);
        EXPECT_NEAR(ground_state(c, mps).energy, ground_state(c, SolverConfig{}).energy, 1e-8);
    }
}

TEST(SpinSolvers, CollectiveMatchesDense) {
    std::mt19937_64 rng(33);
    SolverConfig col;
    col.backend = Backend::collective;
    for (int k = 0; k < 4; ++k) {
        auto c = random_couplings(rng, 10, Boundary::open, k % 2 == 0);
        c.jt_xx = c.jt_yy = c.jt_zz = c.jt_yz = c.hs_y = c.hs_z = 0.0;
        ASSERT_TRUE(c.is_collective());
        EXPECT_NEAR(ground_state(c, col).energy, ground_state(c, SolverConfig{}).energy, 1e-9);
    }
}

TEST(SpinSolvers, BackendPreconditions) {
    std::mt19937_64 rng(34);
    const auto c = random_couplings(rng, 6, Boundary::periodic, true);
    SolverConfig cfg;
    cfg.backend = Backend::collective;
    EXPECT_THROW(ground_state(c, cfg), SolverError);
    cfg.backend = Backend::mps;
    EXPECT_THROW(ground_state(c, cfg), SolverError);
    EffectiveCouplings big;
    big.N = 25;
    EXPECT_THROW(ground_state(big, SolverConfig{}), SolverError);
}

TEST(SpinSolvers, ObservablesAgreeAcrossBackends) {
    std::mt19937_64 rng(35);
    auto c = random_couplings(rng, 8, Boundary::open, true);
    c.hs_z = 0.0;
    SolverConfig mps;
    mps.backend = Backend::mps;
    const GroundState a = ground_state(c, SolverConfig{});
    const GroundState b = ground_state(c, mps);
    const auto ma = a.state.moments(Boundary::open);
    const auto mb = b.state.moments(Boundary::open);
    EXPECT_NEAR(ma.Z, mb.Z, 1e-6);
    EXPECT_NEAR(ma.XX, mb.XX, 1e-6);
    EXPECT_NEAR(ma.Pzz, mb.Pzz, 1e-6);
    EXPECT_NEAR(a.state.expect(Observable::pair(2, Axis::x, 5, Axis::x)),
                b.state.expect(Observable::pair(2, Axis::x, 5, Axis::x)), 1e-6);
}

TEST(SpinSolvers, CollectiveSiteObservablesUseSymmetry) {
    const SpinState s = polarized_state(Backend::collective, 6, 0.3, 0.0);
    EXPECT_NEAR(s.expect(Observable::site(2, Axis::z)), s.expect(Observable::total(Axis::z)) / 6, 1e-12);
    EXPECT_NEAR(s.expect(Observable::pair(0, Axis::z, 3, Axis::z)), 0.25 * std::cos(0.3) * std::cos(0.3),
                1e-12);
    EXPECT_THROW(s.expect(Observable::site(6, Axis::z)), std::invalid_argument);
}

TEST(SpinSolvers, PolarizedStatesAgree) {
    const double theta = 1.1, phi = 0.4;
    for (Backend b : {Backend::dense, Backend::collective, Backend::mps}) {
        const SpinState s = polarized_state(b, 6, theta, phi);
        EXPECT_NEAR(s.expect(Observable::total(Axis::z)), 3.0 * std::cos(theta), 1e-12) << to_string(b);
        EXPECT_NEAR(s.expect(Observable::total(Axis::x)), 3.0 * std::sin(theta) * std::cos(phi), 1e-12);
        EXPECT_NEAR(s.expect(Observable::total(Axis::y)), 3.0 * std::sin(theta) * std::sin(phi), 1e-12);
    }
}

TEST(SpinSolvers, RotationByPiAboutZ) {
    const SpinState s = polarized_state(Backend::dense, 5, 0.8, 0.3);
    const SpinState r = rotate_pi_z(s);
    EXPECT_NEAR(r.expect(Observable::total(Axis::x)), -s.expect(Observable::total(Axis::x)), 1e-12);
    EXPECT_NEAR(r.expect(Observable::total(Axis::y)), -s.expect(Observable::total(Axis::y)), 1e-12);
    EXPECT_NEAR(r.expect(Observable::total(Axis::z)), s.expect(Observable::total(Axis::z)), 1e-12);
}

TEST(Mps, MpoExpectationMatchesDenseOperator) {
    std::mt19937_64 rng(36);
    auto c = random_couplings(rng, 6, Boundary::open, false);
    const mps::Mps psi = mps::Mps::random(6, 4, 7);
    const double e = mps::expectation(psi, mps::heff_mpo(c));
    ASSERT_NEAR(mps::overlap(psi, psi).real(), 1.0, 1e-12);
    const MpsSpinState st(psi);
    const SpinMoments m = st.moments(Boundary::open);
    EXPECT_NEAR(e, couplings_energy(c, m), 1e-10);
}

TEST(SolverConfig, Validation) {
    SolverConfig c;
    c.krylov_tol = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.bond_dim = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}
