#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "dicke/fock.hpp"
#include "dicke/frame_check.hpp"
#include "dicke/observables.hpp"
#include "dicke/spin_solvers.hpp"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::random_frame;
using dicke::testing::random_spec;
using dicke::testing::random_spin_vector;

namespace {

// <Psi| A |Psi> for A = photon_op (x) spin_op on the photon-major full space.
double full_expect(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& photon_op,
                   const fock::SpMatC& spin_op) {
    const Eigen::Index ds = spin_op.rows();
    const Eigen::Index np = photon_op.rows();
    cplx acc = 0.0;
    for (Eigen::Index n = 0; n < np; ++n)
        for (Eigen::Index m = 0; m < np; ++m) {
            if (photon_op(n, m) == 0.0) continue;
            acc += photon_op(n, m) * psi.segment(n * ds, ds).dot(spin_op * psi.segment(m * ds, ds));
        }
    return acc.real();
}

}  // namespace

TEST(Observables, LabFrameMatchesPreparedState) {
    std::mt19937_64 rng(41);
    const int n_max = 70;
    for (int k = 0; k < 4; ++k) {
        ModelSpec s = random_spec(rng, 4, k % 2 ? Boundary::periodic : Boundary::open);
        const PhotonFrame f = random_frame(rng);
        const Eigen::VectorXcd phi = random_spin_vector(rng, 4);
        const Eigen::VectorXcd psi = prepare_ngs_state(s, f, phi, n_max);
        const SpinState st(std::make_shared<DenseSpinState>(4, phi));
        const ObservableSet o = lab_frame_observables(s, f, st);

        const Eigen::MatrixXcd num = fock::number(n_max).cast<cplx>();
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_max + 1, n_max + 1);
        const fock::SpMatC spin_id = fock::identity(16).cast<cplx>();
        EXPECT_NEAR(o.n_mean, full_expect(psi, num, spin_id) / 4, 1e-8);
        EXPECT_NEAR(o.Mz, full_expect(psi, id, fock::spin_total(4, Axis::z)) / 4, 1e-8);
        EXPECT_NEAR(o.Mx, full_expect(psi, id, fock::spin_total(4, Axis::x)) / 4, 1e-8);
        for (int r = 0; r < static_cast<int>(o.zz.size()); ++r) {
            const fock::SpMatC zz = fock::spin_site(4, o.bulk_site, Axis::z) *
                                    fock::spin_site(4, o.bulk_site + r, Axis::z);
            EXPECT_NEAR(o.zz[r], full_expect(psi, id, zz), 1e-8) << "r=" << r;
        }
    }
}

TEST(Observables, CorrelationTableLayout) {
    ModelSpec s;
    s.N = 8;
    const SpinState st = polarized_state(Backend::dense, 8, 3.14159265358979, 0.0);
    const ObservableSet o = lab_frame_observables(s, PhotonFrame{}, st);
    EXPECT_EQ(o.bulk_site, 1);
    ASSERT_EQ(o.zz.size(), 4u);
    EXPECT_NEAR(o.zz_bulk, 0.25, 1e-12);
    EXPECT_NEAR(o.stag_bulk, (-0.25 + 0.25 - 0.25) / 3, 1e-12);
    EXPECT_DOUBLE_EQ(o.stag_bulk_opposite, -o.stag_bulk);
    EXPECT_NEAR(o.Mz, -0.5, 1e-12);
    EXPECT_NEAR(o.abs_Mz, 0.5, 1e-12);
}

TEST(Observables, ScalingFitRecoversExponent) {
    std::vector<std::pair<int, double>> pts;
    for (int N = 8; N <= 20; N += 2) pts.emplace_back(N, 0.3 * std::pow(N, -1.0));
    ScalingFit f = scaling_fit(pts);
    EXPECT_NEAR(f.alpha, 1.0, 1e-12);
    EXPECT_EQ(f.regime, "normal");
    for (auto& p : pts) p.second = 0.2;
    f = scaling_fit(pts);
    EXPECT_NEAR(f.alpha, 0.0, 1e-12);
    EXPECT_EQ(f.regime, "superradiant");
    for (auto& p : pts) p.second = std::pow(p.first, -0.5);
    EXPECT_EQ(scaling_fit(pts).regime, "sublinear");
}

TEST(Observables, ScalingFitEdgeCases) {
    EXPECT_THROW(scaling_fit({{8, 0.1}, {10, 0.1}, {12, 0.1}}), std::invalid_argument);
    const ScalingFit f = scaling_fit({{8, 0.0}, {10, 0.0}, {12, 1e-14}, {14, 0.0}});
    EXPECT_TRUE(f.degenerate);
    EXPECT_EQ(f.regime, "normal");
}

TEST(Observables, ScalingRegime) {
    EXPECT_EQ(scaling_regime(1.05), "normal");
    EXPECT_EQ(scaling_regime(-0.05), "superradiant");
    EXPECT_EQ(scaling_regime(0.5), "sublinear");
}

TEST(Observables, DecayClasses) {
    std::vector<double> e(11), p(11), l(11);
    for (int r = 0; r <= 10; ++r) {
        e[r] = 0.25 * std::exp(-1.2 * r);
        p[r] = 0.25 * std::pow(std::max(r, 1), -1.0);
        l[r] = 0.1 + 0.15 * std::exp(-r);
    }
    EXPECT_EQ(correlation_decay_classify(e, 20).kind, DecayClass::exponential);
    EXPECT_EQ(correlation_decay_classify(p, 20).kind, DecayClass::power_law);
    const DecayFit lf = correlation_decay_classify(l, 20);
    EXPECT_EQ(lf.kind, DecayClass::long_range);
    EXPECT_FALSE(lf.low_confidence);
    EXPECT_TRUE(correlation_decay_classify(l, 8).low_confidence);
    EXPECT_THROW(correlation_decay_classify({0.25, 0.1}, 4), std::invalid_argument);
}

TEST(Observables, PhaseLabels) {
    ObservableSet o;
    o.N = 16;
    o.xx = {0.25, 0.01, 0.001, 0.0001};
    o.zz_bulk = 0.245;
    o.stag_bulk = 0.0;
    o.n_mean = 0.001;
    EXPECT_EQ(classify_phase(o).label, "FM-NP");
    o.zz_bulk = 0.0;
    o.stag_bulk = -0.24;
    EXPECT_EQ(classify_phase(o).label, "AFM-NP");
    o.stag_bulk = 0.01;
    o.n_mean = 0.2;
    EXPECT_EQ(classify_phase(o).label, "PM-SP");
    o.zz_bulk = 0.1;
    o.n_mean = 0.005;
    EXPECT_EQ(classify_phase(o).label, "boundary");
    o.xx = {0.25, 0.2, 0.1, 0.066, 0.05, 0.04};
    EXPECT_EQ(classify_phase(o, 0.5).label, "XY-SP-coexistence");
    const PhaseLabel pl = classify_phase(o);
    EXPECT_EQ(pl.distance.count("FM-NP"), 1u);
}
