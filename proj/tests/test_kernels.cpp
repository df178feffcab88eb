#include <gtest/gtest.h>

#include <random>

#include <omp.h>

#include "dicke/fock.hpp"
#include "dicke/frame_check.hpp"
#include "dicke/kernels.hpp"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::random_couplings;
using dicke::testing::random_spin_vector;

namespace {

// H_eff assembled from explicit sparse spin operators.
fock::SpMatC explicit_heff(const EffectiveCouplings& c) {
    const int N = c.N;
    const int dim = 1 << N;
    fock::SpMatC H(dim, dim);
    H.setIdentity();
    H *= c.e_photon;
    for (int i = 0; i < N; ++i) {
        const double s = stagger_sign(i);
        H += c.h_x * fock::spin_site(N, i, Axis::x);
        H += (c.h_y + s * c.hs_y) * fock::spin_site(N, i, Axis::y);
        H += (c.h_z + s * c.hs_z) * fock::spin_site(N, i, Axis::z);
    }
    const fock::SpMatC Sx = fock::spin_total(N, Axis::x);
    H += c.k_xx * (Sx * Sx);
    ModelSpec spec;
    spec.N = N;
    spec.boundary = c.boundary;
    for (auto [i, j] : spec.bonds()) {
        auto op = [&](Axis a, Axis b) {
            return fock::SpMatC(fock::spin_site(N, i, a) * fock::spin_site(N, j, b));
        };
        H -= c.jt_xx * op(Axis::x, Axis::x);
        H -= c.jt_yy * op(Axis::y, Axis::y);
        H -= c.jt_zz * op(Axis::z, Axis::z);
        H -= c.jt_yz * (op(Axis::y, Axis::z) + op(Axis::z, Axis::y));
    }
    return H;
}

}  // namespace

class KernelsTest : public ::testing::TestWithParam<Boundary> {};

TEST_P(KernelsTest, ApplyMatchesExplicitOperator) {
    std::mt19937_64 rng(21);
    for (int N : {3, 5, 11, 12}) {
        const EffectiveCouplings c = random_couplings(rng, N, GetParam(), false);
        const Eigen::VectorXcd v = random_spin_vector(rng, N);
        const Eigen::VectorXcd ref = explicit_heff(c) * v;
        Eigen::VectorXcd a(v.size()), b(v.size()), scratch(v.size());
        const auto lat = kernels::Lattice::chain(N, GetParam());
        kernels::apply_heff<cplx>(c, lat, {v.data(), size_t(v.size())}, {a.data(), size_t(a.size())},
                                  {scratch.data(), size_t(scratch.size())});
        kernels::apply_heff_reference<cplx>(c, {v.data(), size_t(v.size())},
                                            {b.data(), size_t(b.size())});
        EXPECT_LT((a - ref).norm(), 1e-12) << "N=" << N;
        EXPECT_LT((b - ref).norm(), 1e-12) << "N=" << N;
    }
}

TEST_P(KernelsTest, RealApplyMatchesReference) {
    std::mt19937_64 rng(22);
    const int N = 12;
    const EffectiveCouplings c = random_couplings(rng, N, GetParam(), true);
    Eigen::VectorXd v = random_spin_vector(rng, N).real();
    v.normalize();
    Eigen::VectorXd a(v.size()), b(v.size()), scratch(v.size());
    const auto lat = kernels::Lattice::chain(N, GetParam());
    kernels::apply_heff<double>(c, lat, {v.data(), size_t(v.size())}, {a.data(), size_t(a.size())},
                                {scratch.data(), size_t(scratch.size())});
    kernels::apply_heff_reference<double>(c, {v.data(), size_t(v.size())}, {b.data(), size_t(b.size())});
    EXPECT_LT((a - b).norm(), 1e-12);
}

TEST_P(KernelsTest, MomentsMatchExplicitOperators) {
    std::mt19937_64 rng(23);
    const int N = 6;
    ModelSpec spec;
    spec.N = N;
    spec.boundary = GetParam();
    const Eigen::VectorXcd v = random_spin_vector(rng, N);
    const SpinMoments ref = explicit_moments(spec, v);
    const SpinMoments m =
        kernels::moments<cplx>(kernels::Lattice::chain(N, GetParam()), {v.data(), size_t(v.size())});
    EXPECT_NEAR(m.X, ref.X, 1e-12);
    EXPECT_NEAR(m.Y, ref.Y, 1e-12);
    EXPECT_NEAR(m.Z, ref.Z, 1e-12);
    EXPECT_NEAR(m.XX, ref.XX, 1e-12);
    EXPECT_NEAR(m.Ys, ref.Ys, 1e-12);
    EXPECT_NEAR(m.Zs, ref.Zs, 1e-12);
    EXPECT_NEAR(m.Pxx, ref.Pxx, 1e-12);
    EXPECT_NEAR(m.Pyy, ref.Pyy, 1e-12);
    EXPECT_NEAR(m.Pzz, ref.Pzz, 1e-12);
    EXPECT_NEAR(m.Pyz, ref.Pyz, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Boundaries, KernelsTest,
                         ::testing::Values(Boundary::open, Boundary::periodic));

TEST(Kernels, PairAndSiteExpectations) {
    std::mt19937_64 rng(24);
    const int N = 5;
    const Eigen::VectorXcd v = random_spin_vector(rng, N);
    const std::span<const cplx> sv{v.data(), size_t(v.size())};
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        const cplx ref = v.dot(fock::spin_site(N, 2, a) * v);
        EXPECT_NEAR(kernels::expect_site<cplx>(N, 2, a, sv), ref.real(), 1e-12);
        for (Axis b : {Axis::x, Axis::y, Axis::z}) {
            const cplx pr = v.dot(fock::spin_site(N, 1, a) * (fock::spin_site(N, 4, b) * v));
            EXPECT_NEAR(kernels::expect_pair<cplx>(N, 1, a, 4, b, sv), pr.real(), 1e-12);
        }
    }
}

TEST(Kernels, ApplySite) {
    std::mt19937_64 rng(25);
    const int N = 4;
    const Eigen::VectorXcd v = random_spin_vector(rng, N);
    Eigen::VectorXcd out(v.size());
    kernels::apply_site<cplx>(Axis::y, 3, {v.data(), size_t(v.size())}, {out.data(), size_t(out.size())});
    EXPECT_LT((out - fock::spin_site(N, 3, Axis::y) * v).norm(), 1e-14);
}

TEST(Kernels, ResultIndependentOfThreadCount) {
    std::mt19937_64 rng(26);
    const int N = 14;
    const EffectiveCouplings c = random_couplings(rng, N, Boundary::periodic, false);
    const Eigen::VectorXcd v = random_spin_vector(rng, N);
    const auto lat = kernels::Lattice::chain(N, Boundary::periodic);
    const std::span<const cplx> sv{v.data(), size_t(v.size())};
    auto run = [&](int threads, Eigen::VectorXcd& out) {
        omp_set_num_threads(threads);
        Eigen::VectorXcd scratch(v.size());
        out.resize(v.size());
        kernels::apply_heff<cplx>(c, lat, sv, {out.data(), size_t(out.size())},
                                  {scratch.data(), size_t(scratch.size())});
        return kernels::moments<cplx>(lat, sv);
    };
    Eigen::VectorXcd a, b;
    const SpinMoments m1 = run(1, a);
    const SpinMoments m3 = run(3, b);
    omp_set_num_threads(1);
    EXPECT_EQ(m1.XX, m3.XX);
    EXPECT_EQ(m1.Pyz, m3.Pyz);
    EXPECT_EQ(m1.Z, m3.Z);
    EXPECT_TRUE(a == b);
}
