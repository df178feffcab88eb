#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include "dicke/lanczos.hpp"

using namespace dicke;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = nd(rng);
    return 0.5 * (A + A.transpose());
}

}  // namespace

TEST(Lanczos, LowestEigenpairOfRandomMatrix) {
    const Eigen::MatrixXd A = random_symmetric(300, 1);
    const double ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues()(0);
    LanczosOptions opt;
    opt.tol = 1e-10;
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out.noalias() = A * in; };
    const auto r = lanczos_ground<double>(apply, Eigen::VectorXd::Ones(300), opt);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.energy, ref, 1e-10);
    EXPECT_LT((A * r.vector - r.energy * r.vector).norm(), 1e-9);
    for (std::size_t k = 1; k < r.history.size(); ++k)
        EXPECT_LE(r.history[k], r.history[k - 1] + 1e-12);
}

TEST(Lanczos, DegenerateGroundManifold) {
    Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(200, 0.0, 10.0);
    d(0) = d(1) = d(2) = -1.0;
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
        out = d.cwiseProduct(in);
    };
    LanczosOptions opt;
    const auto r = lanczos_ground<double>(apply, Eigen::VectorXd::Ones(200), opt);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.energy, -1.0, 1e-10);
}

TEST(Lanczos, ComplexHermitian) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    const int n = 120;
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = {nd(rng), nd(rng)};
    A = (0.5 * (A + A.adjoint())).eval();
    const double ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(A).eigenvalues()(0);
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out.noalias() = A * in; };
    LanczosOptions opt;
    opt.tol = 1e-10;
    const auto r = lanczos_ground<std::complex<double>>(apply, Eigen::VectorXcd::Ones(n), opt);
    EXPECT_NEAR(r.energy, ref, 1e-10);
}

TEST(Lanczos, SmallSpaceInvariantSubspace) {
    Eigen::Matrix3d A;
    A << 2, 1, 0, 1, 2, 0, 0, 0, 5;
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = A * in; };
    const auto r = lanczos_ground<double>(apply, Eigen::Vector3d(1, 0, 0), LanczosOptions{});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.energy, 1.0, 1e-12);
}
