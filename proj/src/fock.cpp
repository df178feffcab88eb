#include "dicke/fock.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace dicke {

char axis_char(Axis a) { return a == Axis::x ? 'x' : (a == Axis::y ? 'y' : 'z'); }

Axis axis_from_char(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::x;
        case 'y': case 'Y': return Axis::y;
        case 'z': case 'Z': return Axis::z;
    }
    throw std::invalid_argument(std::string("unknown spin axis '") + c + "'");
}

}  // namespace dicke

namespace dicke::fock {

Eigen::MatrixXd annihilation(int n_max) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXd x_quadrature(int n_max) {
    const Eigen::MatrixXd a = annihilation(n_max);
    return (a + a.transpose()) / std::sqrt(2.0);
}

Eigen::MatrixXcd p_quadrature(int n_max) {
    const Eigen::MatrixXd a = annihilation(n_max);
    return cplx(0.0, 1.0) * (a.transpose() - a).cast<cplx>() / std::sqrt(2.0);
}

Eigen::MatrixXd x2_plus_p2(int n_max) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) m(n, n) = 2.0 * n + 1.0;
    return m;
}

Eigen::MatrixXd number(int n_max) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) m(n, n) = n;
    return m;
}

SpMatC spin_site(int N, int site, Axis a) {
    const std::uint64_t dim = std::uint64_t{1} << N;
    const std::uint64_t mask = std::uint64_t{1} << site;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        switch (a) {
            case Axis::x: trip.emplace_back(b ^ mask, b, 0.5); break;
            case Axis::y: trip.emplace_back(b ^ mask, b, sy_element(b ^ mask, site)); break;
            case Axis::z: trip.emplace_back(b, b, sz_of(b, site)); break;
        }
    }
    SpMatC m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpMatC spin_total(int N, Axis a) {
    SpMatC m = spin_site(N, 0, a);
    for (int i = 1; i < N; ++i) m += spin_site(N, i, a);
    return m;
}

namespace {

template <class Scalar>
Eigen::SparseMatrix<Scalar> kron_impl(const Eigen::SparseMatrix<Scalar>& A,
                                      const Eigen::SparseMatrix<Scalar>& B) {
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (typename Eigen::SparseMatrix<Scalar>::InnerIterator ib(B, kb); ib; ++ib)
                    trip.emplace_back(ia.row() * B.rows() + ib.row(),
                                      ia.col() * B.cols() + ib.col(), ia.value() * ib.value());
    Eigen::SparseMatrix<Scalar> m(A.rows() * B.rows(), A.cols() * B.cols());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace

SpMat kron(const SpMat& A, const SpMat& B) { return kron_impl(A, B); }
SpMatC kron(const SpMatC& A, const SpMatC& B) { return kron_impl(A, B); }

SpMat identity(int dim) {
    SpMat m(dim, dim);
    m.setIdentity();
    return m;
}

SpMat spin_hamiltonian(const ModelSpec& spec) {
    const int N = spec.N;
    const std::uint64_t dim = std::uint64_t{1} << N;
    const auto bonds = spec.bonds();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(dim * (bonds.size() + 1));
    for (std::uint64_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int i = 0; i < N; ++i)
            diag += (spec.epsilon + spec.staggered_field * stagger_sign(i)) * sz_of(b, i);
        for (auto [i, j] : bonds) {
            diag -= spec.J.z * sz_of(b, i) * sz_of(b, j);
            const bool same = ((b >> i) & 1u) == ((b >> j) & 1u);
            // <b'|s^x s^x|b> = 1/4, <b'|s^y s^y|b> = -1/4 (aligned) or +1/4 (anti-aligned)
            const double off = -(0.25 * spec.J.x + (same ? -0.25 : 0.25) * spec.J.y);
            if (off != 0.0) {
                const std::uint64_t flipped = b ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j);
                trip.emplace_back(flipped, b, off);
            }
        }
        trip.emplace_back(b, b, diag);
    }
    SpMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpMat lab_hamiltonian(const ModelSpec& spec, int n_max) {
    const int dim_s = 1 << spec.N;
    const double gp = effective_single_coupling(spec);
    const SpMat photon = (0.5 * spec.omega * x2_plus_p2(n_max)).sparseView();
    const SpMat x = x_quadrature(n_max).sparseView();
    const SpMat sx = spin_total(spec.N, Axis::x).real();
    SpMat H = kron(photon, identity(dim_s));
    H += kron(identity(n_max + 1), spin_hamiltonian(spec));
    if (gp != 0.0) H += gp * kron(x, sx);
    H.makeCompressed();
    return H;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& G, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace dicke::fock
