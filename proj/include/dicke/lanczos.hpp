// lanczos.hpp — thick-restart Lanczos ground-state search with full reorthogonalisation
//
// The basis V and its image W = H V are stored together, so the projected
// matrix V^dag H V is formed explicitly and a restart keeps the `keep` lowest
// Ritz vectors (and their images) at no extra operator cost. Keeping several
// Ritz vectors is what lets clusters of nearly degenerate levels converge.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace dicke {

struct LanczosOptions {
    int krylov_dim{40};
    int keep{10};              // Ritz vectors kept on restart
    int max_iterations{4000};  // total operator applications
    double tol{1e-9};          // residual norm |H v - E v|
};

template <class Scalar>
struct LanczosResult {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    double energy{0.0};
    Vector vector;
    int iterations{0};
    double residual{0.0};
    bool converged{false};
    std::vector<double> history;  // lowest Ritz value after every application
};

/// Lowest eigenpair of the Hermitian operator `apply(in, out)` starting from `start`.
template <class Scalar, class Apply>
LanczosResult<Scalar> lanczos_ground(Apply&& apply,
                                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1> start,
                                     const LanczosOptions& opt) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index dim = start.size();
    LanczosResult<Scalar> res;
    if (dim == 0) return res;

    const int m = static_cast<int>(std::min<Eigen::Index>(std::max(opt.krylov_dim, 2), dim));
    const int keep = std::clamp(opt.keep, 1, std::max(1, m - 2));
    Matrix V(dim, m), W(dim, m);
    Matrix T = Matrix::Zero(m, m);
    V.col(0) = start / start.norm();
    int k = 0;  // columns of V whose image is known
    double previous_restart_energy = std::numeric_limits<double>::infinity();
    Vector w(dim), ritz_vec(dim), resid(dim);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y;
    double theta = 0.0;

    auto orthogonalise = [&](Vector& v, int cols) {
        for (int pass = 0; pass < 2; ++pass) {
            const Vector h = V.leftCols(cols).adjoint() * v;
            v.noalias() -= V.leftCols(cols) * h;
        }
    };

    while (res.iterations < opt.max_iterations) {
        bool stop = false;
        for (int j = k; j < m && res.iterations < opt.max_iterations; ++j) {
            {
                Vector vj = V.col(j);
                apply(vj, w);
                W.col(j) = w;
            }
            ++res.iterations;
            const Vector h = V.leftCols(j + 1).adjoint() * W.col(j);
            for (int i = 0; i <= j; ++i) {
                T(i, j) = h(i);
                T(j, i) = Eigen::numext::conj(h(i));
            }
            T(j, j) = Eigen::numext::real(h(j));
            const int n = j + 1;
            Eigen::SelfAdjointEigenSolver<Matrix> es(T.topLeftCorner(n, n));
            theta = es.eigenvalues()(0);
            y = es.eigenvectors().col(0);
            res.history.push_back(theta);
            ritz_vec.noalias() = V.leftCols(n) * y;
            resid.noalias() = W.leftCols(n) * y;
            resid -= theta * ritz_vec;
            res.residual = resid.norm();
            if (res.residual < opt.tol) {
                res.converged = true;
                stop = true;
                break;
            }
            // Next basis vector: the new direction in H v_j.
            w = W.col(j);
            orthogonalise(w, n);
            const double b = w.norm();
            const double scale = std::max(1.0, std::abs(theta));
            if (b < 1e-14 * scale) {  // invariant subspace
                res.converged = true;
                stop = true;
                break;
            }
            if (j + 1 < m) {
                V.col(j + 1) = w / b;
            } else {
                resid = w / b;  // continuation vector after the restart
            }
        }
        res.energy = theta;
        if (stop || res.iterations >= opt.max_iterations) break;

        // Thick restart on the `keep` lowest Ritz vectors.
        Eigen::SelfAdjointEigenSolver<Matrix> es(T);
        const Matrix Y = es.eigenvectors().leftCols(keep);
        const Matrix Vk = V * Y;
        const Matrix Wk = W * Y;
        V.leftCols(keep) = Vk;
        W.leftCols(keep) = Wk;
        T.setZero();
        for (int i = 0; i < keep; ++i) T(i, i) = es.eigenvalues()(i);
        Vector cont = resid;
        orthogonalise(cont, keep);
        const double cn = cont.norm();
        if (!(cn > 0.0)) {
            res.converged = true;
            break;
        }
        V.col(keep) = cont / cn;
        k = keep;

        // Ritz value frozen across a full restart: accept a vector inside a
        // manifold split below the residual tolerance.
        const double scale = std::max(1.0, std::abs(theta));
        if (std::abs(previous_restart_energy - theta) < 1e-13 * scale && res.residual < 1e-6) {
            res.converged = true;
            break;
        }
        previous_restart_energy = theta;
    }
    res.vector = ritz_vec / ritz_vec.norm();
    return res;
}

}  // namespace dicke
