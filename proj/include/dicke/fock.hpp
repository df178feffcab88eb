// fock.hpp — explicit operators on truncated Fock space (x) spin-chain space
//
// Full-space ordering: photon index major, spin configuration minor,
// index = n * 2^N + config. Quadrature squares are built from exact matrix
// elements rather than as products of truncated x, p.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dicke/model.hpp"
#include "dicke/spin_ops.hpp"

namespace dicke::fock {

using SpMat = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<cplx>;

Eigen::MatrixXd annihilation(int n_max);
Eigen::MatrixXd x_quadrature(int n_max);
Eigen::MatrixXcd p_quadrature(int n_max);
/// Exact truncation of x^2 + p^2 = 2 a^dag a + 1 (diagonal).
Eigen::MatrixXd x2_plus_p2(int n_max);
Eigen::MatrixXd number(int n_max);

/// s^a on site i of an N-site chain (complex, 2^N x 2^N).
SpMatC spin_site(int N, int site, Axis a);
/// Collective S^a.
SpMatC spin_total(int N, Axis a);

SpMat kron(const SpMat& A, const SpMat& B);
SpMatC kron(const SpMatC& A, const SpMatC& B);
SpMat identity(int dim);

/// Spin-only part of the lab Hamiltonian: eps S^z + staggered field - sum J_a s s.
SpMat spin_hamiltonian(const ModelSpec& spec);

/// Full lab Hamiltonian in truncated Fock (x) spin space. Real in this basis.
SpMat lab_hamiltonian(const ModelSpec& spec, int n_max);

/// exp(-i t G) for a Hermitian G (dense).
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& G, double t);

}  // namespace dicke::fock
