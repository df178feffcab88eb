// spin_ops.hpp — spin-1/2 conventions shared by every backend
//
// Basis: bit i of a configuration index is 1 when spin i points up
// (s^z = +1/2). Single-site matrices are written in the (up, down) order.

#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace dicke {

using cplx = std::complex<double>;

enum class Axis { x, y, z };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// 2x2 matrix of s^a in the (up, down) basis.
inline Eigen::Matrix2cd spin_matrix(Axis a) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (a) {
        case Axis::x: m << 0.0, 0.5, 0.5, 0.0; break;
        case Axis::y: m << 0.0, cplx(0.0, -0.5), cplx(0.0, 0.5), 0.0; break;
        case Axis::z: m << 0.5, 0.0, 0.0, -0.5; break;
    }
    return m;
}

inline double sz_of(std::uint64_t config, int site) {
    return ((config >> site) & 1u) ? 0.5 : -0.5;
}

/// <config| s^y_i |config ^ (1 << i)>: -i/2 if spin i is up in `config`, +i/2 otherwise.
inline cplx sy_element(std::uint64_t config, int site) {
    return ((config >> site) & 1u) ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
}

inline int stagger_sign(int site) { return (site & 1) ? -1 : 1; }

}  // namespace dicke
