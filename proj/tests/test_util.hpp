// Shared random generators for the unit tests.

#pragma once

#include <random>

#include <Eigen/Dense>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/model.hpp"
#include "dicke/photon_frame.hpp"

namespace dicke::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ModelSpec random_spec(std::mt19937_64& rng, int N, Boundary b = Boundary::open) {
    ModelSpec s;
    s.N = N;
    s.omega = uniform(rng, 0.5, 1.5);
    s.epsilon = uniform(rng, 0.5, 1.5);
    s.g = uniform(rng, 0.0, 1.0);
    s.J = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    s.boundary = b;
    s.staggered_field = uniform(rng, -0.1, 0.1);
    return s;
}

inline PhotonFrame random_frame(std::mt19937_64& rng) {
    return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -0.4, 0.4),
            uniform(rng, -1.2, 0.3)};
}

inline Eigen::VectorXcd random_spin_vector(std::mt19937_64& rng, int N) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(Eigen::Index{1} << N);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = {nd(rng), nd(rng)};
    return v / v.norm();
}

inline EffectiveCouplings random_couplings(std::mt19937_64& rng, int N, Boundary b, bool real) {
    EffectiveCouplings c;
    c.N = N;
    c.boundary = b;
    c.e_photon = uniform(rng, 0.0, 1.0);
    c.h_x = uniform(rng, -1.0, 1.0);
    c.h_z = uniform(rng, -1.0, 1.0);
    c.hs_z = uniform(rng, -0.2, 0.2);
    c.k_xx = uniform(rng, -0.3, 0.3);
    c.jt_xx = uniform(rng, -1.0, 1.0);
    c.jt_yy = uniform(rng, -1.0, 1.0);
    c.jt_zz = uniform(rng, -1.0, 1.0);
    if (!real) {
        c.h_y = uniform(rng, -1.0, 1.0);
        c.hs_y = uniform(rng, -0.2, 0.2);
        c.jt_yz = uniform(rng, -0.5, 0.5);
    }
    return c;
}

}  // namespace dicke::testing
