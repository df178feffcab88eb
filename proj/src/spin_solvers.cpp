#include "dicke/spin_solvers.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dicke/kernels.hpp"
#include "dicke/lanczos.hpp"
#include "dicke/mps.hpp"

namespace dicke {

void SolverConfig::validate() const {
    if (!(krylov_tol > 0.0) || !(dmrg_tol > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (!(warm_noise >= 0.0)) throw std::invalid_argument("warm_noise must be non-negative");
    if (bond_dim < 2) throw std::invalid_argument("DMRG bond dimension must be >= 2");
    if (krylov_dim < 2 || max_lanczos_iterations < 1 || sweeps < 1)
        throw std::invalid_argument("solver iteration limits must be positive");
}

namespace {

template <class Vec>
Vec random_vector(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Vec v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if constexpr (std::is_same_v<typename Vec::Scalar, double>) {
            v(k) = nd(rng);
        } else {
            v(k) = cplx(nd(rng), nd(rng));
        }
    }
    return v / v.norm();
}

template <class Scalar>
GroundState dense_ground(const EffectiveCouplings& c, const SolverConfig& cfg,
                         const SpinState* warm) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index dim = Eigen::Index{1} << c.N;
    Vec start = random_vector<Vec>(dim, cfg.seed);
    if (warm && warm->valid() && warm->backend() == Backend::dense && warm->sites() == c.N) {
        const auto& ds = static_cast<const DenseSpinState&>(warm->impl());
        Vec w;
        if constexpr (std::is_same_v<Scalar, double>) {
            const Eigen::VectorXcd z = ds.as_complex();
            w = z.real().norm() >= z.imag().norm() ? Eigen::VectorXd(z.real())
                                                    : Eigen::VectorXd(z.imag());
        } else {
            w = ds.as_complex();
        }
        // A small random admixture keeps every symmetry sector reachable.
        start = w / w.norm() + cfg.warm_noise * start;
    }
    const auto lat = kernels::Lattice::chain(c.N, c.boundary);
    Vec scratch(dim);
    auto apply = [&](const Vec& in, Vec& out) {
        out.resize(dim);
        kernels::apply_heff<Scalar>(c, lat, std::span<const Scalar>(in.data(), dim),
                                    std::span<Scalar>(out.data(), dim),
                                    std::span<Scalar>(scratch.data(), dim));
    };
    LanczosOptions lo;
    lo.krylov_dim = cfg.krylov_dim;
    lo.max_iterations = cfg.max_lanczos_iterations;
    lo.tol = cfg.krylov_tol;
    auto res = lanczos_ground<Scalar>(apply, std::move(start), lo);
    if (!res.converged) {
        std::ostringstream os;
        os << "dense Lanczos did not converge in " << res.iterations
           << " applications (residual " << res.residual << ")";
        throw SolverError(os.str());
    }
    GroundState gs;
    gs.energy = res.energy;
    gs.iterations = res.iterations;
    gs.converged = true;
    gs.state = SpinState(std::make_shared<DenseSpinState>(
        c.N, std::variant<Eigen::VectorXd, Eigen::VectorXcd>(std::move(res.vector))));
    return gs;
}

GroundState collective_ground(const EffectiveCouplings& c) {
    if (!c.is_collective())
        throw SolverError("collective backend requires a permutation-symmetric H_eff (all jt = 0, "
                          "no staggered field)");
    const int N = c.N;
    const Eigen::MatrixXcd Sx = CollectiveSpinState::total_operator(N, Axis::x);
    const Eigen::MatrixXcd Sy = CollectiveSpinState::total_operator(N, Axis::y);
    const Eigen::MatrixXcd Sz = CollectiveSpinState::total_operator(N, Axis::z);
    Eigen::MatrixXcd H = c.e_photon * Eigen::MatrixXcd::Identity(N + 1, N + 1) + c.h_x * Sx +
                         c.h_y * Sy + c.h_z * Sz + c.k_xx * Sx * Sx;
    H = 0.5 * (H + H.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw SolverError("collective eigensolver failed");
    GroundState gs;
    gs.energy = es.eigenvalues()(0);
    gs.iterations = 1;
    gs.converged = true;
    gs.state = SpinState(std::make_shared<CollectiveSpinState>(N, es.eigenvectors().col(0)));
    return gs;
}

GroundState mps_ground(const EffectiveCouplings& c, const SolverConfig& cfg,
                       const SpinState* warm) {
    if (c.boundary != Boundary::open) throw SolverError("mps backend requires an open chain");
    mps::Mps start;
    if (warm && warm->valid() && warm->backend() == Backend::mps && warm->sites() == c.N)
        start = static_cast<const MpsSpinState&>(warm->impl()).mps();
    else
        start = mps::Mps::random(c.N, std::min(8, cfg.bond_dim), cfg.seed);
    mps::DmrgOptions opt;
    opt.bond_dim = cfg.bond_dim;
    opt.max_sweeps = cfg.sweeps;
    opt.energy_tol = cfg.dmrg_tol;
    mps::DmrgResult res;
    try {
        res = mps::dmrg(mps::heff_mpo(c), std::move(start), opt);
    } catch (const std::logic_error& e) {
        throw SolverError(std::string("internal DMRG error: ") + e.what());
    }
    GroundState gs;
    gs.energy = res.energy;
    gs.iterations = res.sweeps;
    gs.converged = res.converged;
    gs.state = SpinState(std::make_shared<MpsSpinState>(std::move(res.state)));
    return gs;
}

}  // namespace

GroundState ground_state(const EffectiveCouplings& c, const SolverConfig& cfg,
                         const SpinState* warm) {
    cfg.validate();
    if (c.N < 1) throw SolverError("H_eff needs at least one site");
    switch (cfg.backend) {
        case Backend::dense:
            if (c.N > 24) throw SolverError("dense backend supports N <= 24");
            return c.is_real() ? dense_ground<double>(c, cfg, warm)
                               : dense_ground<cplx>(c, cfg, warm);
        case Backend::collective: return collective_ground(c);
        case Backend::mps: return mps_ground(c, cfg, warm);
    }
    throw SolverError("unknown backend");
}

SpinState polarized_state(Backend b, int N, double theta, double phi) {
    const double cu = std::cos(0.5 * theta), sd = std::sin(0.5 * theta);
    const cplx down = std::polar(sd, phi);
    switch (b) {
        case Backend::dense: {
            if (N > 24) throw SolverError("dense backend supports N <= 24");
            const Eigen::Index dim = Eigen::Index{1} << N;
            Eigen::VectorXcd v(dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                cplx amp = 1.0;
                for (int i = 0; i < N; ++i) amp *= ((k >> i) & 1) ? cplx(cu) : down;
                v(k) = amp;
            }
            if (std::abs(std::sin(phi)) < 1e-15)
                return SpinState(std::make_shared<DenseSpinState>(
                    N, std::variant<Eigen::VectorXd, Eigen::VectorXcd>(Eigen::VectorXd(v.real()))));
            return SpinState(std::make_shared<DenseSpinState>(
                N, std::variant<Eigen::VectorXd, Eigen::VectorXcd>(v)));
        }
        case Backend::collective: {
            // Spin coherent state: product state projected on |N/2, m>.
            Eigen::VectorXcd v(N + 1);
            for (int up = 0; up <= N; ++up) {
                const double logc = std::lgamma(N + 1.0) - std::lgamma(up + 1.0) -
                                    std::lgamma(N - up + 1.0);
                const double mag = std::exp(0.5 * logc + (up > 0 ? up * std::log(std::abs(cu)) : 0.0) +
                                            (N - up > 0 ? (N - up) * std::log(std::abs(sd)) : 0.0));
                const double sign = ((cu < 0 && up % 2) ? -1.0 : 1.0) * ((sd < 0 && (N - up) % 2) ? -1.0 : 1.0);
                v(up) = sign * mag * std::polar(1.0, (N - up) * phi);
            }
            return SpinState(std::make_shared<CollectiveSpinState>(N, v / v.norm()));
        }
        case Backend::mps:
            return SpinState(std::make_shared<MpsSpinState>(mps::Mps::product_bloch(N, theta, phi)));
    }
    throw SolverError("unknown backend");
}

}  // namespace dicke
