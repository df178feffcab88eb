#include "dicke/spin_state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "dicke/kernels.hpp"

namespace dicke {

std::string to_string(Backend b) {
    switch (b) {
        case Backend::dense: return "dense";
        case Backend::collective: return "collective";
        case Backend::mps: return "mps";
    }
    return "dense";
}

Backend backend_from_string(const std::string& s) {
    if (s == "dense") return Backend::dense;
    if (s == "collective") return Backend::collective;
    if (s == "mps" || s == "dmrg") return Backend::mps;
    throw std::invalid_argument("unknown backend '" + s + "' (expected dense|collective|mps)");
}

std::vector<double> SpinState::expectations(const std::vector<Observable>& req) const {
    std::vector<double> out;
    out.reserve(req.size());
    for (const auto& o : req) out.push_back(expect(o));
    return out;
}

namespace {

void check_sites(const Observable& o, int N) {
    const bool bad_i = o.i < 0 || o.i >= N;
    const bool bad_j = o.kind == Observable::Kind::pair && (o.j < 0 || o.j >= N);
    if ((o.kind == Observable::Kind::site || o.kind == Observable::Kind::pair) && (bad_i || bad_j))
        throw std::invalid_argument("observable references a site outside the chain");
}

}  // namespace

// ---- dense -----------------------------------------------------------------

double DenseSpinState::norm() const {
    return std::visit([](const auto& v) { return v.norm(); }, v_);
}

DenseSpinState::Complex DenseSpinState::as_complex() const {
    if (const auto* r = std::get_if<Real>(&v_)) return r->cast<cplx>();
    return std::get<Complex>(v_);
}

SpinMoments DenseSpinState::moments(Boundary b) const {
    const auto lat = kernels::Lattice::chain(N_, b);
    return std::visit(
        [&](const auto& v) {
            using S = typename std::decay_t<decltype(v)>::Scalar;
            return kernels::moments<S>(lat, std::span<const S>(v.data(), v.size()));
        },
        v_);
}

double DenseSpinState::expect(const Observable& o) const {
    check_sites(o, N_);
    return std::visit(
        [&](const auto& v) -> double {
            using S = typename std::decay_t<decltype(v)>::Scalar;
            std::span<const S> sp(v.data(), v.size());
            switch (o.kind) {
                case Observable::Kind::site: return kernels::expect_site<S>(N_, o.i, o.a, sp);
                case Observable::Kind::pair:
                    return kernels::expect_pair<S>(N_, o.i, o.a, o.j, o.b, sp);
                case Observable::Kind::collective: {
                    double acc = 0.0;
                    for (int i = 0; i < N_; ++i) acc += kernels::expect_site<S>(N_, i, o.a, sp);
                    return acc;
                }
                case Observable::Kind::collective_square: {
                    if (o.a == Axis::x) return moments(Boundary::open).XX;
                    double acc = 0.0;
                    for (int i = 0; i < N_; ++i)
                        for (int j = 0; j < N_; ++j)
                            acc += kernels::expect_pair<S>(N_, i, o.a, j, o.a, sp);
                    return acc;
                }
            }
            return 0.0;
        },
        v_);
}

// ---- collective --------------------------------------------------------------

Eigen::MatrixXcd CollectiveSpinState::total_operator(int N, Axis a) {
    const int dim = N + 1;
    const double j = 0.5 * N;
    Eigen::MatrixXcd Sp = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd Sz = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = k - j;
        Sz(k, k) = m;
        if (k + 1 < dim) Sp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    switch (a) {
        case Axis::x: return 0.5 * (Sp + Sp.adjoint());
        case Axis::y: return cplx(0.0, -0.5) * (Sp - Sp.adjoint());
        case Axis::z: return Sz;
    }
    return Sz;
}

CollectiveSpinState::CollectiveSpinState(int N, Eigen::VectorXcd v) : N_(N), v_(std::move(v)) {
    if (v_.size() != N + 1) throw std::invalid_argument("collective state must have N+1 amplitudes");
    S_ = {total_operator(N, Axis::x), total_operator(N, Axis::y), total_operator(N, Axis::z)};
}

cplx CollectiveSpinState::product(Axis a, Axis b) const {
    const auto& A = S_[static_cast<int>(a)];
    const auto& B = S_[static_cast<int>(b)];
    return v_.dot(A * (B * v_)) / v_.squaredNorm();
}

namespace {

int levi_civita(Axis a, Axis b, Axis c) {
    const int i = static_cast<int>(a), j = static_cast<int>(b), k = static_cast<int>(c);
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

double CollectiveSpinState::expect(const Observable& o) const {
    check_sites(o, N_);
    const double nrm2 = v_.squaredNorm();
    auto total = [&](Axis a) { return v_.dot(S_[static_cast<int>(a)] * v_).real() / nrm2; };
    switch (o.kind) {
        case Observable::Kind::collective: return total(o.a);
        case Observable::Kind::collective_square: return product(o.a, o.a).real();
        case Observable::Kind::site: return total(o.a) / N_;
        case Observable::Kind::pair: {
            if (o.i == o.j) return o.a == o.b ? 0.25 : 0.0;
            // sum_k s^a_k s^b_k = delta_ab N/4 + (i/2) eps_abc S^c
            cplx onsite = (o.a == o.b) ? cplx(0.25 * N_) : cplx(0.0);
            for (Axis c : {Axis::x, Axis::y, Axis::z})
                if (int e = levi_civita(o.a, o.b, c)) onsite += cplx(0.0, 0.5 * e) * total(c);
            return ((product(o.a, o.b) - onsite) / (double(N_) * (N_ - 1))).real();
        }
    }
    return 0.0;
}

SpinMoments CollectiveSpinState::moments(Boundary b) const {
    SpinMoments m;
    m.X = expect(Observable::total(Axis::x));
    m.Y = expect(Observable::total(Axis::y));
    m.Z = expect(Observable::total(Axis::z));
    m.XX = product(Axis::x, Axis::x).real();
    double stag = 0.0;
    for (int i = 0; i < N_; ++i) stag += stagger_sign(i);
    m.Ys = stag * m.Y / N_;
    m.Zs = stag * m.Z / N_;
    ModelSpec s;
    s.N = N_;
    s.boundary = b;
    const double nb = static_cast<double>(s.bonds().size());
    if (N_ >= 2 && nb > 0) {
        m.Pxx = nb * expect(Observable::pair(0, Axis::x, 1, Axis::x));
        m.Pyy = nb * expect(Observable::pair(0, Axis::y, 1, Axis::y));
        m.Pzz = nb * expect(Observable::pair(0, Axis::z, 1, Axis::z));
        m.Pyz = nb * (expect(Observable::pair(0, Axis::y, 1, Axis::z)) +
                      expect(Observable::pair(0, Axis::z, 1, Axis::y)));
    }
    return m;
}

// ---- mps -------------------------------------------------------------------

double MpsSpinState::expect(const Observable& o) const {
    const int N = psi_.size();
    check_sites(o, N);
    switch (o.kind) {
        case Observable::Kind::site: {
            std::vector<double> coef(N, 0.0);
            coef[o.i] = 1.0;
            return mps::expectation(psi_, mps::onsite_sum(N, o.a, coef));
        }
        case Observable::Kind::pair:
            return mps::expectation(psi_, mps::product_operator(N, o.i, o.a, o.j, o.b));
        case Observable::Kind::collective:
            return mps::expectation(psi_, mps::onsite_sum(N, o.a, std::vector<double>(N, 1.0)));
        case Observable::Kind::collective_square:
            return mps::expectation(psi_, mps::collective_square(N, o.a));
    }
    return 0.0;
}

SpinMoments MpsSpinState::moments(Boundary b) const {
    if (b != Boundary::open) throw std::invalid_argument("mps state: open boundary only");
    const int N = psi_.size();
    std::vector<double> ones(N, 1.0), stag(N);
    for (int i = 0; i < N; ++i) stag[i] = stagger_sign(i);
    auto ev = [&](const mps::Mpo& W) { return mps::expectation(psi_, W); };
    SpinMoments m;
    m.X = ev(mps::onsite_sum(N, Axis::x, ones));
    m.Y = ev(mps::onsite_sum(N, Axis::y, ones));
    m.Z = ev(mps::onsite_sum(N, Axis::z, ones));
    m.Ys = ev(mps::onsite_sum(N, Axis::y, stag));
    m.Zs = ev(mps::onsite_sum(N, Axis::z, stag));
    m.XX = ev(mps::collective_square(N, Axis::x));
    if (N >= 2) {
        m.Pxx = ev(mps::bond_sum(N, Axis::x, Axis::x));
        m.Pyy = ev(mps::bond_sum(N, Axis::y, Axis::y));
        m.Pzz = ev(mps::bond_sum(N, Axis::z, Axis::z));
        m.Pyz = ev(mps::bond_sum(N, Axis::y, Axis::z)) + ev(mps::bond_sum(N, Axis::z, Axis::y));
    }
    return m;
}

// ---- symmetry ----------------------------------------------------------------

SpinState rotate_pi_z(const SpinState& s) {
    const int N = s.sites();
    switch (s.backend()) {
        case Backend::dense: {
            const auto& d = static_cast<const DenseSpinState&>(s.impl());
            auto v = d.amplitudes();
            std::visit(
                [N](auto& a) {
                    for (Eigen::Index b = 0; b < a.size(); ++b)
                        if ((N - std::popcount(static_cast<std::uint64_t>(b))) % 2) a(b) = -a(b);
                },
                v);
            return SpinState(std::make_shared<DenseSpinState>(N, std::move(v)));
        }
        case Backend::collective: {
            Eigen::VectorXcd v = static_cast<const CollectiveSpinState&>(s.impl()).amplitudes();
            for (int k = 0; k <= N; ++k)
                if ((N - k) % 2) v(k) = -v(k);
            return SpinState(std::make_shared<CollectiveSpinState>(N, v));
        }
        case Backend::mps: {
            mps::Mps psi = static_cast<const MpsSpinState&>(s.impl()).mps();
            for (auto& site : psi.sites) site[1] = -site[1];
            return SpinState(std::make_shared<MpsSpinState>(std::move(psi)));
        }
    }
    return s;
}

}  // namespace dicke
