#include "dicke/mps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "dicke/lanczos.hpp"

namespace dicke::mps {

namespace {

using Env = std::vector<Matrix>;  // one bra x ket matrix per MPO bond index

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

Env unit_env() { return Env{Matrix::Ones(1, 1)}; }

Env update_left(const Env& L, const std::array<Matrix, 2>& A, const MpoSite& W) {
    const Eigen::Index dk = A[0].cols();
    Env out(W.Dr, Matrix::Zero(dk, dk));
    // T[b][s'] = L[b] A[s']
    std::vector<std::array<Matrix, 2>> T(W.Dl);
    for (int b = 0; b < W.Dl; ++b)
        for (int s = 0; s < 2; ++s) T[b][s] = L[b] * A[s];
    for (int bp = 0; bp < W.Dr; ++bp) {
        for (int s = 0; s < 2; ++s) {
            Matrix M = Matrix::Zero(A[0].rows(), dk);
            bool any = false;
            for (int b = 0; b < W.Dl; ++b) {
                if (!W.nonzero[b * W.Dr + bp]) continue;
                const Eigen::Matrix2cd& op = W.at(b, bp);
                for (int sp = 0; sp < 2; ++sp) {
                    if (op(s, sp) == cplx(0.0)) continue;
                    M += op(s, sp) * T[b][sp];
                    any = true;
                }
            }
            if (any) out[bp] += A[s].adjoint() * M;
        }
    }
    return out;
}

Env update_right(const Env& R, const std::array<Matrix, 2>& A, const MpoSite& W) {
    const Eigen::Index dk = A[0].rows();
    Env out(W.Dl, Matrix::Zero(dk, dk));
    std::vector<std::array<Matrix, 2>> T(W.Dr);
    for (int bp = 0; bp < W.Dr; ++bp)
        for (int s = 0; s < 2; ++s) T[bp][s] = R[bp] * A[s].transpose();
    for (int b = 0; b < W.Dl; ++b) {
        for (int s = 0; s < 2; ++s) {
            Matrix M = Matrix::Zero(A[0].cols(), dk);
            bool any = false;
            for (int bp = 0; bp < W.Dr; ++bp) {
                if (!W.nonzero[b * W.Dr + bp]) continue;
                const Eigen::Matrix2cd& op = W.at(b, bp);
                for (int sp = 0; sp < 2; ++sp) {
                    if (op(s, sp) == cplx(0.0)) continue;
                    M += op(s, sp) * T[bp][sp];
                    any = true;
                }
            }
            if (any) out[b] += A[s].conjugate() * M;
        }
    }
    return out;
}

// Two-site wavefunction blocks theta[s1 * 2 + s2], each Dl x Dr.
using Theta = std::array<Matrix, 4>;

Eigen::VectorXcd flatten(const Theta& th) {
    const Eigen::Index blk = th[0].size();
    Eigen::VectorXcd v(4 * blk);
    for (int k = 0; k < 4; ++k) v.segment(k * blk, blk) = Eigen::Map<const Eigen::VectorXcd>(th[k].data(), blk);
    return v;
}

Theta unflatten(const Eigen::VectorXcd& v, Eigen::Index dl, Eigen::Index dr) {
    Theta th;
    const Eigen::Index blk = dl * dr;
    for (int k = 0; k < 4; ++k) th[k] = Eigen::Map<const Matrix>(v.data() + k * blk, dl, dr);
    return th;
}

Theta apply_two_site(const Env& L, const MpoSite& W1, const MpoSite& W2, const Env& R,
                     const Theta& th) {
    const Eigen::Index dl = th[0].rows(), dr = th[0].cols();
    // T1[b0][s1 s2] = L[b0] theta[s1 s2]
    std::vector<Theta> T1(W1.Dl);
    for (int b0 = 0; b0 < W1.Dl; ++b0)
        for (int k = 0; k < 4; ++k) T1[b0][k] = L[b0] * th[k];
    // T2[b1][t1 s2] = sum_{b0, s1} W1(t1, s1) T1[b0][s1 s2]
    std::vector<Theta> T2(W1.Dr);
    std::vector<bool> t2_used(W1.Dr, false);
    for (int b1 = 0; b1 < W1.Dr; ++b1) {
        for (int k = 0; k < 4; ++k) T2[b1][k] = Matrix::Zero(dl, dr);
        for (int b0 = 0; b0 < W1.Dl; ++b0) {
            if (!W1.nonzero[b0 * W1.Dr + b1]) continue;
            const Eigen::Matrix2cd& op = W1.at(b0, b1);
            for (int t1 = 0; t1 < 2; ++t1)
                for (int s1 = 0; s1 < 2; ++s1) {
                    if (op(t1, s1) == cplx(0.0)) continue;
                    for (int s2 = 0; s2 < 2; ++s2) T2[b1][t1 * 2 + s2] += op(t1, s1) * T1[b0][s1 * 2 + s2];
                    t2_used[b1] = true;
                }
        }
    }
    // T3[b2][t1 t2] = sum_{b1, s2} W2(t2, s2) T2[b1][t1 s2]
    Theta out;
    for (int k = 0; k < 4; ++k) out[k] = Matrix::Zero(dl, dr);
    for (int b2 = 0; b2 < W2.Dr; ++b2) {
        Theta T3;
        bool any = false;
        for (int k = 0; k < 4; ++k) T3[k] = Matrix::Zero(dl, dr);
        for (int b1 = 0; b1 < W2.Dl; ++b1) {
            if (!t2_used[b1] || !W2.nonzero[b1 * W2.Dr + b2]) continue;
            const Eigen::Matrix2cd& op = W2.at(b1, b2);
            for (int t2 = 0; t2 < 2; ++t2)
                for (int s2 = 0; s2 < 2; ++s2) {
                    if (op(t2, s2) == cplx(0.0)) continue;
                    for (int t1 = 0; t1 < 2; ++t1) T3[t1 * 2 + t2] += op(t2, s2) * T2[b1][t1 * 2 + s2];
                    any = true;
                }
        }
        if (!any) continue;
        const Matrix Rt = R[b2].transpose();
        for (int k = 0; k < 4; ++k) out[k] += T3[k] * Rt;
    }
    return out;
}

// Right-canonicalise sites N-1..1 and normalise; orthogonality centre at site 0.
void right_canonicalize(Mps& psi) {
    for (int i = psi.size() - 1; i > 0; --i) {
        auto& A = psi.sites[i];
        const Eigen::Index dl = A[0].rows(), dr = A[0].cols();
        Matrix M(dl, 2 * dr);
        M << A[0], A[1];
        Eigen::HouseholderQR<Matrix> qr(M.adjoint());
        const Eigen::Index k = std::min(dl, 2 * dr);
        const Matrix Q = qr.householderQ() * Matrix::Identity(2 * dr, k);
        const Matrix Rm = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        const Matrix Qd = Q.adjoint();  // k x 2dr, orthonormal rows
        A[0] = Qd.leftCols(dr);
        A[1] = Qd.rightCols(dr);
        for (int s = 0; s < 2; ++s) psi.sites[i - 1][s] = psi.sites[i - 1][s] * Rm.adjoint();
    }
    auto& A0 = psi.sites[0];
    const double nrm = std::sqrt(A0[0].squaredNorm() + A0[1].squaredNorm());
    A0[0] /= nrm;
    A0[1] /= nrm;
}

}  // namespace

int Mps::max_bond() const {
    int m = 1;
    for (const auto& s : sites) m = std::max<int>(m, static_cast<int>(s[0].cols()));
    return m;
}

Mps Mps::product(const std::vector<bool>& up) {
    Mps psi;
    for (bool u : up) {
        std::array<Matrix, 2> A{Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
        A[u ? 0 : 1](0, 0) = 1.0;
        psi.sites.push_back(A);
    }
    return psi;
}

Mps Mps::product_bloch(int N, double theta, double phi) {
    Mps psi;
    for (int i = 0; i < N; ++i) {
        std::array<Matrix, 2> A{Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
        A[0](0, 0) = std::cos(0.5 * theta);
        A[1](0, 0) = std::polar(std::sin(0.5 * theta), phi);
        psi.sites.push_back(A);
    }
    return psi;
}

Mps Mps::random(int N, int bond, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto dim_at = [&](int cut) {  // bond between sites cut-1 and cut
        const int left = std::min(cut, 30), right = std::min(N - cut, 30);
        const long cap = std::min(1L << left, 1L << right);
        return static_cast<int>(std::min<long>(bond, cap));
    };
    Mps psi;
    for (int i = 0; i < N; ++i) {
        const int dl = dim_at(i), dr = dim_at(i + 1);
        std::array<Matrix, 2> A{Matrix(dl, dr), Matrix(dl, dr)};
        for (auto& m : A)
            for (Eigen::Index k = 0; k < m.size(); ++k)
                m.data()[k] = cplx(nd(rng), nd(rng)) / std::sqrt(4.0 * dl);
        psi.sites.push_back(A);
    }
    right_canonicalize(psi);
    return psi;
}

MpoSite::MpoSite(int dl, int dr)
    : Dl(dl), Dr(dr), ops(dl * dr, Eigen::Matrix2cd::Zero()), nonzero(dl * dr, false) {}

void MpoSite::set(int a, int b, const Eigen::Matrix2cd& op) {
    at(a, b) = op;
    nonzero[a * Dr + b] = !op.isZero(0.0);
}

void MpoSite::add(int a, int b, const Eigen::Matrix2cd& op) { set(a, b, at(a, b) + op); }

namespace {

// Restrict a bulk FSM site to the chain ends: first site keeps row 0, last
// site keeps the final column.
Mpo finish_fsm(std::vector<MpoSite> bulk) {
    Mpo W;
    const int N = static_cast<int>(bulk.size());
    for (int i = 0; i < N; ++i) {
        const MpoSite& B = bulk[i];
        const int dl = (i == 0) ? 1 : B.Dl;
        const int dr = (i == N - 1) ? 1 : B.Dr;
        MpoSite S(dl, dr);
        for (int a = 0; a < dl; ++a)
            for (int b = 0; b < dr; ++b) {
                const int ba = (i == 0) ? 0 : a;
                const int bb = (i == N - 1) ? B.Dr - 1 : b;
                S.set(a, b, B.at(ba, bb));
            }
        W.sites.push_back(std::move(S));
    }
    return W;
}

}  // namespace

Mpo heff_mpo(const EffectiveCouplings& c) {
    const int N = c.N;
    if (c.boundary != Boundary::open) throw std::invalid_argument("heff_mpo: open boundary only");
    const Eigen::Matrix2cd I = identity2(), sx = spin_matrix(Axis::x), sy = spin_matrix(Axis::y),
                           sz = spin_matrix(Axis::z);
    std::vector<MpoSite> bulk;
    for (int i = 0; i < N; ++i) {
        MpoSite W(6, 6);
        W.set(0, 0, I);
        W.set(0, 1, sx);
        W.set(0, 2, sy);
        W.set(0, 3, sz);
        if (c.k_xx != 0.0) W.set(0, 4, sx);
        const double s = stagger_sign(i);
        W.set(0, 5, c.h_x * sx + (c.h_y + s * c.hs_y) * sy + (c.h_z + s * c.hs_z) * sz);
        W.set(1, 5, -c.jt_xx * sx);
        W.set(2, 5, -c.jt_yy * sy - c.jt_yz * sz);
        W.set(3, 5, -c.jt_zz * sz - c.jt_yz * sy);
        if (c.k_xx != 0.0) {
            W.set(4, 4, I);
            W.set(4, 5, 2.0 * c.k_xx * sx);
        }
        W.set(5, 5, I);
        bulk.push_back(std::move(W));
    }
    Mpo out = finish_fsm(std::move(bulk));
    out.constant = c.e_photon + 0.25 * N * c.k_xx;
    return out;
}

Mpo onsite_sum(int N, Axis a, const std::vector<double>& coef) {
    std::vector<MpoSite> bulk;
    for (int i = 0; i < N; ++i) {
        MpoSite W(2, 2);
        W.set(0, 0, identity2());
        W.set(0, 1, coef[i] * spin_matrix(a));
        W.set(1, 1, identity2());
        bulk.push_back(std::move(W));
    }
    return finish_fsm(std::move(bulk));
}

Mpo bond_sum(int N, Axis a, Axis b) {
    std::vector<MpoSite> bulk;
    for (int i = 0; i < N; ++i) {
        MpoSite W(3, 3);
        W.set(0, 0, identity2());
        W.set(0, 1, spin_matrix(a));
        W.set(1, 2, spin_matrix(b));
        W.set(2, 2, identity2());
        bulk.push_back(std::move(W));
    }
    return finish_fsm(std::move(bulk));
}

Mpo collective_square(int N, Axis a) {
    const Eigen::Matrix2cd op = spin_matrix(a);
    std::vector<MpoSite> bulk;
    for (int i = 0; i < N; ++i) {
        MpoSite W(3, 3);
        W.set(0, 0, identity2());
        W.set(0, 1, op);
        W.set(0, 2, op * op);
        W.set(1, 1, identity2());
        W.set(1, 2, 2.0 * op);
        W.set(2, 2, identity2());
        bulk.push_back(std::move(W));
    }
    return finish_fsm(std::move(bulk));
}

Mpo product_operator(int N, int i, Axis a, int j, Axis b) {
    Mpo W;
    for (int k = 0; k < N; ++k) {
        Eigen::Matrix2cd op = identity2();
        if (k == j) op = spin_matrix(b) * op;
        if (k == i) op = spin_matrix(a) * op;
        MpoSite S(1, 1);
        S.set(0, 0, op);
        W.sites.push_back(std::move(S));
    }
    return W;
}

cplx overlap(const Mps& bra, const Mps& ket) {
    Matrix L = Matrix::Ones(1, 1);
    for (int i = 0; i < ket.size(); ++i)
        L = bra.sites[i][0].adjoint() * L * ket.sites[i][0] +
            bra.sites[i][1].adjoint() * L * ket.sites[i][1];
    return L(0, 0);
}

double expectation(const Mps& psi, const Mpo& W) {
    Env L = unit_env();
    for (int i = 0; i < psi.size(); ++i) L = update_left(L, psi.sites[i], W.sites[i]);
    const double nrm = overlap(psi, psi).real();
    return L[0](0, 0).real() / nrm + W.constant;
}

DmrgResult dmrg(const Mpo& H, Mps psi, const DmrgOptions& opt) {
    const int N = psi.size();
    if (N != H.size()) throw std::invalid_argument("dmrg: MPS and MPO sizes differ");
    DmrgResult res;
    if (N == 1) {
        const Eigen::Matrix2cd h = H.sites[0].at(0, 0);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
        std::array<Matrix, 2> A{Matrix(1, 1), Matrix(1, 1)};
        A[0](0, 0) = es.eigenvectors()(0, 0);
        A[1](0, 0) = es.eigenvectors()(1, 0);
        res.state.sites = {A};
        res.energy = es.eigenvalues()(0) + H.constant;
        res.sweep_energies = {res.energy};
        res.converged = true;
        res.sweeps = 1;
        return res;
    }
    right_canonicalize(psi);
    std::vector<Env> L(N + 1), R(N + 1);
    L[0] = unit_env();
    R[N] = unit_env();
    for (int i = N - 1; i >= 1; --i) R[i] = update_right(R[i + 1], psi.sites[i], H.sites[i]);

    LanczosOptions lo;
    lo.krylov_dim = opt.local_krylov;
    lo.max_iterations = 4 * opt.local_krylov;
    lo.tol = opt.local_tol;

    auto optimise = [&](int i, bool moving_right) {
        auto& A = psi.sites[i];
        auto& B = psi.sites[i + 1];
        const Eigen::Index dl = A[0].rows(), dr = B[0].cols();
        Theta th;
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) th[s1 * 2 + s2] = A[s1] * B[s2];
        auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
            out = flatten(apply_two_site(L[i], H.sites[i], H.sites[i + 1], R[i + 2],
                                         unflatten(in, dl, dr)));
        };
        auto lr = lanczos_ground<cplx>(apply, flatten(th), lo);
        th = unflatten(lr.vector, dl, dr);

        Matrix M(2 * dl, 2 * dr);
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) M.block(s1 * dl, s2 * dr, dl, dr) = th[s1 * 2 + s2];
        Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        Eigen::Index keep = 0;
        while (keep < sv.size() && keep < opt.bond_dim && sv(keep) > opt.svd_cutoff * sv(0)) ++keep;
        keep = std::max<Eigen::Index>(keep, 1);
        double discarded = 0.0;
        for (Eigen::Index k = keep; k < sv.size(); ++k) discarded += sv(k) * sv(k);
        res.max_truncation = std::max(res.max_truncation, discarded);
        const Eigen::VectorXd s = sv.head(keep) / sv.head(keep).norm();
        const Matrix U = svd.matrixU().leftCols(keep);
        const Matrix Vh = svd.matrixV().leftCols(keep).adjoint();
        if (moving_right) {
            const Matrix SV = s.cast<cplx>().asDiagonal() * Vh;
            for (int s1 = 0; s1 < 2; ++s1) A[s1] = U.middleRows(s1 * dl, dl);
            for (int s2 = 0; s2 < 2; ++s2) B[s2] = SV.middleCols(s2 * dr, dr);
            L[i + 1] = update_left(L[i], A, H.sites[i]);
        } else {
            const Matrix US = U * s.cast<cplx>().asDiagonal();
            for (int s1 = 0; s1 < 2; ++s1) A[s1] = US.middleRows(s1 * dl, dl);
            for (int s2 = 0; s2 < 2; ++s2) B[s2] = Vh.middleCols(s2 * dr, dr);
            R[i + 1] = update_right(R[i + 2], B, H.sites[i + 1]);
        }
        return lr.energy + H.constant;
    };

    double last = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        double e = 0.0;
        for (int i = 0; i + 1 < N; ++i) e = optimise(i, true);
        for (int i = N - 2; i >= 0; --i) e = optimise(i, false);
        res.sweep_energies.push_back(e);
        res.sweeps = sweep + 1;
        const double scale = std::max(1.0, std::abs(e));
        if (e > last + 1e-7 * scale + 1e3 * res.max_truncation * scale)
            throw std::logic_error("dmrg: sweep energy increased");
        const bool settled = std::abs(last - e) < opt.energy_tol * scale;
        last = std::min(last, e);
        if (settled && res.sweeps >= opt.min_sweeps) {
            res.converged = true;
            break;
        }
    }
    res.energy = res.sweep_energies.back();
    res.state = std::move(psi);
    return res;
}

}  // namespace dicke::mps
