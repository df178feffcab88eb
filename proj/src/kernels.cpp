#include "dicke/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace dicke::kernels {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

template <class Scalar>
constexpr bool is_complex_v = !std::is_same_v<Scalar, double>;

template <class Scalar>
Scalar from_cplx(cplx z) {
    if constexpr (is_complex_v<Scalar>) {
        return z;
    } else {
        return z.real();
    }
}

template <class Scalar>
double re_conj_mul(Scalar a, Scalar b) {  // Re(conj(a) * b)
    if constexpr (is_complex_v<Scalar>) {
        return (std::conj(a) * b).real();
    } else {
        return a * b;
    }
}

template <class Scalar>
void check_sizes(int N, std::size_t n) {
    if (n != (u64{1} << N)) throw std::invalid_argument("kernels: vector size != 2^N");
}

template <class Scalar>
void require_representable(const EffectiveCouplings& c) {
    if constexpr (!is_complex_v<Scalar>) {
        if (!c.is_real())
            throw std::invalid_argument("kernels: complex H_eff applied in real arithmetic");
    }
}

}  // namespace

Lattice Lattice::chain(int N, Boundary b) {
    ModelSpec s;
    s.N = N;
    s.boundary = b;
    Lattice lat;
    lat.N = N;
    lat.bonds = s.bonds();
    lat.neighbours.assign(N, {});
    for (auto [i, j] : lat.bonds) {
        lat.neighbours[i].push_back(j);
        lat.neighbours[j].push_back(i);
        if (i == N - 1 && j == 0) lat.wrap = true;
    }
    return lat;
}

// Reference: one term at a time, scattering into `out`.
template <class Scalar>
void apply_heff_reference(const EffectiveCouplings& c, std::span<const Scalar> in,
                          std::span<Scalar> out) {
    const int N = c.N;
    check_sizes<Scalar>(N, in.size());
    require_representable<Scalar>(c);
    const u64 dim = in.size();
    const auto bonds = Lattice::chain(N, c.boundary).bonds;
    std::fill(out.begin(), out.end(), Scalar(0));

    std::vector<Scalar> tmp(dim), tmp2(dim);
    for (u64 b = 0; b < dim; ++b) out[b] += c.e_photon * in[b];
    for (int i = 0; i < N; ++i) {
        const double hz = c.h_z + c.hs_z * stagger_sign(i);
        const cplx hy = c.h_y + c.hs_y * stagger_sign(i);
        for (u64 b = 0; b < dim; ++b) {
            const u64 f = b ^ (u64{1} << i);
            out[b] += hz * sz_of(b, i) * in[b];
            out[f] += c.h_x * 0.5 * in[b];
            out[f] += from_cplx<Scalar>(hy * sy_element(f, i)) * in[b];
        }
    }
    // k_xx (S^x)^2 = k_xx S^x (S^x in)
    std::fill(tmp.begin(), tmp.end(), Scalar(0));
    for (int i = 0; i < N; ++i)
        for (u64 b = 0; b < dim; ++b) tmp[b ^ (u64{1} << i)] += 0.5 * in[b];
    std::fill(tmp2.begin(), tmp2.end(), Scalar(0));
    for (int i = 0; i < N; ++i)
        for (u64 b = 0; b < dim; ++b) tmp2[b ^ (u64{1} << i)] += 0.5 * tmp[b];
    for (u64 b = 0; b < dim; ++b) out[b] += c.k_xx * tmp2[b];

    for (auto [i, j] : bonds) {
        const u64 mi = u64{1} << i, mj = u64{1} << j;
        for (u64 b = 0; b < dim; ++b) {
            const u64 f = b ^ mi ^ mj;
            const bool same = ((b >> i) & 1u) == ((b >> j) & 1u);
            out[f] -= c.jt_xx * 0.25 * in[b];
            out[f] -= c.jt_yy * (same ? -0.25 : 0.25) * in[b];
            out[b] -= c.jt_zz * sz_of(b, i) * sz_of(b, j) * in[b];
            // s^y_i s^z_j and s^z_i s^y_j
            const u64 fi = b ^ mi, fj = b ^ mj;
            out[fi] -= from_cplx<Scalar>(c.jt_yz * sy_element(fi, i) * sz_of(b, j)) * in[b];
            out[fj] -= from_cplx<Scalar>(c.jt_yz * sy_element(fj, j) * sz_of(b, i)) * in[b];
        }
    }
}

namespace {

constexpr int kBlockBits = 10;

int block_bits(int N) { return std::min(N, kBlockBits); }

// Calls f(b, v[b ^ mask], lo) for every configuration b = base | lo of the block.
template <class Scalar, class F>
inline void visit_partner(const Scalar* v, u64 base, int L, u64 mask, F&& f) {
    const u64 B = u64{1} << L;
    const u64 lo_mask = mask & (B - 1);
    const Scalar* p = v + ((base ^ mask) & ~(B - 1));
    for (u64 lo = 0; lo < B; ++lo) f(base | lo, p[lo ^ lo_mask], lo);
}

// Diagonal of H_eff from popcounts.
struct Diagonal {
    double e, hz, hsz, jzz;
    int N, nbonds, stag_offset;
    u64 even, odd, chain;
    bool wrap;

    Diagonal(const EffectiveCouplings& c, const Lattice& lat)
        : e(c.e_photon), hz(c.h_z), hsz(c.hs_z), jzz(c.jt_zz), N(lat.N),
          nbonds(static_cast<int>(lat.bonds.size())), even(0), odd(0),
          chain(N > 1 ? (u64{1} << (N - 1)) - 1 : 0), wrap(lat.wrap) {
        for (int i = 0; i < N; ++i) (i % 2 ? odd : even) |= u64{1} << i;
        stag_offset = std::popcount(even) - std::popcount(odd);
    }

    double operator()(u64 b) const {
        const int up = std::popcount(b);
        const int stag = std::popcount(b & even) - std::popcount(b & odd);
        int ndiff = std::popcount((b ^ (b >> 1)) & chain);
        if (wrap) ndiff += static_cast<int>((b ^ (b >> (N - 1))) & 1u);
        return e + hz * (up - 0.5 * N) + hsz * (stag - 0.5 * stag_offset) -
               jzz * 0.25 * (nbonds - 2 * ndiff);
    }
};

}  // namespace

template <class Scalar>
void apply_heff(const EffectiveCouplings& c, const Lattice& lat, std::span<const Scalar> in,
                std::span<Scalar> out, std::span<Scalar> scratch) {
    const int N = c.N;
    check_sizes<Scalar>(N, in.size());
    require_representable<Scalar>(c);
    const int L = block_bits(N);
    const u64 B = u64{1} << L;
    const i64 nblocks = static_cast<i64>(in.size() >> L);
    const Scalar* x = in.data();
    Scalar* y = out.data();
    Scalar* t = scratch.data();
    const Diagonal diag(c, lat);
    const bool flips_x = c.h_x != 0.0 || !c.is_real();

    if (c.k_xx != 0.0) {
        // scratch = S^x in
#pragma omp parallel for schedule(static)
        for (i64 h = 0; h < nblocks; ++h) {
            const u64 base = static_cast<u64>(h) << L;
            Scalar* tb = t + base;
            std::fill(tb, tb + B, Scalar(0));
            for (int i = 0; i < N; ++i)
                visit_partner(x, base, L, u64{1} << i,
                              [&](u64, Scalar xv, u64 lo) { tb[lo] += 0.5 * xv; });
        }
    }

#pragma omp parallel for schedule(static)
    for (i64 h = 0; h < nblocks; ++h) {
        const u64 base = static_cast<u64>(h) << L;
        Scalar* yb = y + base;
        for (u64 lo = 0; lo < B; ++lo) yb[lo] = diag(base | lo) * x[base | lo];
        for (int i = 0; i < N; ++i) {
            const u64 mi = u64{1} << i;
            if constexpr (is_complex_v<Scalar>) {
                const double fy0 = c.h_y + c.hs_y * stagger_sign(i);
                visit_partner(x, base, L, mi, [&](u64 b, Scalar xv, u64 lo) {
                    double fy = fy0;
                    for (int j : lat.neighbours[i]) fy -= c.jt_yz * sz_of(b, j);
                    yb[lo] += (0.5 * c.h_x + fy * sy_element(b, i)) * xv;
                });
            } else if (flips_x) {
                visit_partner(x, base, L, mi,
                              [&](u64, Scalar xv, u64 lo) { yb[lo] += 0.5 * c.h_x * xv; });
            }
            if (c.k_xx != 0.0)
                visit_partner(t, base, L, mi,
                              [&](u64, Scalar tv, u64 lo) { yb[lo] += 0.5 * c.k_xx * tv; });
        }
        if (c.jt_xx != 0.0 || c.jt_yy != 0.0) {
            const double same_coef = -0.25 * (c.jt_xx - c.jt_yy);
            const double diff_coef = -0.25 * (c.jt_xx + c.jt_yy);
            for (auto [i, j] : lat.bonds) {
                visit_partner(x, base, L, (u64{1} << i) | (u64{1} << j),
                              [&](u64 b, Scalar xv, u64 lo) {
                                  const bool same = ((b >> i) & 1u) == ((b >> j) & 1u);
                                  yb[lo] += (same ? same_coef : diff_coef) * xv;
                              });
            }
        }
    }
}

template <class Scalar>
void apply_site(Axis a, int site, std::span<const Scalar> in, std::span<Scalar> out) {
    const i64 dim = static_cast<i64>(in.size());
    const u64 m = u64{1} << site;
#pragma omp parallel for schedule(static)
    for (i64 bs = 0; bs < dim; ++bs) {
        const u64 b = static_cast<u64>(bs);
        switch (a) {
            case Axis::x: out[b] = 0.5 * in[b ^ m]; break;
            case Axis::z: out[b] = sz_of(b, site) * in[b]; break;
            case Axis::y:
                if constexpr (is_complex_v<Scalar>) {
                    out[b] = sy_element(b, site) * in[b ^ m];
                } else {
                    throw std::invalid_argument("apply_site: s^y needs complex arithmetic");
                }
                break;
        }
    }
}

template <class Scalar>
SpinMoments moments(const Lattice& lat, std::span<const Scalar> v) {
    const int N = lat.N;
    check_sizes<Scalar>(N, v.size());
    const int L = block_bits(N);
    const u64 B = u64{1} << L;
    const i64 nblocks = static_cast<i64>(v.size() >> L);
    const Scalar* p = v.data();
    // Per-block partial sums, added in block order so the result does not
    // depend on the thread count.
    std::vector<std::array<double, 10>> part(static_cast<std::size_t>(nblocks));
#pragma omp parallel
    {
        std::vector<Scalar> sx(B);
#pragma omp for schedule(static)
        for (i64 h = 0; h < nblocks; ++h) {
            double X = 0, Y = 0, Z = 0, XX = 0, Ys = 0, Zs = 0, Pxx = 0, Pyy = 0, Pzz = 0, Pyz = 0;
            const u64 base = static_cast<u64>(h) << L;
            const Scalar* vb = p + base;
            std::fill(sx.begin(), sx.end(), Scalar(0));
            for (int i = 0; i < N; ++i) {
                const double st = stagger_sign(i);
                visit_partner(p, base, L, u64{1} << i, [&](u64 b, Scalar f, u64 lo) {
                    sx[lo] += 0.5 * f;
                    const double w = re_conj_mul(vb[lo], vb[lo]);
                    Z += w * sz_of(b, i);
                    Zs += st * w * sz_of(b, i);
                    if constexpr (is_complex_v<Scalar>) {
                        const double yi = (std::conj(vb[lo]) * sy_element(b, i) * f).real();
                        Y += yi;
                        Ys += st * yi;
                    }
                });
            }
            for (u64 lo = 0; lo < B; ++lo) {
                X += re_conj_mul(vb[lo], sx[lo]);
                XX += re_conj_mul(sx[lo], sx[lo]);
            }
            for (auto [i, j] : lat.bonds) {
                visit_partner(p, base, L, (u64{1} << i) | (u64{1} << j),
                              [&](u64 b, Scalar f, u64 lo) {
                                  const bool same = ((b >> i) & 1u) == ((b >> j) & 1u);
                                  const double pair = re_conj_mul(vb[lo], f);
                                  Pxx += 0.25 * pair;
                                  Pyy += (same ? -0.25 : 0.25) * pair;
                                  Pzz += (same ? 0.25 : -0.25) * re_conj_mul(vb[lo], vb[lo]);
                              });
                if constexpr (is_complex_v<Scalar>) {
                    for (auto [a, o] : {std::pair{i, j}, std::pair{j, i}}) {
                        visit_partner(p, base, L, u64{1} << a, [&](u64 b, Scalar f, u64 lo) {
                            Pyz += (std::conj(vb[lo]) * sy_element(b, a) * sz_of(b, o) * f).real();
                        });
                    }
                }
            }
            part[static_cast<std::size_t>(h)] = {X, Y, Z, XX, Ys, Zs, Pxx, Pyy, Pzz, Pyz};
        }
    }
    std::array<double, 10> t{};
    for (const auto& q : part)
        for (int k = 0; k < 10; ++k) t[k] += q[k];
    return {t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8], t[9]};
}

template <class Scalar>
double expect_site(int N, int i, Axis a, std::span<const Scalar> v) {
    check_sizes<Scalar>(N, v.size());
    if constexpr (!is_complex_v<Scalar>) {
        if (a == Axis::y) return 0.0;  // <real|s^y|real> vanishes
    }
    std::vector<Scalar> w(v.size());
    apply_site<Scalar>(a, i, v, w);
    double acc = 0.0;
    for (std::size_t b = 0; b < v.size(); ++b) acc += re_conj_mul(v[b], w[b]);
    return acc;
}

template <class Scalar>
double expect_pair(int N, int i, Axis a, int j, Axis b, std::span<const Scalar> v) {
    check_sizes<Scalar>(N, v.size());
    if constexpr (!is_complex_v<Scalar>) {
        // Odd number of s^y factors has purely imaginary matrix elements.
        if ((a == Axis::y) != (b == Axis::y)) return 0.0;
        if (a == Axis::y && b == Axis::y) {
            std::vector<cplx> vc(v.begin(), v.end());
            return expect_pair<cplx>(N, i, a, j, b, vc);
        }
    }
    std::vector<Scalar> w(v.size()), u(v.size());
    apply_site<Scalar>(b, j, v, w);
    apply_site<Scalar>(a, i, w, u);
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += re_conj_mul(v[k], u[k]);
    return acc;
}

#define DICKE_INSTANTIATE(S)                                                                    \
    template void apply_heff_reference<S>(const EffectiveCouplings&, std::span<const S>,        \
                                          std::span<S>);                                        \
    template void apply_heff<S>(const EffectiveCouplings&, const Lattice&, std::span<const S>,  \
                                std::span<S>, std::span<S>);                                    \
    template void apply_site<S>(Axis, int, std::span<const S>, std::span<S>);                  \
    template SpinMoments moments<S>(const Lattice&, std::span<const S>);                       \
    template double expect_site<S>(int, int, Axis, std::span<const S>);                        \
    template double expect_pair<S>(int, int, Axis, int, Axis, std::span<const S>);

DICKE_INSTANTIATE(double)
DICKE_INSTANTIATE(cplx)

#undef DICKE_INSTANTIATE

}  // namespace dicke::kernels
