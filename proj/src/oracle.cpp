#include "dicke/oracle.hpp"

#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "dicke/fock.hpp"
#include "dicke/kernels.hpp"
#include "dicke/lanczos.hpp"
#include "dicke/spin_state.hpp"

namespace dicke {

namespace {

constexpr char kTag[8] = {'D', 'I', 'C', 'K', 'E', 'G', 'S', '1'};
constexpr const char* kOrdering = "photon-major";

struct Solved {
    double energy{0.0};
    int iterations{0};
    Eigen::VectorXd state;
};

Solved solve_at(const ModelSpec& spec, int n_max) {
    const fock::SpMat H = fock::lab_hamiltonian(spec, n_max);
    const Eigen::Index dim = H.rows();
    std::mt19937_64 rng(0x5eed0dcull + static_cast<std::uint64_t>(spec.N));
    std::normal_distribution<double> nd;
    Eigen::VectorXd start(dim);
    for (Eigen::Index k = 0; k < dim; ++k) start(k) = nd(rng);
    LanczosOptions opt;
    opt.tol = 1e-10;
    opt.max_iterations = 20000;
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out.noalias() = H * in; };
    const auto res = lanczos_ground<double>(apply, std::move(start), opt);
    if (!res.converged) {
        std::ostringstream os;
        os << "oracle Lanczos did not converge (residual " << res.residual << ")";
        throw std::runtime_error(os.str());
    }
    return {res.energy, res.iterations, res.vector};
}

std::span<const double> block(const Eigen::VectorXd& v, int N, int n) {
    const std::size_t d = std::size_t{1} << N;
    return {v.data() + static_cast<std::size_t>(n) * d, d};
}

int blocks(const OracleResult& r) { return static_cast<int>(r.state.size() >> r.spec.N); }

}  // namespace

void FockTruncation::validate() const {
    if (n_max < 2) throw ConfigError("n_max must be >= 2");
    if (step < 1) throw ConfigError("cutoff step must be >= 1");
    if (!(margin_tol > 0.0)) throw ConfigError("margin tolerance must be positive");
}

OracleResult full_ground_state(const ModelSpec& spec, const FockTruncation& trunc) {
    spec.validate();
    trunc.validate();
    const std::int64_t dim = static_cast<std::int64_t>(trunc.n_max + 1) << spec.N;
    if (spec.N > 22 || dim > kOracleMaxDim) {
        std::ostringstream os;
        os << "oracle dimension (n_max + 1) 2^N = " << dim << " exceeds " << kOracleMaxDim;
        throw ConfigError(os.str());
    }
    const Solved lo = solve_at(spec, trunc.n_max);
    const Solved hi = solve_at(spec, trunc.n_max + trunc.step);
    OracleResult r;
    r.spec = spec;
    r.n_max = trunc.n_max;
    r.energy = lo.energy;
    r.margin = std::abs(lo.energy - hi.energy);
    r.iterations = lo.iterations;
    r.state = lo.state;
    if (r.margin > trunc.margin_tol) {
        std::ostringstream os;
        os.precision(3);
        os << "Fock cutoff n_max = " << trunc.n_max << " not converged (margin " << r.margin
           << " > " << trunc.margin_tol << "); try n_max = " << 2 * trunc.n_max;
        throw CutoffError(os.str());
    }
    return r;
}

namespace {

double collective_energy_at(const ModelSpec& spec, int n_max) {
    const int d = spec.N + 1;
    const Eigen::MatrixXd sx = CollectiveSpinState::total_operator(spec.N, Axis::x).real();
    const Eigen::MatrixXd sz = CollectiveSpinState::total_operator(spec.N, Axis::z).real();
    const fock::SpMat Sx = sx.sparseView();
    const fock::SpMat Sz = sz.sparseView();
    const fock::SpMat X = fock::x_quadrature(n_max).sparseView();
    const fock::SpMat Nph = (0.5 * fock::x2_plus_p2(n_max)).sparseView();
    const fock::SpMat H = fock::kron(Nph, fock::identity(d)) * spec.omega +
                          fock::kron(fock::identity(n_max + 1), Sz) * spec.epsilon +
                          fock::kron(X, Sx) * effective_single_coupling(spec);
    std::mt19937_64 rng(0x5eed0dcull + static_cast<std::uint64_t>(spec.N));
    std::normal_distribution<double> nd;
    Eigen::VectorXd start(H.rows());
    for (Eigen::Index k = 0; k < start.size(); ++k) start(k) = nd(rng);
    LanczosOptions opt;
    opt.tol = 1e-10;
    opt.max_iterations = 20000;
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out.noalias() = H * in; };
    const auto res = lanczos_ground<double>(apply, std::move(start), opt);
    if (!res.converged) throw std::runtime_error("collective oracle Lanczos did not converge");
    return res.energy;
}

}  // namespace

CollectiveOracleResult collective_ground_energy(const ModelSpec& spec, const FockTruncation& trunc) {
    spec.validate();
    trunc.validate();
    if (spec.J.x != 0.0 || spec.J.y != 0.0 || spec.J.z != 0.0 || spec.staggered_field != 0.0)
        throw ConfigError("collective oracle needs J = 0 and no staggered field");
    if (static_cast<std::int64_t>(trunc.n_max + trunc.step + 1) * (spec.N + 1) > kOracleMaxDim)
        throw ConfigError("collective oracle dimension exceeds the limit");
    CollectiveOracleResult r;
    r.n_max = trunc.n_max;
    r.energy = collective_energy_at(spec, trunc.n_max);
    r.margin = std::abs(r.energy - collective_energy_at(spec, trunc.n_max + trunc.step));
    if (r.margin > trunc.margin_tol) {
        std::ostringstream os;
        os.precision(3);
        os << "Fock cutoff n_max = " << trunc.n_max << " not converged (margin " << r.margin
           << " > " << trunc.margin_tol << "); try n_max = " << 2 * trunc.n_max;
        throw CutoffError(os.str());
    }
    return r;
}

double full_photon_number(const Eigen::VectorXd& v, int N, int n_max) {
    double n = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        const auto b = block(v, N, k);
        double w = 0.0;
        for (double a : b) w += a * a;
        n += k * w;
    }
    return n;
}

double full_expect_pair(const OracleResult& r, int i, Axis a, int j, Axis b) {
    double s = 0.0;
    for (int n = 0; n < blocks(r); ++n)
        s += kernels::expect_pair<double>(r.spec.N, i, a, j, b, block(r.state, r.spec.N, n));
    return s;
}

OracleObservables full_observables(const OracleResult& r) {
    const int N = r.spec.N;
    OracleObservables o;
    o.N = N;
    o.n_mean = full_photon_number(r.state, N, r.n_max) / N;
    o.sz.assign(N, 0.0);
    o.sx.assign(N, 0.0);
    for (int n = 0; n < blocks(r); ++n) {
        const auto b = block(r.state, N, n);
        for (int i = 0; i < N; ++i) {
            o.sz[i] += kernels::expect_site<double>(N, i, Axis::z, b);
            o.sx[i] += kernels::expect_site<double>(N, i, Axis::x, b);
        }
    }
    for (int i = 0; i < N; ++i) {
        o.Mz += o.sz[i] / N;
        o.Mx += o.sx[i] / N;
        for (int j = 0; j < N; ++j) o.XX += full_expect_pair(r, i, Axis::x, j, Axis::x);
    }
    const int i0 = bulk_site(N);
    o.bulk_site = i0;
    const int r_end = std::max(1, std::min(N / 2, N - i0));
    for (int d = 0; d < r_end; ++d) {
        o.zz.push_back(full_expect_pair(r, i0, Axis::z, i0 + d, Axis::z));
        o.xx.push_back(full_expect_pair(r, i0, Axis::x, i0 + d, Axis::x));
    }
    return o;
}

void write_eigenvector(const OracleResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    auto put = [&](const auto& v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    out.write(kTag, sizeof kTag);
    put(static_cast<std::int64_t>(r.spec.N));
    put(static_cast<std::int64_t>(r.n_max));
    put(static_cast<std::int64_t>(r.state.size()));
    const std::int64_t len = static_cast<std::int64_t>(std::strlen(kOrdering));
    put(len);
    out.write(kOrdering, len);
    put(r.energy);
    out.write(reinterpret_cast<const char*>(r.state.data()),
              static_cast<std::streamsize>(r.state.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

OracleResult read_eigenvector(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    auto get = [&](auto& v) { in.read(reinterpret_cast<char*>(&v), sizeof v); };
    char tag[8];
    in.read(tag, sizeof tag);
    if (!in || std::memcmp(tag, kTag, sizeof tag) != 0)
        throw std::runtime_error(path + " is not an eigenvector dump");
    std::int64_t N = 0, n_max = 0, dim = 0, len = 0;
    get(N);
    get(n_max);
    get(dim);
    get(len);
    if (!in || len < 0 || len > 64 || N < 1 || N > 30 || dim != ((n_max + 1) << N))
        throw std::runtime_error(path + ": corrupt header");
    std::string ordering(static_cast<std::size_t>(len), '\0');
    in.read(ordering.data(), len);
    if (ordering != kOrdering) throw std::runtime_error(path + ": unknown ordering " + ordering);
    OracleResult r;
    r.spec.N = static_cast<int>(N);
    r.n_max = static_cast<int>(n_max);
    get(r.energy);
    r.state.resize(dim);
    in.read(reinterpret_cast<char*>(r.state.data()), static_cast<std::streamsize>(dim * sizeof(double)));
    if (!in) throw std::runtime_error(path + ": truncated data");
    return r;
}

}  // namespace dicke
