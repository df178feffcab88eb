// spin_state.hpp — many-body spin ground state behind an expectation-value interface

#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/mps.hpp"
#include "dicke/spin_ops.hpp"

namespace dicke {

enum class Backend { dense, collective, mps };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

/// A requested expectation value.
struct Observable {
    enum class Kind { site, pair, collective, collective_square };
    Kind kind{Kind::site};
    int i{0};
    Axis a{Axis::z};
    int j{0};
    Axis b{Axis::z};

    static Observable site(int i, Axis a) { return {Kind::site, i, a, 0, Axis::z}; }
    static Observable pair(int i, Axis a, int j, Axis b) { return {Kind::pair, i, a, j, b}; }
    static Observable total(Axis a) { return {Kind::collective, 0, a, 0, Axis::z}; }
    static Observable total_square(Axis a) { return {Kind::collective_square, 0, a, 0, a}; }
};

class SpinStateImpl {
public:
    virtual ~SpinStateImpl() = default;
    virtual Backend backend() const = 0;
    virtual int sites() const = 0;
    virtual double norm() const = 0;
    virtual SpinMoments moments(Boundary b) const = 0;
    /// Throws std::invalid_argument for descriptors the backend cannot serve.
    virtual double expect(const Observable& o) const = 0;
};

/// Immutable, cheaply copyable handle.
class SpinState {
public:
    SpinState() = default;
    explicit SpinState(std::shared_ptr<const SpinStateImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return static_cast<bool>(impl_); }
    Backend backend() const { return impl_->backend(); }
    int sites() const { return impl_->sites(); }
    double norm() const { return impl_->norm(); }
    SpinMoments moments(Boundary b) const { return impl_->moments(b); }
    double expect(const Observable& o) const { return impl_->expect(o); }
    std::vector<double> expectations(const std::vector<Observable>& req) const;

    const SpinStateImpl& impl() const { return *impl_; }

private:
    std::shared_ptr<const SpinStateImpl> impl_;
};

/// Dense 2^N amplitudes, real or complex.
class DenseSpinState final : public SpinStateImpl {
public:
    using Real = Eigen::VectorXd;
    using Complex = Eigen::VectorXcd;

    DenseSpinState(int N, std::variant<Real, Complex> v) : N_(N), v_(std::move(v)) {}

    Backend backend() const override { return Backend::dense; }
    int sites() const override { return N_; }
    double norm() const override;
    SpinMoments moments(Boundary b) const override;
    double expect(const Observable& o) const override;

    const std::variant<Real, Complex>& amplitudes() const { return v_; }
    Complex as_complex() const;

private:
    int N_;
    std::variant<Real, Complex> v_;
};

/// Amplitudes over |j = N/2, m>, m = -j..j (index k = m + j).
class CollectiveSpinState final : public SpinStateImpl {
public:
    CollectiveSpinState(int N, Eigen::VectorXcd v);

    Backend backend() const override { return Backend::collective; }
    int sites() const override { return N_; }
    double norm() const override { return v_.norm(); }
    SpinMoments moments(Boundary b) const override;
    double expect(const Observable& o) const override;

    const Eigen::VectorXcd& amplitudes() const { return v_; }

    /// Collective operators S^x, S^y, S^z in the maximal-spin basis.
    static Eigen::MatrixXcd total_operator(int N, Axis a);

private:
    cplx product(Axis a, Axis b) const;  // <S^a S^b>
    int N_;
    Eigen::VectorXcd v_;
    std::array<Eigen::MatrixXcd, 3> S_;
};

class MpsSpinState final : public SpinStateImpl {
public:
    explicit MpsSpinState(mps::Mps psi) : psi_(std::move(psi)) {}

    Backend backend() const override { return Backend::mps; }
    int sites() const override { return psi_.size(); }
    double norm() const override { return std::sqrt(mps::overlap(psi_, psi_).real()); }
    SpinMoments moments(Boundary b) const override;
    double expect(const Observable& o) const override;

    const mps::Mps& mps() const { return psi_; }

private:
    mps::Mps psi_;
};

/// The state rotated by pi about z on every site (s^x, s^y -> -s^x, -s^y), up
/// to a global phase. Paired with x, p -> -x, -p it is a symmetry of H.
SpinState rotate_pi_z(const SpinState& s);

}  // namespace dicke
