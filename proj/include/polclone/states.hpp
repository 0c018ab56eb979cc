#pragma once

#include <Eigen/Dense>

#include "polclone/fock_basis.hpp"

namespace polclone {

/// Single-photon polarization amplitudes (c_h, c_v), |c_h|^2 + |c_v|^2 = 1.
struct PolarizationQubit {
    cplx c_h;
    cplx c_v;

    PolarizationQubit(cplx ch, cplx cv) : c_h(ch), c_v(cv) {
        if (std::abs(std::norm(c_h) + std::norm(c_v) - 1.0) > 1e-12) {
            throw std::invalid_argument("PolarizationQubit: amplitudes must be normalized");
        }
    }

    /// Builds the qubit from arbitrary non-zero amplitudes, rescaling to unit norm.
    static PolarizationQubit normalized(cplx ch, cplx cv) {
        double n = std::sqrt(std::norm(ch) + std::norm(cv));
        if (n == 0.0) {
            throw std::invalid_argument("PolarizationQubit::normalized: zero amplitudes");
        }
        return {ch / n, cv / n};
    }

    static PolarizationQubit horizontal() { return {1.0, 0.0}; }
    static PolarizationQubit vertical() { return {0.0, 1.0}; }

    /// The orthogonal polarization (-c_v*, c_h*).
    PolarizationQubit orthogonal() const {
        return {-std::conj(c_v), std::conj(c_h)};
    }

    /// 2x2 unitary whose first column is this qubit and second its orthogonal
    /// complement; maps the H/V frame onto the qubit-aligned frame.
    Eigen::Matrix2cd frame_unitary() const {
        Eigen::Matrix2cd u;
        auto perp = orthogonal();
        u << c_h, perp.c_h, c_v, perp.c_v;
        return u;
    }
};

/// Pure two-mode state: complex amplitudes over a FockBasis plus a carried
/// scalar weight. Unnormalized conditional states keep their POVM weight here.
class TwoModeState {
public:
    TwoModeState(FockBasis basis, Eigen::VectorXcd amplitudes, double weight = 1.0)
        : basis_(basis), amps_(std::move(amplitudes)), weight_(weight) {
        if (amps_.size() != basis_.dimension()) {
            throw std::invalid_argument("TwoModeState: amplitude vector size mismatch");
        }
        if (!(weight_ >= 0.0)) {
            throw std::invalid_argument("TwoModeState: weight must be nonnegative");
        }
    }

    static TwoModeState vacuum(const FockBasis& basis) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.dimension());
        a[basis.index_of(0, 0)] = 1.0;
        return {basis, std::move(a)};
    }

    static TwoModeState basis_state(const FockBasis& basis, int n_h, int n_v) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.dimension());
        a[basis.index_of(n_h, n_v)] = 1.0;
        return {basis, std::move(a)};
    }

    /// Single photon in polarization q: c_h |1;0> + c_v |0;1>.
    static TwoModeState single_photon(const FockBasis& basis, const PolarizationQubit& q) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.dimension());
        a[basis.index_of(1, 0)] = q.c_h;
        a[basis.index_of(0, 1)] = q.c_v;
        return {basis, std::move(a)};
    }

    const FockBasis& basis() const noexcept { return basis_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    double weight() const noexcept { return weight_; }

    cplx amplitude(int n_h, int n_v) const { return amps_[basis_.index_of(n_h, n_v)]; }

    double squared_norm() const { return amps_.squaredNorm(); }

    TwoModeState normalized() const {
        double n = amps_.norm();
        if (n == 0.0) {
            throw std::domain_error("TwoModeState::normalized: zero state");
        }
        return {basis_, amps_ / n, weight_};
    }

private:
    FockBasis basis_;
    Eigen::VectorXcd amps_;
    double weight_;
};

/// Dense Hermitian operator over a FockBasis.
class DensityOperator {
public:
    DensityOperator(FockBasis basis, Eigen::MatrixXcd matrix)
        : basis_(basis), mat_(std::move(matrix)) {
        if (mat_.rows() != basis_.dimension() || mat_.cols() != basis_.dimension()) {
            throw std::invalid_argument("DensityOperator: matrix size mismatch");
        }
    }

    static DensityOperator zero(const FockBasis& basis) {
        return {basis, Eigen::MatrixXcd::Zero(basis.dimension(), basis.dimension())};
    }

    static DensityOperator pure(const TwoModeState& psi) {
        return {psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint()};
    }

    const FockBasis& basis() const noexcept { return basis_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return mat_; }
    Eigen::MatrixXcd& matrix() noexcept { return mat_; }

    double trace() const { return mat_.trace().real(); }

    /// Max elementwise deviation from M = M^dagger.
    double hermiticity_error() const {
        return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    DensityOperator normalized() const {
        double t = trace();
        if (t <= 0.0) {
            throw std::domain_error("DensityOperator::normalized: nonpositive trace");
        }
        return {basis_, mat_ / t};
    }

    DensityOperator scaled(double s) const { return {basis_, mat_ * s}; }

private:
    FockBasis basis_;
    Eigen::MatrixXcd mat_;
};

/// Trace distance (1/2) sum of singular values of rho1 - rho2. Both inputs are
/// assumed Hermitian, so the singular values are |eigenvalues| of the difference.
double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2);

/// <psi|rho|psi> with |psi> normalized internally.
double fidelity_overlap(const DensityOperator& rho, const TwoModeState& psi);

}  // namespace polclone
