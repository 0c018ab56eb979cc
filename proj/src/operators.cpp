#include "polclone/operators.hpp"

#include <vector>

namespace polclone {

namespace {

// integer power by repeated multiplication; std::pow(0+0i, 0) would NaN
cplx cpow_int(cplx base, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

Eigen::MatrixXcd creation_op(const FockBasis& basis, Mode mode) {
    const int dim = basis.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Occupation occ = basis.occupation(j);
        int nh = occ.n_h + (mode == Mode::H ? 1 : 0);
        int nv = occ.n_v + (mode == Mode::V ? 1 : 0);
        if (!basis.contains(nh, nv)) continue;  // truncation
        double raised = (mode == Mode::H) ? nh : nv;
        m(basis.index_of(nh, nv), j) = std::sqrt(raised);
    }
    return m;
}

Eigen::MatrixXcd annihilation_op(const FockBasis& basis, Mode mode) {
    return creation_op(basis, mode).adjoint();
}

Eigen::MatrixXcd total_number_op(const FockBasis& basis) {
    const int dim = basis.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = basis.total_photons(i);
    return m;
}

Eigen::MatrixXcd creation_superposition_op(const FockBasis& basis, const PolarizationQubit& q) {
    return q.c_h * creation_op(basis, Mode::H) + q.c_v * creation_op(basis, Mode::V);
}

DensityOperator apply_creation_superposition(const PolarizationQubit& q, const DensityOperator& rho) {
    Eigen::MatrixXcd a = creation_superposition_op(rho.basis(), q);
    return {rho.basis(), a * rho.matrix() * a.adjoint()};
}

SectorProjection project_total_N(const DensityOperator& rho, int n_total) {
    const FockBasis& basis = rho.basis();
    if (n_total < 0 || n_total > basis.cutoff()) {
        throw std::invalid_argument("project_total_N: sector outside basis");
    }
    const int begin = basis.sector_begin(n_total);
    const int size = basis.sector_size(n_total);
    Eigen::MatrixXcd sector = rho.matrix().block(begin, begin, size, size);
    double weight = sector.trace().real();
    DensityOperator block = DensityOperator::zero(basis);
    if (weight > 0.0) {
        block.matrix().block(begin, begin, size, size) = sector / weight;
    } else {
        weight = 0.0;
    }
    return {weight, std::move(block)};
}

Eigen::MatrixXcd polarization_rotation_op(const FockBasis& basis, const Eigen::Matrix2cd& u) {
    const int dim = basis.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);

    // log-factorials up to the cutoff for the multinomial amplitudes
    const int c = basis.cutoff();
    std::vector<double> lfact(c + 1, 0.0);
    for (int n = 1; n <= c; ++n) lfact[n] = lfact[n - 1] + std::log(double(n));

    // column j: expand (u00 aH^dag + u10 aV^dag)^{n_h} (u01 aH^dag + u11 aV^dag)^{n_v} |0;0>
    for (int j = 0; j < dim; ++j) {
        Occupation occ = basis.occupation(j);
        const int nh = occ.n_h, nv = occ.n_v;
        for (int k = 0; k <= nh; ++k) {
            for (int l = 0; l <= nv; ++l) {
                int mh = k + l;
                int mv = nh + nv - mh;
                // binomials C(nh,k) C(nv,l) and ladder normalization sqrt(mh! mv! / (nh! nv!))
                double log_coeff = lfact[nh] - lfact[k] - lfact[nh - k] + lfact[nv] - lfact[l] -
                                   lfact[nv - l] +
                                   0.5 * (lfact[mh] + lfact[mv] - lfact[nh] - lfact[nv]);
                cplx amp = std::exp(log_coeff) * cpow_int(u(0, 0), k) * cpow_int(u(1, 0), nh - k) *
                           cpow_int(u(0, 1), l) * cpow_int(u(1, 1), nv - l);
                m(basis.index_of(mh, mv), j) += amp;
            }
        }
    }
    return m;
}

double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2) {
    require_same_basis(rho1.basis(), rho2.basis(), "trace_distance");
    Eigen::MatrixXcd diff = rho1.matrix() - rho2.matrix();
    // symmetrize away roundoff so eigenvalues of the Hermitian difference are real
    diff = 0.5 * (diff + diff.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_overlap(const DensityOperator& rho, const TwoModeState& psi) {
    require_same_basis(rho.basis(), psi.basis(), "fidelity_overlap");
    Eigen::VectorXcd v = psi.amplitudes().normalized();
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

}  // namespace polclone
