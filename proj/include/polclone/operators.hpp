#pragma once

#include <Eigen/Dense>

#include "polclone/states.hpp"

namespace polclone {

/// Matrix of the creation operator a_mode^dagger on the truncated basis.
/// <n+1|a^dag|n> = sqrt(n+1); amplitudes that would leave the basis are dropped.
Eigen::MatrixXcd creation_op(const FockBasis& basis, Mode mode);

/// Conjugate transpose of creation_op.
Eigen::MatrixXcd annihilation_op(const FockBasis& basis, Mode mode);

/// Diagonal total photon number operator n_h + n_v.
Eigen::MatrixXcd total_number_op(const FockBasis& basis);

/// Creation operator of the q-polarized mode, c_h a_H^dag + c_v a_V^dag.
Eigen::MatrixXcd creation_superposition_op(const FockBasis& basis, const PolarizationQubit& q);

/// A rho A^dag with A = c_h a_H^dag + c_v a_V^dag. Result is unnormalized;
/// its trace is 1 + <n_q> of rho minus truncation leakage, where n_q counts
/// photons in the q-polarized mode.
DensityOperator apply_creation_superposition(const PolarizationQubit& q, const DensityOperator& rho);

struct SectorProjection {
    double weight = 0.0;          // diagonal mass of the N-photon sector
    DensityOperator block;        // renormalized sector block (zero if weight == 0)
};

/// Projects rho onto the N-photon sector: zeroes cross-sector coherences,
/// returns the sector mass and the renormalized block. Weights over all N sum
/// to trace(rho).
SectorProjection project_total_N(const DensityOperator& rho, int n_total);

/// Unitary induced on the Fock space by a 2x2 polarization-frame unitary u:
/// a_H^dag -> u00 a_H^dag + u10 a_V^dag, a_V^dag -> u01 a_H^dag + u11 a_V^dag.
/// Block diagonal over photon-number sectors.
Eigen::MatrixXcd polarization_rotation_op(const FockBasis& basis, const Eigen::Matrix2cd& u);

}  // namespace polclone
