#pragma once

#include "polclone/report.hpp"
#include "polclone/states.hpp"

namespace polclone {

struct OptimalFeedback {
    double f;   // feedback factor sqrt(R/(1-R))
    double g;   // amplitude gain 1/sqrt(1-R)
};

/// Loss-compensating feedback and the corresponding amplitude gain.
OptimalFeedback optimal_feedback(double reflectivity);

/// Closed-form output density operator at optimal feedback:
/// (1-R) (c_h a_H^dag + c_v a_V^dag) eta_R (c_h^* a_H + c_v^* a_V), where
/// eta_R is the two-mode thermal state with mean R/(1-R) photons per mode.
/// Unnormalized on the truncated basis; trace = 1 - truncation leakage.
DensityOperator analytic_output(const PolarizationQubit& q, double reflectivity,
                                const FockBasis& basis);

/// Probability of an N-photon output, (1-R)^3/(2R) R^N N(N+1); sums to 1 over
/// N >= 1. R = 0 is the limit P(1) = 1.
double prob_N(double reflectivity, int n_photons);

struct UnpolarizedOperator {
    DensityOperator op;      // trace-normalized uniform mixture
    double eq_coefficient;   // raw prefactor 2/(N(N+1)) of the source expression
};

/// Completely unpolarized (N-1)-photon operator: the uniform mixture over
/// |k; N-1-k>, k = 0..N-1, stored trace-normalized with the raw coefficient
/// kept as metadata.
UnpolarizedOperator C_N_operator(int n_photons, const FockBasis& basis);

/// Normalized N-photon output block
/// (c_h a_H^dag + c_v a_V^dag) C_N (c_h^* a_H + c_v^* a_V), trace 1.
DensityOperator rho_N(const PolarizationQubit& q, int n_photons, const FockBasis& basis);

/// Probability that n of the N output photons carry the input polarization,
/// 2n / (N(N+1)) for 1 <= n <= N.
double prob_n_given_N(int n_correct, int n_photons);

/// Optimal 1 -> N cloning fidelity (2N+1)/(3N).
double optimal_fidelity(int n_photons);

struct NoisyClone {
    DensityOperator op;
    double fidelity;
};

/// Isotropic error model: (1-eps) rho_N + eps W_N with W_N the white-noise
/// background C_{N+1}; fidelity is the weighted average of the optimal value
/// and the white-noise value 1/2.
NoisyClone white_noise_mix(const PolarizationQubit& q, int n_photons, double epsilon,
                           const FockBasis& basis);

/// Report assembled purely from the closed forms (no integration).
CloneReport analytic_clone_report(double reflectivity, const PolarizationQubit& q,
                                  int report_n_max);

}  // namespace polclone
