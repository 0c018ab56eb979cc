#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polclone/cloning_theory.hpp"
#include "polclone/heterodyne.hpp"
#include "polclone/report.hpp"

namespace polclone {

struct IntegratorSpec {
    enum class Kind { MonteCarlo, GaussHermite };
    Kind kind = Kind::GaussHermite;

    // Monte Carlo
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    int batches = 20;

    // Gauss-Hermite: points per real quadrature dimension; 0 picks the default
    // 2 * report_n_max + 6 derived from the integrand's polynomial degree.
    int points = 0;

    static IntegratorSpec monte_carlo(std::uint64_t samples, std::uint64_t seed, int workers = 1,
                                      int batches = 20);
    static IntegratorSpec gauss_hermite(int points = 0);
};

struct ExperimentConfig {
    double reflectivity = 0.5;
    bool optimal_gain = true;
    double feedback = 0.0;                     // used when optimal_gain is false
    PolarizationQubit qubit = PolarizationQubit::horizontal();
    int cutoff = 12;
    IntegratorSpec integrator;
    int report_n_max = 5;
    std::vector<double> sweep_gains;           // at most one sweep may be set
    std::vector<double> sweep_reflectivities;

    /// Feedback factor after resolving the gain mode.
    double resolved_feedback() const;
    /// Points per dimension after applying the default rule.
    int resolved_points() const;
    /// Throws std::invalid_argument listing every violated field.
    void validate() const;
};

struct AccumulatedOutput {
    DensityOperator rho;          // integrated output; trace = captured mass
    CloneReport report;
    /// Monte Carlo only: per-entry standard error of the accumulated matrix.
    Eigen::MatrixXd entry_stderr;
};

/// Integrates the displaced conditional output over all measurement outcomes,
/// by exact-mixture Monte Carlo or tensor Gauss-Hermite quadrature.
AccumulatedOutput accumulate_output(const ExperimentConfig& config);

/// Mean fraction of photons in polarization q on the normalized N-photon
/// sector of rho. Throws on a zero-weight sector.
double measure_fidelity(const DensityOperator& rho, const PolarizationQubit& q, int n_photons);

/// Diagonal of the normalized N-photon sector in the q-aligned polarization
/// frame; entry k is the population with k photons in polarization q.
Eigen::VectorXd sector_diagonal_in_qubit_frame(const DensityOperator& rho,
                                               const PolarizationQubit& q, int n_photons);

struct SweepResult {
    std::vector<double> gains;
    std::vector<std::vector<double>> fidelities;        // [gain index][N-1]
    std::vector<std::vector<double>> fidelity_stderrs;  // present iff Monte Carlo
    std::vector<double> argmax_gain;                    // per N = 1..n_max
    int n_max = 0;
};

/// Evaluates per-N fidelity over the configured gain list (general-feedback
/// path; the optimal-gain shortcut is never used here).
SweepResult gain_sweep(const ExperimentConfig& config);

struct CoherentAmplificationResult {
    cplx mean_out_h;
    cplx mean_out_v;
    double gain_estimate;            // projection of the mean onto the input direction
    double expected_gain;            // f sqrt(R) + sqrt(1-R)
    double noise_variance;           // empirical per-quadrature variance of the output
    double mean_stderr_per_quadrature;
    std::uint64_t samples;
};

/// Amplitude-space simulation of the pipeline for a coherent input: coherent
/// states stay coherent through every stage, so only means and Gaussian noise
/// propagate.
CoherentAmplificationResult coherent_amplification_check(cplx alpha_h, cplx alpha_v,
                                                         double reflectivity, double feedback,
                                                         std::uint64_t samples,
                                                         std::uint64_t seed);

/// One CloneReport per requested (R, gain) pair; a single report when no sweep
/// is configured.
std::vector<CloneReport> reproduce_paper_tables(const ExperimentConfig& config);

/// Max trace distance between sector blocks (N <= report_n_max) of the
/// quadrature output at the configured order and at twice the order; near zero
/// when the order already integrates the sector polynomials exactly.
double quadrature_order_doubling_delta(const ExperimentConfig& config);

}  // namespace polclone
