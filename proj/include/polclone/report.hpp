#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polclone/states.hpp"

namespace polclone {

struct Provenance {
    enum class Kind { Analytic, MonteCarlo, Quadrature };
    Kind kind = Kind::Analytic;
    std::uint64_t samples = 0;   // Monte Carlo
    std::uint64_t seed = 0;      // Monte Carlo
    int workers = 1;             // Monte Carlo
    int batches = 0;             // Monte Carlo
    int points = 0;              // quadrature, per real dimension

    std::string label() const;
};

/// Per-photon-number results of one cloning run.
struct SectorStats {
    int n_photons = 0;
    double probability = 0.0;
    double probability_stderr = 0.0;          // Monte Carlo only
    std::vector<double> p_n_given_n;          // index k holds P(n=k+1 | N)
    double fidelity = 0.0;
    double fidelity_stderr = 0.0;             // Monte Carlo only
};

struct CloneReport {
    double reflectivity = 0.0;
    double feedback = 0.0;
    double gain = 0.0;
    cplx qubit_c_h = 1.0;
    cplx qubit_c_v = 0.0;
    std::vector<SectorStats> sectors;         // N = 1 .. report max
    /// Probability mass not captured by the reported sectors: vacuum outcomes
    /// at non-optimal gain, photon numbers above the report range, and cutoff
    /// truncation. Reported probabilities plus this always sum to 1.
    double truncation_leakage = 0.0;
    Provenance provenance;
    std::vector<std::string> warnings;
};

/// Serializes the report as a flat key-value document (one "key = value" line
/// per field, full double precision).
std::string report_to_text(const CloneReport& report);

/// Flat table for plotting: one row per (N, n); columns
/// N, p_N, n, p_n_given_N, fidelity (+ stderr columns for Monte Carlo runs).
/// Rows for sectors with exactly zero probability are omitted.
std::string report_to_table(const CloneReport& report, char delimiter = '\t');

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

}  // namespace polclone
