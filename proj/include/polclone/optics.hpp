#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "polclone/states.hpp"

namespace polclone {

/// Coherent displacement amplitudes per polarization mode.
struct Displacement {
    cplx alpha_h;
    cplx alpha_v;
};

struct BeamSplitterSpec {
    double reflectivity;
    explicit BeamSplitterSpec(double r) : reflectivity(r) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw std::invalid_argument("BeamSplitterSpec: reflectivity must be in [0, 1]");
        }
    }
};

inline double unbounded_alpha_sq() { return std::numeric_limits<double>::infinity(); }

/// Default per-mode safety bound on |alpha|^2; keeps displaced-vacuum
/// truncation leakage below ~1e-6 by the Poisson tail.
inline double default_alpha_sq_bound(const FockBasis& basis) { return basis.cutoff() / 4.0; }

/// Matrix of D(alpha_h) x D(alpha_v) on the truncated basis, from the closed
/// form <m|D(a)|n> = sqrt(n!/m!) a^(m-n) e^(-|a|^2/2) L_n^(m-n)(|a|^2) per
/// single mode. D(0) is exactly the identity. Rejects amplitudes with
/// |alpha|^2 above max_alpha_sq in either mode.
Eigen::MatrixXcd displacement_matrix(const FockBasis& basis, const Displacement& d,
                                     double max_alpha_sq);
Eigen::MatrixXcd displacement_matrix(const FockBasis& basis, const Displacement& d);

/// Single-mode displacement matrix on occupations 0..cutoff (building block of
/// displacement_matrix; exposed for tests and the experiment engine).
Eigen::MatrixXcd single_mode_displacement(int cutoff, cplx alpha);

/// Max elementwise residual of the operator reordering identity
/// D(d) (c_h a_H^dag + c_v a_V^dag + (c_h d_h^* + c_v d_v^*)) = (c_h a_H^dag + c_v a_V^dag) D(d)
/// on the sub-basis with total photons <= interior_total on both sides.
double displacement_reorder_check(const PolarizationQubit& q, const Displacement& d,
                                  const FockBasis& basis, int interior_total);

/// Two-mode coherent state |alpha_h; alpha_v>; norm deficit equals truncation leakage.
TwoModeState coherent_state(const FockBasis& basis, cplx alpha_h, cplx alpha_v,
                            double max_alpha_sq);
TwoModeState coherent_state(const FockBasis& basis, cplx alpha_h, cplx alpha_v);

struct ThermalState {
    DensityOperator op;   // renormalized after truncation
    double leakage;       // probability mass beyond the cutoff
};

/// Product of two single-mode thermal states with the given mean photon number
/// per mode, diagonal in photon number.
ThermalState thermal_state(const FockBasis& basis, double mean_photons_per_mode);

/// Four-mode Fock state over (a_H, a_V, b_H, b_V) at a small total-photon
/// cutoff; exists only to cross-validate the analytic beam-splitter reduction.
class FourModeState {
public:
    explicit FourModeState(int max_total = 2);

    int max_total() const noexcept { return max_total_; }

    cplx amp(int a_h, int a_v, int b_h, int b_v) const;
    void set_amp(int a_h, int a_v, int b_h, int b_v, cplx value);

    double squared_norm() const;

    /// Total-photon expectation over all four modes (diagnostic for tests).
    double mean_total_photons() const;

    /// Input photon in polarization q on the a modes, b modes in vacuum.
    static FourModeState input_photon(const PolarizationQubit& q, int max_total = 2);

private:
    int flat(int a_h, int a_v, int b_h, int b_v) const;
    int max_total_;
    int side_;
    std::vector<cplx> amps_;
};

/// Applies the beam-splitter mode transformation
/// a_i^dag -> sqrt(1-R) a_i^dag + sqrt(R) b_i^dag,
/// b_i^dag -> -sqrt(R) a_i^dag + sqrt(1-R) b_i^dag
/// per polarization. Norm and total photon number are preserved exactly.
FourModeState beam_splitter_oracle(const FourModeState& input, const BeamSplitterSpec& bs);

}  // namespace polclone
