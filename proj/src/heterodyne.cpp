#include "polclone/heterodyne.hpp"

namespace polclone {

namespace {

void check_reflectivity(double r, const char* where) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::domain_error(std::string(where) + ": requires 0 <= R < 1");
    }
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double outcome_density(const PolarizationQubit& q, double reflectivity,
                       const HeterodyneOutcome& beta) {
    check_reflectivity(reflectivity, "outcome_density");
    const cplx overlap = std::conj(beta.beta_h) * q.c_h + std::conj(beta.beta_v) * q.c_v;
    return std::exp(-beta.norm_sq()) / (kPi * kPi) *
           ((1.0 - reflectivity) + reflectivity * std::norm(overlap));
}

TwoModeState conditional_state(const PolarizationQubit& q, double reflectivity,
                               const HeterodyneOutcome& beta, const FockBasis& basis) {
    check_reflectivity(reflectivity, "conditional_state");
    const cplx overlap = std::conj(beta.beta_h) * q.c_h + std::conj(beta.beta_v) * q.c_v;
    const double prefactor = std::exp(-0.5 * beta.norm_sq()) / kPi;

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.dimension());
    amps[basis.index_of(0, 0)] = prefactor * std::sqrt(reflectivity) * overlap;
    amps[basis.index_of(1, 0)] = prefactor * std::sqrt(1.0 - reflectivity) * q.c_h;
    amps[basis.index_of(0, 1)] = prefactor * std::sqrt(1.0 - reflectivity) * q.c_v;
    return {basis, std::move(amps), outcome_density(q, reflectivity, beta)};
}

HeterodyneOutcome sample_outcome(const PolarizationQubit& q, double reflectivity,
                                 RngStream& rng) {
    check_reflectivity(reflectivity, "sample_outcome");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto standard_complex = [&]() {
        double re = rng.normal() * inv_sqrt2;
        double im = rng.normal() * inv_sqrt2;
        return cplx(re, im);
    };

    cplx along_q;
    if (rng.uniform() < reflectivity) {
        // photon branch: radial density r^2 e^(-r^2) . 2r dr, i.e. r^2 ~ Gamma(2,1)
        double radius = std::sqrt(rng.gamma2());
        double phase = 2.0 * kPi * rng.uniform();
        along_q = radius * cplx(std::cos(phase), std::sin(phase));
    } else {
        along_q = standard_complex();
    }
    cplx along_perp = standard_complex();

    const PolarizationQubit perp = q.orthogonal();
    return {along_q * q.c_h + along_perp * perp.c_h,
            along_q * q.c_v + along_perp * perp.c_v};
}

TwoModeState displaced_conditional_state(const PolarizationQubit& q, double reflectivity,
                                         const HeterodyneOutcome& beta, double feedback,
                                         const FockBasis& basis, double max_alpha_sq) {
    if (!(feedback >= 0.0)) {
        throw std::invalid_argument("displaced_conditional_state: feedback must be >= 0");
    }
    TwoModeState cond = conditional_state(q, reflectivity, beta, basis);
    if (feedback == 0.0) return cond;

    const Displacement d{feedback * beta.beta_h, feedback * beta.beta_v};
    if (!(std::norm(d.alpha_h) <= max_alpha_sq && std::norm(d.alpha_v) <= max_alpha_sq)) {
        throw std::domain_error(
            "displaced_conditional_state: |alpha|^2 exceeds the truncation safety bound");
    }
    const Eigen::MatrixXcd dh = single_mode_displacement(basis.cutoff(), d.alpha_h);
    const Eigen::MatrixXcd dv = single_mode_displacement(basis.cutoff(), d.alpha_v);

    // the conditional state has support on three basis states only, so the
    // two-mode displacement matrix is contracted column-by-column
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dimension());
    const int sources[3] = {basis.index_of(0, 0), basis.index_of(1, 0), basis.index_of(0, 1)};
    for (int src : sources) {
        const cplx amp = cond.amplitudes()[src];
        if (amp == cplx(0.0, 0.0)) continue;
        Occupation col = basis.occupation(src);
        int i = 0;
        for (int n = 0; n <= basis.cutoff(); ++n) {
            for (int nh = 0; nh <= n; ++nh, ++i) {
                out[i] += dh(nh, col.n_h) * dv(n - nh, col.n_v) * amp;
            }
        }
    }
    return {basis, std::move(out), cond.weight()};
}

TwoModeState displaced_conditional_state(const PolarizationQubit& q, double reflectivity,
                                         const HeterodyneOutcome& beta, double feedback,
                                         const FockBasis& basis) {
    return displaced_conditional_state(q, reflectivity, beta, feedback, basis,
                                       default_alpha_sq_bound(basis));
}

}  // namespace polclone
