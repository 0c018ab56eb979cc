#pragma once

#include "polclone/optics.hpp"
#include "polclone/rng.hpp"
#include "polclone/states.hpp"

namespace polclone {

/// Heterodyne measurement outcome: the complex amplitude pair
/// (beta_h, beta_v) = (x_h + i y_h, x_v + i y_v).
struct HeterodyneOutcome {
    cplx beta_h;
    cplx beta_v;
    double norm_sq() const { return std::norm(beta_h) + std::norm(beta_v); }
};

/// Feedback factor f; the displacement applied is f * beta. The coherent
/// amplitude gain for a given beam-splitter reflectivity is
/// g = f sqrt(R) + sqrt(1-R).
struct FeedbackGain {
    double f;

    explicit FeedbackGain(double factor) : f(factor) {
        if (!(f >= 0.0)) {
            throw std::invalid_argument("FeedbackGain: feedback factor must be >= 0");
        }
    }

    double gain(double reflectivity) const {
        return f * std::sqrt(reflectivity) + std::sqrt(1.0 - reflectivity);
    }

    /// Loss-compensating feedback f_R = sqrt(R/(1-R)).
    static FeedbackGain optimal(double reflectivity) {
        if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
            throw std::domain_error("FeedbackGain::optimal: requires 0 <= R < 1");
        }
        return FeedbackGain(std::sqrt(reflectivity / (1.0 - reflectivity)));
    }

    /// Feedback factor realizing amplitude gain g at reflectivity R.
    static FeedbackGain for_gain(double g, double reflectivity) {
        if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
            throw std::domain_error("FeedbackGain::for_gain: requires 0 < R < 1");
        }
        return FeedbackGain((g - std::sqrt(1.0 - reflectivity)) / std::sqrt(reflectivity));
    }
};

/// Probability density p(beta) of the heterodyne outcome over the four real
/// quadratures: (1/pi^2) e^(-|beta|^2) [(1-R) + R |beta_h^* c_h + beta_v^* c_v|^2].
double outcome_density(const PolarizationQubit& q, double reflectivity,
                       const HeterodyneOutcome& beta);

/// Unnormalized post-measurement state of the transmitted modes,
/// (1/pi) e^(-|beta|^2/2) [sqrt(1-R)(c_h a_H^dag + c_v a_V^dag)
///                         + sqrt(R)(beta_h^* c_h + beta_v^* c_v)] |0;0>.
/// Its squared norm equals outcome_density; the state's weight field carries it.
TwoModeState conditional_state(const PolarizationQubit& q, double reflectivity,
                               const HeterodyneOutcome& beta, const FockBasis& basis);

/// Exact draw from outcome_density via its two-component mixture: with
/// probability 1-R all quadratures are standard heterodyne noise; with
/// probability R the component along the qubit direction carries the photon
/// (|u|^2-weighted Gaussian, i.e. Gamma(2,1) radius-squared with uniform phase).
HeterodyneOutcome sample_outcome(const PolarizationQubit& q, double reflectivity,
                                 RngStream& rng);

/// conditional_state displaced by f * beta. At f = f_R this equals the
/// feedback-compensated state: the q-polarized creation operator acting on the
/// coherent state |f_R beta>, up to truncation leakage. The displacement
/// safety bound is configurable because integration grids probe far tails.
TwoModeState displaced_conditional_state(const PolarizationQubit& q, double reflectivity,
                                         const HeterodyneOutcome& beta, double feedback,
                                         const FockBasis& basis, double max_alpha_sq);
TwoModeState displaced_conditional_state(const PolarizationQubit& q, double reflectivity,
                                         const HeterodyneOutcome& beta, double feedback,
                                         const FockBasis& basis);

}  // namespace polclone
