#include "polclone/cloning_theory.hpp"

#include "polclone/operators.hpp"
#include "polclone/optics.hpp"

namespace polclone {

OptimalFeedback optimal_feedback(double reflectivity) {
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
        throw std::domain_error("optimal_feedback: requires 0 <= R < 1");
    }
    const double f = std::sqrt(reflectivity / (1.0 - reflectivity));
    const double g = 1.0 / std::sqrt(1.0 - reflectivity);
    return {f, g};
}

DensityOperator analytic_output(const PolarizationQubit& q, double reflectivity,
                                const FockBasis& basis) {
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
        throw std::domain_error("analytic_output: requires 0 <= R < 1");
    }
    ThermalState thermal = thermal_state(basis, reflectivity / (1.0 - reflectivity));
    // undo the post-truncation renormalization so every kept sector keeps its
    // exact geometric weight; the missing trace is the truncation leakage
    DensityOperator raw_core = thermal.op.scaled(1.0 - thermal.leakage);
    return apply_creation_superposition(q, raw_core).scaled(1.0 - reflectivity);
}

double prob_N(double reflectivity, int n_photons) {
    if (n_photons < 1) {
        throw std::invalid_argument("prob_N: N must be >= 1");
    }
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
        throw std::domain_error("prob_N: requires 0 <= R < 1");
    }
    if (reflectivity == 0.0) return n_photons == 1 ? 1.0 : 0.0;
    const double r = reflectivity;
    return (1.0 - r) * (1.0 - r) * (1.0 - r) / (2.0 * r) * std::pow(r, n_photons) *
           double(n_photons) * double(n_photons + 1);
}

UnpolarizedOperator C_N_operator(int n_photons, const FockBasis& basis) {
    if (n_photons < 1 || n_photons > basis.cutoff()) {
        throw std::invalid_argument("C_N_operator: N outside [1, cutoff]");
    }
    DensityOperator op = DensityOperator::zero(basis);
    for (int k = 0; k < n_photons; ++k) {
        int idx = basis.index_of(k, n_photons - 1 - k);
        op.matrix()(idx, idx) = 1.0 / n_photons;
    }
    return {std::move(op), 2.0 / (double(n_photons) * double(n_photons + 1))};
}

DensityOperator rho_N(const PolarizationQubit& q, int n_photons, const FockBasis& basis) {
    UnpolarizedOperator core = C_N_operator(n_photons, basis);
    return apply_creation_superposition(q, core.op).normalized();
}

double prob_n_given_N(int n_correct, int n_photons) {
    if (n_photons < 1 || n_correct < 1 || n_correct > n_photons) {
        throw std::invalid_argument("prob_n_given_N: requires 1 <= n <= N");
    }
    return 2.0 * n_correct / (double(n_photons) * double(n_photons + 1));
}

double optimal_fidelity(int n_photons) {
    if (n_photons < 1) {
        throw std::invalid_argument("optimal_fidelity: N must be >= 1");
    }
    return (2.0 * n_photons + 1.0) / (3.0 * n_photons);
}

NoisyClone white_noise_mix(const PolarizationQubit& q, int n_photons, double epsilon,
                           const FockBasis& basis) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("white_noise_mix: epsilon must be in [0, 1]");
    }
    UnpolarizedOperator noise = C_N_operator(n_photons + 1, basis);
    DensityOperator signal = rho_N(q, n_photons, basis);
    DensityOperator mixed(basis, (1.0 - epsilon) * signal.matrix() + epsilon * noise.op.matrix());
    double fidelity = (1.0 - epsilon) * optimal_fidelity(n_photons) + epsilon * 0.5;
    return {std::move(mixed), fidelity};
}

CloneReport analytic_clone_report(double reflectivity, const PolarizationQubit& q,
                                  int report_n_max) {
    if (report_n_max < 1) {
        throw std::invalid_argument("analytic_clone_report: empty N range");
    }
    OptimalFeedback fb = optimal_feedback(reflectivity);
    CloneReport report;
    report.reflectivity = reflectivity;
    report.feedback = fb.f;
    report.gain = fb.g;
    report.qubit_c_h = q.c_h;
    report.qubit_c_v = q.c_v;
    report.provenance.kind = Provenance::Kind::Analytic;

    double captured = 0.0;
    for (int n = 1; n <= report_n_max; ++n) {
        SectorStats s;
        s.n_photons = n;
        s.probability = prob_N(reflectivity, n);
        s.fidelity = optimal_fidelity(n);
        s.p_n_given_n.reserve(n);
        for (int k = 1; k <= n; ++k) s.p_n_given_n.push_back(prob_n_given_N(k, n));
        captured += s.probability;
        report.sectors.push_back(std::move(s));
    }
    report.truncation_leakage = 1.0 - captured;
    return report;
}

}  // namespace polclone
