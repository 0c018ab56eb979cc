#include "polclone/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "polclone/gauss_hermite.hpp"
#include "polclone/operators.hpp"

namespace polclone {

namespace {

/// Runs shard_fn(0..shard_count) across the given number of threads with a
/// fixed shard-to-worker assignment, so results never depend on scheduling.
void run_sharded(int shard_count, int workers, const std::function<void(int)>& shard_fn) {
    workers = std::max(1, std::min(workers, shard_count));
    if (workers == 1) {
        for (int s = 0; s < shard_count; ++s) shard_fn(s);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &shard_fn]() {
            for (int s = w; s < shard_count; s += workers) shard_fn(s);
        });
    }
    for (auto& t : pool) t.join();
}

void symmetrize_lower(Eigen::MatrixXcd& m) {
    m = m.selfadjointView<Eigen::Lower>();
}

struct SectorBatchStats {
    std::vector<double> probability;   // per batch
    std::vector<double> fidelity;      // per batch
};

double stddev_of_mean(const std::vector<double>& xs) {
    const size_t n = xs.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(n);
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= double(n - 1);
    return std::sqrt(var / double(n));
}

CloneReport assemble_report(const ExperimentConfig& config, const DensityOperator& rho,
                            const std::vector<SectorBatchStats>* batch_stats,
                            std::vector<std::string> warnings) {
    CloneReport report;
    report.reflectivity = config.reflectivity;
    report.feedback = config.resolved_feedback();
    report.gain = FeedbackGain(report.feedback).gain(config.reflectivity);
    report.qubit_c_h = config.qubit.c_h;
    report.qubit_c_v = config.qubit.c_v;
    report.warnings = std::move(warnings);
    if (config.integrator.kind == IntegratorSpec::Kind::MonteCarlo) {
        report.provenance.kind = Provenance::Kind::MonteCarlo;
        report.provenance.samples = config.integrator.samples;
        report.provenance.seed = config.integrator.seed;
        report.provenance.workers = config.integrator.workers;
        report.provenance.batches = config.integrator.batches;
    } else {
        report.provenance.kind = Provenance::Kind::Quadrature;
        report.provenance.points = config.resolved_points();
    }

    double captured = 0.0;
    for (int n = 1; n <= config.report_n_max; ++n) {
        SectorStats s;
        s.n_photons = n;
        SectorProjection proj = project_total_N(rho, n);
        s.probability = proj.weight;
        if (proj.weight > 0.0) {
            s.fidelity = measure_fidelity(rho, config.qubit, n);
            Eigen::VectorXd diag = sector_diagonal_in_qubit_frame(rho, config.qubit, n);
            double mass = 0.0;
            for (int k = 1; k <= n; ++k) mass += diag[k];
            s.p_n_given_n.resize(n);
            for (int k = 1; k <= n; ++k) s.p_n_given_n[k - 1] = diag[k] / mass;
        } else {
            s.fidelity = std::numeric_limits<double>::quiet_NaN();
        }
        if (batch_stats) {
            s.probability_stderr = stddev_of_mean((*batch_stats)[n - 1].probability);
            s.fidelity_stderr = stddev_of_mean((*batch_stats)[n - 1].fidelity);
        }
        captured += s.probability;
        report.sectors.push_back(std::move(s));
    }
    report.truncation_leakage = 1.0 - captured;
    return report;
}

AccumulatedOutput accumulate_quadrature(const ExperimentConfig& config, int points) {
    const FockBasis basis(config.cutoff);
    const double f = config.resolved_feedback();
    const double scale = 1.0 + f * f;
    const GaussHermiteRule rule = gauss_hermite_scaled(points, scale);
    const int dim = basis.dimension();

    std::vector<std::string> warnings;
    if (points < config.report_n_max + 3) {
        warnings.push_back(
            "quadrature order " + std::to_string(points) +
            " is below the polynomial-exactness bound for the requested N range");
    }

    // shard on the outermost quadrature index; partial sums are reduced in
    // shard order afterwards, so the result is independent of thread timing
    std::vector<Eigen::MatrixXcd> partial(points, Eigen::MatrixXcd::Zero(dim, dim));
    run_sharded(points, config.integrator.workers, [&](int shard) {
        Eigen::MatrixXcd& acc = partial[shard];
        const double xh = rule.nodes[shard];
        const double wxh = rule.weights[shard];
        for (int iy = 0; iy < points; ++iy) {
            for (int ix2 = 0; ix2 < points; ++ix2) {
                for (int iy2 = 0; iy2 < points; ++iy2) {
                    const HeterodyneOutcome beta{cplx(xh, rule.nodes[iy]),
                                                 cplx(rule.nodes[ix2], rule.nodes[iy2])};
                    const double w =
                        wxh * rule.weights[iy] * rule.weights[ix2] * rule.weights[iy2];
                    TwoModeState state = displaced_conditional_state(
                        config.qubit, config.reflectivity, beta, f, basis, unbounded_alpha_sq());
                    acc.selfadjointView<Eigen::Lower>().rankUpdate(state.amplitudes(), w);
                }
            }
        }
    });

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& m : partial) total += m;
    symmetrize_lower(total);

    AccumulatedOutput out{DensityOperator(basis, std::move(total)), CloneReport{},
                          Eigen::MatrixXd()};
    out.report = assemble_report(config, out.rho, nullptr, std::move(warnings));
    return out;
}

AccumulatedOutput accumulate_monte_carlo(const ExperimentConfig& config) {
    const FockBasis basis(config.cutoff);
    const double f = config.resolved_feedback();
    const int dim = basis.dimension();
    const int batches = config.integrator.batches;
    const std::uint64_t samples = config.integrator.samples;

    // batch-keyed RNG streams: the result depends only on (seed, batches),
    // not on the worker count or scheduling
    std::vector<Eigen::MatrixXcd> batch_sum(batches, Eigen::MatrixXcd::Zero(dim, dim));
    std::vector<std::uint64_t> batch_samples(batches, samples / batches);
    for (std::uint64_t b = 0; b < samples % batches; ++b) ++batch_samples[b];

    run_sharded(batches, config.integrator.workers, [&](int b) {
        RngStream rng(config.integrator.seed, std::uint64_t(b));
        Eigen::MatrixXcd& acc = batch_sum[b];
        for (std::uint64_t s = 0; s < batch_samples[b]; ++s) {
            HeterodyneOutcome beta = sample_outcome(config.qubit, config.reflectivity, rng);
            TwoModeState state = displaced_conditional_state(
                config.qubit, config.reflectivity, beta, f, basis, unbounded_alpha_sq());
            const double norm_sq = state.squared_norm();
            if (norm_sq <= 0.0) continue;  // beta far beyond the representable tail
            acc.selfadjointView<Eigen::Lower>().rankUpdate(state.amplitudes(),
                                                           1.0 / norm_sq);
        }
    });

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (auto& m : batch_sum) {
        symmetrize_lower(m);
        total += m;
    }
    total /= double(samples);

    // per-entry standard error across batch means
    Eigen::MatrixXd stderr_mat = Eigen::MatrixXd::Zero(dim, dim);
    if (batches >= 2) {
        Eigen::MatrixXcd mean_of_means = Eigen::MatrixXcd::Zero(dim, dim);
        std::vector<Eigen::MatrixXcd> batch_mean(batches);
        for (int b = 0; b < batches; ++b) {
            batch_mean[b] = batch_sum[b] / double(batch_samples[b]);
            mean_of_means += batch_mean[b];
        }
        mean_of_means /= double(batches);
        Eigen::MatrixXd var = Eigen::MatrixXd::Zero(dim, dim);
        for (int b = 0; b < batches; ++b) {
            var += (batch_mean[b] - mean_of_means).cwiseAbs2();
        }
        var /= double(batches - 1);
        stderr_mat = (var / double(batches)).cwiseSqrt();
    }

    DensityOperator rho(basis, std::move(total));

    // batch-level sector statistics for the reported standard errors
    std::vector<SectorBatchStats> stats(config.report_n_max);
    for (int b = 0; b < batches; ++b) {
        DensityOperator rho_b(basis, batch_sum[b] / double(batch_samples[b]));
        for (int n = 1; n <= config.report_n_max; ++n) {
            SectorProjection proj = project_total_N(rho_b, n);
            stats[n - 1].probability.push_back(proj.weight);
            if (proj.weight > 0.0) {
                stats[n - 1].fidelity.push_back(measure_fidelity(rho_b, config.qubit, n));
            }
        }
    }

    AccumulatedOutput out{std::move(rho), CloneReport{}, std::move(stderr_mat)};
    out.report = assemble_report(config, out.rho, &stats, {});
    return out;
}

}  // namespace

IntegratorSpec IntegratorSpec::monte_carlo(std::uint64_t samples, std::uint64_t seed, int workers,
                                           int batches) {
    IntegratorSpec spec;
    spec.kind = Kind::MonteCarlo;
    spec.samples = samples;
    spec.seed = seed;
    spec.workers = workers;
    spec.batches = batches;
    return spec;
}

IntegratorSpec IntegratorSpec::gauss_hermite(int points) {
    IntegratorSpec spec;
    spec.kind = Kind::GaussHermite;
    spec.points = points;
    return spec;
}

double ExperimentConfig::resolved_feedback() const {
    if (optimal_gain) return FeedbackGain::optimal(reflectivity).f;
    return feedback;
}

int ExperimentConfig::resolved_points() const {
    if (integrator.points > 0) return integrator.points;
    return 2 * report_n_max + 6;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> errors;
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
        errors.push_back("reflectivity: must satisfy 0 <= R < 1");
    }
    if (!optimal_gain && !(feedback >= 0.0)) {
        errors.push_back("feedback: must be >= 0");
    }
    if (cutoff < 1) {
        errors.push_back("cutoff: must be >= 1");
    }
    if (report_n_max < 1) {
        errors.push_back("report_n_max: must be >= 1 (empty N range)");
    }
    if (cutoff < report_n_max + 2) {
        errors.push_back("cutoff: must be >= report_n_max + 2");
    }
    if (integrator.kind == IntegratorSpec::Kind::MonteCarlo) {
        if (integrator.samples < 1) errors.push_back("integrator.samples: must be >= 1");
        if (integrator.batches < 1) errors.push_back("integrator.batches: must be >= 1");
        if (integrator.samples > 0 && std::uint64_t(integrator.batches) > integrator.samples) {
            errors.push_back("integrator.batches: must not exceed integrator.samples");
        }
    } else {
        if (integrator.points != 0 && integrator.points < 2) {
            errors.push_back("integrator.points: must be >= 2");
        }
    }
    if (integrator.workers < 1) {
        errors.push_back("integrator.workers: must be >= 1");
    }
    if (!sweep_gains.empty() && !sweep_reflectivities.empty()) {
        errors.push_back("sweep: gains and reflectivities are mutually exclusive");
    }
    for (size_t i = 1; i < sweep_gains.size(); ++i) {
        if (!(sweep_gains[i] > sweep_gains[i - 1])) {
            errors.push_back("sweep.gains: must be strictly increasing");
            break;
        }
    }
    for (double r : sweep_reflectivities) {
        if (!(r >= 0.0 && r < 1.0)) {
            errors.push_back("sweep.reflectivities: every value must satisfy 0 <= R < 1");
            break;
        }
    }
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid experiment config:";
        for (const std::string& e : errors) msg << "\n  " << e;
        throw std::invalid_argument(msg.str());
    }
}

AccumulatedOutput accumulate_output(const ExperimentConfig& config) {
    config.validate();
    if (config.integrator.kind == IntegratorSpec::Kind::MonteCarlo) {
        return accumulate_monte_carlo(config);
    }
    return accumulate_quadrature(config, config.resolved_points());
}

double measure_fidelity(const DensityOperator& rho, const PolarizationQubit& q, int n_photons) {
    SectorProjection proj = project_total_N(rho, n_photons);
    if (!(proj.weight > 0.0)) {
        throw std::domain_error("measure_fidelity: zero-weight sector");
    }
    const Eigen::MatrixXcd a_q = creation_superposition_op(rho.basis(), q);
    const Eigen::MatrixXcd n_q = a_q * a_q.adjoint();
    const double mean_correct = (proj.block.matrix() * n_q).trace().real();
    return mean_correct / double(n_photons);
}

Eigen::VectorXd sector_diagonal_in_qubit_frame(const DensityOperator& rho,
                                               const PolarizationQubit& q, int n_photons) {
    SectorProjection proj = project_total_N(rho, n_photons);
    if (!(proj.weight > 0.0)) {
        throw std::domain_error("sector_diagonal_in_qubit_frame: zero-weight sector");
    }
    const FockBasis& basis = rho.basis();
    const Eigen::MatrixXcd rot = polarization_rotation_op(basis, q.frame_unitary());
    const Eigen::MatrixXcd aligned = rot.adjoint() * proj.block.matrix() * rot;
    Eigen::VectorXd diag(n_photons + 1);
    for (int k = 0; k <= n_photons; ++k) {
        int idx = basis.index_of(k, n_photons - k);
        diag[k] = aligned(idx, idx).real();
    }
    return diag;
}

SweepResult gain_sweep(const ExperimentConfig& config) {
    config.validate();
    if (config.sweep_gains.empty()) {
        throw std::invalid_argument("gain_sweep: sweep gain list is empty");
    }
    const bool mc = config.integrator.kind == IntegratorSpec::Kind::MonteCarlo;

    SweepResult result;
    result.gains = config.sweep_gains;
    result.n_max = config.report_n_max;
    for (double g : config.sweep_gains) {
        ExperimentConfig point = config;
        point.sweep_gains.clear();
        point.optimal_gain = false;
        point.feedback = FeedbackGain::for_gain(g, config.reflectivity).f;
        AccumulatedOutput out = accumulate_output(point);
        std::vector<double> fid(config.report_n_max);
        std::vector<double> err(config.report_n_max);
        for (int n = 1; n <= config.report_n_max; ++n) {
            fid[n - 1] = out.report.sectors[n - 1].fidelity;
            err[n - 1] = out.report.sectors[n - 1].fidelity_stderr;
        }
        result.fidelities.push_back(std::move(fid));
        if (mc) result.fidelity_stderrs.push_back(std::move(err));
    }

    result.argmax_gain.resize(config.report_n_max);
    for (int n = 1; n <= config.report_n_max; ++n) {
        size_t best = 0;
        for (size_t gi = 1; gi < result.gains.size(); ++gi) {
            if (result.fidelities[gi][n - 1] > result.fidelities[best][n - 1]) best = gi;
        }
        result.argmax_gain[n - 1] = result.gains[best];
    }
    return result;
}

CoherentAmplificationResult coherent_amplification_check(cplx alpha_h, cplx alpha_v,
                                                         double reflectivity, double feedback,
                                                         std::uint64_t samples,
                                                         std::uint64_t seed) {
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
        throw std::domain_error("coherent_amplification_check: requires 0 <= R < 1");
    }
    if (!(feedback >= 0.0)) {
        throw std::invalid_argument("coherent_amplification_check: feedback must be >= 0");
    }
    if (samples < 1) {
        throw std::invalid_argument("coherent_amplification_check: samples must be >= 1");
    }
    const double t = std::sqrt(1.0 - reflectivity);
    const double r = std::sqrt(reflectivity);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    RngStream rng(seed);
    cplx sum_h = 0.0, sum_v = 0.0;
    double sum_sq = 0.0;  // sum over all four output quadratures
    for (std::uint64_t s = 0; s < samples; ++s) {
        // heterodyne outcome on the reflected beam: centered at sqrt(R) alpha
        // with unit-variance circular noise per mode
        const cplx beta_h = r * alpha_h + cplx(rng.normal(), rng.normal()) * inv_sqrt2;
        const cplx beta_v = r * alpha_v + cplx(rng.normal(), rng.normal()) * inv_sqrt2;
        const cplx out_h = t * alpha_h + feedback * beta_h;
        const cplx out_v = t * alpha_v + feedback * beta_v;
        sum_h += out_h;
        sum_v += out_v;
        sum_sq += std::norm(out_h) + std::norm(out_v);
    }
    CoherentAmplificationResult result;
    result.samples = samples;
    result.mean_out_h = sum_h / double(samples);
    result.mean_out_v = sum_v / double(samples);
    result.expected_gain = feedback * r + t;
    const double in_norm_sq = std::norm(alpha_h) + std::norm(alpha_v);
    result.gain_estimate =
        in_norm_sq > 0.0
            ? (std::conj(alpha_h) * result.mean_out_h + std::conj(alpha_v) * result.mean_out_v)
                      .real() /
                  in_norm_sq
            : std::numeric_limits<double>::quiet_NaN();
    const double mean_sq =
        std::norm(result.mean_out_h) + std::norm(result.mean_out_v);
    // pooled variance per real quadrature (four quadratures total)
    result.noise_variance = (sum_sq / double(samples) - mean_sq) / 4.0;
    result.mean_stderr_per_quadrature =
        feedback * inv_sqrt2 / std::sqrt(double(samples));
    return result;
}

std::vector<CloneReport> reproduce_paper_tables(const ExperimentConfig& config) {
    config.validate();
    std::vector<CloneReport> reports;
    if (!config.sweep_reflectivities.empty()) {
        for (double r : config.sweep_reflectivities) {
            ExperimentConfig point = config;
            point.sweep_reflectivities.clear();
            point.reflectivity = r;
            reports.push_back(accumulate_output(point).report);
        }
    } else if (!config.sweep_gains.empty()) {
        for (double g : config.sweep_gains) {
            ExperimentConfig point = config;
            point.sweep_gains.clear();
            point.optimal_gain = false;
            point.feedback = FeedbackGain::for_gain(g, config.reflectivity).f;
            reports.push_back(accumulate_output(point).report);
        }
    } else {
        reports.push_back(accumulate_output(config).report);
    }
    return reports;
}

double quadrature_order_doubling_delta(const ExperimentConfig& config) {
    config.validate();
    if (config.integrator.kind != IntegratorSpec::Kind::GaussHermite) {
        throw std::invalid_argument("quadrature_order_doubling_delta: quadrature configs only");
    }
    AccumulatedOutput base = accumulate_quadrature(config, config.resolved_points());
    AccumulatedOutput doubled = accumulate_quadrature(config, 2 * config.resolved_points());
    double delta = 0.0;
    for (int n = 1; n <= config.report_n_max; ++n) {
        SectorProjection a = project_total_N(base.rho, n);
        SectorProjection b = project_total_N(doubled.rho, n);
        delta = std::max(delta, std::abs(a.weight - b.weight));
        if (a.weight > 0.0 && b.weight > 0.0) {
            delta = std::max(delta, trace_distance(a.block, b.block));
        }
    }
    return delta;
}

}  // namespace polclone
