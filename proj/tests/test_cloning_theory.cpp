#include <doctest.h>

#include "polclone/cloning_theory.hpp"
#include "polclone/experiment.hpp"
#include "polclone/operators.hpp"
#include "test_util.hpp"

using namespace polclone;

TEST_CASE("optimal feedback closed forms") {
    OptimalFeedback r0 = optimal_feedback(0.0);
    CHECK(r0.f == 0.0);
    CHECK(r0.g == 1.0);

    OptimalFeedback half = optimal_feedback(0.5);
    CHECK(half.f == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(half.g == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    CHECK(optimal_feedback(0.75).g == doctest::Approx(2.0).epsilon(1e-14));

    RngStream rng(51);
    for (int rep = 0; rep < 100; ++rep) {
        double r = 0.999 * rng.uniform();
        OptimalFeedback fb = optimal_feedback(r);
        CHECK(std::abs(fb.f * std::sqrt(r) + std::sqrt(1.0 - r) - fb.g) < 1e-14);
    }

    CHECK_THROWS_AS(optimal_feedback(1.0), std::domain_error);
    CHECK_THROWS_AS(optimal_feedback(-0.1), std::domain_error);
}

TEST_CASE("photon number distribution") {
    const double r = 0.5;
    auto direct = [&](int n) {
        return (1 - r) * (1 - r) * (1 - r) / (2 * r) * std::pow(r, n) * n * (n + 1);
    };
    CHECK(prob_N(r, 1) == doctest::Approx(direct(1)).epsilon(1e-15));
    CHECK(prob_N(r, 1) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(prob_N(r, 2) == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(prob_N(r, 3) == doctest::Approx(0.1875).epsilon(1e-15));

    for (double reflectivity : {0.25, 0.5, 0.75, 0.9}) {
        double total = 0.0;
        for (int n = 1; n <= 200; ++n) total += prob_N(reflectivity, n);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK(prob_N(0.0, 1) == 1.0);
    CHECK(prob_N(0.0, 2) == 0.0);
    CHECK_THROWS_AS(prob_N(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(prob_N(1.0, 1), std::domain_error);
}

TEST_CASE("unpolarized core operator") {
    FockBasis basis(6);

    UnpolarizedOperator c1 = C_N_operator(1, basis);
    CHECK(trace_distance(c1.op, DensityOperator::pure(TwoModeState::vacuum(basis))) < 1e-14);
    CHECK(c1.eq_coefficient == doctest::Approx(1.0).epsilon(1e-15));

    UnpolarizedOperator c2 = C_N_operator(2, basis);
    CHECK(c2.op.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c2.op.matrix()(basis.index_of(1, 0), basis.index_of(1, 0)).real() ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c2.op.matrix()(basis.index_of(0, 1), basis.index_of(0, 1)).real() ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c2.eq_coefficient == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // uniform diagonal: all nonzero eigenvalues equal, support on the N-1 sector
    for (int n = 1; n <= 5; ++n) {
        UnpolarizedOperator c = C_N_operator(n, basis);
        for (int i = 0; i < basis.dimension(); ++i) {
            double want = (basis.total_photons(i) == n - 1) ? 1.0 / n : 0.0;
            CHECK(std::abs(c.op.matrix()(i, i).real() - want) < 1e-15);
        }
    }

    CHECK_THROWS_AS(C_N_operator(0, basis), std::invalid_argument);
    CHECK_THROWS_AS(C_N_operator(7, basis), std::invalid_argument);
}

TEST_CASE("N-photon output block") {
    FockBasis basis(8);
    RngStream rng(52);

    SUBCASE("N = 1 is the pure input qubit") {
        for (int rep = 0; rep < 5; ++rep) {
            PolarizationQubit q = testutil::random_qubit(rng);
            DensityOperator rho = rho_N(q, 1, basis);
            CHECK(fidelity_overlap(rho, TwoModeState::single_photon(basis, q)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("N = 2 diagonal weights for the horizontal input") {
        DensityOperator rho = rho_N(PolarizationQubit::horizontal(), 2, basis);
        // oracle: prob_n_given_N places 1/3 on one correct photon, 2/3 on two
        CHECK(rho.matrix()(basis.index_of(1, 1), basis.index_of(1, 1)).real() ==
              doctest::Approx(prob_n_given_N(1, 2)).epsilon(1e-14));
        CHECK(rho.matrix()(basis.index_of(2, 0), basis.index_of(2, 0)).real() ==
              doctest::Approx(prob_n_given_N(2, 2)).epsilon(1e-14));
    }
    SUBCASE("diagonal in the qubit-aligned frame matches the closed form") {
        for (int n = 1; n <= 5; ++n) {
            PolarizationQubit q = testutil::random_qubit(rng);
            DensityOperator rho = rho_N(q, n, basis);
            CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
            CHECK(rho.hermiticity_error() < 1e-12);
            CHECK(rho.min_eigenvalue() > -1e-10);
            Eigen::VectorXd diag = sector_diagonal_in_qubit_frame(rho, q, n);
            CHECK(std::abs(diag[0]) < 1e-12);
            for (int k = 1; k <= n; ++k) {
                CHECK(std::abs(diag[k] - prob_n_given_N(k, n)) < 1e-12);
            }
        }
    }
    SUBCASE("fidelity is invariant under polarization rotation") {
        for (int rep = 0; rep < 10; ++rep) {
            Eigen::Matrix2cd u = testutil::random_unitary2(rng);
            PolarizationQubit q = testutil::random_qubit(rng);
            PolarizationQubit uq(u(0, 0) * q.c_h + u(0, 1) * q.c_v,
                                 u(1, 0) * q.c_h + u(1, 1) * q.c_v);
            for (int n = 1; n <= 4; ++n) {
                CHECK(std::abs(measure_fidelity(rho_N(uq, n, basis), uq, n) -
                               optimal_fidelity(n)) < 1e-12);
            }
        }
    }
}

TEST_CASE("clone count distribution and fidelity") {
    CHECK(prob_n_given_N(1, 1) == 1.0);
    CHECK(prob_n_given_N(1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(prob_n_given_N(2, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(prob_n_given_N(3, 3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(prob_n_given_N(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(prob_n_given_N(4, 3), std::invalid_argument);

    for (int n = 1; n <= 20; ++n) {
        double row = 0.0;
        double mean_fraction = 0.0;
        for (int k = 1; k <= n; ++k) {
            row += prob_n_given_N(k, n);
            mean_fraction += prob_n_given_N(k, n) * k / n;
        }
        CHECK(std::abs(row - 1.0) < 1e-12);
        CHECK(std::abs(mean_fraction - optimal_fidelity(n)) < 1e-12);
    }

    CHECK(optimal_fidelity(1) == 1.0);
    CHECK(optimal_fidelity(2) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(std::abs(optimal_fidelity(1000000) - 2.0 / 3.0) < 1e-6);
    for (int n = 1; n < 50; ++n) {
        CHECK(optimal_fidelity(n) > optimal_fidelity(n + 1));
    }
}

TEST_CASE("analytic output operator") {
    FockBasis basis(12);
    RngStream rng(53);

    SUBCASE("R -> 0 is the pure input photon") {
        PolarizationQubit q = testutil::random_qubit(rng);
        DensityOperator out = analytic_output(q, 0.0, basis);
        CHECK(fidelity_overlap(out, TwoModeState::single_photon(basis, q)) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("sector weights match the closed form") {
        for (double r : {0.25, 0.5, 0.75}) {
            PolarizationQubit q = testutil::random_qubit(rng);
            DensityOperator out = analytic_output(q, r, basis);
            for (int n = 1; n <= basis.cutoff() - 2; ++n) {
                CHECK(std::abs(project_total_N(out, n).weight - prob_N(r, n)) < 1e-9);
            }
        }
    }
    SUBCASE("trace equals one minus the photon-number tail") {
        const double r = 0.5;
        DensityOperator out = analytic_output(PolarizationQubit::horizontal(), r, basis);
        double kept = 0.0;
        for (int n = 1; n <= basis.cutoff(); ++n) kept += prob_N(r, n);
        CHECK(out.trace() == doctest::Approx(kept).epsilon(1e-12));
    }
    SUBCASE("mean photon number agrees with the distribution") {
        const double r = 0.5;
        DensityOperator out = analytic_output(PolarizationQubit::horizontal(), r, basis);
        double mean = (out.matrix() * total_number_op(basis)).trace().real();
        double partial = 0.0;
        for (int n = 1; n <= basis.cutoff(); ++n) partial += n * prob_N(r, n);
        CHECK(mean == doctest::Approx(partial).epsilon(1e-10));
        // the full series sums to (1+2R)/(1-R); the truncated mean sits below
        // it by exactly the tail
        double full = (1.0 + 2.0 * r) / (1.0 - r);
        double tail = 0.0;
        for (int n = basis.cutoff() + 1; n <= 400; ++n) tail += n * prob_N(r, n);
        CHECK(std::abs(full - mean - tail) < 1e-9);
    }
    SUBCASE("sector weights are invariant under the input polarization") {
        const double r = 0.5;
        double reference = project_total_N(
            analytic_output(PolarizationQubit::horizontal(), r, basis), 3).weight;
        for (int rep = 0; rep < 10; ++rep) {
            PolarizationQubit q = testutil::random_qubit(rng);
            CHECK(std::abs(project_total_N(analytic_output(q, r, basis), 3).weight -
                           reference) < 1e-12);
        }
    }
}

TEST_CASE("white noise mixture") {
    FockBasis basis(8);
    PolarizationQubit q = PolarizationQubit::normalized(cplx(0.8, 0.0), cplx(0.0, 0.6));

    SUBCASE("endpoints") {
        NoisyClone clean = white_noise_mix(q, 2, 0.0, basis);
        CHECK(clean.fidelity == doctest::Approx(optimal_fidelity(2)).epsilon(1e-15));
        CHECK(trace_distance(clean.op, rho_N(q, 2, basis)) < 1e-14);

        NoisyClone noise = white_noise_mix(q, 3, 1.0, basis);
        CHECK(noise.fidelity == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(measure_fidelity(noise.op, q, 3) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("weighted average") {
        NoisyClone mixed = white_noise_mix(q, 2, 0.2, basis);
        double want = 0.8 * (5.0 / 6.0) + 0.2 * 0.5;
        CHECK(mixed.fidelity == doctest::Approx(want).epsilon(1e-15));
        CHECK(measure_fidelity(mixed.op, q, 2) == doctest::Approx(want).epsilon(1e-12));
        CHECK(std::abs(mixed.op.trace() - 1.0) < 1e-12);
        CHECK(mixed.op.min_eigenvalue() > -1e-10);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(white_noise_mix(q, 2, -0.1, basis), std::invalid_argument);
        CHECK_THROWS_AS(white_noise_mix(q, 2, 1.1, basis), std::invalid_argument);
        CHECK_THROWS_AS(white_noise_mix(q, 8, 0.5, basis), std::invalid_argument);
    }
}

TEST_CASE("analytic clone report invariants") {
    CloneReport report = analytic_clone_report(0.5, PolarizationQubit::horizontal(), 6);
    double captured = 0.0;
    for (const SectorStats& s : report.sectors) {
        captured += s.probability;
        double row = 0.0;
        for (double p : s.p_n_given_n) row += p;
        CHECK(std::abs(row - 1.0) < 1e-12);
    }
    CHECK(std::abs(captured + report.truncation_leakage - 1.0) < 1e-12);
    CHECK(report.gain == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(analytic_clone_report(0.5, PolarizationQubit::horizontal(), 0),
                    std::invalid_argument);
}
