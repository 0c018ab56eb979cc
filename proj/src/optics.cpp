#include "polclone/optics.hpp"

namespace polclone {

namespace {

cplx cpow_int(cplx base, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

std::vector<double> log_factorials(int n_max) {
    std::vector<double> lf(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) lf[n] = lf[n - 1] + std::log(double(n));
    return lf;
}

void check_alpha_bound(cplx alpha, double max_alpha_sq, const char* where) {
    if (!(std::norm(alpha) <= max_alpha_sq)) {
        throw std::domain_error(std::string(where) +
                                ": |alpha|^2 exceeds the truncation safety bound");
    }
}

}  // namespace

Eigen::MatrixXcd single_mode_displacement(int cutoff, cplx alpha) {
    const int size = cutoff + 1;
    Eigen::MatrixXcd m(size, size);
    if (alpha == cplx(0.0, 0.0)) {
        m.setIdentity();
        return m;
    }
    const double x = std::norm(alpha);
    const double gauss = std::exp(-0.5 * x);
    const auto lf = log_factorials(cutoff);

    // L_j^(k)(x) by the three-term recurrence, for j + k <= cutoff
    std::vector<std::vector<double>> lag(size);
    for (int k = 0; k <= cutoff; ++k) {
        lag[k].resize(size - k);
        lag[k][0] = 1.0;
        if (k + 1 <= cutoff) lag[k][1] = 1.0 + k - x;
        for (int j = 1; j + 1 + k <= cutoff; ++j) {
            lag[k][j + 1] = ((2 * j + 1 + k - x) * lag[k][j] - (j + k) * lag[k][j - 1]) / (j + 1);
        }
    }

    for (int mrow = 0; mrow <= cutoff; ++mrow) {
        for (int ncol = 0; ncol <= cutoff; ++ncol) {
            int lo = std::min(mrow, ncol);
            int k = std::abs(mrow - ncol);
            double mag = std::exp(0.5 * (lf[lo] - lf[lo + k]));
            cplx phase = (mrow >= ncol) ? cpow_int(alpha, k) : cpow_int(-std::conj(alpha), k);
            m(mrow, ncol) = mag * phase * gauss * lag[k][lo];
        }
    }
    return m;
}

Eigen::MatrixXcd displacement_matrix(const FockBasis& basis, const Displacement& d,
                                     double max_alpha_sq) {
    check_alpha_bound(d.alpha_h, max_alpha_sq, "displacement_matrix");
    check_alpha_bound(d.alpha_v, max_alpha_sq, "displacement_matrix");
    const Eigen::MatrixXcd dh = single_mode_displacement(basis.cutoff(), d.alpha_h);
    const Eigen::MatrixXcd dv = single_mode_displacement(basis.cutoff(), d.alpha_v);

    const int dim = basis.dimension();
    Eigen::MatrixXcd m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Occupation col = basis.occupation(j);
        for (int i = 0; i < dim; ++i) {
            Occupation row = basis.occupation(i);
            m(i, j) = dh(row.n_h, col.n_h) * dv(row.n_v, col.n_v);
        }
    }
    return m;
}

Eigen::MatrixXcd displacement_matrix(const FockBasis& basis, const Displacement& d) {
    return displacement_matrix(basis, d, default_alpha_sq_bound(basis));
}

double displacement_reorder_check(const PolarizationQubit& q, const Displacement& d,
                                  const FockBasis& basis, int interior_total) {
    const Eigen::MatrixXcd disp = displacement_matrix(basis, d, unbounded_alpha_sq());
    Eigen::MatrixXcd a_q(basis.dimension(), basis.dimension());
    {
        // c_h a_H^dag + c_v a_V^dag, built inline to keep optics self-contained
        a_q.setZero();
        for (int j = 0; j < basis.dimension(); ++j) {
            Occupation occ = basis.occupation(j);
            if (basis.contains(occ.n_h + 1, occ.n_v)) {
                a_q(basis.index_of(occ.n_h + 1, occ.n_v), j) += q.c_h * std::sqrt(occ.n_h + 1.0);
            }
            if (basis.contains(occ.n_h, occ.n_v + 1)) {
                a_q(basis.index_of(occ.n_h, occ.n_v + 1), j) += q.c_v * std::sqrt(occ.n_v + 1.0);
            }
        }
    }
    const cplx shift = q.c_h * std::conj(d.alpha_h) + q.c_v * std::conj(d.alpha_v);
    const Eigen::MatrixXcd lhs = disp * (a_q + shift * Eigen::MatrixXcd::Identity(
                                                          basis.dimension(), basis.dimension()));
    const Eigen::MatrixXcd rhs = a_q * disp;

    double residual = 0.0;
    for (int j = 0; j < basis.dimension(); ++j) {
        if (basis.total_photons(j) > interior_total) continue;
        for (int i = 0; i < basis.dimension(); ++i) {
            if (basis.total_photons(i) > interior_total) continue;
            residual = std::max(residual, std::abs(lhs(i, j) - rhs(i, j)));
        }
    }
    return residual;
}

TwoModeState coherent_state(const FockBasis& basis, cplx alpha_h, cplx alpha_v,
                            double max_alpha_sq) {
    check_alpha_bound(alpha_h, max_alpha_sq, "coherent_state");
    check_alpha_bound(alpha_v, max_alpha_sq, "coherent_state");
    const auto lf = log_factorials(basis.cutoff());
    const double gauss = std::exp(-0.5 * (std::norm(alpha_h) + std::norm(alpha_v)));
    Eigen::VectorXcd amps(basis.dimension());
    for (int i = 0; i < basis.dimension(); ++i) {
        Occupation occ = basis.occupation(i);
        amps[i] = gauss * cpow_int(alpha_h, occ.n_h) * cpow_int(alpha_v, occ.n_v) *
                  std::exp(-0.5 * (lf[occ.n_h] + lf[occ.n_v]));
    }
    return {basis, std::move(amps)};
}

TwoModeState coherent_state(const FockBasis& basis, cplx alpha_h, cplx alpha_v) {
    return coherent_state(basis, alpha_h, alpha_v, default_alpha_sq_bound(basis));
}

ThermalState thermal_state(const FockBasis& basis, double mean_photons_per_mode) {
    if (!(mean_photons_per_mode >= 0.0)) {
        throw std::invalid_argument("thermal_state: mean photon number must be >= 0");
    }
    const int dim = basis.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const double nbar = mean_photons_per_mode;
    double captured = 0.0;
    for (int i = 0; i < dim; ++i) {
        Occupation occ = basis.occupation(i);
        // geometric weights nbar^n / (1+nbar)^(n+1) per mode
        double w = std::pow(nbar / (1.0 + nbar), occ.n_h + occ.n_v) /
                   ((1.0 + nbar) * (1.0 + nbar));
        m(i, i) = w;
        captured += w;
    }
    m /= captured;
    return {DensityOperator(basis, std::move(m)), 1.0 - captured};
}

FourModeState::FourModeState(int max_total) : max_total_(max_total), side_(max_total + 1) {
    if (max_total < 0) {
        throw std::invalid_argument("FourModeState: max_total must be >= 0");
    }
    amps_.assign(size_t(side_) * side_ * side_ * side_, cplx(0.0, 0.0));
}

int FourModeState::flat(int a_h, int a_v, int b_h, int b_v) const {
    if (a_h < 0 || a_v < 0 || b_h < 0 || b_v < 0 || a_h + a_v + b_h + b_v > max_total_) {
        throw std::out_of_range("FourModeState: occupation above the oracle cutoff");
    }
    return ((a_h * side_ + a_v) * side_ + b_h) * side_ + b_v;
}

cplx FourModeState::amp(int a_h, int a_v, int b_h, int b_v) const {
    return amps_[flat(a_h, a_v, b_h, b_v)];
}

void FourModeState::set_amp(int a_h, int a_v, int b_h, int b_v, cplx value) {
    amps_[flat(a_h, a_v, b_h, b_v)] = value;
}

double FourModeState::squared_norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

double FourModeState::mean_total_photons() const {
    double s = 0.0;
    for (int ah = 0; ah <= max_total_; ++ah)
        for (int av = 0; av + ah <= max_total_; ++av)
            for (int bh = 0; bh + av + ah <= max_total_; ++bh)
                for (int bv = 0; bv + bh + av + ah <= max_total_; ++bv)
                    s += (ah + av + bh + bv) * std::norm(amp(ah, av, bh, bv));
    return s / squared_norm();
}

FourModeState FourModeState::input_photon(const PolarizationQubit& q, int max_total) {
    FourModeState s(max_total);
    s.set_amp(1, 0, 0, 0, q.c_h);
    s.set_amp(0, 1, 0, 0, q.c_v);
    return s;
}

FourModeState beam_splitter_oracle(const FourModeState& input, const BeamSplitterSpec& bs) {
    const double t = std::sqrt(1.0 - bs.reflectivity);
    const double r = std::sqrt(bs.reflectivity);
    const int mt = input.max_total();
    FourModeState out(mt);

    const auto lf = log_factorials(mt);
    // substitute a^dag -> t a^dag + r b^dag and b^dag -> -r a^dag + t b^dag in
    // the creation-operator monomial of each occupied basis tuple
    for (int ah = 0; ah <= mt; ++ah) {
        for (int av = 0; av + ah <= mt; ++av) {
            for (int bh = 0; bh + av + ah <= mt; ++bh) {
                for (int bv = 0; bv + bh + av + ah <= mt; ++bv) {
                    cplx amp_in = input.amp(ah, av, bh, bv);
                    if (amp_in == cplx(0.0, 0.0)) continue;
                    // binomial expansion per operator power; i counts the a^dag
                    // picks from the a-substitution, j from the b-substitution
                    for (int ih = 0; ih <= ah; ++ih)
                        for (int jh = 0; jh <= bh; ++jh)
                            for (int iv = 0; iv <= av; ++iv)
                                for (int jv = 0; jv <= bv; ++jv) {
                                    int oah = ih + jh, obh = ah - ih + bh - jh;
                                    int oav = iv + jv, obv = av - iv + bv - jv;
                                    double log_mag =
                                        lf[ah] - lf[ih] - lf[ah - ih] + lf[bh] - lf[jh] -
                                        lf[bh - jh] + lf[av] - lf[iv] - lf[av - iv] + lf[bv] -
                                        lf[jv] - lf[bv - jv] +
                                        0.5 * (lf[oah] + lf[obh] + lf[oav] + lf[obv] - lf[ah] -
                                               lf[av] - lf[bh] - lf[bv]);
                                    double coeff = std::exp(log_mag) * std::pow(t, ih + iv) *
                                                   std::pow(r, ah - ih + av - iv) *
                                                   std::pow(-r, jh + jv) *
                                                   std::pow(t, bh - jh + bv - jv);
                                    cplx cur = out.amp(oah, oav, obh, obv);
                                    out.set_amp(oah, oav, obh, obv, cur + coeff * amp_in);
                                }
                }
            }
        }
    }
    return out;
}

}  // namespace polclone
