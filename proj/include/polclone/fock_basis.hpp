#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace polclone {

using cplx = std::complex<double>;

enum class Mode { H, V };

/// Photon occupation of the two polarization modes. The horizontal count is
/// always the first slot, |n_h; n_v>.
struct Occupation {
    int n_h = 0;
    int n_v = 0;
    int total() const noexcept { return n_h + n_v; }
    friend bool operator==(const Occupation&, const Occupation&) = default;
};

/// Truncated two-mode Fock basis keeping all states with n_h + n_v <= cutoff.
///
/// States are ordered by total photon number, then by n_h ascending, so each
/// N-photon sector occupies a contiguous index range [sector_begin(N),
/// sector_begin(N) + sector_size(N)).
class FockBasis {
public:
    explicit FockBasis(int cutoff_total) : cutoff_(cutoff_total) {
        if (cutoff_total < 1) {
            throw std::invalid_argument("FockBasis: cutoff_total must be >= 1");
        }
    }

    int cutoff() const noexcept { return cutoff_; }

    int dimension() const noexcept { return (cutoff_ + 1) * (cutoff_ + 2) / 2; }

    bool contains(int n_h, int n_v) const noexcept {
        return n_h >= 0 && n_v >= 0 && n_h + n_v <= cutoff_;
    }

    int index_of(int n_h, int n_v) const {
        if (!contains(n_h, n_v)) {
            throw std::out_of_range("FockBasis::index_of: occupation outside basis");
        }
        int n = n_h + n_v;
        return n * (n + 1) / 2 + n_h;
    }

    Occupation occupation(int index) const {
        if (index < 0 || index >= dimension()) {
            throw std::out_of_range("FockBasis::occupation: index outside basis");
        }
        // invert the triangular offset: largest n with n(n+1)/2 <= index
        int n = static_cast<int>((std::sqrt(8.0 * index + 1.0) - 1.0) / 2.0);
        while (n * (n + 1) / 2 > index) --n;
        while ((n + 1) * (n + 2) / 2 <= index) ++n;
        int n_h = index - n * (n + 1) / 2;
        return {n_h, n - n_h};
    }

    int total_photons(int index) const { return occupation(index).total(); }

    /// First flat index of the N-photon sector.
    int sector_begin(int n_total) const {
        if (n_total < 0 || n_total > cutoff_) {
            throw std::out_of_range("FockBasis::sector_begin: sector outside basis");
        }
        return n_total * (n_total + 1) / 2;
    }

    /// Number of states with n_h + n_v == n_total.
    int sector_size(int n_total) const {
        if (n_total < 0 || n_total > cutoff_) {
            throw std::out_of_range("FockBasis::sector_size: sector outside basis");
        }
        return n_total + 1;
    }

    friend bool operator==(const FockBasis&, const FockBasis&) = default;

private:
    int cutoff_;
};

inline void require_same_basis(const FockBasis& a, const FockBasis& b, const char* where) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(where) + ": basis mismatch");
    }
}

}  // namespace polclone
