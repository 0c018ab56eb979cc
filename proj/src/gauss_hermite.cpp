#include "polclone/gauss_hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace polclone {

// Newton iteration on the orthonormal Hermite recurrence, largest roots first.
GaussHermiteRule gauss_hermite(int points) {
    if (points < 1 || points > 128) {
        throw std::invalid_argument("gauss_hermite: points must be in [1, 128]");
    }
    const int n = points;
    const double pim4 = 0.7511255444649425;  // pi^(-1/4)
    const int max_iter = 100;
    const double eps = 1e-14;

    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[n - 1];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[n - 2];
        } else {
            z = 2.0 * z - rule.nodes[n - i + 1];
        }
        double pp = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) break;
        }
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        rule.weights[n - 1 - i] = 2.0 / (pp * pp);
        rule.weights[i] = rule.weights[n - 1 - i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussHermiteRule gauss_hermite_scaled(int points, double gaussian_scale) {
    if (!(gaussian_scale > 0.0)) {
        throw std::invalid_argument("gauss_hermite_scaled: scale must be positive");
    }
    GaussHermiteRule rule = gauss_hermite(points);
    const double root = std::sqrt(gaussian_scale);
    for (int i = 0; i < points; ++i) {
        rule.weights[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]) / root;
        rule.nodes[i] /= root;
    }
    return rule;
}

}  // namespace polclone
