#pragma once

#include <vector>

namespace polclone {

/// Nodes and weights of the n-point Gauss-Hermite rule for weight e^(-x^2):
/// integral of e^(-x^2) p(x) dx = sum w_i p(x_i), exact for deg(p) <= 2n-1.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int points);

/// Rule for integrating a function f(t) = e^(-s t^2) p(t) directly, including
/// its own Gaussian factor: integral f(t) dt = sum W_i f(t_i), with
/// t_i = x_i / sqrt(s) and W_i = w_i e^(x_i^2) / sqrt(s).
GaussHermiteRule gauss_hermite_scaled(int points, double gaussian_scale);

}  // namespace polclone
