#pragma once

// Reference computations written directly from the defining formulas. None of
// these call into the library code paths they are used to check.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sihdr/image.hpp"

namespace sihdr::test {

/// Pointwise forward-difference weight (|d log(L+eps)|^alpha + eps)^-1;
/// horizontal when `horizontal`, zero gradient past the border.
double scalar_weight(const Plane& lum, std::size_t x, std::size_t y, bool horizontal, double alpha, double eps);

/// sum_p (u_p - L_p)^2 + lambda * sum_p [ax_p (du/dx)_p^2 + ay_p (du/dy)_p^2]
double wls_energy(const Plane& u, const Plane& target, const Plane& ax, const Plane& ay, double lambda);

/// Analytic gradient of wls_energy, written edge by edge.
Plane wls_energy_gradient(const Plane& u, const Plane& target, const Plane& ax, const Plane& ay, double lambda);

/// Half the Hessian of wls_energy, assembled as a dense matrix.
Eigen::MatrixXd dense_wls_matrix(const Plane& ax, const Plane& ay, double lambda);

/// Dense Cholesky solve of the WLS normal equations.
Plane dense_wls_solve(const Plane& target, const Plane& ax, const Plane& ay, double lambda);

/// GMSD computed with explicit 2x2 mean and 3x3 Prewitt convolutions over a
/// zero-padded raster (no separable shortcuts).
double gmsd_reference(const Plane& a, const Plane& b);

/// Truncated Gaussian blur with replicate borders.
Plane gaussian_blur(const Plane& p, double sigma, int radius);

struct DecodedRgbe {
    std::string header; // everything up to and including the resolution line
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::array<double, 3>> pixels;
};

/// Minimal flat-scanline Radiance reader: value = m * 2^(e-128) / 256.
DecodedRgbe decode_rgbe(std::span<const std::uint8_t> bytes);

double max_abs_diff(const Plane& a, const Plane& b);

} // namespace sihdr::test
