#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sihdr/image.hpp"

namespace sihdr {

/// Per-pixel gradient penalties of the weighted-least-squares smoother.
///
/// ax(x,y) weights the edge between (x,y) and (x+1,y); ay(x,y) the edge between
/// (x,y) and (x,y+1). Pixels on the last column (row) have no such edge and
/// carry the zero-gradient weight 1/eps, which the system assembly ignores.
struct SmoothnessWeights {
    Plane ax;
    Plane ay;
    double alpha = 1.2;
    double eps = 1e-4;
};

/// Symmetric positive-definite system (Id + lambda * A) u = rhs, with A the
/// weighted 5-point graph Laplacian under Neumann boundaries.
///
/// Stored as a stencil: `east[i]` and `south[i]` hold lambda times the edge
/// weight to the right and lower neighbour (zero on the border), `diagonal[i]`
/// is 1 plus the sum of the incident edge weights.
class SparseSystem {
public:
    SparseSystem() = default;
    SparseSystem(std::size_t width, std::size_t height, std::vector<double> diagonal, std::vector<double> east,
                 std::vector<double> south, std::vector<double> rhs);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t dimension() const noexcept { return diagonal_.size(); }

    std::span<const double> diagonal() const noexcept { return diagonal_; }
    std::span<const double> east() const noexcept { return east_; }
    std::span<const double> south() const noexcept { return south_; }
    std::span<const double> rhs() const noexcept { return rhs_; }

    /// Matrix entry (row, col); zero outside the stencil.
    double coefficient(std::size_t row, std::size_t col) const noexcept;

    /// out = M * in.
    void apply(std::span<const double> in, std::span<double> out) const;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> diagonal_;
    std::vector<double> east_;
    std::vector<double> south_;
    std::vector<double> rhs_;
};

struct SolveResult {
    Plane solution;
    double relative_residual = 0.0;
    int iterations = 0;
};

struct Decomposition {
    Plane luminance;     // L
    Plane illumination;  // I
    Plane reflectance;   // R = log L - log I
    Plane brightness;    // BM
    Plane darkness;      // DM
    PlaneStats stats;    // mean of BM, max of I
};

SmoothnessWeights smoothness_weights(const Plane& luminance, double alpha, double eps);

SparseSystem build_system(const Plane& luminance, const SmoothnessWeights& weights, double lambda);

/// Jacobi-preconditioned conjugate gradient. Starts from the right-hand side and
/// stops once ||rhs - M u|| / ||rhs|| <= tol. Throws SolverFailure otherwise.
/// The returned solution is floored at kLuminanceFloor.
SolveResult solve_wls(const SparseSystem& system, double tol, int max_iter);

Decomposition retinex_decompose(const Plane& luminance, const Plane& illumination);

/// Convenience: weights -> system -> solve.
SolveResult wls_filter(const Plane& luminance, double lambda, double alpha, double eps, double tol, int max_iter);

} // namespace sihdr
