#pragma once

#include <utility>
#include <vector>

#include "precode/linalg.hpp"
#include "precode/rng.hpp"

namespace precode {

// Phase term used inside the angular power integral.
enum class AngleModel {
    Linear,     // exp(j 2 pi omega (m-n) theta)
    Sin,        // exp(j 2 pi omega (m-n) sin(theta))
    LiteralEq2  // exp(j 2 pi omega (m-n)), no theta dependence
};

// How the quadrature matrix maps to the sampling root.
enum class RootMode {
    HermitianSqrt,  // quadrature matrix is the covariance; root = its PSD sqrt
    Literal         // quadrature matrix (rescaled) is the root itself
};

struct GroupGeometry {
    int group_index = 1;  // 1-based
    double theta_min = 0.0;
    double theta_max = 0.0;
    double omega = 0.5;   // antenna spacing in wavelengths
    double delta = 0.0;   // angular spread, radians; theta_max - theta_min = 2*delta
};

// Per-group correlation roots, covariances and their eigendecompositions.
// All K-bar terminals of a group share the group covariance.
struct CorrelationSet {
    int n_antennas = 0;
    std::vector<CMatrix> root;  // R~_g, N x N
    std::vector<CMatrix> corr;  // R_g = R~_g R~_g^H
    std::vector<EigPair> eig;   // of R_g, descending

    int n_groups() const { return static_cast<int>(root.size()); }
};

// theta_min = -pi + 2 pi (g-1)/G, theta_max = theta_min + 2*delta.
std::pair<double, double> group_angle_bounds(int g, int n_groups, double delta);

// Unit-diagonal Hermitian Toeplitz matrix with entries
// (1/(theta_max-theta_min)) * integral of the AngleModel phase term,
// evaluated by composite Simpson quadrature with quad_points nodes
// (rounded up to an odd count).
CMatrix correlation_root(const GroupGeometry& geom, int n_antennas,
                         int quad_points = 512,
                         AngleModel model = AngleModel::Linear);

// Builds the G-group one-ring correlation set for the standard geometry.
// Covariances are normalized to unit trace (unit average channel energy per
// terminal).
CorrelationSet make_correlation_set(int n_antennas, int n_groups, double delta,
                                    double omega, int quad_points = 512,
                                    AngleModel model = AngleModel::Linear,
                                    RootMode root_mode = RootMode::HermitianSqrt);

// Assembles a CorrelationSet from explicit roots (tests, synthetic scenarios).
CorrelationSet correlation_set_from_roots(std::vector<CMatrix> roots);

// One block-fading realization: H is N x K with group-major columns,
// h_k = R~_{g(k)} nu_k, nu_k ~ CN(0, I_N).
CMatrix sample_channel(const CorrelationSet& corr, int users_per_group,
                       RngStream& rng);

}  // namespace precode
