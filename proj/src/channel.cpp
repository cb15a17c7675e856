#include "precode/channel.hpp"

#include <cmath>
#include <string>

namespace precode {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<double, double> group_angle_bounds(int g, int n_groups, double delta) {
    if (g < 1 || g > n_groups) {
        throw ParamError("group_angle_bounds: group index " + std::to_string(g) +
                         " outside 1.." + std::to_string(n_groups));
    }
    if (!(delta > 0.0)) {
        throw ParamError("group_angle_bounds: delta must be > 0");
    }
    const double theta_min = -kPi + 2.0 * kPi * (g - 1) / n_groups;
    return {theta_min, theta_min + 2.0 * delta};
}

CMatrix correlation_root(const GroupGeometry& geom, int n_antennas,
                         int quad_points, AngleModel model) {
    if (quad_points < 64) {
        throw ParamError("correlation_root: quad_points must be >= 64");
    }
    if (!(geom.theta_max > geom.theta_min)) {
        throw ParamError("correlation_root: degenerate angle interval");
    }
    const int n = n_antennas;
    const double a = geom.theta_min;
    const double b = geom.theta_max;
    // Composite Simpson needs an even interval count (odd node count).
    const int nodes = quad_points | 1;
    const double h = (b - a) / (nodes - 1);

    // One value per antenna offset; Toeplitz and Hermitian by construction.
    std::vector<cplx> by_offset(n);
    for (int d = 0; d < n; ++d) {
        cplx acc = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double theta = a + h * i;
            double phase_arg;
            switch (model) {
                case AngleModel::Linear: phase_arg = theta; break;
                case AngleModel::Sin: phase_arg = std::sin(theta); break;
                default: phase_arg = 1.0; break;
            }
            const double p = 2.0 * kPi * geom.omega * d * phase_arg;
            cplx v(std::cos(p), std::sin(p));
            const double w =
                (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * v;
        }
        by_offset[d] = acc * (h / 3.0) / (b - a);
    }
    by_offset[0] = 1.0;  // integrand is identically 1 on the diagonal

    CMatrix out(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const int d = m - k;
            out(m, k) = d >= 0 ? by_offset[d] : std::conj(by_offset[-d]);
        }
    }
    return out;
}

CorrelationSet make_correlation_set(int n_antennas, int n_groups, double delta,
                                    double omega, int quad_points,
                                    AngleModel model, RootMode root_mode) {
    CorrelationSet set;
    set.n_antennas = n_antennas;
    set.root.reserve(n_groups);
    set.corr.reserve(n_groups);
    set.eig.reserve(n_groups);

    for (int g = 1; g <= n_groups; ++g) {
        auto [tmin, tmax] = group_angle_bounds(g, n_groups, delta);
        GroupGeometry geom{g, tmin, tmax, omega, delta};
        const CMatrix quad = correlation_root(geom, n_antennas, quad_points, model);

        if (root_mode == RootMode::HermitianSqrt) {
            // Quadrature matrix is the covariance; normalize to unit trace.
            CMatrix corr = quad / quad.trace().real();
            EigPair eig = hermitian_eig(corr);
            CMatrix root = eig.vectors *
                           eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                           eig.vectors.adjoint();
            set.root.push_back(std::move(root));
            set.corr.push_back(std::move(corr));
            set.eig.push_back(std::move(eig));
        } else {
            // Quadrature matrix is the root; scale so trace(R) = 1.
            CMatrix root = quad / quad.norm();
            CMatrix corr = root * root.adjoint();
            set.eig.push_back(hermitian_eig(corr));
            set.root.push_back(std::move(root));
            set.corr.push_back(std::move(corr));
        }
    }
    return set;
}

CorrelationSet correlation_set_from_roots(std::vector<CMatrix> roots) {
    CorrelationSet set;
    if (roots.empty()) throw ParamError("correlation_set_from_roots: no groups");
    set.n_antennas = static_cast<int>(roots.front().rows());
    for (const auto& r : roots) {
        CMatrix corr = r * r.adjoint();
        set.eig.push_back(hermitian_eig(corr));
        set.corr.push_back(std::move(corr));
    }
    set.root = std::move(roots);
    return set;
}

CMatrix sample_channel(const CorrelationSet& corr, int users_per_group,
                       RngStream& rng) {
    const int n = corr.n_antennas;
    const int g_count = corr.n_groups();
    CMatrix h(n, g_count * users_per_group);
    CVector nu(n);
    for (int g = 0; g < g_count; ++g) {
        for (int u = 0; u < users_per_group; ++u) {
            for (int m = 0; m < n; ++m) nu(m) = rng.cgauss();
            h.col(g * users_per_group + u) = corr.root[g] * nu;
        }
    }
    return h;
}

}  // namespace precode
