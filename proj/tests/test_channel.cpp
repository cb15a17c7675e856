#include <doctest.h>

#include <cmath>

#include "precode/channel.hpp"

using namespace precode;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDelta10 = 10.0 * kPi / 180.0;
}  // namespace

TEST_CASE("group_angle_bounds follows the G-sector layout") {
    auto [tmin, tmax] = group_angle_bounds(1, 4, kDelta10);
    CHECK(tmin == doctest::Approx(-kPi));
    CHECK(tmax == doctest::Approx(-kPi + 2.0 * kDelta10));

    auto [tmin3, tmax3] = group_angle_bounds(3, 4, kDelta10);
    CHECK(tmin3 == doctest::Approx(0.0));
    CHECK(tmax3 - tmin3 == doctest::Approx(2.0 * kDelta10));

    CHECK_THROWS_AS(group_angle_bounds(0, 4, kDelta10), ParamError);
    CHECK_THROWS_AS(group_angle_bounds(5, 4, kDelta10), ParamError);
}

TEST_CASE("correlation_root: unit diagonal, Hermitian Toeplitz") {
    GroupGeometry geom{1, -kPi, -kPi + 2 * kDelta10, 0.5, kDelta10};
    const CMatrix r = correlation_root(geom, 8);

    for (int i = 0; i < 8; ++i) CHECK(r(i, i) == cplx(1.0, 0.0));
    CHECK((r - r.adjoint()).norm() <= 1e-12 * r.norm());
    for (int i = 1; i < 8; ++i) {
        for (int j = 1; j < 8; ++j) {
            CHECK(std::abs(r(i, j) - r(i - 1, j - 1)) <= 1e-12);
        }
    }
}

TEST_CASE("correlation_root: omega = 0 gives the all-ones matrix") {
    GroupGeometry geom{1, 0.1, 0.4, 0.0, 0.15};
    const CMatrix r = correlation_root(geom, 5);
    CHECK((r - CMatrix::Constant(5, 5, 1.0)).norm() <= 1e-12);
}

TEST_CASE("correlation_root: quadrature converges (10x refinement oracle)") {
    // Pinned case: group 1, N=8, omega=0.5, delta=10 degrees.
    GroupGeometry geom{1, -kPi, -kPi + 2 * kDelta10, 0.5, kDelta10};
    const CMatrix coarse = correlation_root(geom, 8, 512);
    const CMatrix fine = correlation_root(geom, 8, 5120);
    CHECK((coarse - fine).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("make_correlation_set: unit trace, PSD, descending spectrum") {
    const auto set = make_correlation_set(16, 4, kDelta10, 0.5);
    REQUIRE(set.n_groups() == 4);
    for (int g = 0; g < 4; ++g) {
        CHECK(set.corr[g].trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        const auto& eig = set.eig[g];
        for (int i = 0; i < eig.values.size(); ++i) {
            CHECK(eig.values(i) >= 0.0);
            if (i) CHECK(eig.values(i) <= eig.values(i - 1) + 1e-15);
        }
        // root * root^H reproduces the covariance in both root modes.
        CHECK((set.root[g] * set.root[g].adjoint() - set.corr[g]).norm() <=
              1e-10);
    }
}

TEST_CASE("sample_channel: covariance converges over 1e5 samples") {
    const auto set = make_correlation_set(8, 2, kDelta10, 0.5);
    const int samples = 100000;
    RngStream rng(1);
    CMatrix acc = CMatrix::Zero(8, 8);
    double energy = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CMatrix h = sample_channel(set, 1, rng);  // 2 users, 1 per group
        acc += h.col(0) * h.col(0).adjoint();
        energy += h.col(0).squaredNorm();
    }
    acc /= samples;
    const CMatrix& r = set.corr[0];
    // Entry-wise 3-standard-error band: SE of [hh^H]_{mn} is
    // sqrt(R_mm R_nn / samples) for complex Gaussians.
    for (int m = 0; m < 8; ++m) {
        for (int n = 0; n < 8; ++n) {
            const double se =
                std::sqrt(r(m, m).real() * r(n, n).real() / samples);
            CHECK(std::abs(acc(m, n) - r(m, n)) <= 3.0 * se + 1e-12);
        }
    }
    // Unit average channel energy per terminal (trace normalization).
    CHECK(energy / samples == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sample_channel is deterministic in the stream") {
    const auto set = make_correlation_set(8, 2, kDelta10, 0.5);
    RngStream a = RngStream::substream(7, 1, 42);
    RngStream b = RngStream::substream(7, 1, 42);
    const CMatrix ha = sample_channel(set, 3, a);
    const CMatrix hb = sample_channel(set, 3, b);
    CHECK((ha - hb).norm() == 0.0);
    RngStream c = RngStream::substream(7, 1, 43);
    CHECK((sample_channel(set, 3, c) - ha).norm() > 0.0);
}

TEST_CASE("literal root mode keeps trace(R) = 1") {
    const auto set =
        make_correlation_set(8, 2, kDelta10, 0.5, 512, AngleModel::Linear,
                             RootMode::Literal);
    for (int g = 0; g < 2; ++g) {
        CHECK(set.corr[g].trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}
