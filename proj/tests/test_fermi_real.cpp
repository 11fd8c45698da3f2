#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "spectra/errors.hpp"
#include "spectra/fermi_real.hpp"

using namespace spectra;
using namespace spectra::testing;

namespace {
Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

double line_dist(double a, double b) {   // torus distance
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}
} // namespace

TEST_CASE("samples of the zero level set lie on the diagonal lines") {
    FermiSample s = fermi_sample(2, 0.0, 40, 1);
    REQUIRE(s.points.size() == 40);
    for (size_t i = 0; i < s.points.size(); ++i) {
        CHECK(s.residuals[i] < 1e-12);
        const double t1 = s.points[i][0], t2 = s.points[i][1];
        const bool on_lines = line_dist(t2, 0.5 - t1) < 1e-9 || line_dist(t2, 0.5 + t1) < 1e-9;
        CHECK(on_lines);
    }
}

TEST_CASE("extreme level sets collapse to a point") {
    FermiSample top = fermi_sample(2, 4.0, 10, 1);
    REQUIRE(top.points.size() == 1);
    CHECK(top.points[0].norm() == 0.0);
    FermiSample bottom = fermi_sample(2, -4.0, 10, 1);
    REQUIRE(bottom.points.size() == 1);
    CHECK((bottom.points[0] - vec2(0.5, 0.5)).norm() == 0.0);
    CHECK_THROWS_AS(fermi_sample(2, 4.5, 10, 1), EmptySurface);
}

TEST_CASE("samples satisfy the level equation at E = 2") {
    FermiSample s = fermi_sample(2, 2.0, 30, 7);
    REQUIRE(!s.points.empty());
    for (const auto& p : s.points)
        CHECK(std::abs(std::cos(2 * M_PI * p[0]) + std::cos(2 * M_PI * p[1]) - 1.0) < 1e-12);
}

TEST_CASE("critical points of the symbol on each level") {
    auto pts = singular_points(2, 4.0);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].norm() == 0.0);

    pts = singular_points(2, 0.0);
    REQUIRE(pts.size() == 2);     // (0, 1/2) and (1/2, 0)
    for (const auto& p : pts) CHECK(p.sum() == doctest::Approx(0.5));

    CHECK(singular_points(2, 1.0).empty());
    CHECK(singular_points(3, 2.0).size() == 3);
}

TEST_CASE("eigenvalue counting at a quasimomentum") {
    CHECK(counting_function(lat_z2(), vec2(0.3, 0.3), 0.0) == 1);
    CHECK(counting_function(lat_z2(), vec2(0.1, 0.1), 0.0) == 0);
    // near theta = 0 the shifted symbol values sit near {4, -2, 0, -2}
    CHECK(counting_function(lat_nc(), vec2(0.011, 0.017), 3.0) == 3);
}

TEST_CASE("ties at the level are refused") {
    // F(1/4, 0) = 2 exactly
    CHECK_THROWS_AS(counting_function(lat_z2(), vec2(0.25, 0.0), 2.0), TieAtLevel);
}

TEST_CASE("counting is invariant under dual translations") {
    Lattice lat = lat_nc();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::VectorXd theta = vec2(unif(rng), unif(rng));
        const double e = 4.0 * unif(rng) - 2.0;
        int base;
        try {
            base = counting_function(lat, theta, e);
        } catch (const TieAtLevel&) {
            continue;
        }
        for (int b = 0; b < lat.index(); ++b) {
            Eigen::VectorXd shifted = theta + lat.dual_rep(b);
            CHECK(counting_function(lat, shifted, e) == base);
        }
    }
}

TEST_CASE("generic points: trivial cell, even obstruction, typical density") {
    // N = 1: every sampled point away from the critical set is generic
    FermiSample s = fermi_sample(2, 1.3, 25, 3);
    for (const auto& p : s.points) CHECK(is_generic(lat_z2(), p, 1.3));

    // even lattice at E=0: the half-shift reflects the level set onto itself
    Lattice even = lat_checkerboard();
    FermiSample s0 = fermi_sample(2, 0.0, 25, 4);
    for (const auto& p : s0.points) CHECK_FALSE(is_generic(even, p, 0.0));

    // typical lattice: almost every point generic
    Lattice lat = lat_nc();
    FermiSample s1 = fermi_sample(2, 1.0, 200, 5);
    int generic = 0;
    for (const auto& p : s1.points) generic += is_generic(lat, p, 1.0) ? 1 : 0;
    CHECK(static_cast<double>(generic) / static_cast<double>(s1.points.size()) > 0.9);
}

TEST_CASE("half-shift flips the symbol sign") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd theta = vec2(unif(rng), unif(rng));
        Eigen::VectorXd shifted = theta + vec2(0.5, 0.5);
        CHECK(std::abs(f_symbol(shifted) + f_symbol(theta)) < 1e-12);
    }
}

TEST_CASE("certificates on the trivial cell at mid-spectrum") {
    BzCertificate cert = bz_certificate(lat_z2(), 0.0, 32, 9);
    CHECK(cert.method == CertificateMethod::parity_walk);
    CHECK(cert.count1 != cert.count2);
    CHECK(std::abs(cert.count1 - cert.count2) % 2 == 1);
    CHECK(((cert.count1 == 0 && cert.count2 == 1) || (cert.count1 == 1 && cert.count2 == 0)));
}

TEST_CASE("parity certificate on the divisible-but-odd lattice at E = 0") {
    BzCertificate cert = bz_certificate(lat_p3(), 0.0, 32, 10);
    CHECK(cert.method == CertificateMethod::parity_walk);
    CHECK(cert.count1 != cert.count2);
    CHECK(std::abs(cert.count1 - cert.count2) % 2 == 1);
}

TEST_CASE("gradient certificates away from the zero level") {
    for (double e : {-3.2, -1.0, 0.7, 2.4}) {
        BzCertificate cert = bz_certificate(lat_nc(), e, 32, 11);
        CHECK(cert.method == CertificateMethod::gradient_walk);
        CHECK(cert.count1 != cert.count2);
    }
}

TEST_CASE("even lattices and out-of-range energies are rejected") {
    CHECK_THROWS_AS(bz_certificate(lat_checkerboard(), 0.0, 8, 1), EvenLattice);
    CHECK_THROWS_AS(bz_certificate(lat_z2(), 4.0, 8, 1), OutOfRange);
    CHECK_THROWS_AS(bz_sweep(lat_checkerboard(), {0.0}, 8, 1), EvenLattice);
}

TEST_CASE("the even lattice count is pinned at N/2") {
    Lattice even = lat_checkerboard();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        Eigen::VectorXd theta = vec2(unif(rng), unif(rng));
        try {
            CHECK(counting_function(even, theta, 0.0) == 1);
            ++checked;
        } catch (const TieAtLevel&) {
        }
    }
}

TEST_CASE("sweep certifies a sample of interior energies") {
    BzSweepReport report = bz_sweep(lat_nc(), {-3.5, -1.0, 0.0, 0.5, 2.0}, 32, 14);
    CHECK(report.failures == 0);
    for (const auto& e : report.entries) CHECK(e.certified);
}
