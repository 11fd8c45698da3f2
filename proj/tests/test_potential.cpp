#include <doctest.h>

#include "helpers.hpp"
#include "spectra/errors.hpp"
#include "spectra/potential.hpp"

using namespace spectra;
using namespace spectra::testing;

TEST_CASE("potential binds values to the canonical cell") {
    Potential c(lat_z2(), {0.7});
    CHECK(c.value_at(Eigen::Vector2i(9, -4)) == 0.7);
    CHECK_THROWS_AS(Potential(lat_nc(), {1.0, 2.0}), LengthMismatch);
}

TEST_CASE("checkerboard profile on the even lattice") {
    Lattice lat = lat_checkerboard();
    Potential pot = direction_periodic(lat, Eigen::Vector2i(1, 1), 2, {-0.1, 0.1});
    CHECK(pot.value_at(Eigen::Vector2i(0, 0)) == -0.1);
    CHECK(pot.value_at(Eigen::Vector2i(1, 0)) == 0.1);
    CHECK(pot.value_at(Eigen::Vector2i(2, 1)) == 0.1);   // coordinate sum odd
}

TEST_CASE("p=3 profile on span{(1,1),(3,0)}") {
    Lattice lat = lat_p3();
    Potential pot = direction_periodic(lat, Eigen::Vector2i(1, -1), 3, {0.0, 3.0, 3.0});
    CHECK(pot.value_at(Eigen::Vector2i(0, 0)) == 0.0);
    CHECK(pot.value_at(Eigen::Vector2i(1, 0)) == 3.0);
    CHECK(pot.value_at(Eigen::Vector2i(2, 0)) == 3.0);
}

TEST_CASE("non-periodic profiles are rejected") {
    CHECK_THROWS_AS(direction_periodic(lat_nc(), Eigen::Vector2i(1, 1), 2, {0.0, 1.0}),
                    NotPeriodic);
}

TEST_CASE("profiles are Gamma-periodic") {
    std::mt19937_64 rng(7);
    Lattice lat = lat_p3();
    Potential pot = direction_periodic(lat, Eigen::Vector2i(1, -1), 3, {0.4, -1.0, 2.5});
    std::uniform_int_distribution<int> pick(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Vector2i n(pick(rng), pick(rng));
        for (int j = 0; j < 2; ++j) {
            Eigen::VectorXi shifted = n + lat.basis().col(j);
            CHECK(pot.value_at(shifted) == pot.value_at(n));
        }
    }
}

TEST_CASE("constant potential transforms to a single coefficient") {
    Potential pot(lat_nc(), {0.7, 0.7, 0.7, 0.7});
    FourierPotential vhat = FourierPotential::transform(pot);
    for (int b = 0; b < 4; ++b) {
        if (b == pot.lattice().zero_dual_index())
            CHECK(std::abs(vhat.coeff(b) - 0.7) < 1e-15);
        else
            CHECK(std::abs(vhat.coeff(b)) < 1e-15);
    }
}

TEST_CASE("checkerboard coefficients") {
    Lattice lat = lat_checkerboard();
    Potential pot = direction_periodic(lat, Eigen::Vector2i(1, 1), 2, {-0.1, 0.1});
    FourierPotential vhat = FourierPotential::transform(pot);
    const int zero = lat.zero_dual_index();
    const int half = 1 - zero;   // numerators (1,1) <-> (1/2,1/2)
    CHECK(std::abs(vhat.coeff(zero)) < 1e-15);
    CHECK(std::abs(vhat.coeff(half) - std::complex<double>(-0.1, 0.0)) < 1e-15);
}

TEST_CASE("transform round trip and conjugate symmetry") {
    std::mt19937_64 rng(20240812);
    for (int trial = 0; trial < 100; ++trial) {
        Lattice lat = random_lattice(rng, trial % 2 == 0 ? 2 : 3, 4);
        Potential pot(lat, random_values(rng, static_cast<size_t>(lat.index()), 2.0));
        FourierPotential vhat = FourierPotential::transform(pot);

        Potential back = vhat.inverse();
        double mean = 0;
        for (size_t i = 0; i < pot.values().size(); ++i) {
            CHECK(std::abs(back.values()[i] - pot.values()[i]) < 1e-12);
            mean += pot.values()[i];
        }
        mean /= static_cast<double>(pot.values().size());

        CHECK(std::abs(vhat.coeff(lat.zero_dual_index()).imag()) < 1e-14);
        CHECK(std::abs(vhat.coeff(lat.zero_dual_index()).real() - mean) < 1e-12);
        for (int b = 0; b < lat.index(); ++b) {
            const std::complex<double> mirrored = vhat.coeff(lat.dual_neg_index(b));
            CHECK(std::abs(std::conj(mirrored) - vhat.coeff(b)) < 1e-12);
        }
    }
}
