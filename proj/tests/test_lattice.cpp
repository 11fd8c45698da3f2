#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "spectra/errors.hpp"

using namespace spectra;
using namespace spectra::testing;

TEST_CASE("identity basis is the trivial quotient") {
    Lattice lat = lat_z2();
    CHECK(lat.index() == 1);
    CHECK(lat.primal_reps().size() == 1);
    CHECK(lat.primal_reps()[0] == Eigen::VectorXi::Zero(2));
    CHECK(lat.dual_numerators()[0] == Eigen::VectorXi::Zero(2));
}

TEST_CASE("dual representatives of span{(2,0),(1,2)}") {
    Lattice lat = lat_nc();
    CHECK(lat.index() == 4);
    // expected set mod Z^2: (0,0), (1/2,3/4), (0,1/2), (1/2,1/4) -> numerators over 4
    std::set<std::pair<int, int>> expected{{0, 0}, {2, 3}, {0, 2}, {2, 1}};
    std::set<std::pair<int, int>> got;
    for (const auto& m : lat.dual_numerators()) got.insert({m[0], m[1]});
    CHECK(got == expected);
}

TEST_CASE("checkerboard lattice cell and dual") {
    Lattice lat = lat_checkerboard();
    CHECK(lat.index() == 2);
    REQUIRE(lat.primal_reps().size() == 2);
    CHECK(lat.primal_reps()[0] == Eigen::Vector2i(0, 0));
    CHECK(lat.primal_reps()[1] == Eigen::Vector2i(1, 0));
    CHECK(lat.dual_numerators()[0] == Eigen::Vector2i(0, 0));
    CHECK(lat.dual_numerators()[1] == Eigen::Vector2i(1, 1));   // (1/2, 1/2)
}

TEST_CASE("construction rejects bad bases") {
    CHECK_THROWS_AS(Lattice{mat2(1, 2, 2, 4)}, SingularBasis);
    Eigen::MatrixXi rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(Lattice{rect}, DimensionMismatch);
}

TEST_CASE("reduction splits a point into representative plus lattice shift") {
    {
        auto [rep, shift] = lat_z2().reduce(Eigen::Vector2i(5, -3));
        CHECK(rep == Eigen::Vector2i(0, 0));
        CHECK(shift == Eigen::Vector2i(5, -3));
    }
    {
        auto [rep, shift] = lat_checkerboard().reduce(Eigen::Vector2i(1, 1));
        CHECK(rep == Eigen::Vector2i(0, 0));
        CHECK(shift == Eigen::Vector2i(1, 1));
    }
    {
        auto [rep, shift] = lat_nc().reduce(Eigen::Vector2i(3, 2));
        CHECK(rep == Eigen::Vector2i(0, 0));   // (3,2) = a1 + a2
        CHECK(shift == Eigen::Vector2i(3, 2));
    }
}

TEST_CASE("dual membership is an exact rational test") {
    CHECK(lat_z3().dual_contains({Rational(2), Rational(-1), Rational(7)}));
    CHECK_FALSE(lat_nc().dual_contains({Rational(1, 2), Rational(1, 2)}));
    CHECK(lat_p3().dual_contains({Rational(1, 3), Rational(-1, 3)}));
}

TEST_CASE("evenness") {
    CHECK(lat_checkerboard().is_even());
    CHECK_FALSE(lat_nc().is_even());
    CHECK_FALSE(lat_z2().is_even());
}

TEST_CASE("divisibility classification") {
    CHECK(lat_3z3().divisibility().divisible);
    CHECK_FALSE(lat_nc().divisibility().divisible);
    CHECK(lat_nc().divisibility().failing.has_value());

    DivisibilityResult d = lat_p3().divisibility();
    REQUIRE(d.divisible);
    bool found = false;
    for (const auto& w : d.witnesses)
        if (w.p == 3 && w.vector == RationalVector{Rational(1, 3), Rational(-1, 3)}) found = true;
    CHECK(found);
}

TEST_CASE("random lattices keep the exact dual pairing") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        Lattice lat = random_lattice(rng, d, 5);

        // <a_i, b_j> = delta_ij and N * dual basis is integer
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                Rational dot(0);
                for (int k = 0; k < d; ++k)
                    dot = dot + Rational(lat.basis()(k, i)) * lat.dual_basis_entry(k, j);
                CHECK(dot == Rational(i == j ? 1 : 0));
                Rational scaled = lat.dual_basis_entry(i, j) * Rational(lat.index());
                CHECK(scaled.is_integer());
            }
        }

        // representatives pairwise non-congruent, counts match N
        const auto& reps = lat.primal_reps();
        CHECK(static_cast<long long>(reps.size()) == lat.index());
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK_FALSE(lat.contains(Eigen::VectorXi(reps[i] - reps[j])));
        CHECK(static_cast<long long>(lat.dual_numerators().size()) == lat.index());

        // dual reps really lie in Gamma', and Gamma' contains Z^d
        for (int i = 0; i < lat.index(); ++i) CHECK(lat.dual_contains(lat.dual_rep_exact(i)));
        for (int axis = 0; axis < d; ++axis) {
            RationalVector e(static_cast<size_t>(d), Rational(0));
            e[static_cast<size_t>(axis)] = Rational(1);
            CHECK(lat.dual_contains(e));
        }

        // the two evenness tests agree (is_even throws on mismatch)
        lat.is_even();

        // a p=2 witness forces evenness
        DivisibilityResult div = lat.divisibility();
        for (const auto& w : div.witnesses)
            if (w.p == 2) CHECK(lat.is_even());
    }
}

TEST_CASE("rational floor and fractional part handle signs") {
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-6, 3) == Rational(-2));
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));   // sign normalizes into the numerator
    CHECK(Rational(5, 5).is_integer());
}

TEST_CASE("construction is deterministic") {
    Lattice a = lat_nc(), b = lat_nc();
    CHECK(a.primal_reps() == b.primal_reps());
    CHECK(a.dual_numerators() == b.dual_numerators());
}
