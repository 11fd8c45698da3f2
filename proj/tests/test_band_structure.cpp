#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "spectra/band_structure.hpp"
#include "spectra/errors.hpp"

using namespace spectra;
using namespace spectra::testing;

namespace {
Potential zero_potential(const Lattice& lat) {
    return Potential(lat, std::vector<double>(static_cast<size_t>(lat.index()), 0.0));
}

Potential checkerboard(const Lattice& lat, double eps) {
    return direction_periodic(lat, Eigen::Vector2i(1, 1), 2, {-eps, eps});
}
} // namespace

TEST_CASE("free band on the unit lattice spans [-4, 4]") {
    Lattice lat = lat_z2();
    BandGrid grid = compute_band_grid(lat, zero_potential(lat), 64);
    BandSummary summary = band_edges(grid, true);
    REQUIRE(summary.edges.size() == 1);
    CHECK(std::abs(summary.edges[0].lo + 4.0) < 1e-9);
    CHECK(std::abs(summary.edges[0].hi - 4.0) < 1e-9);
    CHECK(summary.gaps.empty());
    CHECK(summary.is_interval);
    CHECK(flat_band_check(summary) == doctest::Approx(8.0));
}

TEST_CASE("checkerboard perturbation opens exactly the (-eps, eps) gap") {
    Lattice lat = lat_checkerboard();
    Potential pot = checkerboard(lat, 0.1);
    BandGrid grid = compute_band_grid(lat, pot, 128);

    // eta = (1/2, 0) maps to theta = (1/4, 1/4); spot-check that node
    size_t node = 64 * 128 + 0;
    CHECK((grid.theta_at(node) - Eigen::Vector2d(0.25, 0.25)).norm() < 1e-12);
    CHECK(grid.samples[node][0] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(grid.samples[node][1] == doctest::Approx(0.1).epsilon(1e-12));

    BandSummary summary = band_edges(grid, true);
    CHECK(std::abs(summary.edges[0].hi + 0.1) < 1e-6);
    CHECK(std::abs(summary.edges[1].lo - 0.1) < 1e-6);
    REQUIRE(summary.gaps.size() == 1);
    CHECK(std::abs(summary.gaps[0].first + 0.1) < 1e-6);
    CHECK(std::abs(summary.gaps[0].second - 0.1) < 1e-6);
    CHECK_FALSE(summary.is_interval);

    // band width has no closed form asserted anywhere; the numeric value is
    // sqrt(16 + eps^2) - eps for this model
    CHECK(flat_band_check(summary) == doctest::Approx(std::sqrt(16.01) - 0.1).epsilon(1e-6));
}

TEST_CASE("p=3 potential pins the first band's upper edge at V0") {
    Lattice lat = lat_p3();
    Potential pot = direction_periodic(lat, Eigen::Vector2i(1, -1), 3, {0.0, 3.0, 3.0});
    BandGrid grid = compute_band_grid(lat, pot, 128);
    BandSummary summary = band_edges(grid, true);
    REQUIRE(summary.edges.size() == 3);
    CHECK(std::abs(summary.edges[0].hi - 0.0) < 1e-8);
}

TEST_CASE("free spectrum is one interval for a nontrivial cell") {
    Lattice lat = lat_nc();
    BandGrid grid = compute_band_grid(lat, zero_potential(lat), 96);
    BandSummary summary = band_edges(grid, true);
    double lo = summary.edges[0].lo, hi = summary.edges[0].hi;
    for (const auto& e : summary.edges) {
        lo = std::min(lo, e.lo);
        hi = std::max(hi, e.hi);
    }
    CHECK(std::abs(lo + 4.0) < 1e-6);
    CHECK(std::abs(hi - 4.0) < 1e-6);
    CHECK(summary.gaps.empty());
}

TEST_CASE("free samples equal the sorted symbol multiset") {
    Lattice lat = lat_nc();
    BandGrid grid = compute_band_grid(lat, zero_potential(lat), 8);
    for (size_t node = 0; node < grid.num_nodes(); ++node) {
        Eigen::VectorXd theta = grid.theta_at(node);
        std::vector<double> expect;
        for (int b = 0; b < lat.index(); ++b)
            expect.push_back(f_symbol(Eigen::VectorXd(theta + lat.dual_rep(b))));
        std::sort(expect.begin(), expect.end());
        for (size_t j = 0; j < expect.size(); ++j)
            CHECK(std::abs(grid.samples[node][j] - expect[j]) < 1e-12);
    }
}

TEST_CASE("edges at doubled resolution move less than the Lipschitz budget") {
    std::mt19937_64 rng(11);
    Lattice lat = lat_nc();
    Potential pot(lat, random_values(rng, 4, 0.5));
    const int r = 24;
    BandSummary coarse = band_edges(compute_band_grid(lat, pot, r), false);
    BandSummary fine = band_edges(compute_band_grid(lat, pot, 2 * r), false);
    const double budget = band_lipschitz_bound(lat) / r;
    for (size_t j = 0; j < coarse.edges.size(); ++j) {
        CHECK(std::abs(coarse.edges[j].lo - fine.edges[j].lo) <= budget);
        CHECK(std::abs(coarse.edges[j].hi - fine.edges[j].hi) <= budget);
    }
}

TEST_CASE("samples stay inside the a-priori spectral window") {
    std::mt19937_64 rng(12);
    Lattice lat = lat_p3();
    Potential pot(lat, random_values(rng, 3, 1.5));
    BandGrid grid = compute_band_grid(lat, pot, 16);
    const double bound = 2.0 * lat.dim() + pot.sup_norm() + 1e-9;
    for (const auto& node : grid.samples)
        for (double v : node) CHECK(std::abs(v) <= bound);
}

TEST_CASE("gap detection sees only the union of bands") {
    Lattice lat = lat_checkerboard();
    BandGrid grid = compute_band_grid(lat, checkerboard(lat, 0.1), 64);
    BandSummary summary = band_edges(grid, true);
    BandSummary relabeled = summary;
    std::swap(relabeled.edges[0], relabeled.edges[1]);
    CHECK(spectral_gaps(relabeled, 1e-6) == spectral_gaps(summary, 1e-6));
}

TEST_CASE("per-axis resolutions tile the domain as requested") {
    Lattice lat = lat_nc();
    BandGrid grid = compute_band_grid(lat, zero_potential(lat), std::vector<int>{4, 6});
    CHECK(grid.num_nodes() == 24);
    // last node decodes to eta = (3/4, 5/6)
    Eigen::VectorXd eta = grid.eta_at(23);
    CHECK(eta[0] == doctest::Approx(0.75));
    CHECK(eta[1] == doctest::Approx(5.0 / 6.0));
    CHECK_THROWS_AS(compute_band_grid(lat, zero_potential(lat), std::vector<int>{4}),
                    DimensionMismatch);
    CHECK_THROWS_AS(compute_band_grid(lat, zero_potential(lat), 1), ValidationError);
}

TEST_CASE("three-dimensional grids behave like the planar ones") {
    std::mt19937_64 rng(23);
    Lattice lat = random_lattice(rng, 3, 2, 8);
    Potential pot(lat, random_values(rng, static_cast<size_t>(lat.index()), 0.3));
    BandGrid grid = compute_band_grid(lat, pot, 6);
    BandSummary summary = band_edges(grid, true);
    CHECK(static_cast<long long>(summary.edges.size()) == lat.index());
    for (const auto& e : summary.edges) {
        CHECK(e.lo <= e.hi);
        CHECK(e.hi <= 6.0 + pot.sup_norm() + 1e-9);
        CHECK(e.lo >= -6.0 - pot.sup_norm() - 1e-9);
    }
    CHECK(flat_band_check(summary) > 0.0);
}

TEST_CASE("unrefined gap reports are gated by the grid error bound") {
    // coarse sampling on the free operator must not fabricate gaps
    Lattice lat = lat_nc();
    BandGrid grid = compute_band_grid(lat, zero_potential(lat), 6);
    BandSummary summary = band_edges(grid, false);
    CHECK(spectral_gaps(summary, 1e-6).empty());
}
