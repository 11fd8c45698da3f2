#include "spectra/band_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra {

size_t BandGrid::num_nodes() const {
    size_t n = 1;
    for (int r : resolution) n *= static_cast<size_t>(r);
    return n;
}

Eigen::VectorXd BandGrid::eta_at(size_t node) const {
    const int d = lattice.dim();
    Eigen::VectorXd eta(d);
    for (int axis = d - 1; axis >= 0; --axis) {
        const size_t r = static_cast<size_t>(resolution[axis]);
        eta[axis] = static_cast<double>(node % r) / static_cast<double>(r);
        node /= r;
    }
    return eta;
}

Eigen::VectorXd BandGrid::theta_at(size_t node) const {
    return lattice.dual_basis() * eta_at(node);
}

double band_lipschitz_bound(const Lattice& lat) {
    return 4.0 * std::numbers::pi * std::sqrt(static_cast<double>(lat.dim())) *
           lat.max_dual_basis_norm();
}

BandGrid compute_band_grid(const Lattice& lat, const Potential& pot,
                           const std::vector<int>& resolution) {
    if (static_cast<int>(resolution.size()) != lat.dim())
        throw DimensionMismatch("resolution list does not match lattice dimension");
    for (int r : resolution)
        if (r < 2) throw ValidationError("grid resolution must be >= 2 per axis");

    BandGrid grid{lat, pot, resolution, {}};
    const FourierPotential vhat = FourierPotential::transform(pot);
    const Eigen::MatrixXd dual = lat.dual_basis();
    const double bound = 2.0 * lat.dim() + pot.sup_norm() + 1e-9;
    grid.samples.reserve(grid.num_nodes());
    for (size_t node = 0; node < grid.num_nodes(); ++node) {
        Eigen::VectorXd theta = dual * grid.eta_at(node);
        std::vector<double> w = eigenvalues_sorted(assemble_plane_wave(lat, vhat, theta));
        if (std::abs(w.front()) > bound || std::abs(w.back()) > bound)
            throw std::logic_error("band sample escapes [-2d-||V||, 2d+||V||]");
        grid.samples.push_back(std::move(w));
    }
    return grid;
}

BandGrid compute_band_grid(const Lattice& lat, const Potential& pot, int resolution) {
    return compute_band_grid(lat, pot, std::vector<int>(static_cast<size_t>(lat.dim()), resolution));
}

double band_value(const Lattice& lat, const FourierPotential& vhat, int band,
                  const Eigen::VectorXd& eta) {
    Eigen::VectorXd theta = lat.dual_basis() * eta;
    return eigenvalues_sorted(assemble_plane_wave(lat, vhat, theta)).at(static_cast<size_t>(band));
}

std::pair<double, Eigen::VectorXd> refine_band_extremum(const Lattice& lat,
                                                        const FourierPotential& vhat, int band,
                                                        int direction, Eigen::VectorXd eta0,
                                                        double h0, double tol) {
    const int d = lat.dim();
    const double sign = direction >= 0 ? 1.0 : -1.0;
    double h = h0;
    double best = sign * band_value(lat, vhat, band, eta0);
    // nested subgrids: 9 points per axis spanning the one-cell neighborhood,
    // then shrink the cell 4x around the winner
    for (int level = 0; level < 60; ++level) {
        Eigen::VectorXd center = eta0;
        double level_best = best;
        Eigen::VectorXd level_eta = eta0;
        std::vector<int> idx(static_cast<size_t>(d), 0);
        while (true) {
            Eigen::VectorXd eta(d);
            for (int i = 0; i < d; ++i)
                eta[i] = center[i] + (idx[static_cast<size_t>(i)] - 4) * (h / 4.0);
            const double v = sign * band_value(lat, vhat, band, eta);
            if (v > level_best) {
                level_best = v;
                level_eta = eta;
            }
            int axis = 0;
            while (axis < d && ++idx[static_cast<size_t>(axis)] == 9) idx[static_cast<size_t>(axis++)] = 0;
            if (axis == d) break;
        }
        const double moved = level_best - best;
        best = level_best;
        eta0 = level_eta;
        h /= 4.0;
        if (level >= 2 && moved < tol) break;
    }
    return {sign * best, eta0};
}

BandSummary band_edges(const BandGrid& grid, bool refine) {
    const int nbands = grid.num_bands();
    BandSummary summary;
    summary.refined = refine;
    int min_res = grid.resolution.front();
    for (int r : grid.resolution) min_res = std::min(min_res, r);
    summary.grid_error_bound = band_lipschitz_bound(grid.lattice) / static_cast<double>(min_res);

    summary.edges.resize(static_cast<size_t>(nbands));
    std::vector<size_t> arglo(static_cast<size_t>(nbands), 0), arghi(static_cast<size_t>(nbands), 0);
    for (int j = 0; j < nbands; ++j) {
        BandEdge& e = summary.edges[static_cast<size_t>(j)];
        e.lo = e.hi = grid.samples[0][static_cast<size_t>(j)];
    }
    for (size_t node = 1; node < grid.samples.size(); ++node) {
        for (int j = 0; j < nbands; ++j) {
            const double v = grid.samples[node][static_cast<size_t>(j)];
            BandEdge& e = summary.edges[static_cast<size_t>(j)];
            if (v < e.lo) { e.lo = v; arglo[static_cast<size_t>(j)] = node; }
            if (v > e.hi) { e.hi = v; arghi[static_cast<size_t>(j)] = node; }
        }
    }

    const FourierPotential vhat = FourierPotential::transform(grid.potential);
    const Eigen::MatrixXd dual = grid.lattice.dual_basis();
    const double h0 = 1.0 / static_cast<double>(min_res);
    for (int j = 0; j < nbands; ++j) {
        BandEdge& e = summary.edges[static_cast<size_t>(j)];
        e.argmin_eta = grid.eta_at(arglo[static_cast<size_t>(j)]);
        e.argmax_eta = grid.eta_at(arghi[static_cast<size_t>(j)]);
        if (refine) {
            auto [lo, eta_lo] =
                refine_band_extremum(grid.lattice, vhat, j, -1, e.argmin_eta, h0);
            auto [hi, eta_hi] =
                refine_band_extremum(grid.lattice, vhat, j, +1, e.argmax_eta, h0);
            e.lo = lo;
            e.hi = hi;
            e.argmin_eta = eta_lo;
            e.argmax_eta = eta_hi;
        }
        e.argmin_theta = dual * e.argmin_eta;
        e.argmax_theta = dual * e.argmax_eta;
    }

    summary.gaps = spectral_gaps(summary, summary.gap_tol);
    summary.is_interval = summary.gaps.empty();
    return summary;
}

std::vector<std::pair<double, double>> spectral_gaps(const BandSummary& summary, double tol) {
    if (tol <= 0) throw ValidationError("gap tolerance must be positive");
    double threshold = tol;
    if (!summary.refined) threshold = std::max(threshold, summary.grid_error_bound);

    std::vector<std::pair<double, double>> bands;
    bands.reserve(summary.edges.size());
    for (const BandEdge& e : summary.edges) bands.emplace_back(e.lo, e.hi);
    std::sort(bands.begin(), bands.end());

    std::vector<std::pair<double, double>> gaps;
    double cover = bands.front().second;
    for (size_t i = 1; i < bands.size(); ++i) {
        if (bands[i].first > cover + threshold)
            gaps.emplace_back(cover, bands[i].first);
        cover = std::max(cover, bands[i].second);
    }
    return gaps;
}

double flat_band_check(const BandSummary& summary) {
    double w = summary.edges.front().width();
    for (const BandEdge& e : summary.edges) w = std::min(w, e.width());
    return w;
}

} // namespace spectra
