#ifndef SPECTRA_BAND_STRUCTURE_HPP
#define SPECTRA_BAND_STRUCTURE_HPP

#include <utility>
#include <vector>

#include "spectra/floquet.hpp"

namespace spectra {

/// Band functions sampled over the dual fundamental domain Omega',
/// parametrized by eta in [0,1)^d through theta = dual_basis * eta.
/// Node order is row-major in the eta indices.
struct BandGrid {
    Lattice lattice;
    Potential potential;
    std::vector<int> resolution;               // per-axis node counts
    std::vector<std::vector<double>> samples;  // per node, N ascending eigenvalues

    size_t num_nodes() const;
    Eigen::VectorXd eta_at(size_t node) const;
    Eigen::VectorXd theta_at(size_t node) const;
    int num_bands() const { return static_cast<int>(lattice.index()); }
};

BandGrid compute_band_grid(const Lattice& lat, const Potential& pot,
                           const std::vector<int>& resolution);
BandGrid compute_band_grid(const Lattice& lat, const Potential& pot, int resolution);

struct BandEdge {
    double lo = 0.0, hi = 0.0;
    Eigen::VectorXd argmin_eta, argmax_eta;
    Eigen::VectorXd argmin_theta, argmax_theta;
    double width() const { return hi - lo; }
};

struct BandSummary {
    std::vector<BandEdge> edges;                    // one per band, ascending j
    std::vector<std::pair<double, double>> gaps;    // open intervals
    bool is_interval = true;
    bool refined = false;
    double gap_tol = 1e-6;
    double grid_error_bound = 0.0;                  // Lipschitz bound C / min resolution
};

/// Per-band extrema over the grid. With refine, each extremum is polished by
/// nested 4x-finer subgrids in a one-cell neighborhood until the edge value
/// moves by less than 1e-9.
BandSummary band_edges(const BandGrid& grid, bool refine);

/// Maximal open intervals not covered by the (tolerance-merged) band union.
/// Unrefined summaries additionally require a gap to exceed the grid error
/// bound, so sampling artifacts are not reported as spectrum gaps.
std::vector<std::pair<double, double>> spectral_gaps(const BandSummary& summary, double tol);

/// Smallest band width min_j (E_j^+ - E_j^-).
double flat_band_check(const BandSummary& summary);

/// Lipschitz constant of the band functions in eta coordinates:
/// 4 pi sqrt(d) max_i ||b_i||.
double band_lipschitz_bound(const Lattice& lat);

/// Single-band evaluation used by refinement and the level-set probe.
double band_value(const Lattice& lat, const FourierPotential& vhat, int band,
                  const Eigen::VectorXd& eta);

/// Polish one band extremum (direction = +1 maximize, -1 minimize) starting
/// from eta0 with initial half-width h0. Returns the refined value and eta.
std::pair<double, Eigen::VectorXd> refine_band_extremum(const Lattice& lat,
                                                        const FourierPotential& vhat, int band,
                                                        int direction, Eigen::VectorXd eta0,
                                                        double h0, double tol = 1e-9);

} // namespace spectra

#endif
