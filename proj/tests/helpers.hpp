#ifndef SPECTRA_TEST_HELPERS_HPP
#define SPECTRA_TEST_HELPERS_HPP

#include <random>

#include "spectra/errors.hpp"
#include "spectra/lattice.hpp"

namespace spectra::testing {

inline Eigen::MatrixXi mat2(int a, int b, int c, int d) {
    Eigen::MatrixXi m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Lattice lat_z2() { return Lattice(mat2(1, 0, 0, 1)); }

/// columns (1,1), (1,-1): the even (checkerboard) lattice
inline Lattice lat_checkerboard() { return Lattice(mat2(1, 1, 1, -1)); }

/// columns (2,0), (1,2): non-even, non-divisible
inline Lattice lat_nc() { return Lattice(mat2(2, 1, 0, 2)); }

/// columns (1,1), (3,0): 3-divisible but not even
inline Lattice lat_p3() { return Lattice(mat2(1, 3, 1, 0)); }

inline Lattice lat_z3() { return Lattice(Eigen::MatrixXi::Identity(3, 3)); }

inline Lattice lat_3z3() { return Lattice(Eigen::MatrixXi(3 * Eigen::MatrixXi::Identity(3, 3))); }

/// Random full-rank integer basis with entries in [-max_entry, max_entry].
inline Lattice random_lattice(std::mt19937_64& rng, int dim, int max_entry,
                              long long max_index = 64) {
    std::uniform_int_distribution<int> entry(-max_entry, max_entry);
    while (true) {
        Eigen::MatrixXi basis(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) basis(i, j) = entry(rng);
        try {
            Lattice lat(basis);
            if (lat.index() <= max_index) return lat;
        } catch (const spectra::Error&) {
            continue;
        }
    }
}

inline std::vector<double> random_values(std::mt19937_64& rng, size_t n, double amplitude) {
    std::uniform_real_distribution<double> unif(-amplitude, amplitude);
    std::vector<double> vals(n);
    for (double& v : vals) v = unif(rng);
    return vals;
}

} // namespace spectra::testing

#endif
