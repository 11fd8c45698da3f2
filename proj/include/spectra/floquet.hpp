#ifndef SPECTRA_FLOQUET_HPP
#define SPECTRA_FLOQUET_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spectra/potential.hpp"

namespace spectra {

/// Symbol of the discrete Laplacian, F(theta) = sum_i 2 cos(2 pi theta_i),
/// and its analytic continuation.
double f_symbol(const Eigen::VectorXd& theta);
std::complex<double> f_symbol(const Eigen::VectorXcd& theta);
Eigen::VectorXd grad_f(const Eigen::VectorXd& theta);
Eigen::VectorXcd grad_f(const Eigen::VectorXcd& theta);

enum class BasisTag { plane_wave, real_space };

/// Bloch fiber operator at one quasimomentum. Hermitian for real theta;
/// assemble_complex produces the analytic continuation (generally
/// non-Hermitian), which only the determinant layer consumes.
struct BlochMatrix {
    Eigen::VectorXcd theta;
    Eigen::MatrixXcd entries;
    BasisTag basis_tag = BasisTag::plane_wave;

    double hermitian_deviation() const;
};

/// Entry (b,c) = delta_{bc} F(theta + b) + Vhat(b - c), dual difference
/// reduced in Gamma'/Z^d.
BlochMatrix assemble_plane_wave(const Lattice& lat, const FourierPotential& vhat,
                                const Eigen::VectorXd& theta);
BlochMatrix assemble_plane_wave(const Lattice& lat, const Potential& pot,
                                const Eigen::VectorXd& theta);

/// Hopping matrix on the primal representatives with quasi-periodic folding:
/// each unit neighbor contributes the phase e^{2 pi i <theta, shift>}.
BlochMatrix assemble_real_space(const Lattice& lat, const Potential& pot,
                                const Eigen::VectorXd& theta);

BlochMatrix assemble_complex(const Lattice& lat, const FourierPotential& vhat,
                             const Eigen::VectorXcd& theta);

/// Ascending self-adjoint spectrum; throws NotHermitian when the matrix
/// violates the real-theta invariant.
std::vector<double> eigenvalues_sorted(const BlochMatrix& m);

} // namespace spectra

#endif
