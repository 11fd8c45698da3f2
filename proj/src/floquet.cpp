#include "spectra/floquet.hpp"

#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double f_symbol(const Eigen::VectorXd& theta) {
    double acc = 0;
    for (int i = 0; i < theta.size(); ++i) acc += 2.0 * std::cos(two_pi * theta[i]);
    return acc;
}

std::complex<double> f_symbol(const Eigen::VectorXcd& theta) {
    std::complex<double> acc = 0;
    for (int i = 0; i < theta.size(); ++i) acc += 2.0 * std::cos(two_pi * theta[i]);
    return acc;
}

Eigen::VectorXd grad_f(const Eigen::VectorXd& theta) {
    Eigen::VectorXd g(theta.size());
    for (int i = 0; i < theta.size(); ++i) g[i] = -2.0 * two_pi * std::sin(two_pi * theta[i]);
    return g;
}

Eigen::VectorXcd grad_f(const Eigen::VectorXcd& theta) {
    Eigen::VectorXcd g(theta.size());
    for (int i = 0; i < theta.size(); ++i) g[i] = -2.0 * two_pi * std::sin(two_pi * theta[i]);
    return g;
}

double BlochMatrix::hermitian_deviation() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

BlochMatrix assemble_plane_wave(const Lattice& lat, const FourierPotential& vhat,
                                const Eigen::VectorXd& theta) {
    if (theta.size() != lat.dim()) throw DimensionMismatch("theta dimension does not match lattice");
    const int n = static_cast<int>(lat.index());
    BlochMatrix m;
    m.basis_tag = BasisTag::plane_wave;
    m.theta = theta.cast<std::complex<double>>();
    m.entries.resize(n, n);
    for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) m.entries(b, c) = vhat.coeff_diff(b, c);
        m.entries(b, b) += f_symbol(Eigen::VectorXd(theta + lat.dual_rep(b)));
    }
    return m;
}

BlochMatrix assemble_plane_wave(const Lattice& lat, const Potential& pot,
                                const Eigen::VectorXd& theta) {
    return assemble_plane_wave(lat, FourierPotential::transform(pot), theta);
}

BlochMatrix assemble_real_space(const Lattice& lat, const Potential& pot,
                                const Eigen::VectorXd& theta) {
    if (theta.size() != lat.dim()) throw DimensionMismatch("theta dimension does not match lattice");
    const int n = static_cast<int>(lat.index());
    const int d = lat.dim();
    BlochMatrix m;
    m.basis_tag = BasisTag::real_space;
    m.theta = theta.cast<std::complex<double>>();
    m.entries = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m.entries(i, i) = pot.value(i);
        const Eigen::VectorXi& site = lat.primal_reps()[static_cast<size_t>(i)];
        for (int axis = 0; axis < d; ++axis) {
            for (int step : {1, -1}) {
                Eigen::VectorXi nb = site;
                nb[axis] += step;
                auto [rep, shift] = lat.reduce(nb);
                const int j = lat.rep_index(rep);
                m.entries(i, j) += std::polar(1.0, two_pi * theta.dot(shift.cast<double>()));
            }
        }
    }
    return m;
}

BlochMatrix assemble_complex(const Lattice& lat, const FourierPotential& vhat,
                             const Eigen::VectorXcd& theta) {
    if (theta.size() != lat.dim()) throw DimensionMismatch("theta dimension does not match lattice");
    const int n = static_cast<int>(lat.index());
    BlochMatrix m;
    m.basis_tag = BasisTag::plane_wave;
    m.theta = theta;
    m.entries.resize(n, n);
    for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) m.entries(b, c) = vhat.coeff_diff(b, c);
        Eigen::VectorXcd shifted = theta + lat.dual_rep(b).cast<std::complex<double>>();
        m.entries(b, b) += f_symbol(shifted);
    }
    return m;
}

std::vector<double> eigenvalues_sorted(const BlochMatrix& m) {
    if (m.hermitian_deviation() > 1e-12)
        throw NotHermitian("Bloch matrix is not Hermitian (complex quasimomentum?)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries,
                                                           Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& w = solver.eigenvalues();   // ascending
    return std::vector<double>(w.data(), w.data() + w.size());
}

} // namespace spectra
