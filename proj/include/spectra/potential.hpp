#ifndef SPECTRA_POTENTIAL_HPP
#define SPECTRA_POTENTIAL_HPP

#include <complex>
#include <vector>

#include "spectra/lattice.hpp"

namespace spectra {

/// Gamma-periodic real potential, stored on the canonical primal
/// representatives only; values at arbitrary sites fold through the lattice.
class Potential {
public:
    Potential(Lattice lattice, std::vector<double> values);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<double>& values() const { return values_; }
    double value(int rep_index) const { return values_.at(rep_index); }
    double value_at(const Eigen::VectorXi& site) const;
    double sup_norm() const;

private:
    Lattice lattice_;
    std::vector<double> values_;
};

/// V(n) = vals[(sum_i signs_i n_i) mod p]. Gamma-periodicity of this family is
/// exactly the dual membership (1/p)*signs in Gamma'; rejected otherwise.
Potential direction_periodic(const Lattice& lattice, const Eigen::VectorXi& signs, int p,
                             const std::vector<double>& vals);

/// Discrete Fourier coefficients on the dual representatives,
/// coeffs(b) = (1/N) sum_n V(n) e^{-2 pi i <n,b>}.
class FourierPotential {
public:
    static FourierPotential transform(const Potential& pot);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
    std::complex<double> coeff(int dual_index) const { return coeffs_.at(dual_index); }
    /// V-hat at the reduced difference dual_rep(b) - dual_rep(c) mod Z^d.
    std::complex<double> coeff_diff(int b, int c) const {
        return coeffs_[static_cast<size_t>(lattice_.dual_diff_index(b, c))];
    }
    Potential inverse() const;

private:
    FourierPotential(Lattice lattice, std::vector<std::complex<double>> coeffs)
        : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {}
    Lattice lattice_;
    std::vector<std::complex<double>> coeffs_;
};

} // namespace spectra

#endif
