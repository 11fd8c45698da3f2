#ifndef SPECTRA_FERMI_COMPLEX_HPP
#define SPECTRA_FERMI_COMPLEX_HPP

#include <complex>
#include <optional>
#include <vector>

#include "spectra/band_structure.hpp"

namespace spectra {

/// det(h(theta) - E) as a Laurent polynomial in z = e^{2 pi i theta_1},
/// degrees -N..N. The leading and trailing coefficients are products of unit
/// phases, so the polynomial never degenerates and carries exactly 2N roots.
struct LaurentPoly {
    int half_degree = 0;                          // N
    std::vector<std::complex<double>> coeffs;     // index k + N for k in [-N, N]

    std::complex<double> coeff(int k) const { return coeffs.at(static_cast<size_t>(k + half_degree)); }
    std::complex<double> eval(std::complex<double> z) const;
    std::complex<double> deriv(std::complex<double> z) const;     // d/dz
    double max_coeff_abs() const;
};

/// Coefficients by evaluation-interpolation on the unit circle: M equally
/// spaced points (smallest power of two >= 2N+2), inverse DFT.
LaurentPoly det_laurent(const Lattice& lat, const FourierPotential& vhat,
                        const Eigen::VectorXcd& theta_rest, std::complex<double> energy);
LaurentPoly det_laurent(const Lattice& lat, const Potential& pot,
                        const Eigen::VectorXcd& theta_rest, std::complex<double> energy);

/// Roots of z^N p(z) (a degree-2N polynomial) via the companion matrix.
std::vector<std::complex<double>> laurent_roots(const LaurentPoly& p);

/// prod_{i<j} (z_i - z_j)^2 over the roots after monic normalization.
std::complex<double> discriminant(const LaurentPoly& p);

/// Same discriminant through the Sylvester resultant of (p, p'); intended as
/// the independent route for small degrees.
std::complex<double> discriminant_sylvester(const LaurentPoly& p);

struct EdgeDegeneracyReport {
    int band = 0;                       // 0-based
    int edge_sign = +1;                 // +1 upper edge, -1 lower
    double edge_energy = 0.0;
    Eigen::VectorXd theta_star;         // extremizer with polished theta_1
    double value_residual = 0.0;        // |P(z*)| / max|coeff|
    double derivative_residual = 0.0;   // |P'(z*)| / max|coeff|
    double discriminant_abs = 0.0;
    bool degenerate = false;
};

/// Verify that z* = e^{2 pi i theta*_1} is a (numerically) multiple root of
/// det(h(.,theta*')-E) at the refined band edge. theta_1 is polished by
/// Newton iteration on the derivative of the real section determinant before
/// the residuals are measured.
EdgeDegeneracyReport edge_degeneracy_check_at(const Lattice& lat, const FourierPotential& vhat,
                                              const Eigen::VectorXd& theta_star,
                                              double edge_energy, double tol = 1e-5,
                                              int band = 0, int edge_sign = +1);
EdgeDegeneracyReport edge_degeneracy_check(const Lattice& lat, const Potential& pot, int band,
                                           int edge_sign, const BandSummary& summary,
                                           double tol = 1e-5);

/// Separation requires that Gamma' contains no (1/p)(+-1, u) with p >= 2.
bool separation_hypothesis(const Lattice& lat, const Eigen::VectorXi& u_signs);

/// theta' admissibility: rejects the lower-dimensional exceptional set where
/// the leading exponential sums collide or vanish.
bool separation_theta_admissible(const Lattice& lat, const Eigen::VectorXd& theta_rest,
                                 const Eigen::VectorXi& u_signs, double tol = 1e-6);

struct SeparationViolation {
    double t = 0.0;
    std::complex<double> theta1;
    int dual_index = 0;
};

struct SeparationScanReport {
    std::vector<double> t_grid;
    std::vector<long> premise_points;       // per t
    std::vector<long> violations_per_t;
    std::optional<double> t0;               // smallest grid t with a clean tail
    std::vector<SeparationViolation> violations;   // capped detail list
};

/// For each t, samples the premise set {theta_1 : |2cos 2pi theta_1 +
/// F(theta'-itu)| <= e^{pi t}} (polar grid in the target disk, both arccos
/// branches) and asserts every nonzero dual translate exceeds e^{pi t}.
SeparationScanReport separation_scan(const Lattice& lat, const Eigen::VectorXd& theta_rest,
                                     const Eigen::VectorXi& u_signs,
                                     const std::vector<double>& t_grid, int theta1_samples);

struct DimensionEstimate {
    int band = 0;
    int edge_sign = +1;
    double edge_energy = 0.0;
    std::vector<double> resolutions;    // cell sides h
    std::vector<long> counts;           // occupied cells per h
    double slope = 0.0;                 // fit of log(count) vs log(1/h)
};

/// Box-counting probe of the edge level set {eta : E_j(theta(eta)) = E_j^pm}:
/// cells of side h are occupied when the band comes within C h^2 of the edge
/// on a 3^d sample stencil (C the Lipschitz constant; the quadratic scale
/// matches the vanishing gradient on extremal level sets).
DimensionEstimate levelset_dimension_probe(const Lattice& lat, const Potential& pot, int band,
                                           int edge_sign, const BandSummary& summary,
                                           const std::vector<double>& resolutions);

} // namespace spectra

#endif
