#ifndef SPECTRA_FERMI_REAL_HPP
#define SPECTRA_FERMI_REAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/floquet.hpp"

namespace spectra {

/// Points sampled from the free Fermi surface {F(theta) = E} on the torus.
struct FermiSample {
    double energy = 0.0;
    int dim = 0;
    std::vector<Eigen::VectorXd> points;       // each in [0,1)^d
    std::vector<double> residuals;             // |F(theta) - E|
    std::vector<bool> singular_adjacent;       // close to a point of S_E
};

/// Draw up to `count` points: the tail coordinates are uniform, the first is
/// solved from 2 cos(2 pi theta_1) = E - F(theta_2..theta_d) when solvable.
/// Deterministic for a fixed seed.
FermiSample fermi_sample(int dim, double energy, int count, uint64_t seed);

/// S_E = {0,1/2}^d points where F equals E (F is an even integer there).
std::vector<Eigen::VectorXd> singular_points(int dim, double energy);

/// N(theta, E) = #{b in Lambda' : F(theta+b) <= E}, cross-checked against the
/// eigenvalue count of the free fiber operator. Values within 1e-12 of E are
/// ties and raise TieAtLevel so callers perturb instead of miscounting.
int counting_function(const Lattice& lat, const Eigen::VectorXd& theta, double energy);

/// theta on F_E is generic when no nonzero dual translate stays on F_E
/// (within tau) and the gradient at theta is not degenerate.
bool is_generic(const Lattice& lat, const Eigen::VectorXd& theta, double energy,
                double tau = 1e-6);

enum class CertificateMethod { gradient_walk, parity_walk };

/// Two quasimomenta whose eigenvalue counts at E differ, witnessing that E
/// lies in the interior of the free spectrum's band cover.
struct BzCertificate {
    double energy = 0.0;
    Eigen::VectorXd theta1, theta2;
    int count1 = 0, count2 = 0;
    CertificateMethod method = CertificateMethod::gradient_walk;
};

BzCertificate bz_certificate(const Lattice& lat, double energy, int retries, uint64_t seed);

struct BzSweepEntry {
    double energy = 0.0;
    bool certified = false;
    std::string error;         // error code when not certified
    BzCertificate certificate; // valid when certified
};

struct BzSweepReport {
    std::vector<BzSweepEntry> entries;
    int failures = 0;
};

BzSweepReport bz_sweep(const Lattice& lat, const std::vector<double>& energies, int retries,
                       uint64_t seed);

} // namespace spectra

#endif
