#include "spectra/fermi_real.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double tie_tol = 1e-12;

double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

/// Torus distance per coordinate, for the singular-adjacency tag.
double torus_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0;
    for (int i = 0; i < a.size(); ++i) {
        double d = std::abs(frac01(a[i] - b[i]));
        d = std::min(d, 1.0 - d);
        acc += d * d;
    }
    return std::sqrt(acc);
}

int direct_count(const Lattice& lat, const Eigen::VectorXd& theta, double energy) {
    int count = 0;
    for (int b = 0; b < lat.index(); ++b) {
        const double v = f_symbol(Eigen::VectorXd(theta + lat.dual_rep(b)));
        if (std::abs(v - energy) < tie_tol)
            throw TieAtLevel("F(theta+b) ties the level E; perturb theta");
        if (v <= energy) ++count;
    }
    return count;
}

} // namespace

FermiSample fermi_sample(int dim, double energy, int count, uint64_t seed) {
    if (dim < 1) throw DimensionMismatch("dimension must be positive");
    const double top = 2.0 * dim;
    if (std::abs(energy) > top)
        throw EmptySurface("|E| > 2d: the free Fermi surface is empty");

    FermiSample out;
    out.energy = energy;
    out.dim = dim;

    const auto sing = singular_points(dim, energy);
    auto push = [&](const Eigen::VectorXd& theta) {
        const double res = std::abs(f_symbol(theta) - energy);
        if (res >= tie_tol) return;
        bool adj = false;
        for (const auto& s : sing)
            if (torus_dist(theta, s) < 1e-2) { adj = true; break; }
        out.points.push_back(theta);
        out.residuals.push_back(res);
        out.singular_adjacent.push_back(adj);
    };

    if (top - std::abs(energy) < tie_tol) {
        // single-point surface: theta = 0 for E = 2d, (1/2,..,1/2) for E = -2d
        Eigen::VectorXd theta = Eigen::VectorXd::Constant(dim, energy > 0 ? 0.0 : 0.5);
        push(theta);
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long attempts = 1000 + 200L * count;
    for (long a = 0; a < attempts && static_cast<int>(out.points.size()) < count; ++a) {
        Eigen::VectorXd theta(dim);
        double rest = 0;
        for (int i = 1; i < dim; ++i) {
            theta[i] = unif(rng);
            rest += 2.0 * std::cos(two_pi * theta[i]);
        }
        const double target = energy - rest;       // = 2 cos(2 pi theta_1)
        if (std::abs(target) > 2.0) continue;
        const double root = std::acos(target / 2.0) / two_pi;   // in [0, 1/2]
        theta[0] = root;
        push(theta);
        if (static_cast<int>(out.points.size()) < count && root > 0.0) {
            theta[0] = frac01(1.0 - root);
            push(theta);
        }
    }
    return out;
}

std::vector<Eigen::VectorXd> singular_points(int dim, double energy) {
    std::vector<Eigen::VectorXd> pts;
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        Eigen::VectorXd theta(dim);
        long f = 0;   // F on {0,1/2}^d is an even integer, computed exactly
        for (int i = 0; i < dim; ++i) {
            const bool half = (mask >> i & 1u) != 0;
            theta[i] = half ? 0.5 : 0.0;
            f += half ? -2 : 2;
        }
        if (static_cast<double>(f) == energy) pts.push_back(theta);
    }
    return pts;
}

int counting_function(const Lattice& lat, const Eigen::VectorXd& theta, double energy) {
    const int by_f = direct_count(lat, theta, energy);

    Potential zero(lat, std::vector<double>(static_cast<size_t>(lat.index()), 0.0));
    const auto eigs = eigenvalues_sorted(assemble_plane_wave(lat, zero, theta));
    int by_eig = 0;
    for (double w : eigs)
        if (w <= energy) ++by_eig;

    if (by_f != by_eig)
        throw std::logic_error("counting function formulas disagree off the tie set");
    return by_f;
}

bool is_generic(const Lattice& lat, const Eigen::VectorXd& theta, double energy, double tau) {
    if (std::abs(f_symbol(theta) - energy) >= tie_tol)
        throw ValidationError("is_generic requires a point on the Fermi surface");
    if (grad_f(theta).norm() <= tau) return false;
    for (int b = 0; b < lat.index(); ++b) {
        if (b == lat.zero_dual_index()) continue;
        const double v = f_symbol(Eigen::VectorXd(theta + lat.dual_rep(b)));
        if (std::abs(v - energy) <= tau) return false;
    }
    return true;
}

namespace {

/// Shared walk: shrink t from t_max until both endpoint counts evaluate
/// without ties; accept when the counts satisfy `accept`.
template <typename Accept>
bool try_walk(const Lattice& lat, const Eigen::VectorXd& theta, const Eigen::VectorXd& dir,
              double energy, Accept accept, BzCertificate& cert) {
    double t = 0.05;
    for (int halving = 0; halving < 40; ++halving, t /= 2.0) {
        int c1 = 0, c2 = 0;
        try {
            c1 = counting_function(lat, Eigen::VectorXd(theta + t * dir), energy);
            c2 = counting_function(lat, Eigen::VectorXd(theta - t * dir), energy);
        } catch (const TieAtLevel&) {
            continue;
        }
        if (!accept(c1, c2)) continue;
        cert.theta1 = theta + t * dir;
        cert.theta2 = theta - t * dir;
        cert.count1 = c1;
        cert.count2 = c2;
        return true;
    }
    return false;
}

BzCertificate gradient_walk(const Lattice& lat, double energy, int retries, uint64_t seed) {
    const int d = lat.dim();
    BzCertificate cert;
    cert.energy = energy;
    cert.method = CertificateMethod::gradient_walk;
    const FermiSample pool = fermi_sample(d, energy, std::max(retries, 8), seed);
    for (const auto& theta : pool.points) {
        if (!is_generic(lat, theta, energy)) continue;
        Eigen::VectorXd u = grad_f(theta).normalized();
        if (try_walk(lat, theta, u, energy, [](int a, int b) { return a != b; }, cert))
            return cert;
    }
    throw NoGenericPoint("no generic Fermi point yielded a certificate after retries");
}

BzCertificate parity_walk(const Lattice& lat, double energy, int retries, uint64_t seed) {
    // d = 2, E = 0: the surface is the union of the segments
    // theta_2 = 1/2 -+ theta_1; counts change by an odd number across them.
    BzCertificate cert;
    cert.energy = energy;
    cert.method = CertificateMethod::parity_walk;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int attempt = 0; attempt < std::max(retries, 8); ++attempt) {
        const double x = 0.05 + 0.4 * unif(rng);      // segment interior
        const bool branch = unif(rng) < 0.5;
        Eigen::VectorXd theta(2);
        theta[0] = x;
        theta[1] = frac01(branch ? 0.5 - x : 0.5 + x);

        bool degenerate = false;
        std::vector<Eigen::VectorXd> grads;
        for (int b = 0; b < lat.index(); ++b) {
            Eigen::VectorXd g = grad_f(Eigen::VectorXd(theta + lat.dual_rep(b)));
            if (g.norm() < 1e-6) { degenerate = true; break; }
            grads.push_back(g.normalized());
        }
        if (degenerate) continue;

        Eigen::VectorXd w;
        bool have_dir = false;
        for (int k = 0; k < 50 && !have_dir; ++k) {
            const double ang = two_pi * unif(rng);
            w = Eigen::VectorXd(2);
            w << std::cos(ang), std::sin(ang);
            have_dir = true;
            for (const auto& g : grads)
                if (std::abs(w.dot(g)) < 1e-3) { have_dir = false; break; }
        }
        if (!have_dir) continue;

        if (try_walk(lat, theta, w, energy,
                     [](int a, int b) { return a != b && (a - b) % 2 != 0; }, cert))
            return cert;
    }
    throw NoGenericPoint("parity walk found no certificate after retries");
}

} // namespace

BzCertificate bz_certificate(const Lattice& lat, double energy, int retries, uint64_t seed) {
    if (lat.is_even())
        throw EvenLattice("even lattice: the counting argument does not apply");
    const double top = 2.0 * lat.dim();
    if (std::abs(energy) >= top)
        throw OutOfRange("energy outside (-2d, 2d)");

    BzCertificate cert = (lat.dim() == 2 && std::abs(energy) < 1e-9)
                             ? parity_walk(lat, energy, retries, seed)
                             : gradient_walk(lat, energy, retries, seed);
    // revalidate before returning
    if (counting_function(lat, cert.theta1, energy) == counting_function(lat, cert.theta2, energy))
        throw std::logic_error("certificate failed revalidation");
    return cert;
}

BzSweepReport bz_sweep(const Lattice& lat, const std::vector<double>& energies, int retries,
                       uint64_t seed) {
    if (lat.is_even())
        throw EvenLattice("even lattice: rejected up front");
    BzSweepReport report;
    report.entries.reserve(energies.size());
    for (size_t i = 0; i < energies.size(); ++i) {
        BzSweepEntry entry;
        entry.energy = energies[i];
        try {
            entry.certificate = bz_certificate(lat, energies[i], retries, seed + i);
            entry.certified = true;
        } catch (const Error& e) {
            entry.certified = false;
            entry.error = e.code();
            ++report.failures;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace spectra
