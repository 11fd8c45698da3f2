#include "spectra/fermi_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;
}

cplx LaurentPoly::eval(cplx z) const {
    // Horner on z^N p(z), then divide the monomial back out
    cplx acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc * std::pow(z, -half_degree);
}

cplx LaurentPoly::deriv(cplx z) const {
    cplx acc = 0;
    for (int k = -half_degree; k <= half_degree; ++k) {
        if (k == 0) continue;
        acc += coeff(k) * static_cast<double>(k) * std::pow(z, k - 1);
    }
    return acc;
}

double LaurentPoly::max_coeff_abs() const {
    double m = 0;
    for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

LaurentPoly det_laurent(const Lattice& lat, const FourierPotential& vhat,
                        const Eigen::VectorXcd& theta_rest, cplx energy) {
    const int d = lat.dim();
    if (theta_rest.size() != d - 1)
        throw DimensionMismatch("theta_rest must have d-1 components");
    const int n = static_cast<int>(lat.index());
    int m_points = 2;
    while (m_points < 2 * n + 2) m_points *= 2;

    std::vector<cplx> values(static_cast<size_t>(m_points));
    Eigen::VectorXcd theta(d);
    theta.tail(d - 1) = theta_rest;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (int m = 0; m < m_points; ++m) {
        theta[0] = static_cast<double>(m) / m_points;
        BlochMatrix h = assemble_complex(lat, vhat, theta);
        values[static_cast<size_t>(m)] = (h.entries - energy * id).determinant();
    }

    LaurentPoly p;
    p.half_degree = n;
    p.coeffs.resize(static_cast<size_t>(2 * n + 1));
    for (int k = -n; k <= n; ++k) {
        cplx acc = 0;
        for (int m = 0; m < m_points; ++m) {
            const long long r = ((static_cast<long long>(k) * m) % m_points + m_points) % m_points;
            acc += values[static_cast<size_t>(m)] *
                   std::polar(1.0, -two_pi * static_cast<double>(r) / m_points);
        }
        p.coeffs[static_cast<size_t>(k + n)] = acc / static_cast<double>(m_points);
    }

    const double scale = std::max(1.0, p.max_coeff_abs());
    if (std::abs(std::abs(p.coeff(n)) - 1.0) > 1e-6 * scale ||
        std::abs(std::abs(p.coeff(-n)) - 1.0) > 1e-6 * scale)
        throw std::logic_error("Laurent leading/trailing coefficient lost unit modulus");
    return p;
}

LaurentPoly det_laurent(const Lattice& lat, const Potential& pot,
                        const Eigen::VectorXcd& theta_rest, cplx energy) {
    return det_laurent(lat, FourierPotential::transform(pot), theta_rest, energy);
}

std::vector<cplx> laurent_roots(const LaurentPoly& p) {
    const int n = 2 * p.half_degree;
    const cplx lead = p.coeff(p.half_degree);
    if (std::abs(lead) < 0.5)
        throw DegenerateLeading("leading coefficient is not of unit modulus");
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -p.coeffs[static_cast<size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    const auto& w = solver.eigenvalues();
    return std::vector<cplx>(w.data(), w.data() + w.size());
}

cplx discriminant(const LaurentPoly& p) {
    const auto roots = laurent_roots(p);
    cplx acc = 1.0;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) {
            const cplx d = roots[i] - roots[j];
            acc *= d * d;
        }
    return acc;
}

cplx discriminant_sylvester(const LaurentPoly& p) {
    const int n = 2 * p.half_degree;
    const cplx lead = p.coeff(p.half_degree);
    if (std::abs(lead) < 0.5)
        throw DegenerateLeading("leading coefficient is not of unit modulus");
    // monic g of degree n, its derivative g' of degree n-1
    std::vector<cplx> g(static_cast<size_t>(n + 1)), dg(static_cast<size_t>(n));
    for (int i = 0; i <= n; ++i) g[static_cast<size_t>(i)] = p.coeffs[static_cast<size_t>(i)] / lead;
    for (int i = 1; i <= n; ++i)
        dg[static_cast<size_t>(i - 1)] = g[static_cast<size_t>(i)] * static_cast<double>(i);

    const int size = 2 * n - 1;
    Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(size, size);
    for (int row = 0; row < n - 1; ++row)          // n-1 shifted copies of g
        for (int i = 0; i <= n; ++i)
            syl(row, row + n - i) = g[static_cast<size_t>(i)];
    for (int row = 0; row < n; ++row)              // n shifted copies of g'
        for (int i = 0; i < n; ++i)
            syl(n - 1 + row, row + n - 1 - i) = dg[static_cast<size_t>(i)];

    const cplx res = syl.determinant();
    const int sign_pow = (n * (n - 1)) / 2;
    return (sign_pow % 2 == 0) ? res : -res;
}

EdgeDegeneracyReport edge_degeneracy_check_at(const Lattice& lat, const FourierPotential& vhat,
                                              const Eigen::VectorXd& theta_star,
                                              double edge_energy, double tol, int band,
                                              int edge_sign) {
    const int d = lat.dim();
    Eigen::VectorXcd rest = theta_star.tail(d - 1).cast<cplx>();
    const LaurentPoly p = det_laurent(lat, vhat, rest, edge_energy);
    const double norm = std::max(p.max_coeff_abs(), 1e-300);

    // Newton on the derivative of the real section determinant
    // t(theta_1) = sum_k c_k e^{2 pi i k theta_1}; polish the critical point.
    double th1 = theta_star[0];
    const double start = th1;
    for (int it = 0; it < 60; ++it) {
        cplx dt = 0, ddt = 0;
        for (int k = -p.half_degree; k <= p.half_degree; ++k) {
            const cplx ph = std::polar(1.0, two_pi * k * th1);
            const cplx w = cplx(0.0, two_pi * k);
            dt += p.coeff(k) * w * ph;
            ddt += p.coeff(k) * w * w * ph;
        }
        if (std::abs(ddt) < 1e-300) break;
        double step = (dt / ddt).real();
        step = std::clamp(step, -0.01, 0.01);
        th1 -= step;
        if (std::abs(step) < 1e-15) break;
    }
    if (std::abs(th1 - start) > 0.02)
        throw EdgeNotConverged("polished extremizer moved too far; refine the summary first");

    EdgeDegeneracyReport report;
    report.band = band;
    report.edge_sign = edge_sign;
    report.edge_energy = edge_energy;
    report.theta_star = theta_star;
    report.theta_star[0] = th1;
    const cplx z = std::polar(1.0, two_pi * th1);
    report.value_residual = std::abs(p.eval(z)) / norm;
    report.derivative_residual = std::abs(p.deriv(z)) / norm;
    report.discriminant_abs = std::abs(discriminant(p));
    report.degenerate = report.value_residual < tol && report.derivative_residual < tol;
    return report;
}

EdgeDegeneracyReport edge_degeneracy_check(const Lattice& lat, const Potential& pot, int band,
                                           int edge_sign, const BandSummary& summary,
                                           double tol) {
    if (!summary.refined)
        throw EdgeNotConverged("edge degeneracy requires a refined band summary");
    const BandEdge& e = summary.edges.at(static_cast<size_t>(band));
    const double energy = edge_sign > 0 ? e.hi : e.lo;
    const Eigen::VectorXd& theta = edge_sign > 0 ? e.argmax_theta : e.argmin_theta;
    return edge_degeneracy_check_at(lat, FourierPotential::transform(pot), theta, energy, tol,
                                    band, edge_sign);
}

bool separation_hypothesis(const Lattice& lat, const Eigen::VectorXi& u_signs) {
    if (u_signs.size() != lat.dim() - 1)
        throw DimensionMismatch("u must have d-1 sign components");
    for (int s1 : {1, -1}) {
        Eigen::VectorXi s(lat.dim());
        s[0] = s1;
        s.tail(lat.dim() - 1) = u_signs;
        if (lat.dual_direction_gcd(s) >= 2) return false;
    }
    return true;
}

bool separation_theta_admissible(const Lattice& lat, const Eigen::VectorXd& theta_rest,
                                 const Eigen::VectorXi& u_signs, double tol) {
    const int d = lat.dim();
    if (theta_rest.size() != d - 1 || u_signs.size() != d - 1)
        throw DimensionMismatch("theta_rest and u must have d-1 components");

    auto exp_sum = [&](const Eigen::VectorXd& rest) {
        cplx acc = 0;
        for (int i = 0; i < d - 1; ++i)
            acc += std::polar(1.0, two_pi * u_signs[i] * rest[i]);
        return acc;
    };

    for (int c = 0; c < lat.index(); ++c) {
        const Eigen::VectorXd shift_c = lat.dual_rep(c).tail(d - 1);
        const Eigen::VectorXd base = theta_rest + shift_c;
        const cplx lhs = exp_sum(base);
        if (std::abs(lhs) < tol) return false;    // vanishing leading sum
        for (int b = 0; b < lat.index(); ++b) {
            if (b == lat.zero_dual_index()) continue;
            const Eigen::VectorXd brest = lat.dual_rep(b).tail(d - 1);
            const double b1 = lat.dual_rep(b)[0];
            const cplx shifted = exp_sum(Eigen::VectorXd(base + brest));
            for (int eps : {1, -1}) {
                const cplx rhs = std::polar(1.0, two_pi * eps * b1) * shifted;
                if (std::abs(lhs - rhs) < tol) return false;
            }
        }
    }
    return true;
}

SeparationScanReport separation_scan(const Lattice& lat, const Eigen::VectorXd& theta_rest,
                                     const Eigen::VectorXi& u_signs,
                                     const std::vector<double>& t_grid, int theta1_samples) {
    if (!separation_hypothesis(lat, u_signs))
        throw HypothesisFailed("Gamma' contains (1/p)(+-1, u); separation cannot hold "
                               "for this sign pattern");
    if (!separation_theta_admissible(lat, theta_rest, u_signs))
        throw HypothesisFailed("theta_rest lies in the exceptional set of the scan");
    if (theta1_samples < 1) throw ValidationError("need at least one theta_1 sample");

    const int d = lat.dim();
    SeparationScanReport report;
    report.t_grid = t_grid;

    const int n_radial = 50;
    const int n_angular = std::max(1, theta1_samples / (2 * n_radial));

    for (double t : t_grid) {
        const double bound = std::exp(std::numbers::pi * t);
        // F(theta' - i t u) for the base slice and for every dual translate
        Eigen::VectorXcd base_rest(d - 1);
        for (int i = 0; i < d - 1; ++i)
            base_rest[i] = cplx(theta_rest[i], -t * u_signs[i]);
        const cplx f_base = f_symbol(Eigen::VectorXcd(base_rest));

        long premise = 0, bad = 0;
        for (int ir = 1; ir <= n_radial; ++ir) {
            const double radius = bound * ir / n_radial;
            for (int ia = 0; ia < n_angular; ++ia) {
                const cplx w = std::polar(radius, two_pi * ia / n_angular);
                // 2 cos(2 pi theta_1) = w - f_base
                const cplx target = (w - f_base) / 2.0;
                const cplx principal = std::acos(target) / two_pi;
                for (int branch : {1, -1}) {
                    const cplx th1 = static_cast<double>(branch) * principal;
                    ++premise;
                    for (int b = 0; b < lat.index(); ++b) {
                        if (b == lat.zero_dual_index()) continue;
                        const Eigen::VectorXd bvec = lat.dual_rep(b);
                        Eigen::VectorXcd rest(d - 1);
                        for (int i = 0; i < d - 1; ++i)
                            rest[i] = cplx(theta_rest[i] + bvec[i + 1], -t * u_signs[i]);
                        const cplx q = 2.0 * std::cos(two_pi * (th1 + bvec[0])) +
                                       f_symbol(Eigen::VectorXcd(rest));
                        if (std::abs(q) <= bound) {
                            ++bad;
                            if (report.violations.size() < 64)
                                report.violations.push_back({t, th1, b});
                        }
                    }
                }
            }
        }
        report.premise_points.push_back(premise);
        report.violations_per_t.push_back(bad);
    }

    for (size_t i = 0; i < t_grid.size(); ++i) {
        bool clean = true;
        for (size_t j = i; j < t_grid.size(); ++j)
            if (report.violations_per_t[j] != 0) { clean = false; break; }
        if (clean) { report.t0 = t_grid[i]; break; }
    }
    return report;
}

DimensionEstimate levelset_dimension_probe(const Lattice& lat, const Potential& pot, int band,
                                           int edge_sign, const BandSummary& summary,
                                           const std::vector<double>& resolutions) {
    if (!summary.refined)
        throw EdgeNotConverged("dimension probe requires a refined band summary");
    const int d = lat.dim();
    const BandEdge& e = summary.edges.at(static_cast<size_t>(band));
    const double edge_energy = edge_sign > 0 ? e.hi : e.lo;
    const double big_c = band_lipschitz_bound(lat);
    const FourierPotential vhat = FourierPotential::transform(pot);

    DimensionEstimate est;
    est.band = band;
    est.edge_sign = edge_sign;
    est.edge_energy = edge_energy;
    est.resolutions = resolutions;

    for (double h : resolutions) {
        const int cells = static_cast<int>(std::lround(1.0 / h));
        if (cells < 2 || std::abs(cells * h - 1.0) > 1e-9)
            throw ValidationError("probe resolutions must divide the unit cell");
        const int pts = 2 * cells + 1;     // samples at spacing h/2, inclusive
        // residuals |E_j - E*| on the sample grid
        std::vector<double> residual(static_cast<size_t>(std::pow(pts, d)));
        std::vector<int> idx(static_cast<size_t>(d), 0);
        size_t flat = 0;
        while (true) {
            Eigen::VectorXd eta(d);
            for (int i = 0; i < d; ++i) eta[i] = idx[static_cast<size_t>(i)] * h / 2.0;
            residual[flat++] = std::abs(band_value(lat, vhat, band, eta) - edge_energy);
            int axis = d - 1;
            while (axis >= 0 && ++idx[static_cast<size_t>(axis)] == pts)
                idx[static_cast<size_t>(axis--)] = 0;
            if (axis < 0) break;
        }
        auto sample = [&](const std::vector<int>& coord) {
            size_t k = 0;
            for (int i = 0; i < d; ++i) k = k * pts + static_cast<size_t>(coord[static_cast<size_t>(i)]);
            return residual[k];
        };

        const double threshold = big_c * h * h;
        long occupied = 0;
        std::vector<int> cell(static_cast<size_t>(d), 0);
        while (true) {
            double lo = std::numeric_limits<double>::infinity();
            std::vector<int> offset(static_cast<size_t>(d), 0);
            while (true) {
                std::vector<int> coord(static_cast<size_t>(d));
                for (int i = 0; i < d; ++i)
                    coord[static_cast<size_t>(i)] =
                        2 * cell[static_cast<size_t>(i)] + offset[static_cast<size_t>(i)];
                lo = std::min(lo, sample(coord));
                int axis = d - 1;
                while (axis >= 0 && ++offset[static_cast<size_t>(axis)] == 3)
                    offset[static_cast<size_t>(axis--)] = 0;
                if (axis < 0) break;
            }
            if (lo < threshold) ++occupied;
            int axis = d - 1;
            while (axis >= 0 && ++cell[static_cast<size_t>(axis)] == cells)
                cell[static_cast<size_t>(axis--)] = 0;
            if (axis < 0) break;
        }
        est.counts.push_back(occupied);
    }

    // least-squares slope of log(count) against log(1/h)
    const size_t n = resolutions.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(1.0 / resolutions[i]);
        const double y = std::log(static_cast<double>(std::max(est.counts[i], 1L)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return est;
}

} // namespace spectra
