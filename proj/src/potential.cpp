#include "spectra/potential.hpp"

#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra {

Potential::Potential(Lattice lattice, std::vector<double> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
    if (static_cast<long long>(values_.size()) != lattice_.index())
        throw LengthMismatch("potential needs exactly N = " + std::to_string(lattice_.index()) +
                             " values, got " + std::to_string(values_.size()));
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("potential values must be finite");
}

double Potential::value_at(const Eigen::VectorXi& site) const {
    return values_[static_cast<size_t>(lattice_.rep_index(site))];
}

double Potential::sup_norm() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Potential direction_periodic(const Lattice& lattice, const Eigen::VectorXi& signs, int p,
                             const std::vector<double>& vals) {
    if (signs.size() != lattice.dim())
        throw DimensionMismatch("sign vector dimension does not match lattice");
    for (int i = 0; i < signs.size(); ++i)
        if (signs[i] != 1 && signs[i] != -1)
            throw ValidationError("sign vector entries must be +1 or -1");
    if (p < 2) throw ValidationError("period p must be >= 2");
    if (static_cast<int>(vals.size()) != p)
        throw LengthMismatch("need exactly p values for a p-periodic profile");

    RationalVector v(lattice.dim());
    for (int i = 0; i < lattice.dim(); ++i) v[i] = Rational(signs[i], p);
    if (!lattice.dual_contains(v))
        throw NotPeriodic("(1/p)*signs is not in the dual lattice; "
                          "the profile would not be Gamma-periodic");

    std::vector<double> out;
    out.reserve(static_cast<size_t>(lattice.index()));
    for (const auto& n : lattice.primal_reps()) {
        long long s = 0;
        for (int i = 0; i < lattice.dim(); ++i) s += static_cast<long long>(signs[i]) * n[i];
        long long r = s % p;
        if (r < 0) r += p;
        out.push_back(vals[static_cast<size_t>(r)]);
    }
    return Potential(lattice, std::move(out));
}

FourierPotential FourierPotential::transform(const Potential& pot) {
    const Lattice& lat = pot.lattice();
    const long long N = lat.index();
    const int d = lat.dim();
    std::vector<std::complex<double>> coeffs(static_cast<size_t>(N));
    for (size_t bi = 0; bi < coeffs.size(); ++bi) {
        const Eigen::VectorXi& m = lat.dual_numerators()[bi];
        std::complex<double> acc = 0;
        for (size_t ni = 0; ni < coeffs.size(); ++ni) {
            const Eigen::VectorXi& n = lat.primal_reps()[ni];
            long long dot = 0;                       // <n, b> = <n, m>/N
            for (int i = 0; i < d; ++i) dot += static_cast<long long>(n[i]) * m[i];
            dot %= N;
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(dot) /
                                 static_cast<double>(N);
            acc += pot.value(static_cast<int>(ni)) * std::polar(1.0, phase);
        }
        coeffs[bi] = acc / static_cast<double>(N);
    }
    return FourierPotential(lat, std::move(coeffs));
}

Potential FourierPotential::inverse() const {
    const long long N = lattice_.index();
    const int d = lattice_.dim();
    std::vector<double> vals(static_cast<size_t>(N));
    for (size_t ni = 0; ni < vals.size(); ++ni) {
        const Eigen::VectorXi& n = lattice_.primal_reps()[ni];
        std::complex<double> acc = 0;
        for (size_t bi = 0; bi < vals.size(); ++bi) {
            const Eigen::VectorXi& m = lattice_.dual_numerators()[bi];
            long long dot = 0;
            for (int i = 0; i < d; ++i) dot += static_cast<long long>(n[i]) * m[i];
            dot %= N;
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(dot) /
                                 static_cast<double>(N);
            acc += coeffs_[bi] * std::polar(1.0, phase);
        }
        vals[ni] = acc.real();
    }
    return Potential(lattice_, std::move(vals));
}

} // namespace spectra
