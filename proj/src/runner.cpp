#include "spectra/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "spectra/band_structure.hpp"
#include "spectra/errors.hpp"
#include "spectra/fermi_complex.hpp"
#include "spectra/fermi_real.hpp"

namespace spectra {

using nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> stdvec(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name, std::ios::binary);
    out << content;
}

ordered_json edges_json(const BandSummary& summary) {
    ordered_json out = ordered_json::array();
    for (size_t j = 0; j < summary.edges.size(); ++j) {
        const BandEdge& e = summary.edges[j];
        out.push_back({{"band", j + 1},
                       {"lo", e.lo},
                       {"hi", e.hi},
                       {"width", e.width()},
                       {"argmin_theta", stdvec(e.argmin_theta)},
                       {"argmax_theta", stdvec(e.argmax_theta)}});
    }
    return out;
}

ordered_json gaps_json(const std::vector<std::pair<double, double>>& gaps) {
    ordered_json out = ordered_json::array();
    for (const auto& [lo, hi] : gaps) out.push_back({lo, hi});
    return out;
}

std::string bands_csv(const BandGrid& grid) {
    std::string csv;
    const int d = grid.lattice.dim();
    for (int i = 0; i < d; ++i) csv += "eta" + std::to_string(i + 1) + ",";
    for (int j = 0; j < grid.num_bands(); ++j) {
        csv += "E" + std::to_string(j + 1);
        csv += (j + 1 < grid.num_bands()) ? ',' : '\n';
    }
    for (size_t node = 0; node < grid.samples.size(); ++node) {
        const Eigen::VectorXd eta = grid.eta_at(node);
        for (int i = 0; i < d; ++i) csv += fmt(eta[i]) + ",";
        for (int j = 0; j < grid.num_bands(); ++j) {
            csv += fmt(grid.samples[node][static_cast<size_t>(j)]);
            csv += (j + 1 < grid.num_bands()) ? ',' : '\n';
        }
    }
    return csv;
}

int classify(const Error& e) {
    const std::string& c = e.code();
    const bool validation = c == "ParseError" || c == "ValidationError" ||
                            c == "SingularBasis" || c == "DimensionMismatch" ||
                            c == "LengthMismatch" || c == "NotPeriodic" ||
                            c == "EvenLattice" || c == "OutOfRange" ||
                            c == "EmptySurface" || c == "HypothesisFailed";
    return validation ? 1 : 2;
}

} // namespace

Lattice lattice_from_config(const RunConfig& cfg) {
    if (!cfg.basis) throw ValidationError("lattice.basis");
    return Lattice(*cfg.basis);
}

Potential potential_from_config(const RunConfig& cfg, const Lattice& lat) {
    const size_t n = static_cast<size_t>(lat.index());
    if (!cfg.potential) return Potential(lat, std::vector<double>(n, 0.0));
    const PotentialSpec& spec = *cfg.potential;
    if (spec.type == "explicit") return Potential(lat, spec.values);
    if (spec.type == "checkerboard")
        return direction_periodic(lat, Eigen::VectorXi::Ones(lat.dim()), 2, {spec.v0, spec.v1});
    if (spec.type == "direction_periodic") {
        Eigen::VectorXi signs(lat.dim());
        if (static_cast<int>(spec.signs.size()) != lat.dim())
            throw ValidationError("potential.signs");
        for (int i = 0; i < lat.dim(); ++i) signs[i] = spec.signs[static_cast<size_t>(i)];
        return direction_periodic(lat, signs, spec.p, spec.values);
    }
    // random
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(-spec.amplitude, spec.amplitude);
    std::vector<double> vals(n);
    for (double& v : vals) v = unif(rng);
    return Potential(lat, vals);
}

namespace {

void run_lattice_info(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    result["N"] = lat.index();
    result["even"] = lat.is_even();
    const DivisibilityResult div = lat.divisibility();
    result["divisible"] = div.divisible;
    if (div.divisible && !div.witnesses.empty()) {
        const auto& w = div.witnesses.front();
        std::vector<std::string> vec;
        for (const auto& r : w.vector) vec.push_back(r.str());
        result["witness"] = {{"signs", std::vector<int>(w.signs.data(), w.signs.data() + w.signs.size())},
                             {"axis", w.axis + 1},
                             {"p", w.p},
                             {"vector", vec}};
    } else if (div.failing) {
        result["witness"] = {
            {"failing_signs", std::vector<int>(div.failing->first.data(),
                                               div.failing->first.data() + div.failing->first.size())},
            {"failing_axis", div.failing->second + 1}};
    }
}

void run_bands(const RunConfig& cfg, ordered_json& result, bool gaps_only) {
    const Lattice lat = lattice_from_config(cfg);
    const Potential pot = potential_from_config(cfg, lat);
    const BandGrid grid = compute_band_grid(lat, pot, cfg.resolution);
    BandSummary summary = band_edges(grid, true);
    summary.gaps = spectral_gaps(summary, cfg.gap_tol);
    summary.is_interval = summary.gaps.empty();
    result["gaps"] = gaps_json(summary.gaps);
    result["is_interval"] = summary.is_interval;
    result["min_band_width"] = flat_band_check(summary);
    result["edges"] = edges_json(summary);
    if (!gaps_only) write_file(cfg.out_dir, "bands.csv", bands_csv(grid));
}

void run_fermi(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    if (!cfg.has_energy) throw ValidationError("energy");
    const FermiSample sample = fermi_sample(lat.dim(), cfg.energy, cfg.samples, cfg.seed);
    std::string csv;
    for (int i = 0; i < lat.dim(); ++i) csv += "theta" + std::to_string(i + 1) + ",";
    csv += "residual,generic,singular_adjacent\n";
    int generic_count = 0;
    for (size_t i = 0; i < sample.points.size(); ++i) {
        const bool gen = is_generic(lat, sample.points[i], cfg.energy, cfg.tau);
        generic_count += gen ? 1 : 0;
        for (int k = 0; k < lat.dim(); ++k) csv += fmt(sample.points[i][k]) + ",";
        csv += fmt(sample.residuals[i]);
        csv += gen ? ",1" : ",0";
        csv += sample.singular_adjacent[i] ? ",1\n" : ",0\n";
    }
    write_file(cfg.out_dir, "fermi.csv", csv);
    result["points"] = sample.points.size();
    result["generic"] = generic_count;
    result["singular_points"] = singular_points(lat.dim(), cfg.energy).size();
}

void run_bz_verify(const RunConfig& cfg, ordered_json& result, int& exit_code) {
    const Lattice lat = lattice_from_config(cfg);
    if (cfg.energies.empty()) throw ValidationError("energies");
    const BzSweepReport report = bz_sweep(lat, cfg.energies, cfg.retries, cfg.seed);
    result["energies"] = cfg.energies.size();
    result["failures"] = report.failures;
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json ej{{"energy", e.energy}, {"certified", e.certified}};
        if (e.certified) {
            ej["count1"] = e.certificate.count1;
            ej["count2"] = e.certificate.count2;
            ej["method"] = e.certificate.method == CertificateMethod::parity_walk
                               ? "parity-walk"
                               : "gradient-walk";
        } else {
            ej["reason"] = e.error;
        }
        entries.push_back(std::move(ej));
    }
    result["entries"] = std::move(entries);
    if (report.failures > 0) exit_code = 2;
}

void run_edge_check(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    const Potential pot = potential_from_config(cfg, lat);
    const BandGrid grid = compute_band_grid(lat, pot, cfg.resolution);
    const BandSummary summary = band_edges(grid, true);
    const EdgeDegeneracyReport rep =
        edge_degeneracy_check(lat, pot, cfg.band - 1, cfg.edge_sign, summary, cfg.edge_tol);
    result["band"] = cfg.band;
    result["edge"] = cfg.edge_sign > 0 ? "+" : "-";
    result["edge_energy"] = rep.edge_energy;
    result["theta_star"] = stdvec(rep.theta_star);
    result["value_residual"] = rep.value_residual;
    result["derivative_residual"] = rep.derivative_residual;
    result["discriminant_abs"] = rep.discriminant_abs;
    result["degenerate"] = rep.degenerate;
}

void run_edge_dimension(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    const Potential pot = potential_from_config(cfg, lat);
    const BandGrid grid = compute_band_grid(lat, pot, cfg.resolution);
    const BandSummary summary = band_edges(grid, true);
    const DimensionEstimate est =
        levelset_dimension_probe(lat, pot, cfg.band - 1, cfg.edge_sign, summary, cfg.h_list);
    std::string csv = "h,count\n";
    for (size_t i = 0; i < est.resolutions.size(); ++i)
        csv += fmt(est.resolutions[i]) + "," + std::to_string(est.counts[i]) + "\n";
    write_file(cfg.out_dir, "dimension.csv", csv);
    result["band"] = cfg.band;
    result["edge"] = cfg.edge_sign > 0 ? "+" : "-";
    result["edge_energy"] = est.edge_energy;
    result["h"] = est.resolutions;
    result["counts"] = est.counts;
    result["slope"] = est.slope;
}

void run_discriminant(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    const Potential pot = potential_from_config(cfg, lat);
    if (!cfg.has_energy) throw ValidationError("energy");
    if (static_cast<int>(cfg.theta_rest.size()) != lat.dim() - 1)
        throw ValidationError("theta_rest");
    Eigen::VectorXcd rest(lat.dim() - 1);
    for (int i = 0; i < lat.dim() - 1; ++i) rest[i] = cfg.theta_rest[static_cast<size_t>(i)];
    const LaurentPoly p = det_laurent(lat, pot, rest, cfg.energy);
    ordered_json coeffs = ordered_json::array();
    for (int k = -p.half_degree; k <= p.half_degree; ++k)
        coeffs.push_back({{"k", k}, {"re", p.coeff(k).real()}, {"im", p.coeff(k).imag()}});
    result["half_degree"] = p.half_degree;
    result["coeffs"] = std::move(coeffs);
    const std::complex<double> disc = discriminant(p);
    result["discriminant"] = {{"re", disc.real()}, {"im", disc.imag()}, {"abs", std::abs(disc)}};
    result["leading_abs"] = std::abs(p.coeff(p.half_degree));
    result["trailing_abs"] = std::abs(p.coeff(-p.half_degree));
}

void run_separation_scan(const RunConfig& cfg, ordered_json& result) {
    const Lattice lat = lattice_from_config(cfg);
    if (static_cast<int>(cfg.theta_rest.size()) != lat.dim() - 1)
        throw ValidationError("theta_rest");
    if (static_cast<int>(cfg.u_signs.size()) != lat.dim() - 1) throw ValidationError("u");
    Eigen::VectorXd rest(lat.dim() - 1);
    Eigen::VectorXi u(lat.dim() - 1);
    for (int i = 0; i < lat.dim() - 1; ++i) {
        rest[i] = cfg.theta_rest[static_cast<size_t>(i)];
        u[i] = cfg.u_signs[static_cast<size_t>(i)];
    }
    const SeparationScanReport rep = separation_scan(lat, rest, u, cfg.t_grid, cfg.samples);
    std::string csv = "t,premise_points,violations\n";
    for (size_t i = 0; i < rep.t_grid.size(); ++i)
        csv += fmt(rep.t_grid[i]) + "," + std::to_string(rep.premise_points[i]) + "," +
               std::to_string(rep.violations_per_t[i]) + "\n";
    write_file(cfg.out_dir, "separation.csv", csv);
    result["t_grid"] = rep.t_grid;
    result["premise_points"] = rep.premise_points;
    result["violations"] = rep.violations_per_t;
    if (rep.t0)
        result["t0"] = *rep.t0;
    else
        result["t0"] = nullptr;
}

void run_demo(const RunConfig& cfg, ordered_json& result) {
    if (cfg.demo_name == "checkerboard") {
        Eigen::MatrixXi basis(2, 2);
        basis << 1, 1, 1, -1;
        const Lattice lat(basis);
        const Potential pot = direction_periodic(lat, Eigen::VectorXi::Ones(2), 2,
                                                 {-cfg.epsilon, cfg.epsilon});
        const int res = cfg.resolution.empty() ? 128 : cfg.resolution.front();
        const BandGrid grid = compute_band_grid(lat, pot, res);
        BandSummary summary = band_edges(grid, true);
        summary.gaps = spectral_gaps(summary, cfg.gap_tol);
        result["gaps"] = gaps_json(summary.gaps);
        result["edges"] = edges_json(summary);
        const DimensionEstimate upper =
            levelset_dimension_probe(lat, pot, 0, +1, summary, cfg.h_list);
        const DimensionEstimate lower =
            levelset_dimension_probe(lat, pot, 1, -1, summary, cfg.h_list);
        result["edge_dimension_slopes"] = {upper.slope, lower.slope};
    } else {   // p-periodic, the p = 3 example
        Eigen::MatrixXi basis(2, 2);
        basis << 1, 3, 1, 0;
        const Lattice lat(basis);
        Eigen::VectorXi signs(2);
        signs << 1, -1;
        const Potential pot = direction_periodic(lat, signs, 3, {0.0, 3.0, 3.0});
        const int res = cfg.resolution.empty() ? 128 : cfg.resolution.front();
        const BandGrid grid = compute_band_grid(lat, pot, res);
        const BandSummary summary = band_edges(grid, true);
        result["edges"] = edges_json(summary);
        result["E1_plus"] = summary.edges.front().hi;
        const DimensionEstimate est =
            levelset_dimension_probe(lat, pot, 0, +1, summary, cfg.h_list);
        result["edge_dimension_slope"] = est.slope;
    }
}

} // namespace

RunResult execute(const RunConfig& cfg) {
    RunResult run;
    run.report["config"] = cfg.echo;
    ordered_json result;
    try {
        switch (cfg.command) {
            case Command::lattice_info: run_lattice_info(cfg, result); break;
            case Command::bands: run_bands(cfg, result, false); break;
            case Command::gaps: run_bands(cfg, result, true); break;
            case Command::fermi: run_fermi(cfg, result); break;
            case Command::bz_verify: run_bz_verify(cfg, result, run.exit_code); break;
            case Command::edge_check: run_edge_check(cfg, result); break;
            case Command::edge_dimension: run_edge_dimension(cfg, result); break;
            case Command::discriminant: run_discriminant(cfg, result); break;
            case Command::separation_scan: run_separation_scan(cfg, result); break;
            case Command::demo: run_demo(cfg, result); break;
        }
        run.report["result"] = std::move(result);
    } catch (const Error& e) {
        run.exit_code = classify(e);
        run.report["error"] = {{"reason", e.code()}, {"message", e.what()}};
    } catch (const std::exception& e) {
        run.exit_code = 2;
        run.report["error"] = {{"reason", "InternalError"}, {"message", e.what()}};
    }
    write_file(cfg.out_dir, "report.json", run.report.dump(2) + "\n");
    return run;
}

} // namespace spectra
