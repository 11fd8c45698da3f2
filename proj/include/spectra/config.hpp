#ifndef SPECTRA_CONFIG_HPP
#define SPECTRA_CONFIG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace spectra {

enum class Command {
    lattice_info,
    bands,
    gaps,
    fermi,
    bz_verify,
    edge_check,
    edge_dimension,
    discriminant,
    separation_scan,
    demo,
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);

struct PotentialSpec {
    std::string type = "explicit";     // explicit | checkerboard | direction_periodic | random
    std::vector<double> values;        // explicit values or p-periodic profile
    double v0 = 0.0, v1 = 0.0;         // checkerboard
    std::vector<int> signs;            // direction_periodic
    int p = 2;
    uint64_t seed = 0;                 // random
    double amplitude = 0.0;
};

struct RunConfig {
    Command command = Command::lattice_info;
    int dim = 0;
    std::optional<Eigen::MatrixXi> basis;
    std::optional<PotentialSpec> potential;

    std::vector<int> resolution;       // resolved per-axis counts
    double gap_tol = 1e-6;
    double tau = 1e-6;
    double edge_tol = 1e-5;
    uint64_t seed = 0;
    int retries = 32;

    std::vector<double> energies;      // bz-verify grid
    double energy = 0.0;               // fermi / discriminant level
    bool has_energy = false;
    int samples = 0;                   // fermi point count / scan samples per t
    std::vector<double> t_grid;
    std::vector<double> h_list;
    int band = 1;                      // 1-based in configs and reports
    int edge_sign = +1;
    std::vector<double> theta_rest;
    std::vector<int> u_signs;

    std::string demo_name;
    double epsilon = 0.1;

    std::string out_dir = ".";

    nlohmann::ordered_json echo;       // resolved configuration, emitted in reports
};

/// Parse and validate a JSON run configuration; fills defaults and the echo.
RunConfig parse_config(const std::string& text);

} // namespace spectra

#endif
