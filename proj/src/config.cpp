#include "spectra/config.hpp"

#include <cmath>

#include "spectra/errors.hpp"

namespace spectra {

using nlohmann::ordered_json;

namespace {

const std::pair<const char*, Command> kCommands[] = {
    {"lattice-info", Command::lattice_info},
    {"bands", Command::bands},
    {"gaps", Command::gaps},
    {"fermi", Command::fermi},
    {"bz-verify", Command::bz_verify},
    {"edge-check", Command::edge_check},
    {"edge-dimension", Command::edge_dimension},
    {"discriminant", Command::discriminant},
    {"separation-scan", Command::separation_scan},
    {"demo", Command::demo},
};

template <typename T>
T field_or(const ordered_json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(key);
    }
}

std::vector<double> energy_grid(const ordered_json& j) {
    if (j.is_array()) return j.get<std::vector<double>>();
    if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("step"))
        throw ValidationError("energies");
    const double lo = j.at("min").get<double>();
    const double hi = j.at("max").get<double>();
    const double step = j.at("step").get<double>();
    if (step <= 0 || hi < lo) throw ValidationError("energies.step");
    std::vector<double> grid;
    for (long k = 0;; ++k) {
        const double e = lo + k * step;
        if (e > hi + 1e-12) break;
        grid.push_back(e);
    }
    return grid;
}

} // namespace

const char* command_name(Command c) {
    for (const auto& [name, cmd] : kCommands)
        if (cmd == c) return name;
    return "?";
}

Command command_from_name(const std::string& name) {
    for (const auto& [cname, cmd] : kCommands)
        if (name == cname) return cmd;
    throw ValidationError("command");
}

RunConfig parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("configuration must be a JSON object");
    if (!j.contains("command")) throw ValidationError("command");

    RunConfig cfg;
    cfg.command = command_from_name(j.at("command").get<std::string>());

    const bool needs_lattice = cfg.command != Command::demo;
    if (j.contains("lattice")) {
        const auto& lj = j.at("lattice");
        if (!lj.contains("basis")) throw ValidationError("lattice.basis");
        const auto rows = lj.at("basis").get<std::vector<std::vector<int>>>();
        const int d = lj.contains("dim") ? lj.at("dim").get<int>() : static_cast<int>(rows.size());
        if (d < 1 || static_cast<int>(rows.size()) != d) throw ValidationError("lattice.basis");
        Eigen::MatrixXi basis(d, d);
        for (int r = 0; r < d; ++r) {
            if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != d)
                throw ValidationError("lattice.basis");
            for (int c = 0; c < d; ++c) basis(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
        cfg.dim = d;
        cfg.basis = basis;
    } else if (needs_lattice) {
        throw ValidationError("lattice.basis");
    }

    if (j.contains("potential")) {
        const auto& pj = j.at("potential");
        PotentialSpec spec;
        spec.type = field_or<std::string>(pj, "type", "explicit");
        if (spec.type == "explicit") {
            if (!pj.contains("values")) throw ValidationError("potential.values");
            spec.values = pj.at("values").get<std::vector<double>>();
        } else if (spec.type == "checkerboard") {
            spec.v0 = field_or<double>(pj, "v0", -0.1);
            spec.v1 = field_or<double>(pj, "v1", 0.1);
        } else if (spec.type == "direction_periodic") {
            if (!pj.contains("signs") || !pj.contains("p") || !pj.contains("values"))
                throw ValidationError("potential.signs/p/values");
            spec.signs = pj.at("signs").get<std::vector<int>>();
            spec.p = pj.at("p").get<int>();
            spec.values = pj.at("values").get<std::vector<double>>();
        } else if (spec.type == "random") {
            spec.seed = field_or<uint64_t>(pj, "seed", 0);
            spec.amplitude = field_or<double>(pj, "amplitude", 0.05);
        } else {
            throw ValidationError("potential.type");
        }
        cfg.potential = spec;
    }

    if (j.contains("resolution")) {
        const auto& rj = j.at("resolution");
        if (rj.is_array())
            cfg.resolution = rj.get<std::vector<int>>();
        else
            cfg.resolution.assign(static_cast<size_t>(std::max(cfg.dim, 1)), rj.get<int>());
    } else if (cfg.dim > 0) {
        cfg.resolution.assign(static_cast<size_t>(cfg.dim), cfg.dim <= 2 ? 128 : (cfg.dim == 3 ? 32 : 8));
    }
    for (int r : cfg.resolution)
        if (r < 2) throw ValidationError("resolution");

    cfg.gap_tol = field_or<double>(j, "gap_tol", 1e-6);
    cfg.tau = field_or<double>(j, "tau", 1e-6);
    cfg.edge_tol = field_or<double>(j, "edge_tol", 1e-5);
    if (cfg.gap_tol <= 0 || cfg.tau <= 0 || cfg.edge_tol <= 0)
        throw ValidationError("tolerances must be positive");
    cfg.seed = field_or<uint64_t>(j, "seed", 0);
    cfg.retries = field_or<int>(j, "retries", 32);

    if (j.contains("energies")) cfg.energies = energy_grid(j.at("energies"));
    if (j.contains("energy")) {
        cfg.energy = j.at("energy").get<double>();
        cfg.has_energy = true;
    }
    cfg.samples = field_or<int>(j, "samples",
                                cfg.command == Command::separation_scan ? 10000 : 100);
    cfg.t_grid = field_or<std::vector<double>>(
        j, "t_grid", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    cfg.h_list = field_or<std::vector<double>>(
        j, "h_list", {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256});
    cfg.band = field_or<int>(j, "band", 1);
    if (cfg.band < 1) throw ValidationError("band");
    const std::string edge = field_or<std::string>(j, "edge", "+");
    if (edge != "+" && edge != "-") throw ValidationError("edge");
    cfg.edge_sign = edge == "+" ? +1 : -1;
    cfg.theta_rest = field_or<std::vector<double>>(j, "theta_rest", {});
    cfg.u_signs = field_or<std::vector<int>>(j, "u", {});

    if (cfg.command == Command::demo) {
        cfg.demo_name = field_or<std::string>(j, "name", "");
        if (cfg.demo_name != "checkerboard" && cfg.demo_name != "p-periodic")
            throw ValidationError("name");
        cfg.epsilon = field_or<double>(j, "epsilon", 0.1);
    }
    cfg.out_dir = field_or<std::string>(j, "out", ".");

    // resolved echo, fixed key order
    ordered_json echo;
    echo["command"] = command_name(cfg.command);
    if (cfg.basis) {
        std::vector<std::vector<int>> rows(static_cast<size_t>(cfg.dim),
                                           std::vector<int>(static_cast<size_t>(cfg.dim)));
        for (int r = 0; r < cfg.dim; ++r)
            for (int c = 0; c < cfg.dim; ++c)
                rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = (*cfg.basis)(r, c);
        echo["lattice"] = {{"dim", cfg.dim}, {"basis", rows}};
    }
    if (cfg.potential) {
        ordered_json pj;
        pj["type"] = cfg.potential->type;
        if (cfg.potential->type == "explicit") pj["values"] = cfg.potential->values;
        if (cfg.potential->type == "checkerboard") {
            pj["v0"] = cfg.potential->v0;
            pj["v1"] = cfg.potential->v1;
        }
        if (cfg.potential->type == "direction_periodic") {
            pj["signs"] = cfg.potential->signs;
            pj["p"] = cfg.potential->p;
            pj["values"] = cfg.potential->values;
        }
        if (cfg.potential->type == "random") {
            pj["seed"] = cfg.potential->seed;
            pj["amplitude"] = cfg.potential->amplitude;
        }
        echo["potential"] = pj;
    }
    if (!cfg.resolution.empty()) echo["resolution"] = cfg.resolution;
    echo["gap_tol"] = cfg.gap_tol;
    echo["tau"] = cfg.tau;
    echo["edge_tol"] = cfg.edge_tol;
    echo["seed"] = cfg.seed;
    echo["retries"] = cfg.retries;
    if (!cfg.energies.empty()) echo["energies"] = cfg.energies;
    if (cfg.has_energy) echo["energy"] = cfg.energy;
    echo["samples"] = cfg.samples;
    switch (cfg.command) {
        case Command::separation_scan:
            echo["t_grid"] = cfg.t_grid;
            echo["theta_rest"] = cfg.theta_rest;
            echo["u"] = cfg.u_signs;
            break;
        case Command::edge_dimension:
            echo["h_list"] = cfg.h_list;
            [[fallthrough]];
        case Command::edge_check:
            echo["band"] = cfg.band;
            echo["edge"] = edge;
            break;
        case Command::discriminant:
            echo["theta_rest"] = cfg.theta_rest;
            break;
        case Command::demo:
            echo["name"] = cfg.demo_name;
            echo["epsilon"] = cfg.epsilon;
            echo["h_list"] = cfg.h_list;
            break;
        default:
            break;
    }
    cfg.echo = std::move(echo);
    return cfg;
}

} // namespace spectra
