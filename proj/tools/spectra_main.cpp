// spectra: band structures, spectral gaps, and Fermi-surface diagnostics for
// discrete periodic Schrodinger operators. One JSON config per run; reports
// are written under --out and echoed to stdout.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectra/errors.hpp"
#include "spectra/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral toolbox for discrete periodic Schrodinger operators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<CLI::App*> subs;
    for (const char* name : {"lattice-info", "bands", "gaps", "fermi", "bz-verify", "edge-check",
                             "edge-dimension", "discriminant", "separation-scan", "demo"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw spectra::ValidationError("cannot open config file: " + config_path);
        std::ostringstream buf;
        buf << in.rdbuf();

        spectra::RunConfig cfg = spectra::parse_config(buf.str());
        if (spectra::command_name(cfg.command) != command)
            throw spectra::ValidationError("config command '" +
                                           std::string(spectra::command_name(cfg.command)) +
                                           "' does not match CLI subcommand '" + command + "'");
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        const spectra::RunResult run = spectra::execute(cfg);
        std::cout << run.report.dump(2) << std::endl;
        return run.exit_code;
    } catch (const spectra::Error& e) {
        nlohmann::ordered_json err{{"error", {{"reason", e.code()}, {"message", e.what()}}}};
        std::cout << err.dump(2) << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 2;
    }
}
