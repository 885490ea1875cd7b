#include "igam/experiment.hpp"
#include "igam/presets.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

bool log_enabled() {
    const char* v = std::getenv("IGAMORTAR_LOG");
    return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"igamortar: multi-patch isogeometric mortar/penalty experiments"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string outdir = "out";
    int threads = 0;
    auto* run = app.add_subcommand("run", "run an experiment described by a config file");
    run->add_option("config", config_path, "TOML config file")->required();
    run->add_option("--out", outdir, "output directory");
    run->add_option("--threads", threads, "number of threads (0 = library default)");

    auto* presets = app.add_subcommand("presets", "list available geometry presets");

    CLI11_PARSE(app, argc, argv);

    if (*presets) {
        for (const auto& [name, desc] : igam::list_presets())
            std::cout << name << "  -  " << desc << "\n";
        return 0;
    }
    if (*run) {
        try {
            if (threads > 0) Eigen::setNbThreads(threads);
            if (log_enabled()) std::cerr << "[igamortar] reading " << config_path << "\n";
            const igam::Config cfg = igam::Config::parse_file(config_path);
            const auto result = igam::run_experiment(cfg, outdir);
            if (log_enabled())
                std::cerr << "[igamortar] finished kind=" << result.kind << "\n";
            for (const auto& f : result.outputs) std::cout << outdir << "/" << f << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }
    std::cout << app.help();
    return 0;
}
