// scatter: coherent-control e-H2+ dissociation scenarios from the command line.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scatter/config.hpp"
#include "scatter/errors.hpp"
#include "scatter/scenarios.hpp"

namespace {

scatter::Config load_config(const std::string& path_arg,
                            const std::vector<std::string>& overrides) {
    std::string path = path_arg;
    if (path.empty()) {
        if (const char* env = std::getenv("SCATTER_CONFIG")) path = env;
    }
    scatter::Config config =
        path.empty() ? scatter::Config::defaults() : scatter::Config::from_file(path);
    for (const auto& assignment : overrides) config.set(assignment);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-Born e-H2+ dissociation: coherent-control scenarios"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario = "fig1";
    std::string outdir = "out";
    std::string format = "csv";
    int threads = 1;
    std::vector<std::string> overrides;

    CLI::App* run = app.add_subcommand("run", "compute a scenario and write datasets");
    run->add_option("config", config_path, "config file (else $SCATTER_CONFIG, else defaults)");
    run->add_option("--scenario", scenario, "bound|continuum|fig1|fig2|fig3b|fig3c|thermal|custom");
    run->add_option("-o,--output", outdir, "output directory");
    run->add_option("--set", overrides, "override config entries, key=value")->take_all();
    run->add_option("--threads", threads, "worker thread cap");
    run->add_option("--format", format, "dataset format: csv|json");

    CLI::App* validate = app.add_subcommand("validate", "check a config without computing");
    validate->add_option("config", config_path, "config file (else $SCATTER_CONFIG)");
    validate->add_option("--scenario", scenario, "scenario to pre-flight");
    validate->add_option("--set", overrides, "override config entries, key=value")->take_all();

    CLI11_PARSE(app, argc, argv);

    try {
        scatter::Config config = load_config(config_path, overrides);
        if (run->parsed()) {
            if (threads < 1) threads = 1;
            scatter::run_scenario(scenario, config, outdir, threads, format);
            return 0;
        }
        auto issues = scatter::validate_scenario(scenario, config);
        if (issues.empty()) {
            std::cout << "OK\n";
            return 0;
        }
        for (const auto& issue : issues) std::cerr << "invalid: " << issue << "\n";
        return 1;
    } catch (const scatter::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const scatter::InfeasibleStateError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const scatter::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const scatter::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
