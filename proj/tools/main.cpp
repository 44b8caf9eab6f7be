// Experiment driver: runs a configured experiment, or dumps a builder
// circuit as JSON. Exit codes: 0 success, 1 failed check, 2 bad usage or
// config, 3 training abort.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgan/builders.hpp"
#include "qgan/circuit_json.hpp"
#include "qgan/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Few-qubit statevector simulator and hybrid quantum-classical GAN"};
    app.require_subcommand(0);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    std::string dump_name;

    app.add_option("--config", config_path, "Experiment config (JSON)");
    app.add_option("--seed", seed_override, "Override the config seed");
    app.add_option("--out", out_override, "Override the config output directory");
    app.add_option("--dump-circuit", dump_name,
                   "Print a builder circuit as JSON (generator, e1, e2, ansatz-a, net1..net5)");

    CLI11_PARSE(app, argc, argv);

    if (!dump_name.empty()) {
        const auto circuit = qgan::circuit_by_name(dump_name);
        if (!circuit) {
            std::cerr << "unknown circuit '" << dump_name << "'\n";
            return 2;
        }
        std::cout << qgan::circuit_to_json(*circuit).dump(2) << '\n';
        return 0;
    }

    if (config_path.empty()) {
        std::cerr << "nothing to do: pass --config <file> or --dump-circuit <name>\n";
        return 2;
    }

    try {
        qgan::RunConfig config = qgan::load_run_config(config_path);
        if (seed_override) {
            config.seed = *seed_override;
            config.train.seed = *seed_override;
        }
        if (out_override) config.output_dir = *out_override;
        return qgan::run_experiment(config, std::cout);
    } catch (const qgan::ConfigError& err) {
        std::cerr << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
