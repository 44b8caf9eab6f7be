#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qgan/gan.hpp"

namespace qgan {

/// Raised on any configuration problem (parse error, unknown key, bad value).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Validated experiment description. Parsed strictly: unknown keys are
/// rejected and every value is range-checked before any compute starts.
struct RunConfig {
    std::string experiment;            // gan-uniform | gan-nonuniform |
                                       // classifier-two-moon | grad-check | arch-sweep
    std::string network = "net1";      // net1..net5
    std::optional<int> stages;         // alternative to network: E1 stack depth
    std::string generator = "standard";  // standard | truncated

    TrainConfig train;
    ChainParams chain;

    double uniform_lo = 0.4;
    double uniform_hi = 0.6;
    double nonuniform_mean = 0.5;
    double nonuniform_sd = 0.15;
    std::size_t moons_n = 200;
    double moons_noise_sd = 0.1;

    std::uint64_t seed = 7;
    std::string output_dir = "out";
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);
nlohmann::json run_config_to_json(const RunConfig& config);

/// Discriminator circuit selected by the config (network name or stage count).
Circuit config_discriminator(const RunConfig& config);

/// Exit codes: 0 success, 1 failed check (grad-check), 3 training abort.
/// Config problems throw ConfigError before this is reached.
int run_experiment(const RunConfig& config, std::ostream& log);

/// Parameter-shift vs finite-difference sweep over every builder circuit
/// plus the full generator-loss chain check; prints one line per check.
bool run_grad_check(std::uint64_t seed, std::ostream& log);

} // namespace qgan
