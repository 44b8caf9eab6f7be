#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgan/experiments.hpp"

using namespace qgan;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

json small_gan_config(const std::string& out) {
    return json{{"experiment", "gan-uniform"},
                {"architecture", {{"stages", 1}}},
                {"train",
                 {{"epochs", 3},
                  {"steps_per_epoch", 1},
                  {"batch_size", 3},
                  {"eval_samples", 30}}},
                {"seed", 404},
                {"output_dir", out}};
}

} // namespace

TEST_SUITE_BEGIN("experiments");

TEST_CASE("config parsing applies defaults") {
    const RunConfig config =
        parse_run_config(json{{"experiment", "gan-uniform"}, {"seed", 9}});
    CHECK(config.experiment == "gan-uniform");
    CHECK(config.network == "net1");
    CHECK(!config.stages.has_value());
    CHECK(config.train.alpha_d == 0.01);
    CHECK(config.train.alpha_g == 0.01);
    CHECK(config.train.batch_size == 10);
    CHECK(config.train.epochs == 300);
    CHECK(config.train.grad_mode == GradMode::Exact);
    CHECK(config.chain.k_g == 0.5);
    CHECK(config.chain.delta_g == doctest::Approx(std::numbers::pi / 2));
    CHECK(config.seed == 9);
    CHECK(config.train.seed == 9);
}

TEST_CASE("config parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "nope"}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"seed", 3}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::array()), ConfigError);
    CHECK_THROWS_AS(
        parse_run_config(json{{"experiment", "gan-uniform"}, {"surprise", 1}}),
        ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"train", {{"epochs", -1}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"train", {{"mystery", 2}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"architecture", {{"name", "net7"}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"architecture", {{"stages", 9}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"dataset", {{"lo", 0.9}, {"hi", 0.2}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"chain", {{"delta_g", 4.0}}}}),
                    ConfigError);
    // Declared but unimplemented initialization scheme is rejected up front.
    CHECK_THROWS_AS(parse_run_config(json{{"experiment", "gan-uniform"},
                                          {"train", {{"init", "identity-block"}}}}),
                    ConfigError);
}

TEST_CASE("config file loading reports parse position") {
    TempDir dir("qgan_cfg_test");
    const fs::path path = dir.path / "broken.json";
    std::ofstream(path) << "{\n  \"experiment\": \"gan-uniform\",\n  oops\n}\n";
    try {
        load_run_config(path.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        // nlohmann reports line/column; that is the line-level message.
        CHECK(std::string(err.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(load_run_config((dir.path / "missing.json").string()), ConfigError);
}

TEST_CASE("config_discriminator honors names and stages") {
    RunConfig config;
    config.network = "net3";
    CHECK(count_gates(config_discriminator(config)) == 18);
    config.stages = 2;
    CHECK(count_gates(config_discriminator(config)) == 20);
}

TEST_CASE("grad-check experiment passes") {
    std::ostringstream log;
    CHECK(run_grad_check(2024, log));
    CHECK(log.str().find("[ok]") != std::string::npos);
    CHECK(log.str().find("FAIL") == std::string::npos);
}

TEST_CASE("gan experiment writes its artifacts and is byte-deterministic") {
    TempDir a("qgan_exp_a");
    TempDir b("qgan_exp_b");
    std::ostringstream log;

    const RunConfig first = parse_run_config(small_gan_config((a.path / "run").string()));
    REQUIRE(run_experiment(first, log) == 0);
    const RunConfig second = parse_run_config(small_gan_config((b.path / "run").string()));
    REQUIRE(run_experiment(second, log) == 0);

    for (const char* name : {"trace.csv", "samples.csv"}) {
        const std::string lhs = read_file(a.path / "run" / name);
        CHECK(!lhs.empty());
        CHECK(lhs == read_file(b.path / "run" / name));
    }
    for (const char* name :
         {"generator_circuit.json", "discriminator_circuit.json", "summary.json"}) {
        CHECK(fs::exists(a.path / "run" / name));
    }

    const json summary = json::parse(read_file(a.path / "run" / "summary.json"));
    CHECK(summary.at("seed") == 404);
    CHECK(summary.at("rng_algorithm") == std::string(Rng::kAlgorithm));
    CHECK(summary.at("gate_count") == 13 + 10);
    CHECK(summary.at("trainable_count") == 11 + 4);
    CHECK(summary.contains("wall_time_seconds"));

    // The first trace line is fixed by the seed; spot-check the header only.
    const std::string trace = read_file(a.path / "run" / "trace.csv");
    CHECK(trace.rfind("epoch,disc_loss,gen_loss,disc_grad_norm,gen_grad_norm,kl,js\n", 0) ==
          0);
}

TEST_CASE("classifier experiment writes boundary grid and summary") {
    TempDir dir("qgan_exp_cls");
    json config_doc{{"experiment", "classifier-two-moon"},
                    {"architecture", {{"stages", 1}}},
                    {"dataset", {{"n", 24}, {"noise_sd", 0.1}}},
                    {"train", {{"epochs", 2}, {"batch_size", 8}}},
                    {"seed", 7},
                    {"output_dir", (dir.path / "run").string()}};
    std::ostringstream log;
    REQUIRE(run_experiment(parse_run_config(config_doc), log) == 0);

    const std::string boundary = read_file(dir.path / "run" / "boundary.csv");
    CHECK(boundary.rfind("x1,x2,d\n", 0) == 0);
    // Header plus the 100x100 lattice.
    CHECK(std::count(boundary.begin(), boundary.end(), '\n') == 10001);

    const json summary = json::parse(read_file(dir.path / "run" / "summary.json"));
    CHECK(summary.at("final_metrics").contains("accuracy"));
    CHECK(summary.at("final_metrics").contains("final_loss"));
    CHECK(fs::exists(dir.path / "run" / "dataset.csv"));
    CHECK(fs::exists(dir.path / "run" / "network_circuit.json"));
}

TEST_CASE("training abort surfaces as exit code 3") {
    TempDir dir("qgan_exp_abort");
    json config_doc = small_gan_config((dir.path / "run").string());
    config_doc["train"]["alpha_d"] = 1e308;
    std::ostringstream log;
    CHECK(run_experiment(parse_run_config(config_doc), log) == 3);
    CHECK(log.str().find("aborted") != std::string::npos);
    CHECK(log.str().find("snapshot") != std::string::npos);
}

TEST_SUITE_END();
