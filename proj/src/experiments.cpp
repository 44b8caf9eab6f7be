#include "qgan/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "qgan/builders.hpp"
#include "qgan/circuit_json.hpp"
#include "qgan/metrics.hpp"

namespace qgan {

using nlohmann::json;

namespace {

const std::set<std::string> kExperiments = {"gan-uniform", "gan-nonuniform",
                                            "classifier-two-moon", "grad-check", "arch-sweep"};
const std::set<std::string> kNetworks = {"net1", "net2", "net3", "net4", "net5"};

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("config: unknown key '" + key + "' in " + where);
        }
    }
}

double require_number(const json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return doc.at(key).get<double>();
}

std::int64_t require_integer(const json& doc, const std::string& key, std::int64_t fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number_integer()) {
        throw ConfigError("config: '" + key + "' must be an integer");
    }
    return doc.at(key).get<std::int64_t>();
}

std::string require_string(const json& doc, const std::string& key, std::string fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_string()) throw ConfigError("config: '" + key + "' must be a string");
    return doc.at(key).get<std::string>();
}

} // namespace

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(doc,
                        {"experiment", "architecture", "generator", "train", "chain",
                         "dataset", "seed", "output_dir"},
                        "top level");

    RunConfig config;
    if (!doc.contains("experiment")) throw ConfigError("config: missing 'experiment'");
    config.experiment = require_string(doc, "experiment", "");
    if (!kExperiments.contains(config.experiment)) {
        throw ConfigError("config: unknown experiment '" + config.experiment + "'");
    }

    if (doc.contains("architecture")) {
        const json& arch = doc.at("architecture");
        if (!arch.is_object()) throw ConfigError("config: 'architecture' must be an object");
        reject_unknown_keys(arch, {"name", "stages"}, "architecture");
        if (arch.contains("name") && arch.contains("stages")) {
            throw ConfigError("config: architecture takes 'name' or 'stages', not both");
        }
        if (arch.contains("name")) {
            config.network = require_string(arch, "name", "net1");
            if (!kNetworks.contains(config.network)) {
                throw ConfigError("config: unknown network '" + config.network + "'");
            }
        }
        if (arch.contains("stages")) {
            const std::int64_t stages = require_integer(arch, "stages", 5);
            if (stages < 1 || stages > 5) {
                throw ConfigError("config: architecture.stages must be in [1, 5]");
            }
            config.stages = static_cast<int>(stages);
        }
    }

    config.generator = require_string(doc, "generator", "standard");
    if (config.generator != "standard" && config.generator != "truncated") {
        throw ConfigError("config: generator must be 'standard' or 'truncated'");
    }

    if (doc.contains("train")) {
        const json& train = doc.at("train");
        if (!train.is_object()) throw ConfigError("config: 'train' must be an object");
        reject_unknown_keys(train,
                            {"alpha_d", "alpha_g", "batch_size", "epochs", "steps_per_epoch",
                             "grad_mode", "eval_samples", "init"},
                            "train");
        config.train.alpha_d = require_number(train, "alpha_d", config.train.alpha_d);
        config.train.alpha_g = require_number(train, "alpha_g", config.train.alpha_g);
        config.train.batch_size =
            static_cast<int>(require_integer(train, "batch_size", config.train.batch_size));
        config.train.epochs =
            static_cast<int>(require_integer(train, "epochs", config.train.epochs));
        config.train.steps_per_epoch = static_cast<int>(
            require_integer(train, "steps_per_epoch", config.train.steps_per_epoch));
        config.train.eval_samples = static_cast<int>(
            require_integer(train, "eval_samples", config.train.eval_samples));
        const std::string mode = require_string(train, "grad_mode", "exact");
        if (mode == "exact") {
            config.train.grad_mode = GradMode::Exact;
        } else if (mode == "paper") {
            config.train.grad_mode = GradMode::Paper;
        } else {
            throw ConfigError("config: grad_mode must be 'exact' or 'paper'");
        }
        const std::string init = require_string(train, "init", "uniform");
        if (init == "identity-block") {
            throw ConfigError("config: init 'identity-block' is not implemented");
        }
        if (init != "uniform") {
            throw ConfigError("config: init must be 'uniform'");
        }
        if (!(config.train.alpha_d >= 0.0) || !(config.train.alpha_g >= 0.0)) {
            throw ConfigError("config: learning rates must be nonnegative");
        }
        if (config.train.batch_size < 1) throw ConfigError("config: batch_size must be >= 1");
        if (config.train.epochs < 0) throw ConfigError("config: epochs must be >= 0");
        if (config.train.steps_per_epoch < 1) {
            throw ConfigError("config: steps_per_epoch must be >= 1");
        }
        if (config.train.eval_samples < 2) {
            throw ConfigError("config: eval_samples must be >= 2");
        }
    } else {
        config.train.epochs = 300;
    }

    if (doc.contains("chain")) {
        const json& chain = doc.at("chain");
        if (!chain.is_object()) throw ConfigError("config: 'chain' must be an object");
        reject_unknown_keys(chain, {"k_g", "delta_g", "adapt"}, "chain");
        config.chain.k_g = require_number(chain, "k_g", config.chain.k_g);
        config.chain.delta_g = require_number(chain, "delta_g", config.chain.delta_g);
        if (chain.contains("adapt")) {
            if (!chain.at("adapt").is_boolean()) {
                throw ConfigError("config: chain.adapt must be a boolean");
            }
            config.chain.adapt = chain.at("adapt").get<bool>();
        }
        if (!(config.chain.delta_g > 0.0 && config.chain.delta_g <= std::numbers::pi)) {
            throw ConfigError("config: chain.delta_g must lie in (0, pi]");
        }
    }

    if (doc.contains("dataset")) {
        const json& dataset = doc.at("dataset");
        if (!dataset.is_object()) throw ConfigError("config: 'dataset' must be an object");
        reject_unknown_keys(dataset, {"lo", "hi", "mean", "sd", "n", "noise_sd"}, "dataset");
        config.uniform_lo = require_number(dataset, "lo", config.uniform_lo);
        config.uniform_hi = require_number(dataset, "hi", config.uniform_hi);
        config.nonuniform_mean = require_number(dataset, "mean", config.nonuniform_mean);
        config.nonuniform_sd = require_number(dataset, "sd", config.nonuniform_sd);
        const std::int64_t n =
            require_integer(dataset, "n", static_cast<std::int64_t>(config.moons_n));
        if (n < 2 || n % 2 != 0) throw ConfigError("config: dataset.n must be even and >= 2");
        config.moons_n = static_cast<std::size_t>(n);
        config.moons_noise_sd = require_number(dataset, "noise_sd", config.moons_noise_sd);
        if (!(config.uniform_lo >= 0.0 && config.uniform_lo < config.uniform_hi &&
              config.uniform_hi <= 1.0)) {
            throw ConfigError("config: need 0 <= dataset.lo < dataset.hi <= 1");
        }
        if (!(config.nonuniform_mean > 0.0 && config.nonuniform_mean < 1.0)) {
            throw ConfigError("config: dataset.mean must lie in (0, 1)");
        }
        if (!(config.nonuniform_sd > 0.0)) throw ConfigError("config: dataset.sd must be > 0");
        if (config.moons_noise_sd < 0.0) {
            throw ConfigError("config: dataset.noise_sd must be >= 0");
        }
    }

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer()) {
            throw ConfigError("config: 'seed' must be an integer");
        }
        config.seed = doc.at("seed").get<std::uint64_t>();
    }
    config.train.seed = config.seed;
    config.output_dir = require_string(doc, "output_dir", config.output_dir);
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    return parse_run_config(doc);
}

json run_config_to_json(const RunConfig& config) {
    json arch;
    if (config.stages) {
        arch = json{{"stages", *config.stages}};
    } else {
        arch = json{{"name", config.network}};
    }
    return json{
        {"experiment", config.experiment},
        {"architecture", arch},
        {"generator", config.generator},
        {"train",
         {{"alpha_d", config.train.alpha_d},
          {"alpha_g", config.train.alpha_g},
          {"batch_size", config.train.batch_size},
          {"epochs", config.train.epochs},
          {"steps_per_epoch", config.train.steps_per_epoch},
          {"grad_mode", config.train.grad_mode == GradMode::Exact ? "exact" : "paper"},
          {"eval_samples", config.train.eval_samples}}},
        {"chain",
         {{"k_g", config.chain.k_g},
          {"delta_g", config.chain.delta_g},
          {"adapt", config.chain.adapt}}},
        {"dataset",
         {{"lo", config.uniform_lo},
          {"hi", config.uniform_hi},
          {"mean", config.nonuniform_mean},
          {"sd", config.nonuniform_sd},
          {"n", config.moons_n},
          {"noise_sd", config.moons_noise_sd}}},
        {"seed", config.seed},
        {"output_dir", config.output_dir}};
}

Circuit config_discriminator(const RunConfig& config) {
    if (config.stages) return build_discriminator(*config.stages);
    const auto circuit = circuit_by_name(config.network);
    if (!circuit) throw ConfigError("config: unknown network '" + config.network + "'");
    return *circuit;
}

namespace {

namespace fs = std::filesystem;

void write_json_file(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

void write_circuit_file(const fs::path& path, const Circuit& circuit) {
    write_json_file(path, circuit_to_json(circuit));
}

json summary_skeleton(const RunConfig& config) {
    return json{{"config", run_config_to_json(config)},
                {"seed", config.seed},
                {"rng_algorithm", std::string(Rng::kAlgorithm)},
                {"final_losses", json::object()},
                {"final_metrics", json::object()}};
}

DataSource make_gan_source(const RunConfig& config) {
    if (config.experiment == "gan-uniform") {
        const double lo = config.uniform_lo;
        const double hi = config.uniform_hi;
        return [lo, hi](std::size_t n, Rng& rng) { return sample_uniform(n, lo, hi, rng); };
    }
    const double mean = config.nonuniform_mean;
    const double sd = config.nonuniform_sd;
    return [mean, sd](std::size_t n, Rng& rng) { return sample_nonuniform(n, mean, sd, rng); };
}

std::vector<double> marginal(const std::vector<FeaturePair>& points, int coord) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const FeaturePair& p : points) out.push_back(p[coord]);
    return out;
}

int run_gan_experiment(const RunConfig& config, std::ostream& log) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();

    Rng rng(config.seed);
    const Circuit gen_circuit = config.generator == "truncated" ? build_generator_truncated()
                                                                : build_generator();
    GanModels models = make_gan_models(gen_circuit, config_discriminator(config), rng);
    models.chain = config.chain;
    write_circuit_file(dir / "generator_circuit.json", models.generator.circuit);
    write_circuit_file(dir / "discriminator_circuit.json", models.discriminator.circuit);

    const DataSource source = make_gan_source(config);
    const TrainTrace trace = train_gan(models, config.train, source, rng);
    write_trace_csv((dir / "trace.csv").string(), trace);
    write_points_csv((dir / "samples.csv").string(), trace.final_samples);

    json summary = summary_skeleton(config);
    summary["gate_count"] = count_gates(models.generator.circuit) +
                            count_gates(models.discriminator.circuit);
    summary["trainable_count"] = count_trainable(models.generator.circuit) +
                                 count_trainable(models.discriminator.circuit);
    summary["final_theta_g"] = trace.final_theta_g;
    summary["final_theta_d"] = trace.final_theta_d;
    if (!trace.epochs.empty()) {
        const EpochRecord& last = trace.epochs.back();
        summary["final_losses"] = {{"disc", last.disc_loss}, {"gen", last.gen_loss}};
        summary["final_metrics"] = {
            {"kl", last.kl},
            {"js", last.js},
            {"concentration_x1", concentration(marginal(trace.final_samples, 0))},
            {"concentration_x2", concentration(marginal(trace.final_samples, 1))}};
    }
    summary["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json_file(dir / "summary.json", summary);
    if (!trace.epochs.empty()) {
        log << "final disc loss " << trace.epochs.back().disc_loss << ", gen loss "
            << trace.epochs.back().gen_loss << ", kl " << trace.epochs.back().kl << '\n';
    }
    return 0;
}

struct ClassifierResult {
    double final_loss = 0.0;
    double final_accuracy = 0.0;
    TrainTrace trace;
};

ClassifierResult run_classifier(const Circuit& circuit, const LabeledDataset& dataset,
                                const TrainConfig& train, Rng& rng) {
    DiscriminatorModel model{circuit, random_theta(circuit.num_trainable, rng)};
    ClassifierResult result;
    result.trace = train_classifier(model, dataset, train, rng);
    result.final_loss = classifier_loss(model, dataset);
    std::vector<double> outputs;
    outputs.reserve(dataset.points.size());
    for (const FeaturePair& x : dataset.points) {
        outputs.push_back(discriminator_output(model, x));
    }
    result.final_accuracy = accuracy(outputs, dataset.labels);
    result.trace.final_theta_d = model.theta;
    return result;
}

void write_boundary_csv(const fs::path& path, const DiscriminatorModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "x1,x2,d\n";
    constexpr int kGrid = 100;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const FeaturePair x{static_cast<double>(i) / (kGrid - 1),
                                static_cast<double>(j) / (kGrid - 1)};
            char buf[96];
            const int len = std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.17g\n", x[0], x[1],
                                          discriminator_output(model, x));
            out.write(buf, len);
        }
    }
}

int run_classifier_experiment(const RunConfig& config, std::ostream& log) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();

    Rng rng(config.seed);
    const LabeledDataset dataset = two_moons(config.moons_n, config.moons_noise_sd, rng);
    write_points_csv((dir / "dataset.csv").string(), dataset.points, &dataset.labels);

    const Circuit circuit = config_discriminator(config);
    write_circuit_file(dir / "network_circuit.json", circuit);
    const ClassifierResult result = run_classifier(circuit, dataset, config.train, rng);
    write_trace_csv((dir / "trace.csv").string(), result.trace);

    DiscriminatorModel model{circuit, result.trace.final_theta_d};
    write_boundary_csv(dir / "boundary.csv", model);

    json summary = summary_skeleton(config);
    summary["gate_count"] = count_gates(circuit);
    summary["trainable_count"] = count_trainable(circuit);
    summary["final_losses"] = {{"loss", result.final_loss}};
    summary["final_metrics"] = {{"final_loss", result.final_loss},
                                {"accuracy", result.final_accuracy}};
    summary["final_theta_d"] = result.trace.final_theta_d;
    summary["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json_file(dir / "summary.json", summary);
    log << "final loss " << result.final_loss << ", accuracy " << result.final_accuracy
        << '\n';
    return 0;
}

int run_arch_sweep(const RunConfig& config, std::ostream& log) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();

    Rng data_rng(config.seed);
    const LabeledDataset dataset = two_moons(config.moons_n, config.moons_noise_sd, data_rng);
    write_points_csv((dir / "dataset.csv").string(), dataset.points, &dataset.labels);

    struct Row {
        int id;
        double loss;
        double accuracy;
    };
    std::vector<Row> rows;
    for (int id = 1; id <= 5; ++id) {
        Rng rng(config.seed + static_cast<std::uint64_t>(id));
        const ClassifierResult result =
            run_classifier(build_network(id), dataset, config.train, rng);
        rows.push_back({id, result.final_loss, result.final_accuracy});
        log << "net" << id << ": final loss " << result.final_loss << ", accuracy "
            << result.final_accuracy << '\n';
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.loss < b.loss; });

    std::ofstream out(dir / "comparison.csv");
    if (!out) throw std::runtime_error("cannot open comparison.csv");
    out << "network,final_loss,accuracy\n";
    for (const Row& row : rows) {
        char buf[96];
        const int len = std::snprintf(buf, sizeof(buf), "net%d,%.17g,%.17g\n", row.id,
                                      row.loss, row.accuracy);
        out.write(buf, len);
    }

    json summary = summary_skeleton(config);
    json nets = json::array();
    for (const Row& row : rows) {
        nets.push_back(
            {{"network", "net" + std::to_string(row.id)}, {"final_loss", row.loss},
             {"accuracy", row.accuracy}});
    }
    summary["final_metrics"] = {{"ranking", nets}};
    summary["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json_file(dir / "summary.json", summary);
    return 0;
}

} // namespace

bool run_grad_check(std::uint64_t seed, std::ostream& log) {
    constexpr double kShiftTol = 1e-6;
    constexpr double kChainTol = 1e-5;
    constexpr double kEps = 1e-4;
    Rng rng(seed);
    bool ok = true;

    const std::vector<std::pair<std::string, Circuit>> circuits = {
        {"generator", build_generator()}, {"e1", build_encoder_e1()},
        {"e2", build_encoder_e2()},       {"ansatz-a", build_ansatz_a()},
        {"net1", build_network(1)},       {"net3", build_network(3)}};

    // 100 draws spread over the builder circuits: parameter-shift vs FD.
    double worst_shift = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const auto& [name, circuit] = circuits[draw % circuits.size()];
        std::vector<double> features(circuit.num_features);
        for (double& f : features) f = rng.uniform();
        std::vector<double> theta = random_theta(circuit.num_trainable, rng);
        const int qubit = circuit.readout_qubits.at(0);
        for (int i = 0; i < circuit.num_trainable; ++i) {
            const double shift = param_shift_derivative(circuit, features, theta, i, qubit);
            const double fd = finite_difference(circuit, features, theta, i, qubit, kEps);
            worst_shift = std::max(worst_shift, std::abs(shift - fd));
        }
        // Exact feature derivatives against a feature-space central difference.
        // Stacked encoders re-upload each feature through ten pi-scaled gates,
        // so the FD step must be finer than the parameter one to stay in band.
        const double feature_eps = 1e-5;
        for (int j = 0; j < circuit.num_features; ++j) {
            const double exact = feature_derivative(circuit, features, theta, j, qubit);
            std::vector<double> bumped = features;
            bumped[j] = features[j] + feature_eps;
            const double plus = expectation(circuit, bumped, theta, qubit);
            bumped[j] = features[j] - feature_eps;
            const double minus = expectation(circuit, bumped, theta, qubit);
            worst_shift = std::max(
                worst_shift, std::abs(exact - (plus - minus) / (2 * feature_eps)));
        }
    }
    log << "parameter-shift vs finite-difference: max |error| = " << worst_shift
        << (worst_shift <= kShiftTol ? "  [ok]" : "  [FAIL]") << '\n';
    ok = ok && worst_shift <= kShiftTol;

    // Generator-loss chain gradient vs finite differences of the full loss,
    // 1-stage discriminator, batch of 2.
    GanModels models = make_gan_models(build_generator(), build_discriminator(1), rng);
    const std::vector<FeaturePair> noise = sample_noise(2, rng);
    const std::vector<double> chain_grad = gen_loss_gradient(
        models.generator, models.discriminator, noise, models.chain, GradMode::Exact);
    double worst_chain = 0.0;
    for (std::size_t i = 0; i < models.generator.theta.size(); ++i) {
        GeneratorModel probe = models.generator;
        probe.theta[i] = models.generator.theta[i] + kEps;
        const double plus = gen_loss(probe, models.discriminator, noise);
        probe.theta[i] = models.generator.theta[i] - kEps;
        const double minus = gen_loss(probe, models.discriminator, noise);
        worst_chain = std::max(worst_chain,
                               std::abs(chain_grad[i] - (plus - minus) / (2 * kEps)));
    }
    log << "generator-loss chain vs finite-difference: max |error| = " << worst_chain
        << (worst_chain <= kChainTol ? "  [ok]" : "  [FAIL]") << '\n';
    ok = ok && worst_chain <= kChainTol;

    // Discriminator-loss gradient against the same oracle.
    const std::vector<FeaturePair> reals = {{0.45, 0.55}, {0.52, 0.41}};
    const std::vector<double> disc_grad =
        disc_loss_gradient(models.discriminator, models.generator, reals, noise);
    std::vector<FeaturePair> fakes;
    for (const FeaturePair& z : noise) fakes.push_back(generator_output(models.generator, z));
    double worst_disc = 0.0;
    for (std::size_t i = 0; i < models.discriminator.theta.size(); ++i) {
        DiscriminatorModel probe = models.discriminator;
        probe.theta[i] = models.discriminator.theta[i] + kEps;
        const double plus = disc_loss(probe, reals, fakes);
        probe.theta[i] = models.discriminator.theta[i] - kEps;
        const double minus = disc_loss(probe, reals, fakes);
        worst_disc =
            std::max(worst_disc, std::abs(disc_grad[i] - (plus - minus) / (2 * kEps)));
    }
    log << "discriminator-loss gradient vs finite-difference: max |error| = " << worst_disc
        << (worst_disc <= kChainTol ? "  [ok]" : "  [FAIL]") << '\n';
    ok = ok && worst_disc <= kChainTol;
    return ok;
}

int run_experiment(const RunConfig& config, std::ostream& log) {
    try {
        if (config.experiment == "grad-check") {
            const bool ok = run_grad_check(config.seed, log);
            if (!config.output_dir.empty()) {
                fs::create_directories(config.output_dir);
                json summary = summary_skeleton(config);
                summary["final_metrics"] = {{"grad_check_passed", ok}};
                write_json_file(fs::path(config.output_dir) / "summary.json", summary);
            }
            return ok ? 0 : 1;
        }
        if (config.experiment == "gan-uniform" || config.experiment == "gan-nonuniform") {
            return run_gan_experiment(config, log);
        }
        if (config.experiment == "classifier-two-moon") {
            return run_classifier_experiment(config, log);
        }
        if (config.experiment == "arch-sweep") {
            return run_arch_sweep(config, log);
        }
    } catch (const TrainingAbort& abort) {
        log << "training aborted: " << abort.what() << " (epoch " << abort.epoch() << ")\n";
        log << "parameter snapshot:";
        for (double t : abort.theta_snapshot()) log << ' ' << t;
        log << '\n';
        return 3;
    }
    throw ConfigError("config: unknown experiment '" + config.experiment + "'");
}

} // namespace qgan
