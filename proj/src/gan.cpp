#include "qgan/gan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "qgan/metrics.hpp"

namespace qgan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void check_chain(const ChainParams& chain) {
    if (!(chain.delta_g > 0.0 && chain.delta_g <= std::numbers::pi)) {
        throw std::invalid_argument("chain: delta_g must lie in (0, pi]");
    }
    if (!std::isfinite(chain.k_g)) {
        throw std::invalid_argument("chain: k_g must be finite");
    }
}

void check_train_config(const TrainConfig& config) {
    // alpha = 0 is allowed so a no-op step can be asserted exactly.
    if (!(config.alpha_d >= 0.0) || !(config.alpha_g >= 0.0)) {
        throw std::invalid_argument("train: learning rates must be nonnegative");
    }
    if (config.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
    if (config.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
    if (config.steps_per_epoch < 1) {
        throw std::invalid_argument("train: steps_per_epoch must be >= 1");
    }
    if (config.eval_samples < 2) {
        throw std::invalid_argument("train: eval_samples must be >= 2");
    }
}

} // namespace

double clamp_unit(double p) {
    if (p < kOutputClamp) return kOutputClamp;
    if (p > 1.0 - kOutputClamp) return 1.0 - kOutputClamp;
    return p;  // NaN falls through and poisons the caller's loss
}

TrainingAbort::TrainingAbort(std::string message, int epoch, std::vector<double> theta_snapshot)
    : std::runtime_error(std::move(message)), epoch_(epoch),
      theta_snapshot_(std::move(theta_snapshot)) {}

double discriminator_output(const DiscriminatorModel& model, const FeaturePair& x) {
    const double e =
        expectation(model.circuit, x, model.theta, model.circuit.readout_qubits.at(0));
    return 0.5 * (1.0 + e);
}

FeaturePair generator_output(const GeneratorModel& model, const FeaturePair& z) {
    const StateVector state = bind_and_run(model.circuit, z, model.theta);
    FeaturePair out{};
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = 0.5 * (1.0 + expectation_pauli_z(state, model.circuit.readout_qubits.at(j)));
    }
    return out;
}

double disc_loss_from_outputs(std::span<const double> d_real, std::span<const double> d_fake) {
    if (d_real.empty() || d_fake.empty()) {
        throw std::invalid_argument("disc_loss: empty batch");
    }
    double real_term = 0.0;
    for (double d : d_real) real_term += std::log(clamp_unit(d));
    double fake_term = 0.0;
    for (double d : d_fake) fake_term += std::log(clamp_unit(1.0 - d));
    return -real_term / static_cast<double>(d_real.size()) -
           fake_term / static_cast<double>(d_fake.size());
}

double gen_loss_from_outputs(std::span<const double> d_fake) {
    if (d_fake.empty()) throw std::invalid_argument("gen_loss: empty batch");
    double term = 0.0;
    for (double d : d_fake) term += std::log(clamp_unit(d));
    return -term / static_cast<double>(d_fake.size());
}

double disc_loss(const DiscriminatorModel& disc, std::span<const FeaturePair> real_batch,
                 std::span<const FeaturePair> fake_batch) {
    std::vector<double> d_real;
    d_real.reserve(real_batch.size());
    for (const FeaturePair& x : real_batch) d_real.push_back(discriminator_output(disc, x));
    std::vector<double> d_fake;
    d_fake.reserve(fake_batch.size());
    for (const FeaturePair& x : fake_batch) d_fake.push_back(discriminator_output(disc, x));
    return disc_loss_from_outputs(d_real, d_fake);
}

double gen_loss(const GeneratorModel& gen, const DiscriminatorModel& disc,
                std::span<const FeaturePair> noise_batch) {
    std::vector<double> d_fake;
    d_fake.reserve(noise_batch.size());
    for (const FeaturePair& z : noise_batch) {
        d_fake.push_back(discriminator_output(disc, generator_output(gen, z)));
    }
    return gen_loss_from_outputs(d_fake);
}

std::vector<double> disc_loss_gradient(const DiscriminatorModel& disc,
                                       const GeneratorModel& gen,
                                       std::span<const FeaturePair> real_batch,
                                       std::span<const FeaturePair> noise_batch,
                                       GradientTelemetry* telemetry) {
    if (real_batch.empty() || noise_batch.empty()) {
        throw std::invalid_argument("disc_loss_gradient: empty batch");
    }
    const int readout = disc.circuit.readout_qubits.at(0);
    std::vector<FeaturePair> fakes;
    fakes.reserve(noise_batch.size());
    for (const FeaturePair& z : noise_batch) fakes.push_back(generator_output(gen, z));

    std::vector<double> grad(disc.theta.size(), 0.0);
    for (int i = 0; i < disc.circuit.num_trainable; ++i) {
        // d D / d theta_i equals the shift-rule derivative of <Z> since the
        // 1/2 output scaling cancels against the doubled expectation range.
        double real_term = 0.0;
        for (const FeaturePair& x : real_batch) {
            const double d = discriminator_output(disc, x);
            const double dd =
                param_shift_derivative(disc.circuit, x, disc.theta, i, readout, telemetry);
            real_term += -0.5 * dd / clamp_unit(d);
        }
        double fake_term = 0.0;
        for (const FeaturePair& x : fakes) {
            const double d = discriminator_output(disc, x);
            const double dd =
                param_shift_derivative(disc.circuit, x, disc.theta, i, readout, telemetry);
            fake_term += 0.5 * dd / clamp_unit(1.0 - d);
        }
        grad[i] = real_term / static_cast<double>(real_batch.size()) +
                  fake_term / static_cast<double>(fakes.size());
    }
    if (telemetry) telemetry->gradient_norms.push_back(l2_norm(grad));
    return grad;
}

std::vector<double> gen_loss_gradient(const GeneratorModel& gen,
                                      const DiscriminatorModel& disc,
                                      std::span<const FeaturePair> noise_batch,
                                      const ChainParams& chain, GradMode mode,
                                      GradientTelemetry* telemetry) {
    if (noise_batch.empty()) {
        throw std::invalid_argument("gen_loss_gradient: empty batch");
    }
    check_chain(chain);
    const int disc_readout = disc.circuit.readout_qubits.at(0);
    const int num_params = gen.circuit.num_trainable;
    std::vector<double> grad(num_params, 0.0);

    for (const FeaturePair& z : noise_batch) {
        const FeaturePair g = generator_output(gen, z);
        const double d = discriminator_output(disc, g);
        const double loss_term = -1.0 / clamp_unit(d);

        // dD/dG_j per generated feature, exact or heuristic shift.
        FeaturePair d_by_g{};
        for (int j = 0; j < 2; ++j) {
            if (mode == GradMode::Exact) {
                d_by_g[j] = 0.5 * feature_derivative(disc.circuit, g, disc.theta, j,
                                                     disc_readout, telemetry);
            } else {
                // delta_g is an angle; features enter gates pi-scaled.
                const double delta = chain.delta_g / std::numbers::pi;
                FeaturePair shifted = g;
                shifted[j] = g[j] + delta;
                const double plus = discriminator_output(disc, shifted);
                shifted[j] = g[j] - delta;
                const double minus = discriminator_output(disc, shifted);
                if (telemetry) telemetry->circuit_evaluations += 2;
                d_by_g[j] = chain.k_g * (plus - minus);
            }
        }

        // dG_j/dtheta_i; both readouts share the same shifted state.
        std::vector<double> shifted_theta(gen.theta.begin(), gen.theta.end());
        for (int i = 0; i < num_params; ++i) {
            shifted_theta[i] = gen.theta[i] + std::numbers::pi / 2;
            const StateVector plus = bind_and_run(gen.circuit, z, shifted_theta);
            shifted_theta[i] = gen.theta[i] - std::numbers::pi / 2;
            const StateVector minus = bind_and_run(gen.circuit, z, shifted_theta);
            shifted_theta[i] = gen.theta[i];
            if (telemetry) telemetry->circuit_evaluations += 2;
            double chain_sum = 0.0;
            for (int j = 0; j < 2; ++j) {
                const int q = gen.circuit.readout_qubits.at(j);
                const double g_plus = 0.5 * (1.0 + expectation_pauli_z(plus, q));
                const double g_minus = 0.5 * (1.0 + expectation_pauli_z(minus, q));
                chain_sum += d_by_g[j] * 0.5 * (g_plus - g_minus);
            }
            grad[i] += loss_term * chain_sum;
        }
    }
    for (double& g : grad) g /= static_cast<double>(noise_batch.size());
    if (telemetry) telemetry->gradient_norms.push_back(l2_norm(grad));
    return grad;
}

std::vector<double> sgd_update(std::span<const double> theta, std::span<const double> grad,
                               double alpha) {
    if (theta.size() != grad.size()) {
        throw std::invalid_argument("sgd_update: length mismatch");
    }
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) out[i] = theta[i] - alpha * grad[i];
    return out;
}

std::vector<double> random_theta(int count, Rng& rng) {
    std::vector<double> theta(count);
    for (double& t : theta) t = rng.uniform(0.0, kTwoPi);
    return theta;
}

GanModels make_gan_models(Circuit gen_circuit, Circuit disc_circuit, Rng& rng) {
    GanModels models;
    models.generator.circuit = std::move(gen_circuit);
    models.generator.theta = random_theta(models.generator.circuit.num_trainable, rng);
    models.discriminator.circuit = std::move(disc_circuit);
    models.discriminator.theta = random_theta(models.discriminator.circuit.num_trainable, rng);
    return models;
}

namespace {

struct DivergenceSnapshot {
    double kl = 0.0;
    double js = 0.0;
};

/// Marginal-averaged divergences between real and generated samples.
DivergenceSnapshot divergences(const std::vector<FeaturePair>& real,
                               const std::vector<FeaturePair>& generated) {
    DivergenceSnapshot snap;
    for (int c = 0; c < 2; ++c) {
        std::vector<double> r;
        r.reserve(real.size());
        for (const FeaturePair& p : real) r.push_back(p[c]);
        std::vector<double> g;
        g.reserve(generated.size());
        for (const FeaturePair& p : generated) g.push_back(p[c]);
        const Histogram hr = histogram(r);
        const Histogram hg = histogram(g);
        snap.kl += 0.5 * kl_divergence(hr, hg);
        snap.js += 0.5 * js_divergence(hr, hg);
    }
    return snap;
}

std::vector<FeaturePair> generate_batch(const GeneratorModel& gen,
                                        std::span<const FeaturePair> noise) {
    std::vector<FeaturePair> out;
    out.reserve(noise.size());
    for (const FeaturePair& z : noise) out.push_back(generator_output(gen, z));
    return out;
}

void adapt_chain(GanModels& models, const TrainConfig& config,
                 std::span<const FeaturePair> noise) {
    // Finite-difference hyper-step: probe how the post-update batch loss
    // responds to each chain constant, then descend with the generator rate.
    const double probe = 0.05;
    ChainParams& chain = models.chain;
    auto post_update_loss = [&](const ChainParams& candidate) {
        const std::vector<double> grad = gen_loss_gradient(
            models.generator, models.discriminator, noise, candidate, GradMode::Paper);
        GeneratorModel trial = models.generator;
        trial.theta = sgd_update(models.generator.theta, grad, config.alpha_g);
        return gen_loss(trial, models.discriminator, noise);
    };
    ChainParams candidate = chain;
    candidate.k_g = chain.k_g + probe;
    const double k_plus = post_update_loss(candidate);
    candidate.k_g = chain.k_g - probe;
    const double k_minus = post_update_loss(candidate);
    candidate.k_g = chain.k_g;

    const double delta_hi = std::min(chain.delta_g + probe, std::numbers::pi);
    const double delta_lo = std::max(chain.delta_g - probe, 1e-3);
    candidate.delta_g = delta_hi;
    const double d_plus = post_update_loss(candidate);
    candidate.delta_g = delta_lo;
    const double d_minus = post_update_loss(candidate);

    chain.k_g -= config.alpha_g * (k_plus - k_minus) / (2.0 * probe);
    if (delta_hi > delta_lo) {
        chain.delta_g -= config.alpha_g * (d_plus - d_minus) / (delta_hi - delta_lo);
        chain.delta_g = std::clamp(chain.delta_g, 1e-3, std::numbers::pi);
    }
}

} // namespace

TrainTrace train_gan(GanModels& models, const TrainConfig& config,
                     const DataSource& real_source, Rng& rng) {
    check_train_config(config);
    check_chain(models.chain);
    validate(models.generator.circuit);
    validate(models.discriminator.circuit);

    TrainTrace trace;
    const std::size_t m = static_cast<std::size_t>(config.batch_size);
    // Separate evaluation stream so snapshot cadence never perturbs training.
    Rng eval_rng(rng.next_u64());

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        EpochRecord record;
        for (int step = 0; step < config.steps_per_epoch; ++step) {
            // Discriminator phase: real + generated batch, labels implied.
            const std::vector<FeaturePair> reals = real_source(m, rng);
            const std::vector<FeaturePair> noise = sample_noise(m, rng);
            const std::vector<FeaturePair> fakes = generate_batch(models.generator, noise);
            const double d_loss = disc_loss(models.discriminator, reals, fakes);
            if (!std::isfinite(d_loss)) {
                throw TrainingAbort("discriminator loss non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, models.discriminator.theta);
            }
            const std::vector<double> d_grad =
                disc_loss_gradient(models.discriminator, models.generator, reals, noise);
            models.discriminator.theta =
                sgd_update(models.discriminator.theta, d_grad, config.alpha_d);
            if (!all_finite(models.discriminator.theta)) {
                throw TrainingAbort("discriminator parameters non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, models.discriminator.theta);
            }

            // Generator phase against the updated discriminator.
            const std::vector<FeaturePair> gen_noise = sample_noise(m, rng);
            const double g_loss = gen_loss(models.generator, models.discriminator, gen_noise);
            if (!std::isfinite(g_loss)) {
                throw TrainingAbort("generator loss non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, models.generator.theta);
            }
            if (models.chain.adapt && config.grad_mode == GradMode::Paper) {
                adapt_chain(models, config, gen_noise);
            }
            const std::vector<double> g_grad =
                gen_loss_gradient(models.generator, models.discriminator, gen_noise,
                                  models.chain, config.grad_mode);
            models.generator.theta = sgd_update(models.generator.theta, g_grad, config.alpha_g);
            if (!all_finite(models.generator.theta)) {
                throw TrainingAbort("generator parameters non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, models.generator.theta);
            }

            record.disc_loss += d_loss;
            record.gen_loss += g_loss;
            record.disc_grad_norm += l2_norm(d_grad);
            record.gen_grad_norm += l2_norm(g_grad);
        }
        const double steps = static_cast<double>(config.steps_per_epoch);
        record.disc_loss /= steps;
        record.gen_loss /= steps;
        record.disc_grad_norm /= steps;
        record.gen_grad_norm /= steps;

        const std::vector<FeaturePair> eval_real =
            real_source(static_cast<std::size_t>(config.eval_samples), eval_rng);
        const std::vector<FeaturePair> eval_noise =
            sample_noise(static_cast<std::size_t>(config.eval_samples), eval_rng);
        const DivergenceSnapshot snap =
            divergences(eval_real, generate_batch(models.generator, eval_noise));
        record.kl = snap.kl;
        record.js = snap.js;
        trace.epochs.push_back(record);
    }

    const std::vector<FeaturePair> final_noise =
        sample_noise(static_cast<std::size_t>(config.eval_samples), eval_rng);
    trace.final_samples = generate_batch(models.generator, final_noise);
    trace.final_theta_g = models.generator.theta;
    trace.final_theta_d = models.discriminator.theta;
    return trace;
}

double classifier_loss(const DiscriminatorModel& model, const LabeledDataset& dataset) {
    if (dataset.points.empty()) throw std::invalid_argument("classifier_loss: empty dataset");
    double loss = 0.0;
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        const double d = clamp_unit(discriminator_output(model, dataset.points[i]));
        loss += dataset.labels[i] == 1 ? -std::log(d) : -std::log(1.0 - d);
    }
    return loss / static_cast<double>(dataset.points.size());
}

TrainTrace train_classifier(DiscriminatorModel& model, const LabeledDataset& dataset,
                            const TrainConfig& config, Rng& rng) {
    check_train_config(config);
    validate(model.circuit);
    if (dataset.points.empty() || dataset.points.size() != dataset.labels.size()) {
        throw std::invalid_argument("train_classifier: bad dataset");
    }
    for (int label : dataset.labels) {
        if (label != 0 && label != 1) {
            throw std::invalid_argument("train_classifier: labels must be 0 or 1");
        }
    }

    const std::size_t n = dataset.points.size();
    const std::size_t m = static_cast<std::size_t>(config.batch_size);
    const int readout = model.circuit.readout_qubits.at(0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    TrainTrace trace;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Fisher-Yates reshuffle per epoch.
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.next_u64() % (i + 1);
            std::swap(order[i], order[j]);
        }
        EpochRecord record;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += m, ++batches) {
            const std::size_t end = std::min(start + m, n);
            double batch_loss = 0.0;
            std::vector<double> grad(model.theta.size(), 0.0);
            for (std::size_t k = start; k < end; ++k) {
                const FeaturePair& x = dataset.points[order[k]];
                const int y = dataset.labels[order[k]];
                const double d = discriminator_output(model, x);
                batch_loss += y == 1 ? -std::log(clamp_unit(d))
                                     : -std::log(clamp_unit(1.0 - d));
                for (std::size_t i = 0; i < grad.size(); ++i) {
                    const double dd = param_shift_derivative(model.circuit, x, model.theta,
                                                             static_cast<int>(i), readout);
                    grad[i] += y == 1 ? -0.5 * dd / clamp_unit(d)
                                      : 0.5 * dd / clamp_unit(1.0 - d);
                }
            }
            const double count = static_cast<double>(end - start);
            batch_loss /= count;
            for (double& g : grad) g /= count;
            if (!std::isfinite(batch_loss)) {
                throw TrainingAbort("classifier loss non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, model.theta);
            }
            model.theta = sgd_update(model.theta, grad, config.alpha_d);
            if (!all_finite(model.theta)) {
                throw TrainingAbort("classifier parameters non-finite at epoch " +
                                        std::to_string(epoch),
                                    epoch, model.theta);
            }
            record.disc_loss += batch_loss;
            record.disc_grad_norm += l2_norm(grad);
        }
        record.disc_loss /= static_cast<double>(batches);
        record.disc_grad_norm /= static_cast<double>(batches);
        trace.epochs.push_back(record);
    }
    trace.final_theta_d = model.theta;
    return trace;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace

void write_trace_csv(const std::string& path, const TrainTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << "epoch,disc_loss,gen_loss,disc_grad_norm,gen_grad_norm,kl,js\n";
    for (std::size_t e = 0; e < trace.epochs.size(); ++e) {
        const EpochRecord& r = trace.epochs[e];
        out << e + 1 << ',' << format_double(r.disc_loss) << ',' << format_double(r.gen_loss)
            << ',' << format_double(r.disc_grad_norm) << ',' << format_double(r.gen_grad_norm)
            << ',' << format_double(r.kl) << ',' << format_double(r.js) << '\n';
    }
}

} // namespace qgan
