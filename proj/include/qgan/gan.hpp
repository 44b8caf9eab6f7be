#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgan/circuit.hpp"
#include "qgan/data.hpp"
#include "qgan/gradients.hpp"

namespace qgan {

/// Clamp applied to network outputs before logs and denominators.
inline constexpr double kOutputClamp = 1e-7;

double clamp_unit(double p);

enum class GradMode { Exact, Paper };

struct GeneratorModel {
    Circuit circuit;            // 2 features (noise), readout on both qubits
    std::vector<double> theta;  // length = circuit.num_trainable
};

struct DiscriminatorModel {
    Circuit circuit;            // 2 features, readout on qubit 0
    std::vector<double> theta;
};

/// Shift-rule constants of the heuristic generator chain, and whether to
/// adapt them during SGD. delta_g must lie in (0, pi].
struct ChainParams {
    double k_g = 0.5;
    double delta_g = std::numbers::pi / 2;
    bool adapt = false;
};

struct TrainConfig {
    double alpha_d = 0.01;
    double alpha_g = 0.01;
    int batch_size = 10;
    int epochs = 0;
    int steps_per_epoch = 5;     // minibatch steps per recorded epoch
    std::uint64_t seed = 0;
    GradMode grad_mode = GradMode::Exact;
    int eval_samples = 500;      // sample count for divergence snapshots
};

struct EpochRecord {
    double disc_loss = 0.0;
    double gen_loss = 0.0;
    double disc_grad_norm = 0.0;
    double gen_grad_norm = 0.0;
    double kl = 0.0;
    double js = 0.0;
};

struct TrainTrace {
    std::vector<EpochRecord> epochs;
    std::vector<FeaturePair> final_samples;
    std::vector<double> final_theta_g;
    std::vector<double> final_theta_d;
};

/// Thrown when a loss turns non-finite; carries the failing epoch and a
/// snapshot of the parameters for the abort diagnostic.
class TrainingAbort : public std::runtime_error {
  public:
    TrainingAbort(std::string message, int epoch, std::vector<double> theta_snapshot);
    int epoch() const { return epoch_; }
    const std::vector<double>& theta_snapshot() const { return theta_snapshot_; }

  private:
    int epoch_;
    std::vector<double> theta_snapshot_;
};

/// D(x) = (1 + <Z>) / 2 on the first readout qubit; in [0, 1].
double discriminator_output(const DiscriminatorModel& model, const FeaturePair& x);

/// G(z): both readout expectations mapped through (1 + <Z>) / 2.
FeaturePair generator_output(const GeneratorModel& model, const FeaturePair& z);

/// Losses on precomputed outputs (also used to stub D in tests).
double disc_loss_from_outputs(std::span<const double> d_real, std::span<const double> d_fake);
double gen_loss_from_outputs(std::span<const double> d_fake);

/// -mean log D(x) - mean log(1 - D(fake)), outputs clamped before the log.
double disc_loss(const DiscriminatorModel& disc, std::span<const FeaturePair> real_batch,
                 std::span<const FeaturePair> fake_batch);

/// -mean log D(G(z)).
double gen_loss(const GeneratorModel& gen, const DiscriminatorModel& disc,
                std::span<const FeaturePair> noise_batch);

/// Parameter-shift gradient of disc_loss w.r.t. theta_D: the shifted-output
/// quotient terms of both loss halves, averaged over each batch.
std::vector<double> disc_loss_gradient(const DiscriminatorModel& disc,
                                       const GeneratorModel& gen,
                                       std::span<const FeaturePair> real_batch,
                                       std::span<const FeaturePair> noise_batch,
                                       GradientTelemetry* telemetry = nullptr);

/// Chain-rule gradient of gen_loss w.r.t. theta_G:
/// (-1/D) * sum_j dD/dG_j * dG_j/dtheta_i, batch-averaged. dD/dG_j uses the
/// exact per-occurrence feature derivative or the heuristic k/delta shift.
std::vector<double> gen_loss_gradient(const GeneratorModel& gen,
                                      const DiscriminatorModel& disc,
                                      std::span<const FeaturePair> noise_batch,
                                      const ChainParams& chain, GradMode mode,
                                      GradientTelemetry* telemetry = nullptr);

/// theta - alpha * grad, elementwise.
std::vector<double> sgd_update(std::span<const double> theta, std::span<const double> grad,
                               double alpha);

using DataSource = std::function<std::vector<FeaturePair>(std::size_t, Rng&)>;

struct GanModels {
    GeneratorModel generator;
    DiscriminatorModel discriminator;
    ChainParams chain;
};

/// Both parameter vectors drawn Uniform[0, 2 pi) from rng.
GanModels make_gan_models(Circuit gen_circuit, Circuit disc_circuit, Rng& rng);

std::vector<double> random_theta(int count, Rng& rng);

/// Alternating minibatch SGD: per step the discriminator is updated on a
/// labeled real+generated batch, then the generator against the updated
/// discriminator. Divergence snapshots compare fresh real and generated
/// marginals every epoch using an evaluation stream derived from rng.
TrainTrace train_gan(GanModels& models, const TrainConfig& config,
                     const DataSource& real_source, Rng& rng);

/// Binary cross-entropy classifier training for a discriminator circuit.
/// One epoch is a full pass over the shuffled dataset.
TrainTrace train_classifier(DiscriminatorModel& model, const LabeledDataset& dataset,
                            const TrainConfig& config, Rng& rng);

/// Mean BCE of the model over a labeled dataset (reported as final loss).
double classifier_loss(const DiscriminatorModel& model, const LabeledDataset& dataset);

void write_trace_csv(const std::string& path, const TrainTrace& trace);

} // namespace qgan
