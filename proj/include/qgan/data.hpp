#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qgan {

using FeaturePair = std::array<double, 2>;

/// Seeded random source. The raw stream is std::mt19937_64 (fully specified
/// by the standard); uniform doubles are built from the top 53 bits and
/// normals via Box-Muller, so sequences are identical across platforms.
class Rng {
  public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/u53-boxmuller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal(double mean, double sd);

  private:
    std::mt19937_64 engine_;
};

struct LabeledDataset {
    std::vector<FeaturePair> points;  // every coordinate in [0, 1]
    std::vector<int> labels;          // 0 or 1, same length as points
};

/// n pairs with each coordinate i.i.d. Uniform[lo, hi]; 0 <= lo < hi <= 1.
std::vector<FeaturePair> sample_uniform(std::size_t n, double lo, double hi, Rng& rng);

/// n pairs with each coordinate drawn from a Gaussian truncated to [0, 1]
/// by rejection. mean must lie in (0, 1), sd > 0.
std::vector<FeaturePair> sample_nonuniform(std::size_t n, double mean, double sd, Rng& rng);

/// n noise pairs, i.i.d. Uniform[0, 1]^2.
std::vector<FeaturePair> sample_noise(std::size_t n, Rng& rng);

/// Two interleaving half-circles (n/2 points each, evenly spaced), Gaussian
/// jitter of std noise_sd, then joint per-coordinate min-max normalization
/// to [0, 1]^2. n must be even.
LabeledDataset two_moons(std::size_t n, double noise_sd, Rng& rng);

/// CSV with header "x1,x2" or "x1,x2,label" when labels are present.
void write_points_csv(const std::string& path, const std::vector<FeaturePair>& points,
                      const std::vector<int>* labels = nullptr);
LabeledDataset read_points_csv(const std::string& path);

} // namespace qgan
