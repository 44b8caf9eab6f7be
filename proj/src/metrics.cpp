#include "qgan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgan {

Histogram histogram(std::span<const double> samples, int bin_count, double eps) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample set");
    if (bin_count < 2) throw std::invalid_argument("histogram: bin_count must be >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("histogram: eps must be positive");
    Histogram h;
    h.bin_count = bin_count;
    h.eps = eps;
    h.masses.assign(bin_count, 0.0);
    for (double x : samples) {
        int bin = static_cast<int>(std::floor(x * bin_count));
        bin = std::clamp(bin, 0, bin_count - 1);  // out-of-range clipped to edges
        h.masses[bin] += 1.0;
    }
    double total = 0.0;
    for (double& m : h.masses) {
        m += eps;
        total += m;
    }
    for (double& m : h.masses) m /= total;
    return h;
}

namespace {

void check_match(const Histogram& p, const Histogram& q) {
    if (p.bin_count != q.bin_count || p.masses.size() != q.masses.size()) {
        throw std::invalid_argument("divergence: histograms have different bin structure");
    }
}

} // namespace

double kl_divergence(const Histogram& p, const Histogram& q) {
    check_match(p, q);
    double total = 0.0;
    for (std::size_t i = 0; i < p.masses.size(); ++i) {
        if (p.masses[i] > 0.0) total += p.masses[i] * std::log(p.masses[i] / q.masses[i]);
    }
    return total;
}

double js_divergence(const Histogram& p, const Histogram& q) {
    check_match(p, q);
    Histogram m = p;
    for (std::size_t i = 0; i < m.masses.size(); ++i) {
        m.masses[i] = 0.5 * (p.masses[i] + q.masses[i]);
    }
    return 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m);
}

double accuracy(std::span<const double> outputs, std::span<const int> labels,
                double threshold) {
    if (outputs.size() != labels.size()) {
        throw std::invalid_argument("accuracy: output/label length mismatch");
    }
    if (outputs.empty()) throw std::invalid_argument("accuracy: empty inputs");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const int predicted = outputs[i] >= threshold ? 1 : 0;
        if (predicted == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(outputs.size());
}

double concentration(std::span<const double> samples, int bin_count) {
    if (samples.empty()) throw std::invalid_argument("concentration: empty sample set");
    if (bin_count < 2) throw std::invalid_argument("concentration: bin_count must be >= 2");
    std::vector<double> counts(bin_count, 0.0);
    for (double x : samples) {
        int bin = static_cast<int>(std::floor(x * bin_count));
        bin = std::clamp(bin, 0, bin_count - 1);
        counts[bin] += 1.0;
    }
    const double peak = *std::max_element(counts.begin(), counts.end());
    return peak / static_cast<double>(samples.size());
}

} // namespace qgan
