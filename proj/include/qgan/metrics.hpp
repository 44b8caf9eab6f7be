#pragma once

#include <span>
#include <vector>

namespace qgan {

/// Normalized histogram over uniform bins on [0, 1] with additive smoothing.
struct Histogram {
    int bin_count = 0;
    std::vector<double> masses;  // nonnegative, sums to 1
    double eps = 0.0;
};

/// Bins the samples (out-of-range values are clipped into the edge bins),
/// adds eps to every bin, renormalizes.
Histogram histogram(std::span<const double> samples, int bin_count = 20, double eps = 1e-8);

/// KL(p || q) = sum_i p_i ln(p_i / q_i); nonnegative, asymmetric.
/// Requires matching bin structure.
double kl_divergence(const Histogram& p, const Histogram& q);

/// JS(p || q) = KL(p||m)/2 + KL(q||m)/2 with m the even mixture;
/// symmetric and bounded by ln 2.
double js_divergence(const Histogram& p, const Histogram& q);

/// Fraction of samples where (output >= threshold) matches the label.
double accuracy(std::span<const double> outputs, std::span<const int> labels,
                double threshold = 0.5);

/// Mode-collapse indicator: largest single-bin mass of the unsmoothed
/// histogram. Near 1/bin_count for spread-out samples, 1.0 for constants;
/// values above 0.5 flag a collapsed sample set.
double concentration(std::span<const double> samples, int bin_count = 20);

} // namespace qgan
