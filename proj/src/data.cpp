#include "qgan/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qgan {

double Rng::normal(double mean, double sd) {
    // Box-Muller, no caching: two uniforms per draw keeps the stream layout simple.
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<FeaturePair> sample_uniform(std::size_t n, double lo, double hi, Rng& rng) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("sample_uniform: need 0 <= lo < hi <= 1");
    }
    std::vector<FeaturePair> out(n);
    for (FeaturePair& p : out) {
        p[0] = rng.uniform(lo, hi);
        p[1] = rng.uniform(lo, hi);
    }
    return out;
}

std::vector<FeaturePair> sample_nonuniform(std::size_t n, double mean, double sd, Rng& rng) {
    if (!(mean > 0.0 && mean < 1.0) || !(sd > 0.0)) {
        throw std::invalid_argument("sample_nonuniform: need mean in (0,1) and sd > 0");
    }
    auto draw = [&] {
        while (true) {
            const double x = rng.normal(mean, sd);
            if (x >= 0.0 && x <= 1.0) return x;
        }
    };
    std::vector<FeaturePair> out(n);
    for (FeaturePair& p : out) {
        p[0] = draw();
        p[1] = draw();
    }
    return out;
}

std::vector<FeaturePair> sample_noise(std::size_t n, Rng& rng) {
    std::vector<FeaturePair> out(n);
    for (FeaturePair& p : out) {
        p[0] = rng.uniform();
        p[1] = rng.uniform();
    }
    return out;
}

LabeledDataset two_moons(std::size_t n, double noise_sd, Rng& rng) {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("two_moons: n must be even and positive");
    }
    if (noise_sd < 0.0) {
        throw std::invalid_argument("two_moons: noise_sd must be nonnegative");
    }
    const std::size_t half = n / 2;
    LabeledDataset data;
    data.points.reserve(n);
    data.labels.reserve(n);
    for (std::size_t k = 0; k < half; ++k) {
        const double t = half > 1 ? std::numbers::pi * static_cast<double>(k) /
                                        static_cast<double>(half - 1)
                                  : 0.0;
        data.points.push_back({std::cos(t), std::sin(t)});
        data.labels.push_back(0);
        data.points.push_back({1.0 - std::cos(t), 0.5 - std::sin(t)});
        data.labels.push_back(1);
    }
    if (noise_sd > 0.0) {
        for (FeaturePair& p : data.points) {
            p[0] += rng.normal(0.0, noise_sd);
            p[1] += rng.normal(0.0, noise_sd);
        }
    }
    // Joint min-max normalization, per coordinate across both classes.
    for (int c = 0; c < 2; ++c) {
        double lo = data.points[0][c];
        double hi = data.points[0][c];
        for (const FeaturePair& p : data.points) {
            lo = std::min(lo, p[c]);
            hi = std::max(hi, p[c]);
        }
        const double range = hi - lo;
        for (FeaturePair& p : data.points) {
            p[c] = range > 0.0 ? (p[c] - lo) / range : 0.5;
        }
    }
    return data;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace

void write_points_csv(const std::string& path, const std::vector<FeaturePair>& points,
                      const std::vector<int>* labels) {
    if (labels && labels->size() != points.size()) {
        throw std::invalid_argument("write_points_csv: label count mismatch");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_points_csv: cannot open " + path);
    out << (labels ? "x1,x2,label\n" : "x1,x2\n");
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << format_double(points[i][0]) << ',' << format_double(points[i][1]);
        if (labels) out << ',' << (*labels)[i];
        out << '\n';
    }
}

LabeledDataset read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_points_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_points_csv: empty file");
    const bool labeled = line.find("label") != std::string::npos;
    LabeledDataset data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        FeaturePair p{};
        for (int c = 0; c < 2; ++c) {
            if (!std::getline(row, cell, ',')) {
                throw std::runtime_error("read_points_csv: short row '" + line + "'");
            }
            p[c] = std::stod(cell);
        }
        data.points.push_back(p);
        if (labeled) {
            if (!std::getline(row, cell, ',')) {
                throw std::runtime_error("read_points_csv: missing label in '" + line + "'");
            }
            data.labels.push_back(std::stoi(cell));
        }
    }
    return data;
}

} // namespace qgan
