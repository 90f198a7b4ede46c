#include "srgg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srgg {

double frechet_cdf(double x, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("frechet_cdf: theta must be > 0");
    if (x <= 0.0) return 0.0;
    return std::exp(-std::pow(x, -theta));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

EcdfTable EcdfTable::from_samples(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("EcdfTable: empty sample");
    std::sort(samples.begin(), samples.end());
    return EcdfTable{std::move(samples)};
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

PoissonFitReport poisson_fit(const std::vector<long>& counts, double beta) {
    if (counts.empty()) throw std::invalid_argument("poisson_fit: empty counts");
    if (!(beta > 0.0)) throw std::invalid_argument("poisson_fit: beta must be > 0");
    for (long c : counts)
        if (c < 0) throw std::invalid_argument("poisson_fit: counts must be non-negative");

    PoissonFitReport rep;
    rep.beta = beta;
    rep.total = static_cast<long>(counts.size());
    const long maxc = *std::max_element(counts.begin(), counts.end());
    rep.histogram.assign(maxc + 1, 0);
    double sum = 0.0;
    for (long c : counts) {
        rep.histogram[c] += 1;
        sum += static_cast<double>(c);
    }
    rep.empirical_mean = sum / static_cast<double>(rep.total);
    double ss = 0.0;
    for (long c : counts) {
        const double dev = static_cast<double>(c) - rep.empirical_mean;
        ss += dev * dev;
    }
    rep.empirical_variance = rep.total > 1 ? ss / static_cast<double>(rep.total - 1) : 0.0;

    // TV against Poisson(beta), folding the model's tail beyond maxc into one
    // bucket where the empirical mass is zero
    double q = std::exp(-beta);  // P(j = 0)
    double model_seen = 0.0, acc = 0.0;
    for (long j = 0; j <= maxc; ++j) {
        const double emp = static_cast<double>(rep.histogram[j]) / static_cast<double>(rep.total);
        acc += std::fabs(emp - q);
        model_seen += q;
        q *= beta / static_cast<double>(j + 1);
    }
    acc += std::max(0.0, 1.0 - model_seen);
    rep.tv_distance = 0.5 * acc;
    return rep;
}

CltReport clt_report(const std::vector<double>& values, double mean_hat) {
    if (values.size() < 100) throw std::invalid_argument("clt_report: need at least 100 values");
    if (!(mean_hat > 0.0)) throw std::invalid_argument("clt_report: mean_hat must be > 0");

    CltReport rep;
    rep.count = static_cast<long>(values.size());
    const double scale = std::sqrt(mean_hat);
    std::vector<double> y(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) y[i] = (values[i] - mean_hat) / scale;

    const double n = static_cast<double>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : y) {
        const double dev = v - mean;
        m2 += dev * dev;
        m3 += dev * dev * dev;
        m4 += dev * dev * dev * dev;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) {
        rep.degenerate = true;
        rep.skewness = 0.0;
        rep.excess_kurtosis = 0.0;
        rep.ks_vs_normal = 1.0;
        return rep;
    }
    rep.skewness = m3 / std::pow(m2, 1.5);
    rep.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    rep.ks_vs_normal = ks_distance(y, [](double x) { return normal_cdf(x); });
    return rep;
}

}  // namespace srgg
