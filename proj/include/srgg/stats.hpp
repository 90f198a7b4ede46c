#pragma once

#include <functional>
#include <vector>

namespace srgg {

// Frechet CDF exp(-x^-theta) for x > 0, 0 otherwise.
double frechet_cdf(double x, double theta);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Sorted sample values with cumulative probabilities (i+1)/N.
struct EcdfTable {
    std::vector<double> values;

    static EcdfTable from_samples(std::vector<double> samples);
    long size() const { return static_cast<long>(values.size()); }
    double prob(long i) const { return static_cast<double>(i + 1) / static_cast<double>(size()); }
};

// Two-sided Kolmogorov-Smirnov distance between the sample ECDF and a target
// CDF, evaluated at every order statistic.  Empty samples are rejected.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct PoissonFitReport {
    double beta = 0.0;
    std::vector<long> histogram;  // counts of observed values 0..max
    long total = 0;
    double tv_distance = 0.0;  // tail mass beyond the observed max folded in
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;
};

PoissonFitReport poisson_fit(const std::vector<long>& counts, double beta);

struct CltReport {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ks_vs_normal = 1.0;
    bool degenerate = false;  // zero-variance input
    long count = 0;
};

// Standardizes values as (v - mean_hat)/sqrt(mean_hat) and reports the
// third/fourth standardized sample moments plus KS distance to the standard
// normal.  Needs >= 100 values and mean_hat > 0.
CltReport clt_report(const std::vector<double>& values, double mean_hat);

}  // namespace srgg
