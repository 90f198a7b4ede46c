#include "srgg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srgg/graph.hpp"

namespace srgg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, 9-term coefficients
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

template <typename F>
double gl8(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += kGlWeights[i] * f(mid + half * kGlNodes[i]);
    return acc * half;
}

// int_R^inf rho^{d-1}(1 - e^{-rho^-alpha}) drho by the alternating series in
// T = R^-alpha; converges for any moderate T, fast for T < 1
double kernel_tail_mass(int d, double alpha, double R) {
    const double T = std::pow(R, -alpha);
    double sum = 0.0, mfact = 1.0;
    for (int m = 1; m <= 80; ++m) {
        mfact *= m;
        const double e = m - d / alpha;
        const double term = ((m & 1) ? 1.0 : -1.0) * std::pow(T, e) / (mfact * e);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum / alpha;
}

double euclid(const double* a, const double* b, int d) {
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: argument must be > 0");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
    return lanczos_gamma(x);
}

double kernel_mass(int d, double alpha) {
    if (d < 1) throw std::invalid_argument("kernel_mass: d must be >= 1");
    if (!(alpha > d)) throw std::invalid_argument("kernel_mass: alpha must exceed d");
    return std::pow(kPi, d / 2.0) * gamma_fn(1.0 - d / alpha) / gamma_fn(1.0 + d / 2.0);
}

double m3_closed_form(int d, double alpha) { return 2.0 * kernel_mass(d, alpha); }

double frechet_shape(int d, double alpha, int k) {
    if (k < 2) throw std::invalid_argument("frechet_shape: k must be >= 2");
    if (!(alpha > d)) throw std::invalid_argument("frechet_shape: alpha must exceed d");
    return (k - 1) * alpha - d;
}

double w_prefactor(int d, double alpha, int k, double mk) {
    const double theta = frechet_shape(d, alpha, k);
    return d * std::pow(kPi, d / 2.0) * mk / (2.0 * gamma_fn(1.0 + d / 2.0) * theta);
}

double expected_w(double n, double r, int d, double alpha, int k, double mk) {
    return w_prefactor(d, alpha, k, mk) * std::pow(n, d) *
           std::pow(r, d - (k - 1) * alpha);
}

double theory_triangles_per_edge(double r, int d, double alpha) {
    if (!(r > 0.0)) throw std::invalid_argument("theory_triangles_per_edge: r must be > 0");
    return m3_closed_form(d, alpha) * std::pow(r, -alpha);
}

double critical_radius(double n, double r0, int d, double alpha, int k, double mk) {
    if (!(r0 > 0.0)) throw std::invalid_argument("critical_radius: r0 must be > 0");
    const double theta = frechet_shape(d, alpha, k);
    return std::pow(w_prefactor(d, alpha, k, mk), 1.0 / theta) * r0 *
           std::pow(n, d / theta);
}

double frechet_normalizer(double n, int d, double alpha, int k, double mk) {
    const double theta = frechet_shape(d, alpha, k);
    return std::pow(w_prefactor(d, alpha, k, mk), -1.0 / theta) * std::pow(n, -d / theta);
}

RadialKernelSampler::RadialKernelSampler(int d, double alpha) : d_(d), alpha_(alpha) {
    if (d < 1) throw std::invalid_argument("RadialKernelSampler: d must be >= 1");
    if (!(alpha > d)) throw std::invalid_argument("RadialKernelSampler: alpha must exceed d");
    total_mass_ = gamma_fn(1.0 - d / alpha) / d;

    // table out to where the pure power-law tail holds ~1% of the mass,
    // capped to keep the log grid sane; the tail draw is exact regardless
    const double by_mass =
        std::pow(0.01 * total_mass_ * (alpha - d), -1.0 / (alpha - d));
    table_limit_ = std::clamp(by_mass, 1.5, 1e5);

    const int n_head = 16384, n_tail = 16384;
    grid_.reserve(n_head + n_tail + 1);
    for (int i = 0; i <= n_head; ++i) grid_.push_back(static_cast<double>(i) / n_head);
    const double log_limit = std::log(table_limit_);
    for (int i = 1; i <= n_tail; ++i)
        grid_.push_back(std::exp(log_limit * static_cast<double>(i) / n_tail));
    grid_.back() = table_limit_;

    const std::size_t cells = grid_.size() - 1;
    cum_.resize(grid_.size());
    dens_.resize(grid_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) dens_[i] = density(grid_[i]);
    for (std::size_t i = 0; i < cells; ++i)
        cum_[i + 1] = cum_[i] + gl8([this](double x) { return density(x); }, grid_[i], grid_[i + 1]);
    head_mass_ = cum_.back();
    tail_mass_ = total_mass_ - head_mass_;
    const double tail_check = kernel_tail_mass(d_, alpha_, table_limit_);
    if (std::fabs(tail_mass_ - tail_check) > 1e-7 * total_mass_)
        throw std::logic_error("RadialKernelSampler: table mass inconsistent with series tail");
}

double RadialKernelSampler::density(double rho) const {
    if (rho <= 0.0) return d_ == 1 ? 1.0 : 0.0;
    return std::pow(rho, d_ - 1) * (-std::expm1(-std::pow(rho, -alpha_)));
}

double RadialKernelSampler::cdf_mass(double rho) const {
    if (rho <= 0.0) return 0.0;
    if (rho >= table_limit_) return total_mass_ - kernel_tail_mass(d_, alpha_, rho);
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), rho);
    const std::size_t cell = static_cast<std::size_t>(it - grid_.begin()) - 1;
    return cum_[cell] + gl8([this](double x) { return density(x); }, grid_[cell], rho);
}

double RadialKernelSampler::sample_radius(Rng& rng) const {
    const double w = rng.uniform() * total_mass_;
    if (w < head_mass_) {
        // locate cell, then invert the linear-density model inside it
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), w);
        std::size_t cell = static_cast<std::size_t>(it - cum_.begin());
        cell = (cell == 0) ? 0 : cell - 1;
        if (cell >= grid_.size() - 1) cell = grid_.size() - 2;
        const double a = grid_[cell], h = grid_[cell + 1] - a;
        const double fa = dens_[cell], fb = dens_[cell + 1];
        const double m = w - cum_[cell];
        const double q = (fb - fa) / (2.0 * h);
        double s;
        const double disc = fa * fa + 4.0 * q * m;
        if (std::fabs(q) < 1e-300 || disc <= 0.0)
            s = (fa > 0.0) ? m / fa : 0.5 * h;
        else
            s = 2.0 * m / (fa + std::sqrt(disc));
        return a + std::clamp(s, 0.0, h);
    }
    // exact tail: Pareto proposal rho^{d-1-alpha}, thinned by (1-e^-t)/t
    for (;;) {
        const double v = rng.uniform();
        const double rho = table_limit_ * std::pow(1.0 - v, -1.0 / (alpha_ - d_));
        const double t = std::pow(rho, -alpha_);
        const double accept = (t > 0.0) ? -std::expm1(-t) / t : 1.0;
        if (rng.uniform() < accept) return rho;
    }
}

void RadialKernelSampler::sample_point(Rng& rng, double* out) const {
    const double rho = sample_radius(rng);
    if (d_ == 1) {
        out[0] = rng.uniform() < 0.5 ? -rho : rho;
        return;
    }
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (int i = 0; i < d_; ++i) {
            out[i] = rng.normal();
            norm_sq += out[i] * out[i];
        }
    } while (norm_sq < 1e-24);
    const double scale = rho / std::sqrt(norm_sq);
    for (int i = 0; i < d_; ++i) out[i] *= scale;
}

MkEstimate mk_monte_carlo(int d, double alpha, int k, long samples, Rng& rng) {
    if (k < 3) throw std::invalid_argument("mk_monte_carlo: k must be >= 3");
    if (samples < 1) throw std::invalid_argument("mk_monte_carlo: samples must be >= 1");
    const double vg = kernel_mass(d, alpha);
    const int sats = k - 2;
    RadialKernelSampler sampler(d, alpha);

    std::vector<double> pts(static_cast<std::size_t>(sats) * d);
    double mean = 0.0, m2 = 0.0;
    for (long s = 0; s < samples; ++s) {
        for (int i = 0; i < sats; ++i) sampler.sample_point(rng, pts.data() + i * d);
        double weight = 1.0;
        for (int u = 0; u < sats; ++u)
            for (int v = u + 1; v < sats; ++v)
                weight *= connection_prob(euclid(pts.data() + u * d, pts.data() + v * d, d), alpha);
        const double delta = weight - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (weight - mean);
    }

    const double scale = 2.0 * std::pow(vg, sats);
    MkEstimate est;
    est.samples = samples;
    est.low_samples = samples < 100;
    est.value = scale * mean;
    est.std_error =
        samples > 1 ? scale * std::sqrt(m2 / (static_cast<double>(samples - 1) * samples)) : 0.0;
    return est;
}

TheoryConstants compute_theory_constants(const ModelParams& params, long mk_samples, Rng& rng) {
    params.validate();
    TheoryConstants tc;
    tc.d = params.d;
    tc.alpha = params.alpha;
    tc.k = params.k;
    tc.n = params.n;
    tc.c_d = 1.0;
    tc.theta = frechet_shape(params.d, params.alpha, params.k);
    if (params.k == 3) {
        tc.mk = m3_closed_form(params.d, params.alpha);
        tc.mk_std_error = 0.0;
        tc.mk_samples = 0;
    } else {
        const MkEstimate est = mk_monte_carlo(params.d, params.alpha, params.k, mk_samples, rng);
        tc.mk = est.value;
        tc.mk_std_error = est.std_error;
        tc.mk_samples = est.samples;
    }
    tc.prefactor = w_prefactor(params.d, params.alpha, params.k, tc.mk);
    tc.frechet_scale = frechet_normalizer(params.n, params.d, params.alpha, params.k, tc.mk);
    return tc;
}

}  // namespace srgg
