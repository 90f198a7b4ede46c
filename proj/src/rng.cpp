#include "srgg/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace srgg {

namespace {

// Hoermann's PTRS transformed-rejection sampler, exact for mean >= ~10.
long poisson_ptrs(Rng& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kf;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return static_cast<long>(kf);
        }
    }
}

}  // namespace

long Rng::poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        // Knuth inversion by uniform products
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    return poisson_ptrs(*this, mean);
}

}  // namespace srgg
