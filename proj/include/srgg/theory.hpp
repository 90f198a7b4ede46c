#pragma once

#include <vector>

#include "srgg/rng.hpp"
#include "srgg/torus.hpp"

namespace srgg {

// Gamma function on (0, inf) via the Lanczos approximation (g = 7, 9 terms),
// good to ~15 significant digits.  Nonpositive arguments are rejected.
double gamma_fn(double x);

// Integral of the kernel over R^d: pi^{d/2} Gamma(1 - d/alpha) / Gamma(1 + d/2).
double kernel_mass(int d, double alpha);

// Triangle kernel constant M_3 = 2 * kernel_mass.
double m3_closed_form(int d, double alpha);

// Frechet shape (k-1)*alpha - d.
double frechet_shape(int d, double alpha, int k);

struct MkEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
    bool low_samples = false;  // stderr unreliable below 100 samples
};

// Importance-sampled clique kernel constant: draws the k-2 satellite points
// from density g(x,0)/kernel_mass (radius by tabulated inverse CDF with an
// exact Pareto-thinned tail, direction uniform) so the first product row is
// absorbed exactly; the estimator averages the remaining pair factors.
// For k = 3 the pair product is empty and the estimator returns
// m3_closed_form with zero standard error.
MkEstimate mk_monte_carlo(int d, double alpha, int k, long samples, Rng& rng);

// Limit constant of the long-edge clique count (C_d = 1 under the side-n
// cube convention): d * pi^{d/2} * mk / (2 * Gamma(1 + d/2) * ((k-1)alpha - d)).
double w_prefactor(int d, double alpha, int k, double mk);

// Predicted mean count of k-cliques with an edge of length >= r:
// w_prefactor * n^d * r^{d - (k-1)alpha}.
double expected_w(double n, double r, int d, double alpha, int k, double mk);

// Predicted triangles per edge of length r: M_3 * r^{-alpha}.
double theory_triangles_per_edge(double r, int d, double alpha);

// Threshold radius at which the long-edge clique count becomes Poisson with
// mean r0^{d-(k-1)alpha}; satisfies expected_w(n, critical_radius(n, r0))
// = r0^{d-(k-1)alpha} identically.
double critical_radius(double n, double r0, int d, double alpha, int k, double mk);

// Multiplier c(n) with c(n) * e_star converging to Frechet((k-1)alpha - d);
// c(n) * critical_radius(n, r0) = r0 for every r0.
double frechet_normalizer(double n, int d, double alpha, int k, double mk);

struct TheoryConstants {
    int d = 0;
    double alpha = 0.0;
    int k = 0;
    double n = 0.0;
    double c_d = 1.0;
    double theta = 0.0;        // Frechet shape
    double mk = 0.0;           // M_k (closed form for k = 3)
    double mk_std_error = 0.0; // 0 when closed form
    long mk_samples = 0;
    double prefactor = 0.0;
    double frechet_scale = 0.0;  // c(n)
};

TheoryConstants compute_theory_constants(const ModelParams& params, long mk_samples, Rng& rng);

// Radial sampler for the normalized kernel density on (0, inf):
// f(rho) ~ rho^{d-1} (1 - exp(-rho^{-alpha})).  Head on [0, R] is inverted
// from a fine tabulated CDF (per-cell quadratic solve); the tail beyond R is
// drawn from the exact conditional law by Pareto proposals thinned with
// (1 - e^{-t})/t.
class RadialKernelSampler {
  public:
    RadialKernelSampler(int d, double alpha);

    double sample_radius(Rng& rng) const;
    // fills out[0..d-1] with radius * uniform direction
    void sample_point(Rng& rng, double* out) const;

    double total_mass() const { return total_mass_; }    // Gamma(1-d/alpha)/d
    double table_limit() const { return table_limit_; }  // R
    double head_mass() const { return head_mass_; }
    // cumulative int_0^rho x^{d-1}(1-e^{-x^{-alpha}}) dx from the table/series
    double cdf_mass(double rho) const;

  private:
    double density(double rho) const;

    int d_;
    double alpha_;
    double table_limit_;
    double total_mass_;
    double head_mass_;
    double tail_mass_;
    std::vector<double> grid_;  // cell boundaries
    std::vector<double> cum_;   // cumulative mass at boundaries
    std::vector<double> dens_;  // density at boundaries
};

}  // namespace srgg
