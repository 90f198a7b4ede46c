#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace srgg {

// Points are rows of an N x d row-major matrix; a single point is a row vector.
using Point = Eigen::RowVectorXd;
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Model parameters: dimension d, torus side length n, kernel exponent alpha,
// clique size k.  Every limit statement needs alpha > d and k >= 3.
struct ModelParams {
    int d = 1;
    double n = 1.0;
    double alpha = 2.0;
    int k = 3;

    void validate() const {
        if (d < 1) throw std::invalid_argument("ModelParams: d must be >= 1");
        if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("ModelParams: n must be > 0");
        if (!(alpha > static_cast<double>(d)))
            throw std::invalid_argument("ModelParams: alpha must exceed d");
        if (k < 3) throw std::invalid_argument("ModelParams: k must be >= 3");
    }

    double volume() const { return std::pow(n, d); }
};

// Per-coordinate wrapped separation min(|a-b|, n-|a-b|).
inline double torus_coord_delta(double a, double b, double n) {
    const double diff = std::fabs(a - b);
    return std::min(diff, n - diff);
}

// Wrapped Euclidean metric on the side-n torus.  Symmetric, zero iff the
// points coincide, bounded by (n/2)*sqrt(d).
template <typename DerivedA, typename DerivedB>
double torus_distance(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y,
                      const ModelParams& params) {
    if (x.size() != params.d || y.size() != params.d)
        throw std::invalid_argument("torus_distance: dimension mismatch");
    double sq = 0.0;
    for (int i = 0; i < params.d; ++i) {
        const double delta = torus_coord_delta(x(i), y(i), params.n);
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

// Fast path for rows of a row-major cloud matrix (no dimension re-check).
inline double torus_distance_rows(const double* x, const double* y, int d, double n) {
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
        const double diff = std::fabs(x[i] - y[i]);
        const double delta = std::min(diff, n - diff);
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

// Reduce raw coordinates into the fundamental domain [0, n)^d.
template <typename Derived>
Point wrap_point(const Eigen::MatrixBase<Derived>& raw, const ModelParams& params) {
    if (raw.size() != params.d) throw std::invalid_argument("wrap_point: dimension mismatch");
    Point out(params.d);
    for (int i = 0; i < params.d; ++i) {
        const double c = raw(i);
        if (!std::isfinite(c)) throw std::invalid_argument("wrap_point: non-finite coordinate");
        double w = std::fmod(c, params.n);
        if (w < 0.0) w += params.n;
        if (w >= params.n) w = 0.0;  // fmod rounding at the seam
        out(i) = w;
    }
    return out;
}

inline double max_torus_distance(const ModelParams& params) {
    return 0.5 * params.n * std::sqrt(static_cast<double>(params.d));
}

}  // namespace srgg
