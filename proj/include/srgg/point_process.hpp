#pragma once

#include "srgg/rng.hpp"
#include "srgg/torus.hpp"

namespace srgg {

// A sampled point configuration on the torus together with the stream that
// produced it, so any downstream object can state its provenance.
struct PointCloud {
    PointMatrix points;  // count x d, rows in [0, n)^d
    ModelParams params;
    StreamId seed_record;

    long count() const { return static_cast<long>(points.rows()); }
    const double* row(long i) const { return points.data() + static_cast<long>(params.d) * i; }
};

// Homogeneous unit-intensity Poisson sample: N ~ Poisson(n^d), then N i.i.d.
// uniform positions.  Rejects configurations whose expected count cannot be
// represented exactly (see point_process.cpp for the limit).
PointCloud sample_poisson_cloud(const ModelParams& params, Rng& rng);

// Binomial point process with a fixed count; unit-test workhorse.
PointCloud sample_fixed_cloud(long count, const ModelParams& params, Rng& rng);

}  // namespace srgg
