#include "srgg/point_process.hpp"

#include <stdexcept>
#include <string>

namespace srgg {

namespace {

// Vertex indices are 32-bit and counts feed exact double arithmetic, so cap
// the expected count well below both.
constexpr double kMaxMeanPoints = 1e9;

PointCloud fill_uniform(long count, const ModelParams& params, Rng& rng) {
    PointCloud cloud;
    cloud.params = params;
    cloud.seed_record = rng.stream();
    cloud.points.resize(count, params.d);
    for (long i = 0; i < count; ++i)
        for (int j = 0; j < params.d; ++j) cloud.points(i, j) = rng.uniform(0.0, params.n);
    return cloud;
}

}  // namespace

PointCloud sample_poisson_cloud(const ModelParams& params, Rng& rng) {
    params.validate();
    const double mean = params.volume();
    if (!(mean <= kMaxMeanPoints))
        throw std::invalid_argument("sample_poisson_cloud: expected count n^d = " +
                                    std::to_string(mean) + " exceeds the supported limit " +
                                    std::to_string(kMaxMeanPoints));
    const long count = rng.poisson(mean);
    return fill_uniform(count, params, rng);
}

PointCloud sample_fixed_cloud(long count, const ModelParams& params, Rng& rng) {
    params.validate();
    if (count < 0) throw std::invalid_argument("sample_fixed_cloud: count must be >= 0");
    return fill_uniform(count, params, rng);
}

}  // namespace srgg
