#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "srgg/rng.hpp"

using srgg::Rng;

TEST_CASE("identical streams produce identical sequences") {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices decorrelate") {
    Rng a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform stays in [0,1) with sane mean") {
    Rng rng(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

TEST_CASE("poisson sampler matches mean and variance") {
    Rng rng(3, 0);
    for (double mean : {0.5, 4.0, 25.0, 900.0}) {
        const int n = 20000;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(rng.poisson(mean));
            sum += x;
            sumsq += x * x;
        }
        const double m = sum / n;
        const double var = sumsq / n - m * m;
        CHECK(std::fabs(m - mean) < 5.0 * std::sqrt(mean / n));
        CHECK(std::fabs(var / mean - 1.0) < 0.1);
    }
}

TEST_CASE("poisson rejects negative mean") {
    Rng rng(3, 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), std::invalid_argument);
}

TEST_CASE("normal sampler moments") {
    Rng rng(9, 2);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sumsq += x * x;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(std::fabs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("geometric skip mean is (1-p)/p") {
    Rng rng(11, 0);
    const double p = 0.05;
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.geometric_skip(p));
    const double expect = (1.0 - p) / p;
    CHECK(std::fabs(sum / n - expect) < 0.25);
}
