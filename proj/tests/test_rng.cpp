#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "svjmle/rng.hpp"

using namespace svjmle;

TEST_CASE("substreams are pure functions of (seed, index)") {
    Rng a(123, 7);
    Rng b(123, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(123, 8);
    Rng d(124, 7);
    bool differ_index = false, differ_seed = false;
    Rng a2(123, 7);
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t base = a2.next_u64();
        differ_index = differ_index || (c.next_u64() != base);
        differ_seed = differ_seed || (d.next_u64() != base);
    }
    CHECK(differ_index);
    CHECK(differ_seed);
}

TEST_CASE("uniform stays in (0, 1]") {
    Rng rng(5);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("normal moments") {
    Rng rng(17);
    const std::size_t n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sumsq / static_cast<double>(n) - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("poisson moments") {
    Rng rng(19);
    const std::size_t n = 100000;
    const double lambda = 3.0;
    std::vector<double> draws(n);
    for (auto& x : draws) x = rng.poisson(lambda);
    CHECK(testsupport::mean(draws) == doctest::Approx(lambda).epsilon(0.02));
    CHECK(testsupport::variance(draws) == doctest::Approx(lambda).epsilon(0.05));
    CHECK(rng.poisson(0.0) == 0);
    CHECK(rng.poisson(-1.0) == 0);
}

TEST_CASE("gamma moments") {
    Rng rng(23);
    const std::size_t n = 200000;
    for (double shape : {0.4, 1.0, 4.5}) {
        std::vector<double> draws(n);
        for (auto& x : draws) x = rng.gamma(shape);
        CHECK(testsupport::mean(draws) == doctest::Approx(shape).epsilon(0.02));
        CHECK(testsupport::variance(draws) == doctest::Approx(shape).epsilon(0.05));
    }
}
