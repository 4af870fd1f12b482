#include <doctest.h>

#include <cmath>

#include "pyrofield/errors.hpp"
#include "pyrofield/oned.hpp"

using namespace pyrofield;

TEST_CASE("closed forms") {
    CHECK(marginal_burn({0.5}, 0) == 0.5);
    CHECK(marginal_burn({0.5}, 1) == 0.25);
    CHECK(marginal_burn({1.0}, 123) == 1.0);

    CHECK(y_tail({0.3}, 1) == 1.0);
    CHECK(y_tail({0.9}, 2) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(y_tail({0.0}, 2) == 0.0);

    CHECK(y_moments({0.5}).first == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(y_moments({0.5}).second == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(y_moments({0.0}).first == 1.0);
    CHECK(y_moments({0.0}).second == 0.0);
    CHECK(y_moments({0.9}).first == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(y_moments({0.9}).second == doctest::Approx(90.0).epsilon(1e-12));
    CHECK_THROWS_AS(y_moments({1.0}), DivergentMoments);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate_oned(0.0));
    CHECK_NOTHROW(validate_oned(1.0));
    CHECK_THROWS_AS(validate_oned(-0.1), ConstraintViolation);
    CHECK_THROWS_AS(validate_oned(1.1), ConstraintViolation);
    CHECK_THROWS_AS(validate_oned(std::nan("")), ConstraintViolation);
}

TEST_CASE("simulation at p=0: only the boundary tree burns") {
    const OneDEmpirical emp = simulate_1d({0.0}, 5000, 99);
    CHECK(emp.counts.size() == 2);
    CHECK(emp.counts[1] == 5000);
    CHECK(emp.mean() == 1.0);
    CHECK(emp.variance() == 0.0);
}

TEST_CASE("simulation rejects p=1") {
    CHECK_THROWS_AS(simulate_1d({1.0}, 10, 1), DivergentMoments);
}

TEST_CASE("empirical moments converge to the geometric law") {
    const OneDParams p{0.5};
    const std::uint64_t replicas = 200000;
    const OneDEmpirical emp = simulate_1d(p, replicas, 12345, 2);
    const auto [mean, var] = y_moments(p);
    const double se_mean = std::sqrt(var / static_cast<double>(replicas));
    CHECK(std::abs(emp.mean() - mean) <= 3 * se_mean);
    // loose bound for the variance estimate
    CHECK(emp.variance() == doctest::Approx(var).epsilon(0.05));
}

TEST_CASE("tail identity within binomial bounds") {
    const OneDParams p{0.9};
    const std::uint64_t replicas = 200000;
    const OneDEmpirical emp = simulate_1d(p, replicas, 777);
    for (std::uint64_t n = 1; n <= 20; ++n) {
        const double t = y_tail(p, n);
        const double se = std::sqrt(t * (1 - t) / static_cast<double>(replicas));
        CHECK(std::abs(emp.tail_frequency(n) - t) <= 3.5 * se + 1e-12);
    }
    // Y >= 1 always: the prefix includes the boundary tree.
    CHECK(emp.tail_frequency(1) == 1.0);
    CHECK(emp.counts[0] == 0);
}

TEST_CASE("mean recovered from the analytic tail sum") {
    for (double p : {0.3, 0.5, 0.9}) {
        const OneDParams params{p};
        double mean = 0.0;
        // E[Y] = sum_{n>=1} P{Y >= n}
        for (std::uint64_t n = 1; n < 10000; ++n) {
            const double t = y_tail(params, n);
            mean += t;
            if (t < 1e-18) break;
        }
        CHECK(std::abs(mean - y_moments(params).first) <= 1e-10);
    }
}
