#include <doctest.h>

#include <cmath>

#include "pyrofield/errors.hpp"
#include "pyrofield/exact.hpp"
#include "test_util.hpp"

using namespace pyrofield;

namespace {

DiagonalDistribution step_to(const Params& p, const Boundary& b, std::uint32_t n,
                             const ExactOptions& opts = {}) {
    DiagonalDistribution d = initial_distribution(p, b);
    for (std::uint32_t i = 0; i < n; ++i) d = step_distribution(p, b, d, opts);
    return d;
}

}  // namespace

TEST_CASE("initial distribution from boundary conditions") {
    const Params p = validate_params(0.5, 0.5, 0.75);
    CHECK(initial_distribution(p, Boundary::delta()).probs[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(initial_distribution(p, Boundary::empty()).probs[1] == 0.0);
    const Boundary only_x({0}, {});
    CHECK(initial_distribution(validate_params(0.5, 0.5, 0.75), only_x).probs[1] ==
          doctest::Approx(0.5).epsilon(1e-15));
    // only bottom neighbor burnt: probability is beta... with fire_x={0} the
    // bottom neighbor S(0,-1) is burnt, kernel class (0,1) -> beta.
    const Boundary only_x2({0}, {});
    const Params p2 = validate_params(0.3, 0.6, 0.7);
    CHECK(initial_distribution(p2, only_x2).probs[1] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("step_distribution marginals and degenerate parameters") {
    const Boundary delta = Boundary::delta();
    SUBCASE("P{S(0,1)=1} = gamma*beta") {
        const Params p = validate_params(0.5, 0.5, 0.75);
        const DiagonalDistribution d1 = step_to(p, delta, 1);
        CHECK(d1.marginal_one(0) == doctest::Approx(0.375).epsilon(1e-13));
    }
    SUBCASE("all parameters 1: point mass on all ones") {
        const Params p = validate_params(1.0, 1.0, 1.0);
        for (std::uint32_t n : {1u, 3u, 6u}) {
            const DiagonalDistribution d = step_to(p, delta, n);
            CHECK(d.probs.back() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    SUBCASE("all parameters 0: point mass on all zeros") {
        const Params p = validate_params(0.0, 0.0, 0.0);
        for (std::uint32_t n : {1u, 4u}) {
            const DiagonalDistribution d = step_to(p, delta, n);
            CHECK(d.probs[0] == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("exact limit is enforced") {
    const Params p = validate_params(0.5, 0.5, 0.75);
    ExactOptions opts;
    opts.n_max_exact = 3;
    DiagonalDistribution d = step_to(p, Boundary::delta(), 3, opts);
    CHECK_THROWS_AS(step_distribution(p, Boundary::delta(), d, opts), ExactLimitExceeded);
}

TEST_CASE("yn_pmf") {
    const Boundary delta = Boundary::delta();
    SUBCASE("n=0 Bernoulli(gamma)") {
        const YnPmf pmf = yn_pmf(initial_distribution(validate_params(0.5, 0.5, 0.75), delta));
        CHECK(pmf.pmf[0] == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(pmf.pmf[1] == doctest::Approx(0.75).epsilon(1e-15));
    }
    SUBCASE("everything burns at gamma=alpha=beta=1") {
        const YnPmf pmf = yn_pmf(step_to(validate_params(1, 1, 1), delta, 5));
        CHECK(pmf.pmf[6] == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("golden values at n=2, alpha=beta=0.5, gamma=0.75") {
        // Frozen from an exact rational enumeration of the n=2 triangle:
        // (139, 63, 45, 9) / 256.
        const YnPmf pmf = yn_pmf(step_to(validate_params(0.5, 0.5, 0.75), delta, 2));
        CHECK(pmf.pmf[0] == doctest::Approx(139.0 / 256).epsilon(1e-12));
        CHECK(pmf.pmf[1] == doctest::Approx(63.0 / 256).epsilon(1e-12));
        CHECK(pmf.pmf[2] == doctest::Approx(45.0 / 256).epsilon(1e-12));
        CHECK(pmf.pmf[3] == doctest::Approx(9.0 / 256).epsilon(1e-12));
        CHECK(pmf.mean_z() == doctest::Approx(0.234375).epsilon(1e-12));
    }
}

TEST_CASE("triangle enumeration agrees with the stepped distribution") {
    testutil::Gen gen(2024);
    const Boundary boundaries[] = {Boundary::delta(), Boundary::empty(),
                                   Boundary({0, 2}, {0})};
    for (int trial = 0; trial < 20; ++trial) {
        const Params p = gen.valid_params();
        for (const Boundary& b : boundaries) {
            const TriangleJoint joint = triangle_enumeration(p, b, 5);
            DiagonalDistribution dist = initial_distribution(p, b);
            for (std::uint32_t d = 0; d <= 5; ++d) {
                if (d > 0) dist = step_distribution(p, b, dist);
                const DiagonalDistribution marg = joint.diagonal_marginal(d);
                REQUIRE(marg.probs.size() == dist.probs.size());
                for (std::size_t c = 0; c < marg.probs.size(); ++c)
                    CHECK(std::abs(marg.probs[c] - dist.probs[c]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("triangle n=0 equals the initial distribution") {
    const Params p = validate_params(0.4, 0.4, 0.6);
    const TriangleJoint joint = triangle_enumeration(p, Boundary::delta(), 0);
    const DiagonalDistribution init = initial_distribution(p, Boundary::delta());
    CHECK(joint.probs[0] == doctest::Approx(init.probs[0]).epsilon(1e-15));
    CHECK(joint.probs[1] == doctest::Approx(init.probs[1]).epsilon(1e-15));
}

TEST_CASE("cylinder probabilities") {
    const Boundary delta = Boundary::delta();
    SUBCASE("empty event is the sure event") {
        CHECK(cylinder_probability(validate_params(0.5, 0.5, 0.75), delta, {}) == 1.0);
    }
    SUBCASE("worked example: P{S12=0, S11=1} = 69/512") {
        const double got = cylinder_probability(validate_params(0.5, 0.5, 0.75), delta,
                                                CylinderEvent{{{1, 2, false}, {1, 1, true}}});
        CHECK(got == doctest::Approx(69.0 / 512).epsilon(1e-12));
    }
    SUBCASE("both enumeration routes agree") {
        testutil::Gen gen(55);
        for (int trial = 0; trial < 10; ++trial) {
            const Params p = gen.valid_params();
            const CylinderEvent ev{{{1, 2, false}, {1, 1, true}}};
            const double direct = cylinder_probability(p, delta, ev);
            const double via_joint = triangle_enumeration(p, delta, 3).event_probability(ev);
            CHECK(std::abs(direct - via_joint) <= 1e-12);
        }
    }
    SUBCASE("three-site identity with coefficient beta") {
        testutil::Gen gen(77);
        for (int trial = 0; trial < 20; ++trial) {
            const Params p = gen.valid_params();
            const double lhs = cylinder_probability(
                p, delta, CylinderEvent{{{2, 2, true}, {1, 2, false}, {1, 1, true}}});
            const double rhs = p.beta * cylinder_probability(
                                            p, delta,
                                            CylinderEvent{{{1, 2, false}, {2, 1, true}, {1, 1, true}}});
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
    SUBCASE("column and row laws under the delta boundary") {
        testutil::Gen gen(31);
        for (int trial = 0; trial < 5; ++trial) {
            const Params p = gen.valid_params();
            for (std::uint32_t i = 0; i <= 5; ++i) {
                const double col = cylinder_probability(p, delta, CylinderEvent{{{0, i, true}}});
                CHECK(std::abs(col - p.gamma * std::pow(p.beta, i)) <= 1e-12);
                const double row = cylinder_probability(p, delta, CylinderEvent{{{i, 0, true}}});
                CHECK(std::abs(row - p.gamma * std::pow(p.alpha, i)) <= 1e-12);
            }
        }
    }
    SUBCASE("duplicate constraint is rejected") {
        CHECK_THROWS_AS(cylinder_probability(validate_params(0.5, 0.5, 0.75), delta,
                                             CylinderEvent{{{1, 1, true}, {1, 1, false}}}),
                        std::invalid_argument);
    }
    SUBCASE("enumeration limit") {
        CHECK_THROWS_AS(cylinder_probability(validate_params(0.5, 0.5, 0.75), delta,
                                             CylinderEvent{{{6, 0, true}}}),
                        EnumLimitExceeded);
        CHECK_THROWS_AS(triangle_enumeration(validate_params(0.5, 0.5, 0.75), delta, 6),
                        EnumLimitExceeded);
    }
}

TEST_CASE("extinction is absorbing in the exact transfer") {
    const Params p = validate_params(0.5, 0.5, 0.75);
    const Boundary delta = Boundary::delta();  // max_ignition = 0
    // Point mass on the all-zero configuration of diagonal 2.
    DiagonalDistribution dead{2, std::vector<double>(8, 0.0)};
    dead.probs[0] = 1.0;
    const DiagonalDistribution next = step_distribution(p, delta, dead);
    CHECK(next.probs[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalization failures are reported, not repaired") {
    DiagonalDistribution bad{0, {0.5, 0.4}};
    CHECK_THROWS_AS(bad.check_normalized(), InternalConsistencyError);
    const Params p = validate_params(0.5, 0.5, 0.75);
    CHECK_THROWS_AS(step_distribution(p, Boundary::delta(), bad), InternalConsistencyError);
}
