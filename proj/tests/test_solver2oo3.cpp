#include <doctest.h>

#include <cmath>

#include "statecmp/solver2oo3.hpp"
#include "test_helpers.hpp"

using namespace statecmp;
using namespace testutil;

namespace {

// Frozen value of (sqrt(2) - sqrt(sqrt(2))) / (2 - sqrt(2)).
constexpr double kBoundary = 0.3841100321166597;

// Frozen closed-form optima 1 - (sqrt(8)/9)(4c - c^2).
constexpr double kPOpt01 = 0.8774348245943318;
constexpr double kPOpt02 = 0.7611550427992106;
constexpr double kPOpt03 = 0.6511606546146366;
constexpr double kPOpt038 = 0.5676906274665712;

} // namespace

TEST_CASE("region boundary") {
    CHECK(region_boundary() == doctest::Approx(kBoundary).epsilon(1e-15));
    const double direct =
        (std::sqrt(2.0) - std::sqrt(std::sqrt(2.0))) / (2.0 - std::sqrt(2.0));
    CHECK(region_boundary() == doctest::Approx(direct).epsilon(1e-15));
    // The boundary overlap corresponds to an angle of about 0.3745 pi.
    CHECK(std::acos(region_boundary()) / M_PI ==
          doctest::Approx(0.3745083273472679).epsilon(1e-12));
}

TEST_CASE("closed-form optimum inside the region") {
    const struct {
        double c;
        double expected;
    } cases[] = {{0.1, kPOpt01}, {0.2, kPOpt02}, {0.3, kPOpt03}, {0.38, kPOpt038}};
    for (const auto& tc : cases) {
        const ThreeReport report = p_opt3(tc.c);
        CHECK(report.region_ok);
        REQUIRE(report.p_opt.has_value());
        CHECK(*report.p_opt == doctest::Approx(tc.expected).epsilon(1e-12));
        CHECK(report.dim_H_prime == 6);
        CHECK(report.dim_kcap_a == 3);
        CHECK(report.dim_kcap_b == 0);
        CHECK(report.boundary == doctest::Approx(kBoundary).epsilon(1e-15));
    }
}

TEST_CASE("outside the region no optimum is claimed") {
    const ThreeReport report = p_opt3(0.5);
    CHECK_FALSE(report.region_ok);
    CHECK_FALSE(report.p_opt.has_value());
    // The reduction structure itself is still reported.
    CHECK(report.dim_H_prime == 6);
    CHECK(report.dim_kcap_a == 3);
    CHECK(report.dim_kcap_b == 0);
}

TEST_CASE("optimum behaves like a success probability") {
    double previous = 1.0;
    for (double c = 0.01; c < region_boundary(); c += 0.01) {
        const ThreeReport report = p_opt3(c);
        REQUIRE(report.p_opt.has_value());
        CHECK(*report.p_opt > 0.0);
        CHECK(*report.p_opt < 1.0);
        CHECK(*report.p_opt < previous);
        previous = *report.p_opt;
    }
}

TEST_CASE("instance and reduction structure") {
    const ThreeInstance inst = make_three_instance(0.2);
    CHECK(inst.ensemble.size() == 3);
    CHECK(inst.ensemble.dim == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < i; ++j)
            CHECK(std::abs(inst.ensemble.states[i].dot(inst.ensemble.states[j]) -
                           Complex(0.2)) <= 1e-12);

    const ReductionResult red = reduce3(inst);
    CHECK(red.H.dim() == 9);
    CHECK(red.kcap_a.dim() == 3);
    CHECK(red.kcap_b.dim() == 0);
    CHECK(red.H_prime.dim() == 6);

    // The retained space is exactly the swap-symmetric subspace.
    const SymmetrySplit split = symmetry_split(red.H);
    CHECK(max_abs_diff(red.H_prime.projector(), split.H_plus.projector()) <= 1e-9);

    SUBCASE("reduced weights") {
        // zeta = eta_a zeta_a + eta_b zeta_b with eta_a = 1/3.
        CHECK(red.zeta ==
              doctest::Approx(red.zeta_a / 3 + 2 * red.zeta_b / 3).epsilon(1e-12));
        CHECK(red.zeta > 0.0);
        CHECK(red.zeta < 1.0);
    }
    SUBCASE("overlap validation") {
        CHECK_THROWS_AS(make_three_instance(-0.1), ValidationError);
        CHECK_THROWS_AS(make_three_instance(1.0), ValidationError);
    }
}

TEST_CASE("separable heuristic") {
    SUBCASE("symmetric detector weights give (1 - cos)^2") {
        CHECK(separable3_heuristic(0.2) == doctest::Approx(0.64).epsilon(1e-10));
        CHECK(separable3_heuristic(0.3) == doctest::Approx(0.49).epsilon(1e-10));
    }
    SUBCASE("the joint optimum beats the product heuristic") {
        for (double c : {0.05, 0.15, 0.25, 0.35}) {
            const ThreeReport report = p_opt3(c);
            REQUIRE(report.p_opt.has_value());
            CHECK(*report.p_opt > separable3_heuristic(c));
        }
    }
}
