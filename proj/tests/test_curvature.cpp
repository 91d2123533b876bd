#include <catch2/catch.hpp>

#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "strsub/curvature.hpp"
#include "strsub/properties.hpp"
#include "strsub/random_instances.hpp"
#include "strsub/strategies.hpp"

using namespace strsub;
using test::FixedCoverage;
using test::greedy_trap_oracle;
using test::string_linear_oracle;

namespace {

void check_witness(const CurvatureReport& r, const ObjectiveOracle& f) {
    CHECK(recompute_ratio(r, f) == Approx(r.value).margin(1e-12));
}

}  // namespace

TEST_CASE("string-linear objectives have zero total curvature and unit elemental") {
    ObjectiveOracle f = string_linear_oracle({1.0, 5.0, 2.0});
    CurvatureReport sigma = total_backward_curvature(f, 3, 3);
    CurvatureReport eps = total_forward_curvature(f, 3, 3);
    CurvatureReport eta = elemental_forward_curvature(f, 3, 2);
    CHECK(sigma.value == 0.0);
    CHECK(eps.value == 0.0);
    CHECK(eta.value == 1.0);
    check_witness(sigma, f);
    check_witness(eps, f);
    check_witness(eta, f);
}

TEST_CASE("order-symmetric backward curvature equals the set-function curvature") {
    FixedCoverage cov;
    ObjectiveOracle f = cov.oracle();
    // Direct set enumeration of max over (a, S) of 1 - (g(S u {a}) - g(S)) / g({a}).
    double expected = -1e9;
    for (Action a = 0; a < cov.num_actions(); ++a) {
        double singleton = cov.set_value(cov.action_mask(a));
        for (unsigned pick = 0; pick < (1u << cov.num_actions()); ++pick) {
            unsigned mask = 0;
            for (int x = 0; x < cov.num_actions(); ++x)
                if (pick & (1u << x)) mask |= cov.action_mask(x);
            double gain = cov.set_value(mask | cov.action_mask(a)) - cov.set_value(mask);
            expected = std::max(expected, 1.0 - gain / singleton);
        }
    }
    CurvatureReport sigma = total_backward_curvature(f, cov.num_actions(), 3);
    CHECK(sigma.value == Approx(expected).margin(1e-12));
    CHECK(sigma.value <= 1.0 + kDefaultTol);  // backward monotone
    check_witness(sigma, f);
}

TEST_CASE("curvature with respect to a string") {
    SECTION("string-linear gives zero for any target") {
        ObjectiveOracle f = string_linear_oracle({0.5, 2.0, 1.0});
        CHECK(total_backward_curvature_wrt(f, ActionString{2, 0}, 3, 2).value == 0.0);
        CHECK(total_forward_curvature_wrt(f, ActionString{1}, 3, 2).value == 0.0);
    }
    SECTION("coverage: restricted never exceeds the total") {
        FixedCoverage cov;
        ObjectiveOracle f = cov.oracle();
        CurvatureReport sigma = total_backward_curvature(f, cov.num_actions(), 4);
        CurvatureReport eps = total_forward_curvature(f, cov.num_actions(), 4);
        for_each_string(cov.num_actions(), 0, 2, [&](const ActionString& m) {
            CurvatureReport sigma_m =
                total_backward_curvature_wrt(f, m, cov.num_actions(), 2);
            CurvatureReport eps_m = total_forward_curvature_wrt(f, m, cov.num_actions(), 2);
            CHECK(sigma_m.value <= sigma.value + kDefaultTol);
            CHECK(eps_m.value <= eps.value + kDefaultTol);
            CHECK(eps_m.value >= -kDefaultTol);
            check_witness(sigma_m, f);
            check_witness(eps_m, f);
        });
        CHECK(eps.value <= 1.0 + kDefaultTol);
    }
    SECTION("trap table against brute force at the optimum") {
        ObjectiveOracle f = greedy_trap_oracle();
        ActionString optimum{1, 1};
        double expected = -1e9;  // independent loop over 0 < |N| <= 2
        for_each_string(2, 1, 2, [&](const ActionString& n) {
            if (f(n) == 0.0) return;
            expected = std::max(expected, 1.0 - (f(concat(n, optimum)) - f(optimum)) / f(n));
        });
        CurvatureReport sigma = total_backward_curvature_wrt(f, optimum, 2, 2);
        CHECK(sigma.value == Approx(expected).margin(1e-12));
        check_witness(sigma, f);
    }
}

TEST_CASE("elemental curvature flags diminishing returns") {
    SECTION("forward-monotone coverage stays within [0, 1]") {
        FixedCoverage cov;
        ObjectiveOracle f = cov.oracle();
        CurvatureReport eta = elemental_forward_curvature(f, cov.num_actions(), 3);
        CHECK(eta.value >= 0.0);
        CHECK(eta.value <= 1.0 + kDefaultTol);
        check_witness(eta, f);
    }
    SECTION("decay tables stay at or below one") {
        ObjectiveOracle f = gen::random_decay_table(3, 3, 5).as_objective();
        CHECK(elemental_forward_curvature(f, 3, 4).value <= 1.0 + kDefaultTol);
    }
    SECTION("the trap pushes elemental curvature above one") {
        ObjectiveOracle f = greedy_trap_oracle();
        CurvatureReport eta = elemental_forward_curvature(f, 2, 0);
        CHECK(eta.value > 1.0 + kDefaultTol);
        check_witness(eta, f);
    }
}

TEST_CASE("diminishing-return checks and elemental curvature agree window for window") {
    // A single-action chain with gains 1, 0.5, 0.7: the violation sits at
    // prefix length 1, visible to the depth-3 checker and the length-1
    // elemental window but invisible one window earlier.
    std::unordered_map<ActionString, double, ActionStringHash> values;
    values.emplace(ActionString{}, 0.0);
    values.emplace(ActionString{0}, 1.0);
    values.emplace(ActionString{0, 0}, 1.5);
    values.emplace(ActionString{0, 0, 0}, 2.2);
    ObjectiveOracle f = TableOracle(1, std::move(values), std::nullopt).as_objective();

    CHECK(check_diminishing_return(f, 1, 2).ok());
    CHECK(elemental_forward_curvature(f, 1, 0).value <= 1.0 + kDefaultTol);
    CHECK_FALSE(check_diminishing_return(f, 1, 3).ok());
    CHECK(elemental_forward_curvature(f, 1, 1).value > 1.0 + kDefaultTol);

    for (std::uint64_t seed : {2ull, 3ull, 8ull}) {
        ObjectiveOracle table = gen::random_submodular_table(3, 3, seed).as_objective();
        for (int depth = 2; depth <= 5; ++depth) {
            bool dr_ok = check_diminishing_return(table, 3, depth).ok();
            bool eta_ok =
                elemental_forward_curvature(table, 3, depth - 2).value <= 1.0 + kDefaultTol;
            CHECK(dr_ok == eta_ok);
        }
    }
}

TEST_CASE("restricted curvatures") {
    SECTION("string-linear values") {
        ObjectiveOracle f = string_linear_oracle({1.0, 2.0});
        CHECK(restricted_backward_curvature(f, 2, 2).value == 0.0);
        CHECK(restricted_forward_curvature_at(f, 2, 1, 2).value == 0.0);
        CHECK(restricted_elemental_curvature(f, 2, 2).value == 1.0);
    }
    SECTION("small table against a direct range maximum") {
        ObjectiveOracle f = gen::random_decay_table(2, 2, 9).as_objective();
        const int k = 2;
        double expected = -1e9;
        for_each_string(2, k, 2 * k - 1, [&](const ActionString& m) {
            for (Action a = 0; a < 2; ++a) {
                double singleton = f(ActionString{a});
                if (singleton == 0.0) continue;
                expected =
                    std::max(expected, 1.0 - (f(prepend(a, m)) - f(m)) / singleton);
            }
        });
        CurvatureReport sigma_hat = restricted_backward_curvature(f, 2, k);
        CHECK(sigma_hat.value == Approx(expected).margin(1e-12));
        check_witness(sigma_hat, f);
    }
    SECTION("restricted elemental never exceeds a wider window") {
        for (std::uint64_t seed : {4ull, 7ull}) {
            ObjectiveOracle f = gen::random_submodular_table(3, 3, seed).as_objective();
            double eta_hat = restricted_elemental_curvature(f, 3, 3).value;
            double eta_wide = elemental_forward_curvature(f, 3, 2 * 3 - 2).value;
            CHECK(eta_hat == Approx(eta_wide));  // same window by definition
            CHECK(restricted_elemental_curvature(f, 3, 2).value <= eta_hat + kDefaultTol);
        }
    }
}

TEST_CASE("curvature grows with the search window") {
    ObjectiveOracle f = gen::random_decay_table(3, 3, 13).as_objective();
    double last = -1e9;
    for (int len = 0; len <= 5; ++len) {
        double value = total_backward_curvature(f, 3, len).value;
        CHECK(value >= last - 1e-15);
        last = value;
    }
}

TEST_CASE("effective elemental curvature") {
    CHECK(effective_elemental_curvature(0.5, 4).value == 0.5);
    CHECK(effective_elemental_curvature(1.0, 7).value == 1.0);
    CHECK(effective_elemental_curvature(2.0, 3).value == 32.0);
}

TEST_CASE("submodular instances satisfy the curvature sum inequalities") {
    // For string-submodular oracles the optimum's backward curvature plus
    // the elemental curvature is at least one, and likewise for the full
    // greedy prefix's forward curvature.
    for (std::uint64_t seed : {1ull, 2ull, 5ull, 6ull}) {
        const int k = 3;
        ObjectiveOracle f = gen::random_submodular_table(3, k, seed).as_objective();
        ProblemSpec spec{3, k, f};
        auto [opt, opt_value] = optimal_exhaustive(spec);
        GreedyTrace trace = greedy(spec);
        double eta = elemental_forward_curvature(f, 3, 2 * k - 2).value;
        double sigma_opt = total_backward_curvature_wrt(f, opt, 3, k).value;
        double eps_full =
            total_forward_curvature_wrt(f, trace.strategy, 3, k).value;
        INFO("seed " << seed);
        CHECK(sigma_opt + eta >= 1.0 - kDefaultTol);
        CHECK(eps_full + eta >= 1.0 - kDefaultTol);
    }
}

TEST_CASE("degenerate oracles raise the all-zero-denominator error") {
    ObjectiveOracle zero([](const ActionString&) { return 0.0; });
    CHECK_THROWS_AS(total_backward_curvature(zero, 2, 2), DegenerateOracleError);
    CHECK_THROWS_AS(elemental_forward_curvature(zero, 2, 2), DegenerateOracleError);
}
