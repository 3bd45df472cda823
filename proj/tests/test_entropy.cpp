#include <doctest.h>

#include <epl/distribution.hpp>
#include <epl/entropy.hpp>

#include <cmath>
#include <stdexcept>

#include "test_util.hpp"

TEST_SUITE("entropy") {

TEST_CASE("series agrees with quadrature") {
    for (const auto& [beta, theta] :
         {std::pair{1.0, 1.0}, {1.0, 0.5}, {2.0, 3.0}}) {
        const epl::EplParams p(beta, theta);
        for (double alpha : {0.5, 2.0, 3.0}) {
            const auto s = epl::renyi_entropy_series(alpha, p);
            CAPTURE(beta);
            CAPTURE(theta);
            CAPTURE(alpha);
            CHECK(s.converged);
            CHECK(abs_diff(s.value, epl::renyi_entropy_quadrature(alpha, p)) <=
                  1e-4);
        }
    }
}

TEST_CASE("regression value at alpha one half") {
    const epl::EplParams p(1.0, 0.5);
    CHECK(abs_diff(epl::renyi_entropy_quadrature(0.5, p), 0.7815760987) <=
          1e-8);
    CHECK(abs_diff(epl::renyi_entropy_series(0.5, p).value, 0.7815760987) <=
          1e-8);
}

TEST_CASE("continuous across the alpha = 1 gap") {
    const epl::EplParams p(1.0, 1.0);
    const double below = epl::renyi_entropy_series(1.0 - 1e-4, p).value;
    const double above = epl::renyi_entropy_series(1.0 + 1e-4, p).value;
    CHECK(abs_diff(below, above) < 1e-3);
}

TEST_CASE("scale family shifts by minus log beta") {
    for (double alpha : {0.5, 2.0}) {
        const double base =
            epl::renyi_entropy_series(alpha, epl::EplParams(1.0, 1.0)).value;
        const double scaled =
            epl::renyi_entropy_series(alpha, epl::EplParams(2.0, 1.0)).value;
        CHECK(abs_diff(scaled, base - std::log(2.0)) <= 1e-10);

        const double qbase =
            epl::renyi_entropy_quadrature(alpha, epl::EplParams(1.0, 1.0));
        const double qscaled =
            epl::renyi_entropy_quadrature(alpha, epl::EplParams(2.0, 1.0));
        CHECK(abs_diff(qscaled, qbase - std::log(2.0)) <= 1e-9);
    }
}

TEST_CASE("exponential limit at order two") {
    // Renyi-2 entropy of the unit exponential is log 2.
    const epl::EplParams p(1.0, 1e6);
    CHECK(abs_diff(epl::renyi_entropy_quadrature(2.0, p), std::log(2.0)) <=
          1e-4);
}

TEST_CASE("non-increasing in the order") {
    const epl::EplParams p(1.0, 1.0);
    double prev = 1.0 / 0.0;
    for (double alpha : {0.25, 0.5, 2.0, 3.0, 5.0}) {
        const double v = epl::renyi_entropy_quadrature(alpha, p);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("domain errors and truncation flag") {
    const epl::EplParams p(1.0, 1.0);
    CHECK_THROWS_AS(epl::renyi_entropy_series(1.0, p), std::domain_error);
    CHECK_THROWS_AS(epl::renyi_entropy_series(0.0, p), std::domain_error);
    CHECK_THROWS_AS(epl::renyi_entropy_series(-2.0, p), std::domain_error);
    CHECK_THROWS_AS(epl::renyi_entropy_quadrature(1.0, p), std::domain_error);

    epl::SeriesConfig tiny;
    tiny.max_terms = 2;
    const auto s = epl::renyi_entropy_series(2.0, p, tiny);
    CHECK_FALSE(s.converged);
    CHECK(std::isfinite(s.value));
}

}  // TEST_SUITE
