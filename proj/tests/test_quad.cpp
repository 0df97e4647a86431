#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cesaro/quad.hpp"

using namespace cesaro;
namespace ex = cesaro::expr;

TEST_CASE("simple integrals") {
    const auto r = quad::integrate(ex::parse("x"), 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.evaluations >= 15);

    CHECK(quad::integrate(ex::parse("sin(x)"), 0.0, std::numbers::pi, 1e-12).value ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("arctan integral hits (pi/8) log 2") {
    const auto r = quad::integrate(ex::parse("arctan(x)/(1+x)"), 0.0, 1.0, 1e-12);
    const double target = std::numbers::pi / 8.0 * std::log(2.0);
    CHECK(std::fabs(r.value - target) < 1e-10);
    CHECK(r.value == doctest::Approx(0.2721982612879503).epsilon(1e-12));
}

TEST_CASE("power integrands (interior nodes handle the x^beta endpoints)") {
    for (double beta : {0.5, 1.0, 2.5, 7.0}) {
        ex::params p{{"b", beta}};
        const auto r = quad::integrate(ex::parse("x^b"), 0.0, 1.0, 1e-11, p);
        CHECK(std::fabs(r.value - 1.0 / (beta + 1.0)) < 1e-11);
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(quad::integrate(ex::parse("x"), 1.0, 0.0, 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(quad::integrate(ex::parse("x"), 0.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(quad::limit_functional(ex::parse("x"), 0.0, 1.0, 1e-10),
                    std::invalid_argument);
}

TEST_CASE("evaluation errors surface from the integrand") {
    CHECK_THROWS_AS(quad::integrate(ex::parse("1/(x-0.5)"), 0.0, 1.0, 1e-12),
                    std::exception); // either eval error at a node or accuracy error
}

TEST_CASE("limit functional of f = 1 returns L to machine precision") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> alpha_dist(0.1, 5.0);
    std::uniform_real_distribution<double> mean_dist(-10.0, 10.0);
    const ex::ast one = ex::parse("1");
    for (int i = 0; i < 20; ++i) {
        const double alpha = alpha_dist(rng);
        const double mean = mean_dist(rng);
        const auto r = quad::limit_functional(one, alpha, mean, 1e-12);
        CHECK(std::fabs(r.value - mean) <= 1e-14 * std::max(1.0, std::fabs(mean)));
    }
}

TEST_CASE("substitution agrees with the direct weighted integral") {
    // L * integral alpha x^{alpha-1} f(x) dx computed both ways
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> alpha_dist(1.0, 4.0);
    for (const char* fsrc : {"x^2+1", "3*x^3-x", "x^4-2*x^2+0.5"}) {
        const ex::ast f = ex::parse(fsrc);
        for (int i = 0; i < 5; ++i) {
            const double alpha = alpha_dist(rng);
            const double mean = 1.7;
            const auto sub = quad::limit_functional(f, alpha, mean, 1e-12);
            ex::params p{{"c", alpha}};
            const ex::ast direct_integrand =
                ex::parse(std::string("c*x^(c-1)*(") + fsrc + ")");
            const auto direct =
                quad::integrate(direct_integrand, 0.0, 1.0, 1e-12, p);
            CHECK(std::fabs(sub.value - mean * direct.value) < 1e-11);
        }
    }
}

TEST_CASE("limit functional handles alpha < 1 via substitution") {
    // weight alpha x^{alpha-1} is unbounded at 0 but the substituted
    // integrand is not
    const auto r = quad::limit_functional(ex::parse("1+x"), 0.5, 2.0, 1e-10);
    // integral_0^1 0.5 x^{-1/2}(1+x) dx = 1 + 1/3
    CHECK(std::fabs(r.value - 2.0 * (4.0 / 3.0)) < 1e-9);
}

TEST_CASE("closed-form log moment") {
    CHECK(quad::log_moment(0.0) == -1.0);
    CHECK(quad::log_moment(1.0) == -0.25);
    CHECK(quad::log_moment(2.0) == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(quad::log_moment(-0.5), std::invalid_argument);
}

TEST_CASE("log moment cross-check against quadrature") {
    // integrate x^a log x on [delta, 1] for shrinking delta and
    // extrapolate with the known tail integral bound
    for (double alpha : {0.0, 1.0, 2.5}) {
        ex::params p{{"a", alpha}};
        const ex::ast integrand = ex::parse("x^a*log(x)");
        double best = 0.0;
        for (double delta : {1e-6, 1e-8, 1e-10})
            best = quad::integrate(integrand, delta, 1.0, 1e-12, p).value;
        CHECK(std::fabs(best - quad::log_moment(alpha)) < 1e-8);
    }
}
