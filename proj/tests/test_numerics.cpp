#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "fsw/moments.hpp"
#include "fsw/numerics.hpp"
#include "fsw/spectrum.hpp"

using namespace fsw;

TEST_CASE("bisection finds sqrt(2) to machine precision") {
    // zero tolerances bisect down to adjacent doubles
    const double root =
        find_root_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0, 0.0, 0.0);
    CHECK(std::abs(root - std::numbers::sqrt2) < 1e-14);
}

TEST_CASE("bisection solves the first even eigenvalue bracket") {
    WellSpec well{};
    auto f = [&](double d) { return eigenvalue_residual(well, Parity::Even, d); };
    const double d = find_root_bracketed(f, 1e-12, std::numbers::pi / 2.0);
    const double beta = 2.0 * d / well.a;
    CHECK(std::abs(beta - 1.1862) < 5e-4);
}

TEST_CASE("bisection rejects non-bracketing intervals") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    bracket_error);
}

TEST_CASE("bisection reports the best estimate when starved of iterations") {
    try {
        find_root_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-300, 0.0, 4);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(std::abs(e.best_estimate - std::numbers::sqrt2) < 0.1);
    }
}

TEST_CASE("quadrature integrates x^2 exactly enough") {
    const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("quadrature honours breakpoints across a jump") {
    const double bp[] = {0.0};
    const auto r = integrate([](double x) { return x < 0.0 ? -1.0 : 1.0; }, -1.0, 2.0, 1e-12, bp);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
}

TEST_CASE("quadrature is exact on polynomials up to the base rule degree") {
    for (int k = 0; k <= 13; ++k) {
        const auto r = integrate([k](double x) { return std::pow(x, k); }, 0.0, 1.0, 1e-10);
        const double exact = 1.0 / (k + 1);
        CHECK(std::abs(r.value - exact) < 1e-14);  // rounding of pow and the node sums
        CHECK(r.abs_error_estimate < 1e-13);
    }
}

TEST_CASE("error estimates are honest on a mixed test set") {
    struct Case {
        const char* name;
        double (*f)(double);
        double lo, hi, exact;
    };
    const Case cases[] = {
        {"exp", [](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0},
        {"sine", [](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 2.0},
        {"runge", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0,
         0.4 * std::atan(5.0)},
        {"osc50", [](double x) { return std::sin(50.0 * x); }, 0.0, std::numbers::pi,
         (1.0 - std::cos(50.0 * std::numbers::pi)) / 50.0},
        {"osc40", [](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, std::sin(40.0) / 40.0},
        {"kink", [](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0, 1.0, 5.0 / 18.0},
        {"sqrt", [](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
        {"x3half", [](double x) { return x * std::sqrt(x); }, 0.0, 1.0, 0.4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto r = integrate(c.f, c.lo, c.hi, 1e-10);
        const double true_err = std::abs(r.value - c.exact);
        CHECK(r.converged);
        CHECK(true_err <= 10.0 * r.abs_error_estimate + 1e-15 * (1.0 + std::abs(c.exact)));
    }
}

TEST_CASE("exhausted panel budget is reported, never silent") {
    const auto r = integrate([](double x) { return std::sin(200.0 * x) / (1e-6 + x * x); }, 0.0,
                             1.0, 1e-14, {}, 8);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 9);
    CHECK(r.abs_error_estimate > 1e-14);
}

TEST_CASE("preconditions are enforced") {
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 1.0, 0.0, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, 2.0, 1.0),
                    std::invalid_argument);
    const auto box = isw_state(1, 2.0);
    CHECK_THROWS_AS(isw_moment(box, 2, 0.5), std::domain_error);  // P below the peak
    CHECK_THROWS_AS(isw_moment(box, 3, 50.0), std::domain_error);
}

TEST_CASE("linear fit recovers an exact line") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y{3.0, 5.0, 7.0, 9.0};
    const auto fit = linear_fit(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fourier oracle basics") {
    const auto states = solve_all(WellSpec{});
    const auto& even = states[0];
    const auto& odd = states[1];

    SUBCASE("even state at p = 0 equals the plain integral of psi") {
        const double half = even.well.a / 2.0;
        const double cut = half + 40.0 / even.alpha;
        const double bp[] = {-half, half};
        const auto direct = integrate([&](double x) { return psi(even, x).value; }, -cut, cut,
                                      1e-12, bp);
        const auto oracle = fourier_oracle(even, 0.0);
        CHECK(std::abs(oracle.imag()) < 1e-12);
        CHECK(oracle.real() ==
              doctest::Approx(direct.value / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));
    }

    SUBCASE("odd state has vanishing real part") {
        for (double p : {0.3, 1.0, 4.5}) {
            CHECK(std::abs(fourier_oracle(odd, p).real()) < 1e-12);
        }
    }

    SUBCASE("reality symmetry: oracle(-p) = conj(oracle(p))") {
        for (double p : {0.7, 2.9, 11.0}) {
            const auto plus = fourier_oracle(even, p);
            const auto minus = fourier_oracle(even, -p);
            CHECK(std::abs(minus.real() - plus.real()) < 1e-12);
            CHECK(std::abs(minus.imag() + plus.imag()) < 1e-12);
            const auto oplus = fourier_oracle(odd, p);
            const auto ominus = fourier_oracle(odd, -p);
            CHECK(std::abs(ominus.real() - oplus.real()) < 1e-12);
            CHECK(std::abs(ominus.imag() + oplus.imag()) < 1e-12);
        }
    }
}

TEST_CASE("moment integrals") {
    const auto states = solve_all(WellSpec{});
    const auto& ground = states[0];

    SUBCASE("s = 0 recovers the norm") {
        MomentRequest req;
        req.s = 0;
        const auto m = momentum_moment(ground, req);
        CHECK(m.quadrature.converged);
        CHECK(std::abs(m.quadrature.value - 1.0) < 1e-4);
    }

    SUBCASE("s = 2 matches the closed form") {
        const auto m = momentum_moment(ground, MomentRequest{});
        CHECK(std::abs(m.value() - p2_expectation(ground)) / p2_expectation(ground) < 1e-3);
    }

    SUBCASE("s = 4 with tail matches the closed form to 2 percent") {
        MomentRequest req;
        req.s = 4;
        const auto m = momentum_moment(ground, req);
        CHECK(std::abs(m.value() - p4_expectation(ground)) / p4_expectation(ground) < 2e-2);
    }

    SUBCASE("truncation below hbar*beta is rejected") {
        MomentRequest req;
        req.P = 0.5;
        CHECK_THROWS_AS(momentum_moment(ground, req), std::domain_error);
    }

    SUBCASE("s = 2 is Cauchy in P with the p^-3 tail constant") {
        const double env = asymptotic_envelope(ground);
        for (double P : {25.0, 50.0, 100.0}) {
            MomentRequest lo_req, hi_req;
            lo_req.s = hi_req.s = 2;
            lo_req.include_tail_estimate = hi_req.include_tail_estimate = false;
            lo_req.P = P;
            hi_req.P = 2.0 * P;
            const double lo = momentum_moment(ground, lo_req).quadrature.value;
            const double hi = momentum_moment(ground, hi_req).quadrature.value;
            CHECK(std::abs(hi - lo) < 10.0 * env / (P * P * P));
        }
    }
}

TEST_CASE("box moments") {
    const auto box = isw_state(1, 2.0);

    SUBCASE("s = 2 recovers hbar^2 beta^2 through the improper integral") {
        const auto m = isw_moment(box, 2, 200.0);
        CHECK(std::abs(m.value() - isw_p2(box)) < 1e-3);
    }

    SUBCASE("s = 0 recovers the norm") {
        const auto m = isw_moment(box, 0, 200.0);
        CHECK(std::abs(m.value() - 1.0) < 1e-4);
    }

    SUBCASE("s = 4 grows linearly in P") {
        std::vector<double> P{50.0, 100.0, 200.0};
        std::vector<double> val;
        for (double p : P) val.push_back(isw_moment(box, 4, p).quadrature.value);
        const auto fit = linear_fit(P, val);
        CHECK(fit.slope > 0.0);
        CHECK(fit.r_squared > 0.99);
    }
}
