#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "modp/arithmetic.hpp"
#include "modp/errors.hpp"
#include "modp/numerics.hpp"

using namespace modp;

namespace {

double prime_sum(const Sieve& sieve, std::int64_t bound, auto&& term) {
    double sum = 0.0;
    const auto primes = sieve.primes();
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
        if (*it <= bound) sum += term(static_cast<double>(*it));
    }
    return sum;
}

}  // namespace

TEST_CASE("gamma_fn at standard points") {
    CHECK(std::abs(gamma_fn(1.0) - 1.0) < 1e-13);
    CHECK(std::abs(gamma_fn(0.5) - std::sqrt(std::numbers::pi)) < 1e-12);
    CHECK(std::abs(gamma_fn(4.0) - 6.0) < 1e-12);
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-3.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(Complex(std::nan(""), 0.0)), DomainError);
}

TEST_CASE("gamma_fn matches the recurrence and lgamma on a grid") {
    for (double x = -7.3; x <= 19.5; x += 0.37) {
        if (std::abs(x - std::round(x)) < 1e-9 && x <= 0) continue;
        const double expected = std::tgamma(x);
        CHECK(std::abs(gamma_fn(x).real() - expected) <= 1e-12 * std::abs(expected));
    }
    // Gamma(z + 1) = z Gamma(z) off the real axis.
    for (const Complex z : {Complex(0.3, 1.2), Complex(-2.5, 0.7), Complex(6.0, -3.0)}) {
        const Complex lhs = gamma_fn(z + 1.0);
        const Complex rhs = z * gamma_fn(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("euler_gamma_product") {
    const auto one = euler_gamma_product(1.0, 17);
    CHECK(one.value == Complex(1.0));
    CHECK(one.tail_bound == 0.0);

    const auto two = euler_gamma_product(2.0, 1'000'000);
    CHECK(std::abs(two.value - 1.0) <= two.tail_bound);

    const auto five_halves = euler_gamma_product(2.5, 1'000'000);
    CHECK(std::abs(five_halves.value - 1.0 / gamma_fn(2.5)) <= 1e-5);

    CHECK_THROWS_AS(euler_gamma_product(-1.0, 10), DomainError);
    CHECK_THROWS_AS(euler_gamma_product(2.0, 0), DomainError);
}

TEST_CASE("euler_gamma_product times gamma_fn tends to 1 inside the tail bound") {
    for (const Complex x : {Complex(0.1), Complex(0.5), Complex(1.5), Complex(2.0),
                            Complex(1.0, 0.9), Complex(0.4, -0.6)}) {
        double previous = 1.0;
        for (const std::int64_t K : {100, 10'000, 1'000'000}) {
            const auto p = euler_gamma_product(x, K);
            const double err = std::abs(p.value * gamma_fn(x) - 1.0);
            CHECK(err <= p.tail_bound * std::abs(gamma_fn(x)) + 1e-10);
            CHECK(err < previous);
            previous = err;
        }
    }
}

TEST_CASE("zeta_fn") {
    CHECK(std::abs(zeta_fn(2.0) - std::numbers::pi * std::numbers::pi / 6.0) < 1e-12);
    CHECK(std::abs(zeta_fn(4.0) - std::pow(std::numbers::pi, 4) / 90.0) < 1e-12);
    CHECK(std::abs(zeta_fn(1.001) - (1000.0 + std::numbers::egamma)) < 1e-2);
    CHECK_THROWS_AS(zeta_fn(1.0), DomainError);
    CHECK(std::abs(zeta_minus_one(40.0) - (std::pow(2.0, -40.0) + std::pow(3.0, -40.0) + std::pow(4.0, -40.0))) < 1e-30);
}

TEST_CASE("zeta_fn agrees with the Euler product") {
    const auto sieve = build_sieve(1'000'000);
    for (const double s : {1.5, 2.0, 3.0}) {
        double previous = 1.0;
        for (const std::int64_t P : {100, 10'000, 1'000'000}) {
            const double log_product = prime_sum(sieve, P, [&](double p) {
                return std::log1p(-std::pow(p, -s));
            });
            const double err = std::abs(zeta_fn(s) * std::exp(log_product) - 1.0);
            CHECK(err < previous);
            previous = err;
        }
        CHECK(previous < 2e-3);
    }
}

TEST_CASE("hurwitz_zeta reduces to zeta at a = 1") {
    for (const double s : {1.1, 2.0, 7.5}) {
        CHECK(std::abs(hurwitz_zeta(s, 1.0) - zeta_fn(s)) <= 1e-12 * zeta_fn(s));
        CHECK(std::abs(hurwitz_zeta(s, 2.0) - (zeta_fn(s) - 1.0)) <= 1e-12 * zeta_fn(s));
    }
    CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
}

TEST_CASE("prime_zeta_fn against direct prime sums") {
    const auto sieve = build_sieve(10'000'000);
    // sum_{p > P} p^{-2} < 1 / P
    const double head2 = prime_sum(sieve, 10'000'000, [](double p) { return 1.0 / (p * p); });
    CHECK(std::abs(prime_zeta_fn(2.0) - head2) < 1e-7);
    const double head4 = prime_sum(sieve, 10'000, [](double p) { return std::pow(p, -4.0); });
    CHECK(std::abs(prime_zeta_fn(4.0) - head4) < 1e-12);
    CHECK(std::abs(prime_zeta_fn(10.0) - (std::pow(2.0, -10) + std::pow(3.0, -10))) < 1e-5);
    CHECK_THROWS_AS(prime_zeta_fn(1.0), DomainError);
}

TEST_CASE("prime_zeta_fn(1 + eps) + ln eps + c0 tends to 0") {
    const double c0 = named_constant(Constant::c0);
    double previous = 1.0;
    for (const double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double gap = std::abs(prime_zeta_fn(1.0 + eps) + std::log(eps) + c0);
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("named constants") {
    CHECK(std::abs(named_constant(Constant::euler_gamma) - 0.5772156649) < 1e-6);
    CHECK(std::abs(named_constant(Constant::c0) - 0.315718) < 1e-5);

    const auto sieve = build_sieve(10'000'000);
    // |ln(1 + 1/p) - 1/p| <= 1 / (2 p^2), tail below 1 / (2 P).
    const double direct = prime_sum(sieve, 10'000'000,
                                    [](double p) { return std::log1p(1.0 / p) - 1.0 / p; });
    CHECK(std::abs(named_constant(Constant::c0_prime) - direct) < 1e-6);

    // Mertens: sum_{p <= P} 1/p - ln ln P -> prime_gamma, with O(1/ln P) error.
    const double harmonic = prime_sum(sieve, 10'000'000, [](double p) { return 1.0 / p; });
    const double mertens = harmonic - std::log(std::log(1e7));
    CHECK(std::abs(named_constant(Constant::prime_gamma) - mertens) < 1e-3);
    CHECK(std::abs(named_constant(Constant::prime_gamma) - 0.2614972128) < 1e-6);

    CHECK(parse_constant("c0_prime") == Constant::c0_prime);
    CHECK(constant_name(Constant::prime_gamma) == "prime_gamma");
    CHECK_THROWS_AS(parse_constant("pi"), UsageError);
}

TEST_CASE("the square-free density constant equals 1") {
    // (6 / pi^2) e^{c0 - c0'} is asserted to be exactly 1; checked numerically.
    const double c0 = named_constant(Constant::c0);
    const double c0p = named_constant(Constant::c0_prime);
    CHECK(std::abs(6.0 / (std::numbers::pi * std::numbers::pi) * std::exp(c0 - c0p) - 1.0) < 1e-4);
}

TEST_CASE("moebius_small") {
    CHECK(moebius_small(1) == 1);
    CHECK(moebius_small(2) == -1);
    CHECK(moebius_small(4) == 0);
    CHECK(moebius_small(30) == -1);
    CHECK(moebius_small(35) == 1);
}
