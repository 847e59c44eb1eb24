#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modp/arithmetic.hpp"
#include "modp/errors.hpp"

using namespace modp;

TEST_CASE("smallest prime factors") {
    const auto s10 = build_sieve(10);
    CHECK(s10.smallest_prime_factor(9) == 3);
    const auto s100 = build_sieve(100);
    CHECK(s100.smallest_prime_factor(91) == 7);
    CHECK(s100.primes().size() == 25);
    CHECK(s100.is_prime(97));
    CHECK_FALSE(s100.is_prime(1));
    CHECK_THROWS_AS(build_sieve(1), CapacityError);
    CHECK_THROWS_AS(build_sieve(200, 100), CapacityError);
    CHECK_THROWS_AS(s100.smallest_prime_factor(101), DomainError);
}

TEST_CASE("every spf entry is a prime divisor") {
    const auto sieve = build_sieve(200'000);
    for (std::int64_t k = 2; k <= sieve.limit(); ++k) {
        const auto p = sieve.smallest_prime_factor(k);
        REQUIRE(k % p == 0);
        REQUIRE(sieve.smallest_prime_factor(p) == p);
    }
}

TEST_CASE("factor_stats") {
    const auto sieve = build_sieve(1000);
    const auto twelve = factor_stats(12, sieve);
    CHECK(twelve.factorization == std::vector<std::pair<std::uint32_t, int>>{{2, 2}, {3, 1}});
    CHECK(twelve.omega == 2);
    CHECK(twelve.big_omega == 3);
    CHECK(twelve.moebius == 0);
    CHECK_FALSE(twelve.squarefree);

    const auto thirty = factor_stats(30, sieve);
    CHECK(thirty.omega == 3);
    CHECK(thirty.big_omega == 3);
    CHECK(thirty.moebius == -1);

    const auto one = factor_stats(1, sieve);
    CHECK(one.factorization.empty());
    CHECK(one.omega == 0);
    CHECK(one.big_omega == 0);
    CHECK(one.moebius == 1);
    CHECK(one.squarefree);
    CHECK_THROWS_AS(factor_stats(0, sieve), DomainError);
    CHECK_THROWS_AS(factor_stats(1001, sieve), DomainError);
}

TEST_CASE("factorizations reconstruct k and the Moebius conventions agree") {
    const auto sieve = build_sieve(100'000);
    for (std::int64_t k = 1; k <= 100'000; ++k) {
        const auto st = factor_stats(k, sieve);
        std::int64_t product = 1;
        int total = 0;
        for (const auto& [p, e] : st.factorization) {
            for (int i = 0; i < e; ++i) product *= p;
            total += e;
        }
        REQUIRE(product == k);
        REQUIRE(st.omega == static_cast<int>(st.factorization.size()));
        REQUIRE(st.big_omega == total);
        REQUIRE((st.moebius != 0) == st.squarefree);
        REQUIRE(st.squarefree == (st.omega == st.big_omega));
        if (st.squarefree) REQUIRE(st.moebius == (st.omega % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("sum of mu over divisors is the indicator of 1") {
    const auto sieve = build_sieve(10'000);
    for (std::int64_t k = 1; k <= 10'000; ++k) {
        int sum = 0;
        for (std::int64_t d = 1; d * d <= k; ++d) {
            if (k % d != 0) continue;
            sum += factor_stats(d, sieve).moebius;
            if (d * d != k) sum += factor_stats(k / d, sieve).moebius;
        }
        REQUIRE(sum == (k == 1 ? 1 : 0));
    }
}

TEST_CASE("stats_table") {
    const auto sieve = build_sieve(1000);
    const auto t10 = stats_table(10, sieve);
    CHECK(t10.squarefree == 7);

    const auto t4 = stats_table(4, sieve);
    std::int64_t pgf_at_2 = 0;
    for (std::size_t m = 0; m < t4.by_omega.size(); ++m) pgf_at_2 += t4.by_omega[m] << m;
    CHECK(pgf_at_2 == 7);

    const auto t2 = stats_table(2, sieve);
    CHECK(t2.by_omega == std::vector<std::int64_t>{1, 1});

    const auto t1000 = stats_table(1000, sieve);
    std::int64_t a = 0;
    std::int64_t b = 0;
    for (const auto c : t1000.by_omega) a += c;
    for (const auto c : t1000.by_big_omega) b += c;
    CHECK(a == 1000);
    CHECK(b == 1000);
    CHECK_THROWS_AS(stats_table(1001, sieve), DomainError);
}

TEST_CASE("stats_tables_at agrees with separate tables") {
    const auto sieve = build_sieve(50'000);
    const std::int64_t points[] = {17, 1000, 50'000};
    const auto tables = stats_tables_at(points, sieve);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto single = stats_table(points[i], sieve);
        CHECK(tables[i].by_omega == single.by_omega);
        CHECK(tables[i].by_big_omega == single.by_big_omega);
        CHECK(tables[i].squarefree == single.squarefree);
    }
}

TEST_CASE("squarefree_count") {
    const auto sieve = build_sieve(1'000'000);
    CHECK(squarefree_count(1, sieve) == 1);
    CHECK(squarefree_count(10, sieve) == 7);
    const double x = 1e6;
    const auto count = squarefree_count(1'000'000, sieve);
    CHECK(std::abs(static_cast<double>(count) - 6.0 * x / (std::numbers::pi * std::numbers::pi)) <=
          2.0 * std::sqrt(x));
    CHECK(count == stats_table(1'000'000, sieve).squarefree);
}

TEST_CASE("sum of 2^omega equals the square-free divisor count") {
    // sum_{k <= n} 2^{omega(k)} = sum_{d <= n} mu^2(d) floor(n / d)
    const auto sieve = build_sieve(100'000);
    for (const std::int64_t n : {1, 2, 10, 999, 100'000}) {
        const auto t = stats_table(n, sieve);
        std::int64_t lhs = 0;
        for (std::size_t m = 0; m < t.by_omega.size(); ++m) lhs += t.by_omega[m] << m;
        std::int64_t rhs = 0;
        for (std::int64_t d = 1; d <= n; ++d) {
            if (factor_stats(d, sieve).squarefree) rhs += n / d;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("is_squarefree_u64 beyond the sieve") {
    CHECK(is_squarefree_u64(1));
    CHECK(is_squarefree_u64(2ULL * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37 * 41 * 43 * 47));
    CHECK_FALSE(is_squarefree_u64(1'000'003ULL * 1'000'003ULL));
    CHECK_FALSE(is_squarefree_u64(4'000'000'000'000'000'000ULL));
    const auto sieve = build_sieve(20'000);
    for (std::int64_t k = 1; k <= 20'000; ++k) {
        REQUIRE(is_squarefree_u64(static_cast<std::uint64_t>(k)) == factor_stats(k, sieve).squarefree);
    }
}

TEST_CASE("shared_sieve grows on demand") {
    const auto small = shared_sieve(5000);
    CHECK(small->limit() >= 5000);
    const auto large = shared_sieve(200'000);
    CHECK(large->limit() >= 200'000);
    CHECK(shared_sieve(100)->limit() >= 200'000);
}
